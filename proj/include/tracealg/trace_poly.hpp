#pragma once

#include <json.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tracealg/rational.hpp"
#include "tracealg/words.hpp"

namespace tracealg {

// Product of formal traces: an unordered multiset of cyclic words, kept as a
// sorted vector. The empty monomial is the ring unit.
class TraceMonomial {
public:
    TraceMonomial() = default;
    explicit TraceMonomial(std::vector<CyclicWord> factors) : factors_(std::move(factors)) {
        std::sort(factors_.begin(), factors_.end());
    }
    static TraceMonomial trace(const Word& w) { return TraceMonomial({CyclicWord(w)}); }

    const std::vector<CyclicWord>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }

    int degree() const {
        int t = 0;
        for (const auto& f : factors_) t += f.degree();
        return t;
    }
    MultiDegree multidegree(int d) const {
        MultiDegree md(d);
        for (const auto& f : factors_) md += tracealg::multidegree(f, d);
        return md;
    }
    int max_letter() const {
        int m = 0;
        for (const auto& f : factors_)
            for (Letter a : f.word()) m = std::max<int>(m, a);
        return m;
    }

    TraceMonomial operator*(const TraceMonomial& o) const {
        std::vector<CyclicWord> merged;
        merged.reserve(factors_.size() + o.factors_.size());
        std::merge(factors_.begin(), factors_.end(), o.factors_.begin(), o.factors_.end(),
                   std::back_inserter(merged));
        TraceMonomial m;
        m.factors_ = std::move(merged);
        return m;
    }

    friend bool operator==(const TraceMonomial& a, const TraceMonomial& b) {
        return a.factors_ == b.factors_;
    }
    // Degree, then factor count, then the factor lists compared largest
    // factor first; single long traces come before split products.
    friend bool operator<(const TraceMonomial& a, const TraceMonomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        if (a.factors_.size() != b.factors_.size()) return a.factors_.size() < b.factors_.size();
        return std::lexicographical_compare(a.factors_.rbegin(), a.factors_.rend(),
                                            b.factors_.rbegin(), b.factors_.rend());
    }

private:
    std::vector<CyclicWord> factors_;
};

// Bracket notation "[1234][12]": factors longest first, unit prints as "1".
// Letters above 9 fall back to an explicit tuple-style form.
inline std::string print_bracket(const TraceMonomial& m) {
    if (m.is_unit()) return "1";
    std::string s;
    const bool digits = m.max_letter() <= 9;
    std::vector<CyclicWord> display = m.factors();
    std::stable_sort(display.begin(), display.end(), [](const CyclicWord& a, const CyclicWord& b) {
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        return a.word() < b.word();
    });
    for (const auto& f : display) {
        if (digits) {
            s += '[';
            s += print_word_digits(f.word());
            s += ']';
        } else {
            s += "Tr(";
            for (std::size_t i = 0; i < f.word().size(); ++i) {
                if (i) s += ',';
                s += std::to_string(static_cast<int>(f.word()[i]));
            }
            s += ')';
        }
    }
    return s;
}

// Finitely supported rational combination of trace monomials.
class TracePolynomial {
public:
    using Terms = std::map<TraceMonomial, Rational>;

    TracePolynomial() = default;
    static TracePolynomial zero() { return {}; }
    static TracePolynomial one() { return term(TraceMonomial(), ratio(1)); }
    static TracePolynomial term(const TraceMonomial& m, const Rational& c) {
        TracePolynomial p;
        p.add_term(m, c);
        return p;
    }
    static TracePolynomial trace(const Word& w) { return term(TraceMonomial::trace(w), ratio(1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const TraceMonomial& m, const Rational& c) {
        if (is_zero_coeff(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_coeff(it->second)) terms_.erase(it);
        }
    }

    TracePolynomial& operator+=(const TracePolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    TracePolynomial& operator-=(const TracePolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend TracePolynomial operator+(TracePolynomial a, const TracePolynomial& b) { return a += b; }
    friend TracePolynomial operator-(TracePolynomial a, const TracePolynomial& b) { return a -= b; }

    TracePolynomial operator*(const TracePolynomial& o) const {
        TracePolynomial out;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }
    TracePolynomial scaled(const Rational& f) const {
        TracePolynomial out;
        if (is_zero_coeff(f)) return out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * f);
        return out;
    }

    int max_letter() const {
        int m = 0;
        for (const auto& [mono, c] : terms_) m = std::max(m, mono.max_letter());
        return m;
    }

    // All terms share a multidegree iff the polynomial is multihomogeneous.
    bool is_multihomogeneous(int d, MultiDegree* out = nullptr) const {
        bool first = true;
        MultiDegree md(d);
        for (const auto& [mono, c] : terms_) {
            MultiDegree m = mono.multidegree(d);
            if (first) {
                md = m;
                first = false;
            } else if (!(m == md)) {
                return false;
            }
        }
        if (out) *out = md;
        return true;
    }

    friend bool operator==(const TracePolynomial& a, const TracePolynomial& b) {
        return a.terms_ == b.terms_;
    }

private:
    static bool is_zero_coeff(const Rational& c) { return sgn(c) == 0; }
    Terms terms_;
};

// Replaces every letter of every factor by its assigned word, then
// re-canonicalizes. The assignment is indexed by letter value.
inline TracePolynomial substitute(const TracePolynomial& p, const std::vector<Word>& assignment) {
    TracePolynomial out;
    for (const auto& [mono, coeff] : p.terms()) {
        std::vector<CyclicWord> factors;
        factors.reserve(mono.factors().size());
        for (const auto& f : mono.factors()) {
            Word image;
            for (Letter a : f.word()) {
                if (a < 1 || a > assignment.size() || assignment[a - 1].empty())
                    throw std::invalid_argument("substitute: unassigned letter " +
                                                std::to_string(int(a)));
                const Word& w = assignment[a - 1];
                image.insert(image.end(), w.begin(), w.end());
            }
            factors.emplace_back(image);
        }
        out.add_term(TraceMonomial(std::move(factors)), coeff);
    }
    return out;
}

// Exponent vectors e >= 0 with sum e_i * degrees_i = target, in ascending
// lexicographic order.
inline std::vector<std::vector<int>> exponent_vectors(const std::vector<MultiDegree>& degrees,
                                                      const MultiDegree& target) {
    for (const auto& deg : degrees)
        if (deg.total() <= 0) throw std::invalid_argument("exponent_vectors: degree must be positive");
    std::vector<std::vector<int>> out;
    std::vector<int> current(degrees.size(), 0);
    MultiDegree remaining = target;
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == degrees.size()) {
            if (remaining.is_zero()) out.push_back(current);
            return;
        }
        int e = 0;
        for (;;) {
            current[idx] = e;
            self(self, idx + 1);
            if (!remaining.contains(degrees[idx])) break;
            remaining = remaining.minus(degrees[idx]);
            ++e;
        }
        for (; e > 0; --e) remaining += degrees[idx];
        current[idx] = 0;
    };
    rec(rec, 0);
    return out;
}

// All monomials in the given variables of exact multidegree md, without
// duplicates, in the order induced by exponent_vectors.
inline std::vector<TraceMonomial> graded_piece(const std::vector<TraceMonomial>& vars,
                                               const MultiDegree& md, int d) {
    std::vector<MultiDegree> degrees;
    degrees.reserve(vars.size());
    for (const auto& v : vars) {
        MultiDegree vd = v.multidegree(d);
        if (vd.total() <= 0) throw std::invalid_argument("graded_piece: variable of degree 0");
        degrees.push_back(vd);
    }
    std::vector<TraceMonomial> out;
    std::set<TraceMonomial> seen;
    for (const auto& e : exponent_vectors(degrees, md)) {
        TraceMonomial m;
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (int k = 0; k < e[i]; ++k) m = m * vars[i];
        if (seen.insert(m).second) out.push_back(std::move(m));
    }
    return out;
}

// --- JSON (shared polynomial schema) ----------------------------------------

inline nlohmann::json to_json(const TracePolynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, coeff] : p.terms()) {
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& f : mono.factors()) {
            nlohmann::json w = nlohmann::json::array();
            for (Letter a : f.word()) w.push_back(static_cast<int>(a));
            factors.push_back(std::move(w));
        }
        terms.push_back({{"coeff", to_string(coeff)}, {"factors", std::move(factors)}});
    }
    return {{"terms", std::move(terms)}};
}

inline TracePolynomial trace_polynomial_from_json(const nlohmann::json& j) {
    TracePolynomial p;
    for (const auto& term : j.at("terms")) {
        Rational c = parse_rational(term.at("coeff").get<std::string>());
        std::vector<CyclicWord> factors;
        for (const auto& w : term.at("factors")) {
            Word word;
            for (const auto& a : w) word.push_back(static_cast<Letter>(a.get<int>()));
            factors.emplace_back(word);
        }
        p.add_term(TraceMonomial(std::move(factors)), c);
    }
    return p;
}

// Pretty form "[1234] + [12][34] - 1/2 [12]" in canonical term order.
inline std::string print_bracket(const TracePolynomial& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [mono, coeff] : p.terms()) {
        Rational c = coeff;
        if (s.empty()) {
            if (sgn(c) < 0) {
                s += "-";
                c = -c;
            }
        } else {
            s += sgn(c) < 0 ? " - " : " + ";
            if (sgn(c) < 0) c = -c;
        }
        if (c != 1 || mono.is_unit()) s += to_string(c) + (mono.is_unit() ? "" : " ");
        if (!mono.is_unit()) s += print_bracket(mono);
    }
    return s;
}

}  // namespace tracealg
