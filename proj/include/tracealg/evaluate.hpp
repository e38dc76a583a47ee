#pragma once

#include <cstdint>
#include <mutex>
#include <random>
#include <unordered_map>
#include <vector>

#include "tracealg/trace_poly.hpp"

namespace tracealg {

// Which generic matrices to evaluate into: n x n, d letters, optional
// traceless specialization per letter, optional diagonal restriction of the
// first letter. Traceless drops one diagonal variable per letter (the last
// diagonal entry is minus the sum of the others); diagonal_first zeroes the
// off-diagonal entries of letter 1.
struct GenericMatrixSpec {
    int n = 1;
    int d = 1;
    std::vector<bool> traceless;
    bool diagonal_first = false;

    static GenericMatrixSpec plain(int n, int d, bool diagonal_first = false) {
        GenericMatrixSpec s{n, d, std::vector<bool>(d, false), diagonal_first};
        s.validate();
        return s;
    }
    static GenericMatrixSpec all_traceless(int n, int d, bool diagonal_first = false) {
        GenericMatrixSpec s{n, d, std::vector<bool>(d, true), diagonal_first};
        s.validate();
        return s;
    }

    void validate() const {
        if (n < 1 || d < 1) throw std::invalid_argument("spec needs n >= 1, d >= 1");
        if (static_cast<int>(traceless.size()) != d)
            throw std::invalid_argument("spec traceless flags must match d");
    }

    bool entry_is_zero(int k, int i, int j) const {
        return diagonal_first && k == 1 && i != j;
    }
    // The dependent diagonal entry of a traceless letter (zero when n = 1).
    bool entry_is_dependent(int k, int i, int j) const {
        return traceless[k - 1] && i == n - 1 && j == n - 1;
    }

    friend bool operator==(const GenericMatrixSpec& a, const GenericMatrixSpec& b) {
        return a.n == b.n && a.d == b.d && a.traceless == b.traceless &&
               a.diagonal_first == b.diagonal_first;
    }
};

// Flat variable order: letter-major, row-major over the free entries.
class VarLayout {
public:
    explicit VarLayout(const GenericMatrixSpec& spec) : spec_(spec) {
        spec.validate();
        index_.assign(static_cast<std::size_t>(spec.d) * spec.n * spec.n, -1);
        int next = 0;
        for (int k = 1; k <= spec.d; ++k)
            for (int i = 0; i < spec.n; ++i)
                for (int j = 0; j < spec.n; ++j) {
                    if (spec.entry_is_zero(k, i, j) || spec.entry_is_dependent(k, i, j)) continue;
                    index_[slot(k, i, j)] = next++;
                }
        count_ = next;
    }

    int count() const { return count_; }
    int index(int k, int i, int j) const { return index_[slot(k, i, j)]; }
    const GenericMatrixSpec& spec() const { return spec_; }

private:
    std::size_t slot(int k, int i, int j) const {
        return (static_cast<std::size_t>(k - 1) * spec_.n + i) * spec_.n + j;
    }
    GenericMatrixSpec spec_;
    std::vector<int> index_;
    int count_ = 0;
};

// Multivariate polynomial over the free entry variables, exact coefficients.
class ScalarPoly {
public:
    using Mono = std::vector<std::uint8_t>;

    struct MonoHash {
        std::size_t operator()(const Mono& m) const {
            std::size_t h = 1469598103934665603ull;
            for (std::uint8_t b : m) {
                h ^= b;
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    using Accumulator = std::unordered_map<Mono, Rational, MonoHash>;

    ScalarPoly() = default;
    explicit ScalarPoly(int nvars) : nvars_(nvars) {}

    static ScalarPoly variable(int idx, int nvars) {
        ScalarPoly p(nvars);
        Mono m(nvars, 0);
        m[idx] = 1;
        p.terms_.emplace_back(std::move(m), ratio(1));
        return p;
    }
    static ScalarPoly constant(const Rational& c, int nvars) {
        ScalarPoly p(nvars);
        if (!tracealg::is_zero(c)) p.terms_.emplace_back(Mono(nvars, 0), c);
        return p;
    }
    static ScalarPoly from_accumulator(Accumulator&& acc, int nvars) {
        ScalarPoly p(nvars);
        p.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!tracealg::is_zero(c)) p.terms_.emplace_back(m, std::move(c));
        std::sort(p.terms_.begin(), p.terms_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<std::pair<Mono, Rational>>& terms() const { return terms_; }

    int total_degree() const {
        int deg = 0;
        for (const auto& [m, c] : terms_) {
            int t = 0;
            for (auto e : m) t += e;
            deg = std::max(deg, t);
        }
        return deg;
    }

    ScalarPoly operator+(const ScalarPoly& o) const {
        ScalarPoly out(nvars_);
        out.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() ||
                (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                out.terms_.push_back(terms_[i++]);
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                out.terms_.push_back(o.terms_[j++]);
            } else {
                Rational c = terms_[i].second + o.terms_[j].second;
                if (!tracealg::is_zero(c)) out.terms_.emplace_back(terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return out;
    }
    ScalarPoly operator-(const ScalarPoly& o) const { return *this + o.scaled(ratio(-1)); }

    ScalarPoly scaled(const Rational& f) const {
        ScalarPoly out(nvars_);
        if (tracealg::is_zero(f)) return out;
        out.terms_ = terms_;
        for (auto& [m, c] : out.terms_) c *= f;
        return out;
    }

    ScalarPoly operator*(const ScalarPoly& o) const {
        ScalarPoly out(nvars_);
        if (is_zero() || o.is_zero()) return out;
        Accumulator acc;
        acc.reserve(terms_.size() * 2);
        const auto& small = terms_.size() <= o.terms_.size() ? terms_ : o.terms_;
        const auto& large = terms_.size() <= o.terms_.size() ? o.terms_ : terms_;
        Mono prod(nvars_);
        for (const auto& [ms, cs] : small)
            for (const auto& [ml, cl] : large) {
                for (int v = 0; v < nvars_; ++v)
                    prod[v] = static_cast<std::uint8_t>(ms[v] + ml[v]);
                Rational c = cs * cl;
                auto [it, inserted] = acc.try_emplace(prod, c);
                if (!inserted) it->second += c;
            }
        return from_accumulator(std::move(acc), nvars_);
    }

    Rational eval(const std::vector<Rational>& point) const {
        Rational sum(0);
        for (const auto& [m, c] : terms_) {
            Rational v = c;
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) v *= point[i];
            sum += v;
        }
        return sum;
    }

    friend bool operator==(const ScalarPoly& a, const ScalarPoly& b) {
        return a.terms_ == b.terms_;
    }

private:
    int nvars_ = 0;
    std::vector<std::pair<Mono, Rational>> terms_;
};

// Dense rational matrix used for exact evaluation points.
using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix qmatrix_product(const QMatrix& a, const QMatrix& b) {
    int n = static_cast<int>(a.size());
    QMatrix c(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (tracealg::is_zero(a[i][k])) continue;
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline Rational qmatrix_trace(const QMatrix& m) {
    Rational t(0);
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

// The evaluation map pi from formal traces into the coordinate ring of the
// spec'd generic matrices. Word traces are memoized per cyclic class.
class Evaluator {
public:
    explicit Evaluator(const GenericMatrixSpec& spec) : layout_(spec) {}

    const GenericMatrixSpec& spec() const { return layout_.spec(); }
    const VarLayout& layout() const { return layout_; }

    // Entry (i,j) of generic matrix k as a linear form: list of (var, sign).
    std::vector<std::pair<int, int>> entry_form(int k, int i, int j) const {
        const auto& sp = spec();
        if (sp.entry_is_zero(k, i, j)) return {};
        if (sp.entry_is_dependent(k, i, j)) {
            std::vector<std::pair<int, int>> form;
            for (int t = 0; t < sp.n - 1; ++t) form.emplace_back(layout_.index(k, t, t), -1);
            return form;
        }
        return {{layout_.index(k, i, j), 1}};
    }

    ScalarPoly entry_poly(int k, int i, int j) const {
        ScalarPoly::Accumulator acc;
        for (const auto& [var, sign] : entry_form(k, i, j)) {
            ScalarPoly::Mono m(layout_.count(), 0);
            m[var] = 1;
            acc[std::move(m)] += ratio(sign);
        }
        return ScalarPoly::from_accumulator(std::move(acc), layout_.count());
    }

    std::vector<std::vector<ScalarPoly>> generic_matrix(int k) const {
        const auto& sp = spec();
        if (k < 1 || k > sp.d) throw std::invalid_argument("generic_matrix: letter out of range");
        std::vector<std::vector<ScalarPoly>> m(sp.n, std::vector<ScalarPoly>(sp.n));
        for (int i = 0; i < sp.n; ++i)
            for (int j = 0; j < sp.n; ++j) m[i][j] = entry_poly(k, i, j);
        return m;
    }

    const ScalarPoly& trace_of_word(const CyclicWord& w) const {
        {
            std::lock_guard<std::mutex> lock(memo_mutex_);
            auto it = trace_memo_.find(w.word());
            if (it != trace_memo_.end()) return it->second;
        }
        ScalarPoly p = trace_of_word_uncached(w.word());
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto [it, inserted] = trace_memo_.emplace(w.word(), std::move(p));
        return it->second;
    }

    ScalarPoly pi(const TraceMonomial& mono) const {
        ScalarPoly out = ScalarPoly::constant(ratio(1), layout_.count());
        // Smallest factors first keeps the intermediate products small.
        for (const auto& f : mono.factors()) {
            out = out * trace_of_word(f);
            if (out.is_zero()) break;
        }
        return out;
    }

    ScalarPoly pi(const TracePolynomial& p) const {
        ScalarPoly::Accumulator acc;
        for (const auto& [mono, coeff] : p.terms()) {
            ScalarPoly part = pi(mono);
            for (const auto& [m, c] : part.terms()) {
                auto [it, inserted] = acc.try_emplace(m, coeff * c);
                if (!inserted) it->second += coeff * c;
            }
        }
        return ScalarPoly::from_accumulator(std::move(acc), layout_.count());
    }

    // Exact value of pi(p) at a rational point (one matrix per letter).
    Rational eval_at(const TracePolynomial& p, const std::vector<QMatrix>& matrices) const {
        validate_point(matrices);
        Rational sum(0);
        for (const auto& [mono, coeff] : p.terms()) {
            Rational v = coeff;
            for (const auto& f : mono.factors()) v *= trace_of_word_at(f.word(), matrices);
            sum += v;
        }
        return sum;
    }

    void validate_point(const std::vector<QMatrix>& matrices) const {
        const auto& sp = spec();
        if (static_cast<int>(matrices.size()) != sp.d)
            throw std::invalid_argument("eval_at: need one matrix per letter");
        for (int k = 1; k <= sp.d; ++k) {
            const QMatrix& m = matrices[k - 1];
            if (static_cast<int>(m.size()) != sp.n)
                throw std::invalid_argument("eval_at: matrix dimension mismatch");
            for (const auto& row : m)
                if (static_cast<int>(row.size()) != sp.n)
                    throw std::invalid_argument("eval_at: matrix dimension mismatch");
            if (sp.traceless[k - 1] && !tracealg::is_zero(qmatrix_trace(m)))
                throw std::invalid_argument("eval_at: traceless letter evaluated at nonzero trace");
            if (sp.diagonal_first && k == 1)
                for (int i = 0; i < sp.n; ++i)
                    for (int j = 0; j < sp.n; ++j)
                        if (i != j && !tracealg::is_zero(m[i][j]))
                            throw std::invalid_argument("eval_at: first letter must be diagonal");
        }
    }

private:
    ScalarPoly trace_of_word_uncached(const Word& w) const {
        const auto& sp = spec();
        const int n = sp.n;
        const int L = static_cast<int>(w.size());
        ScalarPoly::Accumulator acc;
        ScalarPoly::Mono mono(layout_.count(), 0);
        // Depth-first sum over index cycles i_0 -> i_1 -> ... -> i_0.
        auto rec = [&](auto&& self, int pos, int start, int cur, int sign) -> void {
            if (pos == L) {
                auto [it, inserted] = acc.try_emplace(mono, ratio(sign));
                if (!inserted) it->second += sign;
                return;
            }
            int k = w[pos];
            for (int next = 0; next < n; ++next) {
                if (pos == L - 1 && next != start) continue;
                auto form = entry_form(k, cur, next);
                for (const auto& [var, s] : form) {
                    mono[var] += 1;
                    self(self, pos + 1, start, next, sign * s);
                    mono[var] -= 1;
                }
            }
        };
        for (int start = 0; start < n; ++start) rec(rec, 0, start, start, 1);
        return ScalarPoly::from_accumulator(std::move(acc), layout_.count());
    }

    Rational trace_of_word_at(const Word& w, const std::vector<QMatrix>& matrices) const {
        QMatrix prod = matrices[w[0] - 1];
        for (std::size_t p = 1; p < w.size(); ++p)
            prod = qmatrix_product(prod, matrices[w[p] - 1]);
        return qmatrix_trace(prod);
    }

    struct WordHash {
        std::size_t operator()(const Word& w) const {
            std::size_t h = 1469598103934665603ull;
            for (auto b : w) {
                h ^= b;
                h *= 1099511628211ull;
            }
            return h;
        }
    };

    VarLayout layout_;
    mutable std::unordered_map<Word, ScalarPoly, WordHash> trace_memo_;
    mutable std::mutex memo_mutex_;
};

// Deterministic random matrices respecting the spec flags: uniform entries
// with numerator in [-9, 9] and denominator in [1, 4] on the free entries.
inline std::vector<QMatrix> random_matrices(const GenericMatrixSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        long num = static_cast<long>(rng() % 19) - 9;
        long den = static_cast<long>(rng() % 4) + 1;
        return ratio(num, den);
    };
    std::vector<QMatrix> out;
    out.reserve(spec.d);
    for (int k = 1; k <= spec.d; ++k) {
        QMatrix m(spec.n, std::vector<Rational>(spec.n, Rational(0)));
        for (int i = 0; i < spec.n; ++i)
            for (int j = 0; j < spec.n; ++j) {
                if (spec.entry_is_zero(k, i, j) || spec.entry_is_dependent(k, i, j)) continue;
                m[i][j] = draw();
            }
        if (spec.traceless[k - 1]) {
            Rational sum(0);
            for (int t = 0; t < spec.n - 1; ++t) sum += m[t][t];
            m[spec.n - 1][spec.n - 1] = -sum;
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace tracealg
