#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tracealg/rational.hpp"
#include "tracealg/words.hpp"

namespace tracealg {

// Monomial in the generator symbols T_i: sparse sorted (index, exponent).
struct TMono {
    std::vector<std::pair<std::uint16_t, std::uint8_t>> exps;

    static TMono one() { return {}; }
    static TMono variable(int idx, int exp = 1) {
        TMono m;
        if (exp > 0) m.exps.emplace_back(static_cast<std::uint16_t>(idx),
                                         static_cast<std::uint8_t>(exp));
        return m;
    }

    bool is_unit() const { return exps.empty(); }

    int exponent_sum() const {
        int s = 0;
        for (const auto& [i, e] : exps) s += e;
        return s;
    }

    TMono operator*(const TMono& o) const {
        TMono out;
        out.exps.reserve(exps.size() + o.exps.size());
        std::size_t i = 0, j = 0;
        while (i < exps.size() || j < o.exps.size()) {
            if (j == o.exps.size() || (i < exps.size() && exps[i].first < o.exps[j].first)) {
                out.exps.push_back(exps[i++]);
            } else if (i == exps.size() || o.exps[j].first < exps[i].first) {
                out.exps.push_back(o.exps[j++]);
            } else {
                out.exps.emplace_back(exps[i].first,
                                      static_cast<std::uint8_t>(exps[i].second + o.exps[j].second));
                ++i;
                ++j;
            }
        }
        return out;
    }

    int total_degree(const std::vector<int>& gen_degrees) const {
        int t = 0;
        for (const auto& [i, e] : exps) t += gen_degrees[i] * e;
        return t;
    }
    MultiDegree multidegree(const std::vector<MultiDegree>& gen_mds) const {
        MultiDegree md = gen_mds.empty() ? MultiDegree() : MultiDegree(gen_mds[0].size());
        for (const auto& [i, e] : exps)
            for (int k = 0; k < e; ++k) md += gen_mds[i];
        return md;
    }

    friend bool operator==(const TMono& a, const TMono& b) { return a.exps == b.exps; }
    friend bool operator<(const TMono& a, const TMono& b) { return a.exps < b.exps; }
};

// Polynomial in the generator symbols, exact coefficients.
class TPoly {
public:
    using Terms = std::map<TMono, Rational>;

    TPoly() = default;
    static TPoly zero() { return {}; }
    static TPoly one() { return term(TMono::one(), ratio(1)); }
    static TPoly term(const TMono& m, const Rational& c) {
        TPoly p;
        p.add_term(m, c);
        return p;
    }
    static TPoly variable(int idx) { return term(TMono::variable(idx), ratio(1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const TMono& m, const Rational& c) {
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    TPoly& operator+=(const TPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    TPoly& operator-=(const TPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }

    TPoly operator*(const TPoly& o) const {
        TPoly out;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }
    TPoly scaled(const Rational& f) const {
        TPoly out;
        if (sgn(f) == 0) return out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * f);
        return out;
    }

    friend bool operator==(const TPoly& a, const TPoly& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

}  // namespace tracealg
