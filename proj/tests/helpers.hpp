#pragma once

#include <random>

#include "tracealg/evaluate.hpp"
#include "tracealg/linalg.hpp"
#include "tracealg/trace_poly.hpp"

namespace testutil {

using namespace tracealg;

inline Rational random_rational(std::mt19937_64& rng, long num_bound = 9, long den_bound = 4) {
    long num = static_cast<long>(rng() % (2 * num_bound + 1)) - num_bound;
    long den = static_cast<long>(rng() % den_bound) + 1;
    return ratio(num, den);
}

inline RationalMatrix random_matrix(std::mt19937_64& rng, int rows, int cols,
                                    int fill_percent = 60) {
    RationalMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng() % 100 < static_cast<unsigned>(fill_percent))
                m.set(r, c, random_rational(rng, 5, 3));
    return m;
}

inline Word random_word(std::mt19937_64& rng, int d, int max_len = 5) {
    int len = 1 + static_cast<int>(rng() % max_len);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<Letter>(1 + rng() % d));
    return w;
}

inline TracePolynomial random_trace_poly(std::mt19937_64& rng, int d, int max_terms = 4,
                                         int max_factors = 3, int max_len = 4) {
    TracePolynomial p;
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
        std::vector<CyclicWord> factors;
        int nf = static_cast<int>(rng() % (max_factors + 1));
        for (int f = 0; f < nf; ++f) factors.emplace_back(random_word(rng, d, max_len));
        Rational c = random_rational(rng, 4, 3);
        if (is_zero(c)) c = ratio(1);
        p.add_term(TraceMonomial(std::move(factors)), c);
    }
    return p;
}

inline std::vector<Rational> point_from_matrices(const VarLayout& layout,
                                                 const std::vector<QMatrix>& ms) {
    std::vector<Rational> point(layout.count(), Rational(0));
    const auto& sp = layout.spec();
    for (int k = 1; k <= sp.d; ++k)
        for (int i = 0; i < sp.n; ++i)
            for (int j = 0; j < sp.n; ++j) {
                int idx = layout.index(k, i, j);
                if (idx >= 0) point[idx] = ms[k - 1][i][j];
            }
    return point;
}

}  // namespace testutil
