#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tracealg/parallel.hpp"
#include "tracealg/rational.hpp"

namespace tracealg {

// Sparse vector, entries sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline void sparse_axpy(SparseVec& target, const Rational& factor, const SparseVec& source) {
    if (is_zero(factor) || source.empty()) return;
    SparseVec out;
    out.reserve(target.size() + source.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < source.size()) {
        if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
            out.push_back(std::move(target[i++]));
        } else if (i == target.size() || source[j].first < target[i].first) {
            out.emplace_back(source[j].first, factor * source[j].second);
            ++j;
        } else {
            Rational v = target[i].second + factor * source[j].second;
            if (!is_zero(v)) out.emplace_back(target[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    target = std::move(out);
}

inline void sparse_scale(SparseVec& v, const Rational& factor) {
    for (auto& [idx, val] : v) val *= factor;
}

// Exact sparse matrix over the rationals. Dimensions are fixed at creation;
// zero entries are never stored.
class RationalMatrix {
public:
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    static RationalMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r ? static_cast<int>(rows[0].size()) : 0;
        RationalMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rows[i][j] != 0) m.set(i, j, ratio(rows[i][j]));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, Rational v) {
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            if (is_zero(v))
                row.erase(it);
            else
                it->second = std::move(v);
        } else if (!is_zero(v)) {
            row.insert(it, {c, std::move(v)});
        }
    }

    Rational at(int r, int c) const {
        const auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) return it->second;
        return Rational(0);
    }

    const SparseVec& row(int r) const { return data_[r]; }
    SparseVec& mutable_row(int r) { return data_[r]; }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        std::vector<Rational> y(rows_, Rational(0));
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
        return y;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_, cols_;
    std::vector<SparseVec> data_;
};

struct RrefResult {
    RationalMatrix matrix;
    std::vector<int> pivot_columns;
};

// Reduced row echelon form. The result is the canonical rref of the input
// (pivots leftmost-first, every pivot column cleared), so it does not depend
// on the number of threads used for row elimination.
inline RrefResult rref(const RationalMatrix& m, unsigned threads = 1) {
    RationalMatrix r = m;
    std::vector<int> pivots;
    const int rows = m.rows(), cols = m.cols();
    for (int col = 0; col < cols; ++col) {
        int pivot_row = -1;
        for (int i = static_cast<int>(pivots.size()); i < rows; ++i) {
            const auto& row = r.row(i);
            if (!row.empty() && row.front().first == col) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row < 0) continue;
        int target = static_cast<int>(pivots.size());
        std::swap(r.mutable_row(pivot_row), r.mutable_row(target));
        auto& prow = r.mutable_row(target);
        Rational lead = prow.front().second;
        if (lead != 1) sparse_scale(prow, Rational(1) / lead);
        const SparseVec pivot_copy = prow;
        parallel_for(rows, threads, [&](std::size_t i) {
            if (static_cast<int>(i) == target) return;
            auto& row = r.mutable_row(static_cast<int>(i));
            auto it = std::lower_bound(row.begin(), row.end(), col,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it == row.end() || it->first != col) return;
            Rational f = -it->second;
            sparse_axpy(row, f, pivot_copy);
        });
        pivots.push_back(col);
        if (static_cast<int>(pivots.size()) == rows) break;
    }
    return {std::move(r), std::move(pivots)};
}

inline int rank(const RationalMatrix& m, unsigned threads = 1) {
    return static_cast<int>(rref(m, threads).pivot_columns.size());
}

// Basis of the right nullspace in rref-derived form: one vector per free
// column, free variable set to 1, earlier free variables 0.
inline std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m,
                                                       unsigned threads = 1) {
    RrefResult rr = rref(m, threads);
    const int cols = m.cols();
    std::vector<int> pivot_of_col(cols, -1);
    for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i)
        pivot_of_col[rr.pivot_columns[i]] = static_cast<int>(i);
    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < cols; ++f) {
        if (pivot_of_col[f] >= 0) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i) {
            Rational entry = rr.matrix.at(static_cast<int>(i), f);
            if (!is_zero(entry)) v[rr.pivot_columns[i]] = -entry;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = b (free variables 0), or nullopt if inconsistent.
inline std::optional<std::vector<Rational>> solve(const RationalMatrix& m,
                                                  const std::vector<Rational>& b,
                                                  unsigned threads = 1) {
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve: right-hand side length mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        if (!is_zero(b[r])) row.emplace_back(m.cols(), b[r]);
        aug.mutable_row(r) = std::move(row);
    }
    RrefResult rr = rref(aug, threads);
    std::vector<Rational> x(m.cols(), Rational(0));
    for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i) {
        if (rr.pivot_columns[i] == m.cols()) return std::nullopt;
        x[rr.pivot_columns[i]] = rr.matrix.at(static_cast<int>(i), m.cols());
    }
    return x;
}

// Incremental column-space solver used for the big graded systems: columns
// arrive one at a time and either join an echelonized basis or come back as
// an exact combination of the pivot columns seen so far. The combinations
// match what rref of the column-assembled matrix would give (they are unique),
// so kernels derived from them agree with kernel_basis.
class ColumnSpanSolver {
public:
    explicit ColumnSpanSolver(bool track_combinations = true)
        : track_combinations_(track_combinations) {}

    struct Outcome {
        bool independent = false;
        // For dependent columns: (pivot column id, coefficient) pairs.
        std::vector<std::pair<int, Rational>> combination;
    };

    Outcome add_column(int id, SparseVec column) {
        std::map<int, Rational> gamma;
        while (!column.empty()) {
            int lead = column.front().first;
            auto it = lead_to_basis_.find(lead);
            if (it == lead_to_basis_.end()) {
                Rational inv = Rational(1) / column.front().second;
                sparse_scale(column, inv);
                std::map<int, Rational> expr;
                if (track_combinations_) {
                    for (const auto& [bidx, g] : gamma)
                        for (const auto& [pid, coeff] : basis_[bidx].expr) {
                            Rational add = -g * coeff * inv;
                            auto [eit, inserted] = expr.try_emplace(pid, add);
                            if (!inserted) {
                                eit->second += add;
                                if (is_zero(eit->second)) expr.erase(eit);
                            }
                        }
                    expr[id] = inv;
                }
                lead_to_basis_[lead] = basis_.size();
                basis_.push_back({lead, std::move(column),
                                  {expr.begin(), expr.end()}});
                pivot_ids_.push_back(id);
                return {true, {}};
            }
            std::size_t bidx = it->second;
            Rational f = column.front().second;
            sparse_axpy(column, -f, basis_[bidx].vec);
            if (track_combinations_) gamma[bidx] += f;
        }
        Outcome out;
        out.independent = false;
        if (track_combinations_) {
            std::map<int, Rational> alpha;
            for (const auto& [bidx, g] : gamma) {
                if (is_zero(g)) continue;
                for (const auto& [pid, coeff] : basis_[bidx].expr) {
                    Rational add = g * coeff;
                    auto [ait, inserted] = alpha.try_emplace(pid, add);
                    if (!inserted) {
                        ait->second += add;
                        if (is_zero(ait->second)) alpha.erase(ait);
                    }
                }
            }
            out.combination.assign(alpha.begin(), alpha.end());
        }
        return out;
    }

    // Expresses the column over the pivot columns without inserting it;
    // nullopt when the column is independent of the span.
    std::optional<std::vector<std::pair<int, Rational>>> probe_column(SparseVec column) const {
        std::map<int, Rational> gamma;
        while (!column.empty()) {
            auto it = lead_to_basis_.find(column.front().first);
            if (it == lead_to_basis_.end()) return std::nullopt;
            std::size_t bidx = it->second;
            Rational f = column.front().second;
            sparse_axpy(column, -f, basis_[bidx].vec);
            gamma[bidx] += f;
        }
        std::map<int, Rational> alpha;
        for (const auto& [bidx, g] : gamma) {
            if (is_zero(g)) continue;
            for (const auto& [pid, coeff] : basis_[bidx].expr) {
                Rational add = g * coeff;
                auto [ait, inserted] = alpha.try_emplace(pid, add);
                if (!inserted) {
                    ait->second += add;
                    if (is_zero(ait->second)) alpha.erase(ait);
                }
            }
        }
        return std::vector<std::pair<int, Rational>>(alpha.begin(), alpha.end());
    }

    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<int>& pivot_ids() const { return pivot_ids_; }

private:
    struct BasisVec {
        int lead_row;
        SparseVec vec;  // leading coefficient 1
        std::vector<std::pair<int, Rational>> expr;
    };

    bool track_combinations_;
    std::vector<BasisVec> basis_;
    std::map<int, std::size_t> lead_to_basis_;
    std::vector<int> pivot_ids_;
};

}  // namespace tracealg
