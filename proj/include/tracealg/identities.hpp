#pragma once

#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tracealg/trace_poly.hpp"

namespace tracealg {

// Degree bound for the generators of the trace algebra of n x n matrices;
// known only up to n = 4.
inline int nagata_higman(int n) {
    switch (n) {
        case 1: return 1;
        case 2: return 3;
        case 3: return 6;
        case 4: return 10;
        default:
            throw UnsupportedError("Nagata-Higman number unknown for n = " + std::to_string(n));
    }
}

// Ordered tuple of nonempty words, the argument of the fundamental identity.
struct MonomialTuple {
    std::vector<Word> words;

    MonomialTuple() = default;
    explicit MonomialTuple(std::vector<Word> w) : words(std::move(w)) {
        for (const auto& word : words) check_word(word);
    }
    static MonomialTuple parse(const std::string& text) { return MonomialTuple(parse_tuple(text)); }

    int arity() const { return static_cast<int>(words.size()); }
    int total_degree() const {
        int t = 0;
        for (const auto& w : words) t += static_cast<int>(w.size());
        return t;
    }
    MultiDegree multidegree(int d) const {
        MultiDegree md(d);
        for (const auto& w : words) md += tracealg::multidegree(w, d);
        return md;
    }
    int max_letter() const {
        int m = 0;
        for (const auto& w : words)
            for (Letter a : w) m = std::max<int>(m, a);
        return m;
    }
    std::string str() const { return print_tuple(words); }

    // F is symmetric in the tuple positions, so the sorted word list is a
    // canonical representative of the position-permutation orbit.
    MonomialTuple sorted() const {
        MonomialTuple t = *this;
        std::sort(t.words.begin(), t.words.end(), word_less);
        return t;
    }

    static bool word_less(const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
    friend bool operator<(const MonomialTuple& a, const MonomialTuple& b) {
        return std::lexicographical_compare(a.words.begin(), a.words.end(), b.words.begin(),
                                            b.words.end(), word_less);
    }
    friend bool operator==(const MonomialTuple& a, const MonomialTuple& b) {
        return a.words == b.words;
    }
};

// Bijection on {0, ..., m-1}.
struct Permutation {
    std::vector<int> images;

    explicit Permutation(std::vector<int> img) : images(std::move(img)) {
        std::vector<bool> seen(images.size(), false);
        for (int v : images) {
            if (v < 0 || v >= static_cast<int>(images.size()) || seen[v])
                throw std::invalid_argument("not a permutation");
            seen[v] = true;
        }
    }

    int size() const { return static_cast<int>(images.size()); }

    // Cycles start at their minimal element and follow the action order.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(images.size(), false);
        for (int start = 0; start < size(); ++start) {
            if (seen[start]) continue;
            std::vector<int> cycle;
            int cur = start;
            while (!seen[cur]) {
                seen[cur] = true;
                cycle.push_back(cur);
                cur = images[cur];
            }
            out.push_back(std::move(cycle));
        }
        return out;
    }

    int sign() const {
        int s = 1;
        for (const auto& c : cycles())
            if (c.size() % 2 == 0) s = -s;
        return s;
    }
};

// Tr_sigma: one trace factor per cycle, multiplying the tuple words along the
// cycle in action order.
inline TraceMonomial tr_sigma(const Permutation& sigma, const MonomialTuple& args) {
    if (sigma.size() != args.arity())
        throw std::invalid_argument("tr_sigma: permutation size must match tuple arity");
    std::vector<CyclicWord> factors;
    for (const auto& cycle : sigma.cycles()) {
        Word w;
        for (int pos : cycle) {
            const Word& m = args.words[pos];
            w.insert(w.end(), m.begin(), m.end());
        }
        factors.emplace_back(w);
    }
    return TraceMonomial(std::move(factors));
}

// The fundamental trace identity F(M_1, ..., M_{n+1}) for n x n matrices,
// normalized so that the full-length traces carry coefficient +1 (the sum is
// signed by sign(sigma) times the sign of an (n+1)-cycle).
inline TracePolynomial fundamental_identity(const MonomialTuple& m) {
    const int arity = m.arity();
    if (arity < 2) throw std::invalid_argument("fundamental identity needs arity n+1 >= 2");
    for (const auto& w : m.words)
        if (w.empty()) throw std::invalid_argument("fundamental identity: empty monomial");
    const int cycle_sign = (arity % 2 == 0) ? -1 : 1;  // sign of an arity-cycle
    std::vector<int> perm(arity);
    std::iota(perm.begin(), perm.end(), 0);
    TracePolynomial f;
    do {
        Permutation sigma(perm);
        f.add_term(tr_sigma(sigma, m), ratio(cycle_sign * sigma.sign()));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return f;
}

// All tuples of n+1 nonempty words using each of the letters 1..N(n)+1 exactly
// once, one representative per position-permutation orbit, sorted.
inline std::vector<MonomialTuple> multilinear_tuples(int n) {
    const int letters = nagata_higman(n) + 1;
    const int parts = n + 1;
    std::vector<Letter> perm(letters);
    std::iota(perm.begin(), perm.end(), 1);
    // Compositions of `letters` into `parts` positive parts.
    std::vector<std::vector<int>> compositions;
    std::vector<int> comp;
    auto rec = [&](auto&& self, int remaining, int slots) -> void {
        if (slots == 1) {
            if (remaining >= 1) {
                comp.push_back(remaining);
                compositions.push_back(comp);
                comp.pop_back();
            }
            return;
        }
        for (int take = 1; take + (slots - 1) <= remaining; ++take) {
            comp.push_back(take);
            self(self, remaining - take, slots - 1);
            comp.pop_back();
        }
    };
    rec(rec, letters, parts);

    std::set<MonomialTuple> seen;
    std::vector<Letter> p = perm;
    do {
        for (const auto& c : compositions) {
            std::vector<Word> words;
            words.reserve(parts);
            std::size_t offset = 0;
            for (int len : c) {
                words.emplace_back(p.begin() + offset, p.begin() + offset + len);
                offset += len;
            }
            seen.insert(MonomialTuple(std::move(words)).sorted());
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return {seen.begin(), seen.end()};
}

}  // namespace tracealg
