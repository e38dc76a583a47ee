#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tracealg/errors.hpp"

namespace tracealg {

// Letters are 1-based matrix indices; words are nonempty letter sequences.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

inline void check_word(const Word& w, int d = 0) {
    if (w.empty()) throw ParseError("empty word");
    for (Letter a : w) {
        if (a < 1 || (d > 0 && a > d)) throw ParseError("letter out of range in word");
    }
}

// Booth's least-rotation algorithm, O(|w|).
inline std::size_t least_rotation_index(const Word& w) {
    const std::size_t n = w.size();
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        Letter sj = w[j % n];
        long i = f[j - k - 1];
        while (i != -1 && sj != w[(k + i + 1) % n]) {
            if (sj < w[(k + i + 1) % n]) k = j - i - 1;
            i = f[i];
        }
        if (sj != w[(k + i + 1) % n]) {
            if (sj < w[(k + i + 1) % n]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

inline Word rotate(const Word& w, std::size_t k) {
    Word r;
    r.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r.push_back(w[(i + k) % w.size()]);
    return r;
}

// Canonical representative of a trace word: the lexicographically least
// rotation. Two cyclic words are equal iff their canonical words are.
class CyclicWord {
public:
    CyclicWord() = default;
    explicit CyclicWord(const Word& w) {
        check_word(w);
        canonical_ = rotate(w, least_rotation_index(w));
    }

    const Word& word() const { return canonical_; }
    int degree() const { return static_cast<int>(canonical_.size()); }

    friend bool operator==(const CyclicWord& a, const CyclicWord& b) {
        return a.canonical_ == b.canonical_;
    }
    friend bool operator!=(const CyclicWord& a, const CyclicWord& b) { return !(a == b); }
    // Degree first so graded listings come out in degree order.
    friend bool operator<(const CyclicWord& a, const CyclicWord& b) {
        if (a.canonical_.size() != b.canonical_.size())
            return a.canonical_.size() < b.canonical_.size();
        return a.canonical_ < b.canonical_;
    }

private:
    Word canonical_;
};

inline CyclicWord canonicalize(const Word& w) { return CyclicWord(w); }

// Per-letter occurrence counts of a word (or any letter container).
struct MultiDegree {
    std::vector<int> counts;

    MultiDegree() = default;
    explicit MultiDegree(int d) : counts(d, 0) {}

    int total() const { return std::accumulate(counts.begin(), counts.end(), 0); }
    int size() const { return static_cast<int>(counts.size()); }
    bool is_zero() const { return total() == 0; }

    MultiDegree& operator+=(const MultiDegree& o) {
        if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0);
        for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
        return *this;
    }
    friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) { return a += b; }

    // Componentwise, only defined when no entry would go negative.
    bool contains(const MultiDegree& o) const {
        if (o.counts.size() > counts.size() && o.total() > 0) {
            for (std::size_t i = counts.size(); i < o.counts.size(); ++i)
                if (o.counts[i] > 0) return false;
        }
        for (std::size_t i = 0; i < std::min(counts.size(), o.counts.size()); ++i)
            if (o.counts[i] > counts[i]) return false;
        return true;
    }
    MultiDegree minus(const MultiDegree& o) const {
        MultiDegree r = *this;
        for (std::size_t i = 0; i < o.counts.size(); ++i) r.counts[i] -= o.counts[i];
        return r;
    }

    friend bool operator==(const MultiDegree& a, const MultiDegree& b) {
        return a.counts == b.counts;
    }
    friend bool operator<(const MultiDegree& a, const MultiDegree& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.counts < b.counts;
    }
};

inline MultiDegree multidegree(const Word& w, int d) {
    MultiDegree md(d);
    for (Letter a : w) {
        if (a < 1 || a > d) throw ParseError("letter exceeds alphabet size");
        md.counts[a - 1] += 1;
    }
    return md;
}

inline MultiDegree multidegree(const CyclicWord& w, int d) { return multidegree(w.word(), d); }

inline std::string to_string(const MultiDegree& md) {
    std::string s = "(";
    for (int i = 0; i < md.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(md.counts[i]);
    }
    return s + ")";
}

// All cyclic words of exact multidegree md, ascending in canonical-word order.
inline std::vector<CyclicWord> necklaces_of_multidegree(const MultiDegree& md) {
    std::vector<CyclicWord> out;
    const int total = md.total();
    if (total == 0) return out;
    Word current;
    std::vector<int> remaining = md.counts;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == total) {
            if (!current.empty() && rotate(current, least_rotation_index(current)) == current)
                out.emplace_back(CyclicWord(current));
            return;
        }
        for (std::size_t a = 0; a < remaining.size(); ++a) {
            if (remaining[a] == 0) continue;
            remaining[a] -= 1;
            current.push_back(static_cast<Letter>(a + 1));
            self(self, pos + 1);
            current.pop_back();
            remaining[a] += 1;
        }
    };
    rec(rec, 0);
    return out;
}

// --- the paper's two text notations -----------------------------------------

inline std::string print_word_digits(const Word& w) {
    std::string s;
    for (Letter a : w) {
        if (a > 9) throw UnsupportedError("digit notation needs letters below 10");
        s += static_cast<char>('0' + a);
    }
    return s;
}

// Tuple notation "(1132,223,1,3)"; digits only, d below 10.
inline std::vector<Word> parse_tuple(const std::string& text) {
    std::size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (begin >= end || text[begin] != '(' || text[end - 1] != ')')
        throw ParseError("tuple must be wrapped in parentheses: " + text);
    std::vector<Word> words;
    Word current;
    for (std::size_t i = begin + 1; i + 1 < end; ++i) {
        char c = text[i];
        if (c == ',') {
            if (current.empty()) throw ParseError("empty monomial in tuple: " + text);
            words.push_back(current);
            current.clear();
        } else if (c >= '1' && c <= '9') {
            current.push_back(static_cast<Letter>(c - '0'));
        } else {
            throw ParseError(std::string("unexpected character '") + c + "' in tuple: " + text);
        }
    }
    if (current.empty()) throw ParseError("empty monomial in tuple: " + text);
    words.push_back(current);
    return words;
}

inline std::string print_tuple(const std::vector<Word>& words) {
    std::string s = "(";
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) s += ',';
        s += print_word_digits(words[i]);
    }
    return s + ")";
}

}  // namespace tracealg
