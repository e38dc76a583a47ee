#pragma once

#include <json.hpp>

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tracealg/evaluate.hpp"
#include "tracealg/generators.hpp"
#include "tracealg/identities.hpp"
#include "tracealg/linalg.hpp"

namespace tracealg {

// A trace reduction for n x n matrices: the full-length multilinear trace
// Tr(X_1 ... X_{N(n)+1}) rewritten as a combination of shorter-trace products,
// obtained from a combination of fundamental identities whose full-length
// parts cancel down to that single trace.
struct ReductionRule {
    int n = 0;
    int letters = 0;  // N(n) + 1
    std::vector<std::pair<MonomialTuple, Rational>> combination;
    TracePolynomial rhs;

    Word lhs_word() const {
        Word w;
        for (int a = 1; a <= letters; ++a) w.push_back(static_cast<Letter>(a));
        return w;
    }
};

namespace detail {
inline bool is_full_length_term(const TraceMonomial& m, int letters) {
    return m.factors().size() == 1 && m.degree() == letters;
}
}  // namespace detail

// Rows: the N(n)! multilinear cyclic words of length N(n)+1, the identity
// word first, then ascending. Columns: multilinear_tuples(n). Entry (r, c) is
// the coefficient of row word among the full-length terms of F(tuple_c).
inline std::pair<RationalMatrix, std::vector<MonomialTuple>> build_reduction_system(int n) {
    const int letters = nagata_higman(n) + 1;
    auto tuples = multilinear_tuples(n);

    std::map<CyclicWord, int> row_of;
    {
        std::vector<Letter> rest;
        for (int a = 2; a <= letters; ++a) rest.push_back(static_cast<Letter>(a));
        int row = 0;
        do {
            Word w{1};
            w.insert(w.end(), rest.begin(), rest.end());
            row_of.emplace(CyclicWord(w), row++);
        } while (std::next_permutation(rest.begin(), rest.end()));
    }

    RationalMatrix a(static_cast<int>(row_of.size()), static_cast<int>(tuples.size()));
    for (std::size_t c = 0; c < tuples.size(); ++c) {
        auto f = fundamental_identity(tuples[c]);
        for (const auto& [mono, coeff] : f.terms()) {
            if (!detail::is_full_length_term(mono, letters)) continue;
            a.set(row_of.at(mono.factors().front()), static_cast<int>(c), coeff);
        }
    }
    return {std::move(a), std::move(tuples)};
}

// Builds the rule for a given combination of tuples, checking that the
// full-length parts add up to exactly Tr(X_1 ... X_{N+1}).
inline ReductionRule assemble_rule(int n,
                                   std::vector<std::pair<MonomialTuple, Rational>> combination) {
    const int letters = nagata_higman(n) + 1;
    TracePolynomial full, lower;
    for (const auto& [tuple, coeff] : combination) {
        auto f = fundamental_identity(tuple);
        for (const auto& [mono, c] : f.terms()) {
            if (detail::is_full_length_term(mono, letters))
                full.add_term(mono, c * coeff);
            else
                lower.add_term(mono, c * coeff);
        }
    }
    ReductionRule rule;
    rule.n = n;
    rule.letters = letters;
    rule.rhs = lower.scaled(ratio(-1));
    rule.combination = std::move(combination);
    if (!(full == TracePolynomial::trace(rule.lhs_word())))
        throw VerificationError("combination does not isolate the full-length trace");
    for (const auto& [mono, c] : rule.rhs.terms())
        if (mono.factors().size() < 2)
            throw VerificationError("reduction right-hand side has a full-length term");
    return rule;
}

// Checks that lhs - rhs is a trace identity: symbolically for n <= 2, at five
// seeded exact points otherwise.
inline void verify_rule(const ReductionRule& rule, std::uint64_t seed = 1) {
    TracePolynomial diff = TracePolynomial::trace(rule.lhs_word()) - rule.rhs;
    auto spec = GenericMatrixSpec::plain(rule.n, rule.letters);
    Evaluator ev(spec);
    if (rule.n <= 2) {
        if (!ev.pi(diff).is_zero())
            throw VerificationError("trace reduction is not an identity (symbolic check)");
        return;
    }
    for (std::uint64_t s = 0; s < 5; ++s)
        if (!is_zero(ev.eval_at(diff, random_matrices(spec, seed + s))))
            throw VerificationError("trace reduction is not an identity (point check)");
}

// Solves A x = e_1 and assembles the rule. free_seed = 0 takes the canonical
// particular solution (free variables zero, the combination supported on the
// leftmost independent columns); a nonzero seed adds seeded multiples of a few
// kernel directions, for the generic retry.
inline ReductionRule solve_reduction(int n, std::uint64_t free_seed = 0) {
    auto [a, tuples] = build_reduction_system(n);
    std::vector<SparseVec> columns(a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (const auto& [c, v] : a.row(r)) columns[c].emplace_back(r, v);
    ColumnSpanSolver solver(true);
    std::vector<int> free_cols;
    for (int c = 0; c < a.cols(); ++c) {
        if (solver.rank() == a.rows()) {
            free_cols.push_back(c);
            continue;
        }
        if (!solver.add_column(c, columns[c]).independent) free_cols.push_back(c);
    }
    auto combo = solver.probe_column({{0, ratio(1)}});
    if (!combo) throw std::logic_error("reduction system is inconsistent");
    std::vector<Rational> x(a.cols(), Rational(0));
    for (const auto& [c, v] : *combo) x[c] = v;
    if (free_seed != 0 && !free_cols.empty()) {
        std::mt19937_64 rng(free_seed);
        for (int pick = 0; pick < 3; ++pick) {
            int f = free_cols[rng() % free_cols.size()];
            Rational scale = ratio(static_cast<long>(rng() % 5) - 2);
            auto alpha = solver.probe_column(columns[f]);
            if (!alpha) continue;  // unreachable: f reduced to the span
            x[f] += scale;
            for (const auto& [c, v] : *alpha) x[c] -= scale * v;
        }
    }
    std::vector<std::pair<MonomialTuple, Rational>> combination;
    for (int c = 0; c < a.cols(); ++c)
        if (!is_zero(x[c])) combination.emplace_back(tuples[c], x[c]);
    ReductionRule rule = assemble_rule(n, std::move(combination));
    verify_rule(rule, free_seed + 1);
    return rule;
}

// The traceless form of the rule: letters 1..N are traceless, so monomials
// with a short trace of those letters drop out (the composite slot stays).
inline TracePolynomial traceless_specialization(const ReductionRule& rule) {
    TracePolynomial out;
    for (const auto& [mono, c] : rule.rhs.terms()) {
        bool drop = false;
        for (const auto& f : mono.factors())
            if (f.degree() == 1 && f.word().front() < rule.letters) drop = true;
        if (!drop) out.add_term(mono, c);
    }
    return out;
}

// One reduction step: substitute the canonical representative of t into the
// rule, with the composite tail in the last slot. Every factor of the result
// has degree strictly below deg(t). With traceless_letters, monomials that
// pick up a single-letter factor are dropped (their image vanishes).
inline TracePolynomial reduce_once(const CyclicWord& t, const ReductionRule& rule,
                                   bool traceless_letters = false) {
    const Word& w = t.word();
    const int k = static_cast<int>(w.size());
    if (k < rule.letters)
        throw std::invalid_argument("reduce_once: degree below the reducible range");
    std::vector<Word> assignment(rule.letters);
    for (int j = 0; j < rule.letters - 1; ++j) assignment[j] = Word{w[j]};
    assignment[rule.letters - 1] = Word(w.begin() + (rule.letters - 1), w.end());
    TracePolynomial image = substitute(rule.rhs, assignment);
    if (!traceless_letters) return image;
    TracePolynomial out;
    for (const auto& [mono, c] : image.terms()) {
        bool drop = false;
        for (const auto& f : mono.factors())
            if (f.degree() == 1) drop = true;
        if (!drop) out.add_term(mono, c);
    }
    return out;
}

// Applies reduce_once to every factor above the generator degree bound until
// none is left. Terminates because each step lowers the maximal factor degree.
inline TracePolynomial length_reduce(TracePolynomial p, const ReductionRule& rule,
                                     bool traceless_letters = false) {
    const int bound = rule.letters - 1;
    for (;;) {
        bool changed = false;
        TracePolynomial next;
        for (const auto& [mono, coeff] : p.terms()) {
            int big = -1;
            const auto& fs = mono.factors();
            for (std::size_t i = 0; i < fs.size(); ++i)
                if (fs[i].degree() > bound) big = static_cast<int>(i);
            if (big < 0) {
                next.add_term(mono, coeff);
                continue;
            }
            changed = true;
            std::vector<CyclicWord> rest_factors;
            for (std::size_t i = 0; i < fs.size(); ++i)
                if (static_cast<int>(i) != big) rest_factors.push_back(fs[i]);
            TracePolynomial replaced = reduce_once(fs[big], rule, traceless_letters);
            next += replaced.scaled(coeff) * TracePolynomial::term(TraceMonomial(rest_factors), ratio(1));
        }
        p = std::move(next);
        if (!changed) return p;
    }
}

// --- rule JSON ---------------------------------------------------------------

inline nlohmann::json to_json(const ReductionRule& rule) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [tuple, coeff] : rule.combination)
        terms.push_back({{"tuple", tuple.str()}, {"coeff", to_string(coeff)}});
    return {{"n", rule.n}, {"terms", std::move(terms)}};
}

// Import re-assembles and re-verifies, so a foreign rule in the same schema
// is usable for certification as long as it really is a trace reduction.
inline ReductionRule reduction_rule_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    std::vector<std::pair<MonomialTuple, Rational>> combination;
    for (const auto& t : j.at("terms"))
        combination.emplace_back(MonomialTuple::parse(t.at("tuple").get<std::string>()),
                                 parse_rational(t.at("coeff").get<std::string>()));
    ReductionRule rule = assemble_rule(n, std::move(combination));
    verify_rule(rule);
    return rule;
}

// --- the evaluation map R ------------------------------------------------------

// Rewrites formal trace polynomials into the polynomial ring on a generator
// table: factors of degree > N(n) are reduced by the rule until short, then
// every short trace is expressed in same-multidegree generator monomials (the
// expressing system is solved once per multidegree and cached). R is a graded
// ring map, is the identity on the image of the generator ring, and commutes
// with pi.
class Rewriter {
public:
    Rewriter(GeneratorTable gens, ReductionRule rule, unsigned threads = 1)
        : gens_(std::move(gens)),
          rule_(std::move(rule)),
          eval_table_(diag_first_spec(gens_.spec())),
          threads_(threads) {
        traceless_world_ = std::all_of(gens_.spec().traceless.begin(),
                                       gens_.spec().traceless.end(), [](bool b) { return b; });
        entry_images_.resize(gens_.size());
    }

    const GeneratorTable& table() const { return gens_; }
    const ReductionRule& rule() const { return rule_; }

    // Expression of a short trace in the generators, from the cached table.
    TPoly rewrite_word(const CyclicWord& w) {
        if (w.degree() > nagata_higman(gens_.n()))
            throw std::invalid_argument("rewrite_word: degree above the generator bound");
        return R_word(w);
    }

    TPoly R(const TracePolynomial& p) {
        TPoly out;
        for (const auto& [mono, c] : p.terms()) out += R_monomial(mono).scaled(c);
        return out;
    }

    // Whether the expressing system at md has full column rank.
    bool md_unique(const MultiDegree& md) {
        const MdTable& t = ensure_md(md);
        return t.unique;
    }
    const std::vector<TMono>& md_monomials(const MultiDegree& md) {
        return ensure_md(md).monomials;
    }

    // Substitutes the generator definitions back in (evaluable entries only).
    TracePolynomial image(const TPoly& r) const {
        TracePolynomial out;
        for (const auto& [m, c] : r.terms()) {
            TracePolynomial prod = TracePolynomial::term(TraceMonomial(), c);
            for (const auto& [idx, exp] : m.exps) {
                const auto& e = gens_[idx];
                if (e.linear_letter > 0)
                    throw std::logic_error("image: linear generator outside the trace world");
                for (int t = 0; t < exp; ++t) prod = prod * e.definition;
            }
            out += prod;
        }
        return out;
    }

    // pi-image of a T-monomial over the evaluable entries, in the diagonal
    // restriction world used for the expressing systems.
    ScalarPoly monomial_image(const TMono& m) {
        ScalarPoly out = ScalarPoly::constant(ratio(1), eval_table_.layout().count());
        for (const auto& [idx, exp] : m.exps)
            for (int t = 0; t < exp; ++t) out = out * entry_image(idx);
        return out;
    }

    const Evaluator& table_evaluator() const { return eval_table_; }

private:
    struct MdTable {
        std::vector<TMono> monomials;
        bool unique = false;
        std::map<CyclicWord, TPoly> exprs;
    };

    static GenericMatrixSpec diag_first_spec(GenericMatrixSpec s) {
        s.diagonal_first = true;
        return s;
    }

    const ScalarPoly& entry_image(int idx) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (entry_images_[idx]) return *entry_images_[idx];
        }
        ScalarPoly img = eval_table_.pi(gens_[idx].definition);
        std::lock_guard<std::mutex> lock(mutex_);
        if (!entry_images_[idx]) entry_images_[idx] = std::move(img);
        return *entry_images_[idx];
    }

    const MdTable& ensure_md(const MultiDegree& md) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = md_tables_.find(md);
            if (it != md_tables_.end()) return it->second;
        }
        MdTable t;
        t.monomials = gens_.monomials_of_multidegree(md);
        std::map<ScalarPoly::Mono, int> row_of;
        auto to_sparse = [&row_of](const ScalarPoly& p) {
            SparseVec col;
            for (const auto& [m, c] : p.terms()) {
                auto [it, inserted] = row_of.try_emplace(m, static_cast<int>(row_of.size()));
                col.emplace_back(it->second, c);
            }
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            return col;
        };
        ColumnSpanSolver solver;
        for (std::size_t c = 0; c < t.monomials.size(); ++c)
            solver.add_column(static_cast<int>(c), to_sparse(monomial_image(t.monomials[c])));
        t.unique = solver.rank() == static_cast<int>(t.monomials.size());
        for (const auto& w : necklaces_of_multidegree(md)) {
            auto combo = solver.probe_column(to_sparse(eval_table_.trace_of_word(w)));
            if (!combo)
                throw VerificationError("trace " + print_bracket(TraceMonomial({w})) +
                                        " is not expressible: not a generating set");
            TPoly expr;
            for (const auto& [cid, coeff] : *combo) expr.add_term(t.monomials[cid], coeff);
            t.exprs.emplace(w, std::move(expr));
        }
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = md_tables_.emplace(md, std::move(t));
        return it->second;
    }

    TPoly R_word(const CyclicWord& w) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = word_memo_.find(w);
            if (it != word_memo_.end()) return it->second;
        }
        TPoly out;
        if (w.degree() <= nagata_higman(gens_.n())) {
            const MdTable& t = ensure_md(multidegree(w, gens_.d()));
            out = t.exprs.at(w);
        } else {
            TracePolynomial reduced = reduce_once(w, rule_, traceless_world_);
            for (const auto& [mono, c] : reduced.terms()) out += R_monomial(mono).scaled(c);
        }
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = word_memo_.emplace(w, std::move(out));
        return it->second;
    }

    TPoly R_monomial(const TraceMonomial& mono) {
        TPoly out = TPoly::one();
        for (const auto& f : mono.factors()) {
            out = out * R_word(f);
            if (out.is_zero()) break;
        }
        return out;
    }

    GeneratorTable gens_;
    ReductionRule rule_;
    Evaluator eval_table_;
    unsigned threads_;
    bool traceless_world_ = false;
    std::vector<std::optional<ScalarPoly>> entry_images_;
    std::map<MultiDegree, MdTable> md_tables_;
    std::map<CyclicWord, TPoly> word_memo_;
    std::mutex mutex_;
};

}  // namespace tracealg
