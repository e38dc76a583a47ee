#pragma once

#include <json.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tracealg/reduction.hpp"

namespace tracealg {

// Desk-scale configuration: symbolic vanishing degree, feasibility guards for
// the per-multidegree linear systems, evaluation-point count, seeds, threads.
struct Limits {
    int symbolic_vanish_max_degree = 9;
    std::size_t kernel_row_limit = 250000;
    std::size_t kernel_col_limit = 2500;
    int eval_points = 5;
    std::uint64_t seed = 1030;
    unsigned threads = 1;
    int hilbert_max_degree = 10;
    ProgressFn progress;
};

// Earlier letters take the higher counts first: (2,0), (1,1), (0,2), ...
inline std::vector<MultiDegree> multidegrees_of_total(int d, int k) {
    std::vector<MultiDegree> out;
    MultiDegree md(d);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == d - 1) {
            md.counts[pos] = left;
            out.push_back(md);
            return;
        }
        for (int c = left; c >= 0; --c) {
            md.counts[pos] = c;
            self(self, pos + 1, left - c);
        }
    };
    if (d == 0) return out;
    rec(rec, 0, k);
    return out;
}

// Number of degree-k monomials in v variables.
inline unsigned long long monomial_count_in_vars(int k, int v) {
    if (v == 0) return k == 0 ? 1 : 0;
    // C(k + v - 1, v - 1)
    unsigned long long r = 1;
    for (int i = 1; i <= v - 1; ++i) r = r * (k + i) / i;
    return r;
}

// Upper bound for the number of entry-variable monomials that can appear in a
// pi-image of the given multidegree (the graded piece factorizes per letter).
inline std::size_t md_slot_bound(const VarLayout& layout, const MultiDegree& md) {
    const auto& sp = layout.spec();
    unsigned long long slots = 1;
    for (int k = 1; k <= sp.d; ++k) {
        int vars = 0;
        for (int i = 0; i < sp.n; ++i)
            for (int j = 0; j < sp.n; ++j)
                if (layout.index(k, i, j) >= 0) ++vars;
        slots *= monomial_count_in_vars(md.counts[k - 1], vars);
        if (slots > (1ull << 62)) return static_cast<std::size_t>(-1);
    }
    return static_cast<std::size_t>(slots);
}

namespace detail {
// Shared per-table image cache. Rank and kernel computations on invariants
// are unaffected by the diagonal restriction, which is what makes the
// restricted world usable there; vanishing certification uses the full one.
class ImageCache {
public:
    explicit ImageCache(const GeneratorTable& gens, bool diagonal_restricted = true)
        : gens_(gens), eval_(diagonal_restricted ? restricted(gens.spec()) : gens.spec()) {
        images_.resize(gens.size());
    }

    const Evaluator& evaluator() const { return eval_; }

    const ScalarPoly& entry_image(int idx) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (images_[idx]) return *images_[idx];
        }
        ScalarPoly img = eval_.pi(gens_[idx].definition);
        std::lock_guard<std::mutex> lock(mutex_);
        if (!images_[idx]) images_[idx] = std::move(img);
        return *images_[idx];
    }

    ScalarPoly monomial_image(const TMono& m) {
        ScalarPoly out = ScalarPoly::constant(ratio(1), eval_.layout().count());
        for (const auto& [idx, exp] : m.exps)
            for (int t = 0; t < exp; ++t) out = out * entry_image(idx);
        return out;
    }

private:
    static GenericMatrixSpec restricted(GenericMatrixSpec s) {
        s.diagonal_first = true;
        return s;
    }
    const GeneratorTable& gens_;
    Evaluator eval_;
    std::vector<std::optional<ScalarPoly>> images_;
    std::mutex mutex_;
};

struct RowIndexer {
    std::map<ScalarPoly::Mono, int> rows;
    SparseVec to_sparse(const ScalarPoly& p) {
        SparseVec col;
        for (const auto& [m, c] : p.terms()) {
            auto [it, inserted] = rows.try_emplace(m, static_cast<int>(rows.size()));
            col.emplace_back(it->second, c);
        }
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return col;
    }
};

inline SparseVec tpoly_to_vec(const TPoly& p, const std::map<TMono, int>& index) {
    SparseVec v;
    for (const auto& [m, c] : p.terms()) v.emplace_back(index.at(m), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}
}  // namespace detail

// --- minimal generators -------------------------------------------------------

// Degree-by-degree cokernel computation: per multidegree, the traces that are
// independent of products of earlier generators become new generators, picked
// greedily in canonical word order (or reversed, for the pivot-invariance
// check). Traceless letters contribute the plain matrix traces as a free
// linear tensor factor.
inline GeneratorTable minimal_generators(const GenericMatrixSpec& spec, int max_total_degree,
                                         const Limits& limits = {}, bool reversed_order = false) {
    spec.validate();
    if (max_total_degree > nagata_higman(spec.n))
        throw std::invalid_argument("minimal_generators: degree above the generator bound");
    GenericMatrixSpec table_spec = spec;
    table_spec.diagonal_first = false;
    GenericMatrixSpec eval_spec = spec;
    eval_spec.diagonal_first = true;
    Evaluator ev(eval_spec);

    std::vector<GeneratorEntry> entries;
    for (int k = 1; k <= spec.d; ++k) {
        if (!spec.traceless[k - 1]) continue;
        GeneratorEntry e;
        e.linear_letter = k;
        entries.push_back(std::move(e));
    }

    std::vector<MultiDegree> chosen_mds;  // evaluable entries, in order
    std::vector<TracePolynomial> chosen_defs;

    for (int degree = 1; degree <= max_total_degree; ++degree) {
        auto mds = multidegrees_of_total(spec.d, degree);
        std::vector<std::vector<CyclicWord>> picked(mds.size());
        parallel_for(mds.size(), limits.threads, [&](std::size_t mi) {
            const MultiDegree& md = mds[mi];
            detail::RowIndexer indexer;
            ColumnSpanSolver solver(false);
            int next_id = 0;
            for (const auto& e : exponent_vectors(chosen_mds, md)) {
                TracePolynomial prod = TracePolynomial::one();
                for (std::size_t i = 0; i < chosen_defs.size(); ++i)
                    for (int t = 0; t < e[i]; ++t) prod = prod * chosen_defs[i];
                solver.add_column(next_id++, indexer.to_sparse(ev.pi(prod)));
            }
            auto words = necklaces_of_multidegree(md);
            if (reversed_order) std::reverse(words.begin(), words.end());
            for (const auto& w : words) {
                if (w.degree() == 1 && spec.traceless[w.word().front() - 1]) continue;
                auto outcome = solver.add_column(next_id++, indexer.to_sparse(ev.trace_of_word(w)));
                if (outcome.independent) picked[mi].push_back(w);
            }
            report_progress(limits.progress, "generators " + to_string(md) + ": " +
                                                 std::to_string(picked[mi].size()) + " new");
        });
        for (std::size_t mi = 0; mi < mds.size(); ++mi)
            for (const auto& w : picked[mi]) {
                chosen_mds.push_back(mds[mi]);
                chosen_defs.push_back(TracePolynomial::trace(w.word()));
                GeneratorEntry e;
                e.definition = chosen_defs.back();
                entries.push_back(std::move(e));
            }
    }
    for (std::size_t i = 0; i < entries.size(); ++i)
        entries[i].label = "t" + std::to_string(i + 1);
    return GeneratorTable(table_spec, std::move(entries));
}

// Checks the defining minimality invariant of a table: in every multidegree
// the entry images are independent modulo products of lower-degree entries.
inline void verify_generator_table(const GeneratorTable& gens, const Limits& limits = {}) {
    std::vector<int> idx = gens.evaluable_indices();
    detail::ImageCache cache(gens);
    std::map<MultiDegree, std::vector<int>> by_md;
    for (int i : idx) by_md[gens[i].mdeg].push_back(i);
    std::vector<std::pair<MultiDegree, std::vector<int>>> groups(by_md.begin(), by_md.end());
    std::vector<char> ok(groups.size(), 0);
    parallel_for(groups.size(), limits.threads, [&](std::size_t gi) {
        const auto& [md, members] = groups[gi];
        detail::RowIndexer indexer;
        ColumnSpanSolver solver(false);
        int next_id = 0;
        // Products of entries of strictly lower degree, same multidegree.
        std::vector<MultiDegree> degs;
        std::vector<int> lower;
        for (int i : idx)
            if (gens[i].degree < md.total()) {
                degs.push_back(gens[i].mdeg);
                lower.push_back(i);
            }
        for (const auto& e : exponent_vectors(degs, md)) {
            TMono m;
            for (std::size_t i = 0; i < lower.size(); ++i)
                if (e[i] > 0) m = m * TMono::variable(lower[i], e[i]);
            solver.add_column(next_id++, indexer.to_sparse(cache.monomial_image(m)));
        }
        bool all_new = true;
        for (int i : members) {
            auto outcome =
                solver.add_column(next_id++, indexer.to_sparse(cache.monomial_image(TMono::variable(i))));
            if (!outcome.independent) all_new = false;
        }
        ok[gi] = all_new ? 1 : 0;
        report_progress(limits.progress, "minimality " + to_string(md) + ": " +
                                             (all_new ? "ok" : "FAIL"));
    });
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        if (!ok[gi])
            throw VerificationError("generator table is not minimal at " +
                                    to_string(groups[gi].first));
}

// --- relation spaces and minimal relations -------------------------------------

struct RelationSpace {
    MultiDegree md;
    std::vector<TMono> monomials;
    int rank = 0;
    std::vector<TPoly> kernel;
    bool feasible = true;
    std::size_t estimated_rows = 0;
};

struct MdRelationCount {
    MultiDegree md;
    int relation_dim = 0;   // dim of the kernel at this multidegree
    int lower_span_dim = 0; // part explained by lower minimal relations
    int new_count = 0;      // new minimal relations
    bool feasible = true;
};

class RelationAnalyzer {
public:
    RelationAnalyzer(const GeneratorTable& gens, Limits limits = {})
        : gens_(gens), limits_(std::move(limits)), cache_(gens_) {}

    const GeneratorTable& table() const { return gens_; }
    const Limits& limits() const { return limits_; }

    // Kernel of the evaluation of same-multidegree generator monomials.
    // Results are cached per multidegree.
    RelationSpace relation_space(const MultiDegree& md, bool enforce_limits = false) {
        {
            std::lock_guard<std::mutex> lock(space_mutex_);
            auto it = space_cache_.find(md);
            if (it != space_cache_.end() && (it->second.feasible || enforce_limits))
                return it->second;
        }
        RelationSpace out;
        out.md = md;
        out.monomials = gens_.monomials_of_multidegree(md);
        out.estimated_rows = md_slot_bound(cache_.evaluator().layout(), md);
        if (enforce_limits && (out.estimated_rows > limits_.kernel_row_limit ||
                               out.monomials.size() > limits_.kernel_col_limit)) {
            out.feasible = false;
            std::lock_guard<std::mutex> lock(space_mutex_);
            space_cache_.emplace(md, out);
            return out;
        }
        detail::RowIndexer indexer;
        ColumnSpanSolver solver(true);
        for (std::size_t c = 0; c < out.monomials.size(); ++c) {
            auto outcome = solver.add_column(static_cast<int>(c),
                                             indexer.to_sparse(cache_.monomial_image(out.monomials[c])));
            if (!outcome.independent) {
                TPoly rel = TPoly::term(out.monomials[c], ratio(1));
                for (const auto& [pid, coeff] : outcome.combination)
                    rel.add_term(out.monomials[pid], -coeff);
                out.kernel.push_back(std::move(rel));
            }
        }
        out.rank = solver.rank();
        std::lock_guard<std::mutex> lock(space_mutex_);
        auto [it, inserted] = space_cache_.insert_or_assign(md, out);
        return it->second;
    }

    // New minimal relations per multidegree, ascending total degree. Every
    // multidegree whose kernel system exceeds the limits is reported
    // infeasible (this never happens below total degree 10 at desk scale).
    // md_filter, when set, restricts the multidegrees examined. Repeated
    // calls continue from the last processed degree, so the found relations
    // accumulate.
    std::vector<MdRelationCount> minimal_relation_counts(
        int up_to_degree, std::function<bool(const MultiDegree&)> md_filter = nullptr) {
        std::vector<MdRelationCount> report;
        for (int degree = next_degree_; degree <= up_to_degree; ++degree) {
            next_degree_ = degree + 1;
            auto all_mds = multidegrees_of_total(gens_.d(), degree);
            std::vector<MultiDegree> mds;
            for (const auto& md : all_mds)
                if (!md_filter || md_filter(md)) mds.push_back(md);
            std::vector<MdRelationCount> counts(mds.size());
            std::vector<std::vector<TPoly>> new_rels(mds.size());
            parallel_for(mds.size(), limits_.threads, [&](std::size_t mi) {
                auto r = analyze_md(mds[mi]);
                counts[mi] = r.first;
                new_rels[mi] = std::move(r.second);
            });
            for (std::size_t mi = 0; mi < mds.size(); ++mi) {
                report.push_back(counts[mi]);
                for (auto& rel : new_rels[mi]) relations_.emplace_back(mds[mi], std::move(rel));
            }
        }
        return report;
    }

    // Minimal relations found so far (multidegree, polynomial).
    const std::vector<std::pair<MultiDegree, TPoly>>& found_relations() const { return relations_; }
    void seed_relations(std::vector<std::pair<MultiDegree, TPoly>> rels) {
        relations_ = std::move(rels);
    }

    // Rank of the degree-md piece of the span {relation * monomial} inside
    // the monomial basis of md. strictly_lower excludes relations living at
    // md itself (the "lower relations" span of the certification checks).
    int relation_ideal_dim(const MultiDegree& md,
                           const std::vector<std::pair<MultiDegree, TPoly>>& rels,
                           const std::vector<TMono>& monomials, bool strictly_lower) {
        std::map<TMono, int> index;
        for (std::size_t i = 0; i < monomials.size(); ++i)
            index.emplace(monomials[i], static_cast<int>(i));
        ColumnSpanSolver solver(false);
        int id = 0, rank = 0;
        for (const auto& [rmd, rel] : rels) {
            if (!md.contains(rmd)) continue;
            if (strictly_lower && rmd == md) continue;
            for (const auto& mult : gens_.monomials_of_multidegree(md.minus(rmd))) {
                TPoly prod = rel * TPoly::term(mult, ratio(1));
                auto outcome = solver.add_column(id++, detail::tpoly_to_vec(prod, index));
                if (outcome.independent) ++rank;
            }
        }
        return rank;
    }

    detail::ImageCache& image_cache() { return cache_; }

private:
    std::pair<MdRelationCount, std::vector<TPoly>> analyze_md(const MultiDegree& md) {
        MdRelationCount count;
        count.md = md;
        RelationSpace space = relation_space(md, /*enforce_limits=*/true);
        if (!space.feasible) {
            count.feasible = false;
            report_progress(limits_.progress, "relations " + to_string(md) + ": skipped (" +
                                                  std::to_string(space.estimated_rows) + " rows)");
            return {count, {}};
        }
        count.relation_dim = static_cast<int>(space.kernel.size());
        std::vector<TPoly> fresh;
        if (!space.kernel.empty()) {
            std::map<TMono, int> index;
            for (std::size_t i = 0; i < space.monomials.size(); ++i)
                index.emplace(space.monomials[i], static_cast<int>(i));
            ColumnSpanSolver solver(false);
            int id = 0;
            for (const auto& [rmd, rel] : relations_) {
                if (!(md.contains(rmd)) || rmd == md) continue;
                for (const auto& mult : gens_.monomials_of_multidegree(md.minus(rmd))) {
                    TPoly prod = rel * TPoly::term(mult, ratio(1));
                    auto outcome = solver.add_column(id++, detail::tpoly_to_vec(prod, index));
                    if (outcome.independent) ++count.lower_span_dim;
                }
            }
            for (const auto& k : space.kernel) {
                auto outcome = solver.add_column(id++, detail::tpoly_to_vec(k, index));
                if (outcome.independent) {
                    ++count.new_count;
                    fresh.push_back(k);
                }
            }
        }
        report_progress(limits_.progress,
                        "relations " + to_string(md) + ": dim " +
                            std::to_string(count.relation_dim) + ", new " +
                            std::to_string(count.new_count));
        return {count, fresh};
    }

    const GeneratorTable& gens_;
    Limits limits_;
    detail::ImageCache cache_;
    std::vector<std::pair<MultiDegree, TPoly>> relations_;
    int next_degree_ = 1;
    std::map<MultiDegree, RelationSpace> space_cache_;
    std::mutex space_mutex_;
};

// --- certification of a relation-tuple table ------------------------------------

struct RelationCandidate {
    MonomialTuple tuple;
    MultiDegree declared_md;
};

struct CandidateReport {
    std::string tuple;
    MultiDegree declared_md, computed_md;
    bool header_ok = true;
    bool duplicate = false;
    bool vanishes = false;       // (b)
    bool new_relation = false;   // (c)
    std::string status;
    TPoly reduced;
    std::vector<std::string> orbit;  // letter-permuted tuples
};

struct MdCertSummary {
    MultiDegree md;
    int listed = 0;
    int distinct = 0;
    int lower_span_dim = 0;
    int contributed = 0;
    long kernel_dim = -1;            // -1: system beyond the limits
    std::string completeness;        // "complete" | "incomplete" | "unverified"
};

struct CertReport {
    std::vector<CandidateReport> candidates;
    std::vector<MdCertSummary> mds;
    bool all_ok = true;
};

// Runs the per-candidate checks: (a) declared multidegree, (b) vanishing of
// the reduced form under pi (symbolic within the configured degree, at seeded
// exact points beyond), (c) novelty modulo lower minimal relations, (d) that
// the candidates of each multidegree, together with the lifted lower
// relations, fill the whole relation space where that system is feasible.
// Header mismatches and duplicated tuples are flagged, not failed.
inline CertReport certify_relation_table(const std::vector<RelationCandidate>& candidates,
                                         Rewriter& rewriter, RelationAnalyzer& analyzer) {
    const GeneratorTable& gens = rewriter.table();
    const Limits& limits = analyzer.limits();
    const int d = gens.d();
    CertReport report;
    report.candidates.resize(candidates.size());

    int max_degree = 0;
    for (const auto& c : candidates)
        max_degree = std::max(max_degree, c.tuple.total_degree());

    // Lower minimal relations, restricted to multidegrees that can lift into
    // a candidate multidegree.
    std::vector<MultiDegree> targets;
    for (const auto& c : candidates) targets.push_back(c.tuple.multidegree(d));
    analyzer.minimal_relation_counts(max_degree - 1, [&targets](const MultiDegree& md) {
        for (const auto& t : targets)
            if (t.contains(md)) return true;
        return false;
    });

    // Reduced forms, computed up front (the rewriter memoizes across them).
    parallel_for(candidates.size(), limits.threads, [&](std::size_t i) {
        auto& line = report.candidates[i];
        line.tuple = candidates[i].tuple.str();
        line.declared_md = candidates[i].declared_md;
        line.computed_md = candidates[i].tuple.multidegree(d);
        line.header_ok = line.declared_md == line.computed_md;
        line.reduced = rewriter.R(fundamental_identity(candidates[i].tuple));
        report_progress(limits.progress, "reduced " + line.tuple);
    });

    // Duplicates, in listed order.
    std::set<MonomialTuple> seen;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        report.candidates[i].duplicate = !seen.insert(candidates[i].tuple.sorted()).second;

    // Orbit expansion under letter permutations.
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        std::vector<int> perm(d);
        std::iota(perm.begin(), perm.end(), 1);
        std::set<std::string> orbit;
        do {
            std::vector<Word> words;
            for (const auto& w : candidates[i].tuple.words) {
                Word img;
                for (Letter a : w) img.push_back(static_cast<Letter>(perm[a - 1]));
                words.push_back(std::move(img));
            }
            orbit.insert(MonomialTuple(std::move(words)).sorted().str());
        } while (std::next_permutation(perm.begin(), perm.end()));
        report.candidates[i].orbit.assign(orbit.begin(), orbit.end());
    }

    // Check (b). Within the symbolic range the candidates of one multidegree
    // share the pi-images of their generator monomials (computed in the full
    // variable world, one column at a time); beyond it, seeded exact points.
    {
        detail::ImageCache full_cache(gens, /*diagonal_restricted=*/false);
        Evaluator full_world(gens.spec());
        std::map<MultiDegree, std::vector<std::size_t>> symbolic_groups;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            auto& line = report.candidates[i];
            int degree = candidates[i].tuple.total_degree();
            if (degree <= limits.symbolic_vanish_max_degree) {
                symbolic_groups[line.computed_md].push_back(i);
                continue;
            }
            TracePolynomial image = rewriter.image(line.reduced);
            line.vanishes = true;
            for (int p = 0; p < limits.eval_points; ++p) {
                auto ms = random_matrices(gens.spec(),
                                          limits.seed + 7919 * static_cast<std::uint64_t>(i) + p);
                if (!is_zero(full_world.eval_at(image, ms))) line.vanishes = false;
            }
            report_progress(limits.progress, "vanishing " + line.tuple + " (points): " +
                                                 (line.vanishes ? "ok" : "FAIL"));
        }
        for (const auto& [md, members] : symbolic_groups) {
            std::set<TMono> used;
            for (std::size_t i : members)
                for (const auto& [m, c] : report.candidates[i].reduced.terms()) used.insert(m);
            std::vector<ScalarPoly::Accumulator> acc(members.size());
            for (const auto& tmono : used) {
                ScalarPoly col = full_cache.monomial_image(tmono);
                for (std::size_t k = 0; k < members.size(); ++k) {
                    auto it = report.candidates[members[k]].reduced.terms().find(tmono);
                    if (it == report.candidates[members[k]].reduced.terms().end()) continue;
                    for (const auto& [m, c] : col.terms()) {
                        auto [ait, inserted] = acc[k].try_emplace(m, it->second * c);
                        if (!inserted) {
                            ait->second += it->second * c;
                            if (is_zero(ait->second)) acc[k].erase(ait);
                        }
                    }
                }
            }
            for (std::size_t k = 0; k < members.size(); ++k) {
                auto& line = report.candidates[members[k]];
                line.vanishes = acc[k].empty();
                report_progress(limits.progress, "vanishing " + line.tuple + " (symbolic): " +
                                                     (line.vanishes ? "ok" : "FAIL"));
            }
        }
    }

    // Checks (c) and (d), grouped by computed multidegree in listed order.
    std::vector<MultiDegree> md_order;
    std::map<MultiDegree, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto& md = report.candidates[i].computed_md;
        auto [it, inserted] = groups.try_emplace(md);
        if (inserted) md_order.push_back(md);
        it->second.push_back(i);
    }
    std::sort(md_order.begin(), md_order.end());
    for (const auto& md : md_order) {
        MdCertSummary summary;
        summary.md = md;
        auto monomials = gens.monomials_of_multidegree(md);
        std::map<TMono, int> index;
        for (std::size_t i = 0; i < monomials.size(); ++i)
            index.emplace(monomials[i], static_cast<int>(i));
        ColumnSpanSolver solver(false);
        int id = 0;
        for (const auto& [rmd, rel] : analyzer.found_relations()) {
            if (!md.contains(rmd) || rmd == md) continue;
            for (const auto& mult : gens.monomials_of_multidegree(md.minus(rmd))) {
                auto outcome =
                    solver.add_column(id++, detail::tpoly_to_vec(rel * TPoly::term(mult, ratio(1)), index));
                if (outcome.independent) ++summary.lower_span_dim;
            }
        }
        std::set<MonomialTuple> group_seen;
        for (std::size_t i : groups.at(md)) {
            auto& line = report.candidates[i];
            ++summary.listed;
            if (group_seen.insert(candidates[i].tuple.sorted()).second) ++summary.distinct;
            if (line.reduced.is_zero()) {
                line.new_relation = false;
                continue;
            }
            auto outcome = solver.add_column(id++, detail::tpoly_to_vec(line.reduced, index));
            line.new_relation = outcome.independent;
            if (outcome.independent) ++summary.contributed;
        }
        RelationSpace space = analyzer.relation_space(md, /*enforce_limits=*/true);
        if (!space.feasible) {
            summary.completeness = "unverified";
        } else {
            summary.kernel_dim = static_cast<long>(space.kernel.size());
            summary.completeness =
                summary.lower_span_dim + summary.contributed == summary.kernel_dim
                    ? "complete"
                    : "incomplete";
        }
        report_progress(limits.progress, "multidegree " + to_string(md) + ": " +
                                             summary.completeness);
        report.mds.push_back(std::move(summary));
    }

    for (auto& line : report.candidates) {
        if (!line.vanishes) {
            line.status = "failed-vanishing";
        } else if (line.duplicate) {
            line.status = "duplicate";
        } else if (!line.new_relation) {
            line.status = "failed-not-new";
        } else {
            line.status = line.header_ok ? "certified" : "certified-header-corrected";
        }
        if (line.status.rfind("failed", 0) == 0) report.all_ok = false;
    }
    for (const auto& s : report.mds)
        if (s.completeness == "incomplete") report.all_ok = false;
    return report;
}

inline nlohmann::json to_json(const CertReport& report, const GeneratorTable& gens,
                              const ReductionRule& rule) {
    nlohmann::json out;
    out["rule"] = to_json(rule);
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : report.candidates) {
        nlohmann::json j;
        j["tuple"] = c.tuple;
        j["declared_mdeg"] = c.declared_md.counts;
        j["computed_mdeg"] = c.computed_md.counts;
        j["header_ok"] = c.header_ok;
        j["duplicate"] = c.duplicate;
        j["status"] = c.status;
        j["reduced"] = tpoly_to_json(c.reduced, gens);
        j["orbit"] = c.orbit;
        cands.push_back(std::move(j));
    }
    out["candidates"] = std::move(cands);
    nlohmann::json mds = nlohmann::json::array();
    for (const auto& s : report.mds) {
        nlohmann::json j;
        j["mdeg"] = s.md.counts;
        j["listed"] = s.listed;
        j["distinct"] = s.distinct;
        j["lower_span_dim"] = s.lower_span_dim;
        j["contributed"] = s.contributed;
        j["kernel_dim"] = s.kernel_dim;
        j["completeness"] = s.completeness;
        mds.push_back(std::move(j));
    }
    out["multidegrees"] = std::move(mds);
    out["all_ok"] = report.all_ok;
    return out;
}

// --- homogeneous system of parameters ---------------------------------------------

struct HsopTable {
    std::vector<TPoly> elements;
    // Variable elimination induced by the hsop: entry index -> image.
    std::map<int, TPoly> substitution;
};

struct HsopReport {
    bool count_ok = false;
    int expected_count = 0;
    bool substitution_well_defined = false;
    bool substitution_degree_preserving = false;
    bool kills_hsop = false;
    bool identities_ok = false;
    bool all_ok() const {
        return count_ok && substitution_well_defined && substitution_degree_preserving &&
               kills_hsop && identities_ok;
    }
};

inline TPoly substitute_tpoly(const TPoly& p, const std::map<int, TPoly>& subst) {
    TPoly out;
    for (const auto& [m, c] : p.terms()) {
        TPoly prod = TPoly::term(TMono::one(), c);
        for (const auto& [idx, exp] : m.exps) {
            auto it = subst.find(idx);
            TPoly factor = it != subst.end() ? it->second : TPoly::variable(idx);
            for (int t = 0; t < exp; ++t) prod = prod * factor;
        }
        out += prod;
    }
    return out;
}

// Checks element count against the Krull dimension, that the substitution is
// a well-defined degree-preserving variable elimination killing the hsop, and
// the supplied express-in-generators identities.
inline HsopReport hsop_consistency(const HsopTable& hsop, Rewriter& rewriter,
                                   const std::vector<std::pair<Word, TPoly>>& identity_checks) {
    const GeneratorTable& gens = rewriter.table();
    HsopReport report;
    report.expected_count = (gens.d() - 1) * gens.n() * gens.n() + 1;
    report.count_ok = static_cast<int>(hsop.elements.size()) == report.expected_count;

    report.substitution_well_defined = true;
    report.substitution_degree_preserving = true;
    auto degrees = gens.degrees();
    for (const auto& [idx, image] : hsop.substitution) {
        for (const auto& [m, c] : image.terms()) {
            int deg = m.total_degree(degrees);
            if (deg != degrees[idx]) report.substitution_degree_preserving = false;
            for (const auto& [vidx, exp] : m.exps)
                if (hsop.substitution.count(vidx)) report.substitution_well_defined = false;
        }
    }
    report.kills_hsop = true;
    for (const auto& h : hsop.elements)
        if (!substitute_tpoly(h, hsop.substitution).is_zero()) report.kills_hsop = false;

    report.identities_ok = true;
    for (const auto& [word, expected] : identity_checks)
        if (!(rewriter.rewrite_word(CyclicWord(word)) == expected)) report.identities_ok = false;
    return report;
}

// --- degree bounds --------------------------------------------------------------

struct BoundInput {
    std::vector<int> generator_degrees;  // any order
    long dim = 0;
    long a = 0;
};

// Sum of the top dim+1 generator degrees plus the Hilbert-series degree.
inline long derksen_bound(const BoundInput& input) {
    const std::size_t need = static_cast<std::size_t>(input.dim) + 1;
    if (input.generator_degrees.size() < need)
        throw std::invalid_argument("derksen_bound: not enough degrees supplied");
    std::vector<int> degrees = input.generator_degrees;
    std::sort(degrees.begin(), degrees.end(), std::greater<int>());
    long sum = 0;
    for (std::size_t i = 0; i < need; ++i) sum += degrees[i];
    return sum + input.a;
}

// --- Hilbert functions -----------------------------------------------------------

// Dimension of the degree-k piece of the spec'd trace ring: the rank of the
// evaluation of all trace monomials of total degree k, multidegree by
// multidegree.
inline long hilbert_function(const GenericMatrixSpec& spec, int k, const Limits& limits = {}) {
    if (k < 0) throw std::invalid_argument("hilbert_function: negative degree");
    if (k > limits.hilbert_max_degree)
        throw CutoffError("hilbert_function: degree beyond the configured cutoff");
    if (k == 0) return 1;
    GenericMatrixSpec eval_spec = spec;
    eval_spec.diagonal_first = true;
    Evaluator ev(eval_spec);
    auto mds = multidegrees_of_total(spec.d, k);
    std::vector<long> ranks(mds.size(), 0);
    parallel_for(mds.size(), limits.threads, [&](std::size_t mi) {
        const MultiDegree& md = mds[mi];
        // Necklace pool: every cyclic word fitting inside md (traceless
        // single letters map to zero and are skipped).
        std::vector<CyclicWord> pool;
        std::vector<MultiDegree> pool_mds;
        for (int deg = 1; deg <= md.total(); ++deg)
            for (const auto& sub : multidegrees_of_total(spec.d, deg)) {
                if (!md.contains(sub)) continue;
                for (const auto& w : necklaces_of_multidegree(sub)) {
                    if (w.degree() == 1 && spec.traceless[w.word().front() - 1]) continue;
                    pool.push_back(w);
                    pool_mds.push_back(sub);
                }
            }
        detail::RowIndexer indexer;
        ColumnSpanSolver solver(false);
        int id = 0;
        for (const auto& e : exponent_vectors(pool_mds, md)) {
            ScalarPoly img = ScalarPoly::constant(ratio(1), ev.layout().count());
            for (std::size_t i = 0; i < pool.size(); ++i)
                for (int t = 0; t < e[i]; ++t) img = img * ev.trace_of_word(pool[i]);
            solver.add_column(id++, indexer.to_sparse(img));
        }
        ranks[mi] = solver.rank();
        report_progress(limits.progress, "hilbert " + to_string(md) + ": rank " +
                                             std::to_string(solver.rank()));
    });
    long total = 0;
    for (long r : ranks) total += r;
    return total;
}

// Presented form: number of degree-k monomials on the generator symbols minus
// the dimension of the degree-k piece of the ideal spanned by the given
// minimal relations. Linear tensor-factor generators multiply through as free
// variables.
inline long hilbert_function_presented(const GeneratorTable& gens,
                                       const std::vector<std::pair<MultiDegree, TPoly>>& relations,
                                       int k, const Limits& limits = {}) {
    if (k < 0) throw std::invalid_argument("hilbert_function_presented: negative degree");
    if (k > limits.hilbert_max_degree)
        throw CutoffError("hilbert_function_presented: degree beyond the configured cutoff");
    long total = static_cast<long>(gens.monomial_count(k));
    if (relations.empty()) return total;
    const int linear = gens.linear_count();
    long ideal = 0;
    RelationAnalyzer analyzer(gens, limits);
    for (int qdeg = 1; qdeg <= k; ++qdeg) {
        int sdeg = k - qdeg;
        long s_monomials = static_cast<long>(monomial_count_in_vars(sdeg, linear));
        if (s_monomials == 0) continue;
        long qdim = 0;
        for (const auto& md : multidegrees_of_total(gens.d(), qdeg)) {
            auto monomials = gens.monomials_of_multidegree(md);
            if (monomials.empty()) continue;
            qdim += analyzer.relation_ideal_dim(md, relations, monomials, /*strictly_lower=*/false);
        }
        ideal += s_monomials * qdim;
    }
    return total - ideal;
}

}  // namespace tracealg
