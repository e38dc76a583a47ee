// Acceptance suite: runs the toolkit's end-to-end checks and prints one
// PASS/FAIL line per criterion. Exit code 0 only if every criterion passes.
#include <chrono>
#include <iostream>
#include <sstream>

#include "tracealg/c33.hpp"
#include "tracealg/presentation.hpp"

using namespace tracealg;

namespace {

unsigned g_threads = 1;

std::string data_path(const char* name) {
    return c33::data_dir() + "/" + name;
}

Word mkword(std::initializer_list<int> letters) {
    Word out;
    for (int a : letters) out.push_back(static_cast<Letter>(a));
    return out;
}
TraceMonomial mkmono(std::initializer_list<std::initializer_list<int>> words) {
    std::vector<CyclicWord> fs;
    for (auto ww : words) {
        Word word;
        for (int a : ww) word.push_back(static_cast<Letter>(a));
        fs.emplace_back(word);
    }
    return TraceMonomial(std::move(fs));
}

MonomialTuple random_tuple(std::mt19937_64& rng, int arity, int d, int max_total) {
    std::vector<Word> words;
    int budget = max_total - arity;
    for (int i = 0; i < arity; ++i) {
        int extra = budget > 0 ? static_cast<int>(rng() % (budget + 1)) : 0;
        budget -= extra;
        Word word;
        for (int l = 0; l < 1 + extra; ++l) word.push_back(static_cast<Letter>(1 + rng() % d));
        words.push_back(std::move(word));
    }
    return MonomialTuple(std::move(words));
}

// ---- criterion 1: fundamental-identity vanishing ------------------------------

bool criterion1(std::ostream& log) {
    bool ok = true;
    {
        Evaluator ev(GenericMatrixSpec::plain(1, 2));
        for (const auto& t : multilinear_tuples(1))
            if (!ev.pi(fundamental_identity(t)).is_zero()) ok = false;
    }
    {
        Evaluator ev(GenericMatrixSpec::plain(2, 4));
        auto tuples = multilinear_tuples(2);
        if (tuples.size() != 12) ok = false;
        for (const auto& t : tuples)
            if (!ev.pi(fundamental_identity(t)).is_zero()) ok = false;
        log << "  n<=2: all multilinear tuples vanish symbolically\n";
    }
    {
        auto spec = GenericMatrixSpec::plain(3, 3);
        Evaluator ev(spec);
        std::mt19937_64 rng(101);
        for (int trial = 0; trial < 100; ++trial) {
            auto t = random_tuple(rng, 4, 3, 12);
            auto f = fundamental_identity(t);
            for (std::uint64_t p = 0; p < 5; ++p)
                if (!is_zero(ev.eval_at(f, random_matrices(spec, 1000 * trial + p)))) {
                    log << "  nonzero at " << t.str() << "\n";
                    ok = false;
                }
        }
        log << "  n=3: 100 random tuples vanish at 5 exact points each\n";
    }
    return ok;
}

// ---- criterion 2: the 2x2 reduction system -------------------------------------

bool criterion2(std::ostream& log) {
    bool ok = true;
    auto [a, tuples] = build_reduction_system(2);
    auto col_of = [&](const char* text) {
        MonomialTuple t = MonomialTuple::parse(text).sorted();
        for (std::size_t i = 0; i < tuples.size(); ++i)
            if (tuples[i] == t) return static_cast<int>(i);
        return -1;
    };
    int c1 = col_of("(12,3,4)"), c2 = col_of("(41,2,3)"), c3 = col_of("(24,1,3)");
    if (c1 < 0 || c2 < 0 || c3 < 0) return false;
    RationalMatrix sub(3, 3);
    const int cols[3] = {c1, c2, c3};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) sub.set(r, c, a.at(r, cols[c]));
    ok &= sub == RationalMatrix::from_rows({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
    auto x = solve(sub, {ratio(1), ratio(0), ratio(0)});
    ok &= x.has_value() &&
          *x == std::vector<Rational>{ratio(1, 2), ratio(1, 2), ratio(-1, 2)};
    log << "  3x3 subsystem and solution (1/2, 1/2, -1/2) reproduced\n";

    auto rule = solve_reduction(2);
    TracePolynomial red22;
    red22.add_term(mkmono({{1, 2, 3}, {4}}), ratio(1, 2));
    red22.add_term(mkmono({{1, 2}, {3, 4}}), ratio(1, 2));
    red22.add_term(mkmono({{1, 4}, {2, 3}}), ratio(1, 2));
    red22.add_term(mkmono({{1, 3}, {2, 4}}), ratio(-1, 2));
    ok &= traceless_specialization(rule) == red22;
    log << "  traceless rule matches the compact four-term form\n";
    return ok;
}

// ---- criterion 3: generator tables ----------------------------------------------

bool check_counts(const GeneratorTable& gens, const std::map<int, int>& expected,
                  std::ostream& log) {
    auto counts = gens.counts_by_degree();
    std::size_t expected_total = 0;
    bool ok = true;
    for (const auto& [deg, cnt] : expected) {
        expected_total += cnt;
        if (counts[deg] != cnt) {
            log << "  degree " << deg << ": got " << counts[deg] << ", want " << cnt << "\n";
            ok = false;
        }
    }
    if (gens.size() != expected_total) ok = false;
    return ok;
}

bool criterion3(std::ostream& log) {
    Limits limits;
    limits.threads = g_threads;
    bool ok = true;
    ok &= check_counts(minimal_generators(GenericMatrixSpec::plain(2, 2), 3, limits),
                       {{1, 2}, {2, 3}}, log);
    log << "  (2,2): 5 generators, degrees 1^2 2^3\n";
    ok &= check_counts(minimal_generators(GenericMatrixSpec::all_traceless(2, 3, true), 3, limits),
                       {{1, 3}, {2, 6}, {3, 1}}, log);
    log << "  (2,3): 10 generators, degrees 1^3 2^6 3^1\n";
    ok &= check_counts(minimal_generators(GenericMatrixSpec::all_traceless(3, 3, true), 6, limits),
                       {{1, 3}, {2, 6}, {3, 11}, {4, 9}, {5, 9}, {6, 10}}, log);
    log << "  (3,3): 48 generators, degrees 1^3 2^6 3^11 4^9 5^9 6^10\n";
    return ok;
}

// ---- shared 3x3 pipeline ---------------------------------------------------------

struct Pipeline33 {
    GeneratorTable gens;
    ReductionRule rule;
    Rewriter rewriter;
    Limits limits;
    RelationAnalyzer analyzer;

    explicit Pipeline33(unsigned threads)
        : gens(c33::load_generators(data_path("c33_generators.json"))),
          rule(solve_reduction(3)),
          rewriter(gens, rule, threads),
          limits(make_limits(threads)),
          analyzer(gens, limits) {}

    static Limits make_limits(unsigned threads) {
        Limits l;
        l.threads = threads;
        return l;
    }
};

Pipeline33& pipeline33() {
    static Pipeline33 p(g_threads);
    return p;
}

// ---- criterion 4: the degree-4 rewrite identities --------------------------------

bool criterion4(std::ostream& log) {
    auto& P = pipeline33();
    bool ok = true;
    for (const auto& [word, expected] : c33::degree4_identity_checks(P.gens)) {
        TPoly got = P.rewriter.rewrite_word(CyclicWord(word));
        bool match = got == expected;
        ok &= match;
        log << "  tr(" << print_word_digits(word) << ") -> " << P.gens.format_tpoly(got)
            << (match ? "" : "  MISMATCH") << "\n";
    }
    return ok;
}

// ---- criterion 5: relation counts and certification -------------------------------

bool criterion5(std::ostream& log) {
    auto& P = pipeline33();
    bool ok = true;

    log << "  verifying the generator table is minimal\n";
    verify_generator_table(P.gens, P.limits);

    // Expected new-relation counts per partition multidegree, degrees 7-9.
    std::map<std::vector<int>, int> partition_counts = {
        {{3, 2, 2}, 1}, {{4, 3, 1}, 1}, {{4, 2, 2}, 3}, {{3, 3, 2}, 5}, {{5, 2, 2}, 2},
        {{4, 4, 1}, 2}, {{5, 3, 1}, 1}, {{4, 3, 2}, 7}, {{3, 3, 3}, 13}};
    auto sorted_desc = [](const MultiDegree& md) {
        std::vector<int> v = md.counts;
        std::sort(v.begin(), v.end(), std::greater<int>());
        return v;
    };
    auto report = P.analyzer.minimal_relation_counts(9);
    for (const auto& c : report) {
        if (!c.feasible) {
            log << "  " << to_string(c.md) << ": infeasible below degree 10?\n";
            ok = false;
            continue;
        }
        auto it = partition_counts.find(sorted_desc(c.md));
        int expected = (c.md.total() >= 7 && it != partition_counts.end()) ? it->second : 0;
        if (c.new_count != expected) {
            log << "  count mismatch at " << to_string(c.md) << ": got " << c.new_count
                << ", want " << expected << "\n";
            ok = false;
        }
    }
    log << "  new-relation counts match the table on degrees 7-9 (all multidegrees)\n";

    auto candidates = c33::load_relations(data_path("c33_relations.json"));
    CertReport cert = certify_relation_table(candidates, P.rewriter, P.analyzer);

    int duplicates = 0, corrected = 0;
    bool seen_dup_3222 = false;
    for (const auto& line : cert.candidates) {
        if (!line.vanishes) {
            log << "  vanishing FAILED for " << line.tuple << "\n";
            ok = false;
        }
        if (line.duplicate) {
            ++duplicates;
            if (line.tuple == "(3222,111,1,3)") seen_dup_3222 = true;
            continue;
        }
        if (!line.header_ok) {
            ++corrected;
            log << "  header corrected: " << line.tuple << " declared "
                << to_string(line.declared_md) << ", computed " << to_string(line.computed_md)
                << ", status " << line.status << "\n";
            continue;
        }
        if (line.status != "certified") {
            log << "  " << line.tuple << ": " << line.status << "\n";
            ok = false;
        }
    }
    if (!seen_dup_3222) {
        log << "  duplicated (3222,111,1,3) not flagged\n";
        ok = false;
    }
    log << "  " << duplicates << " duplicates flagged, " << corrected
        << " header corrections flagged\n";

    for (const auto& s : cert.mds) {
        if (s.md.total() <= 9) {
            if (s.completeness != "complete") {
                log << "  " << to_string(s.md) << " is " << s.completeness << "\n";
                ok = false;
            }
        } else {
            log << "  " << to_string(s.md) << ": kernel "
                << (s.kernel_dim < 0 ? std::string("unverified") : std::to_string(s.kernel_dim))
                << ", span " << s.lower_span_dim << "+" << s.contributed << ", "
                << s.completeness << "\n";
        }
    }
    return ok;
}

// ---- criterion 6: degree bounds ----------------------------------------------------

bool criterion6(std::ostream& log) {
    bool ok = true;
    BoundInput generic;
    generic.generator_degrees.assign(20, 9);
    generic.dim = 19;
    generic.a = -19;
    ok &= derksen_bound(generic) == 161;

    BoundInput concrete;
    for (int i = 0; i < 10; ++i) concrete.generator_degrees.push_back(6);
    for (int i = 0; i < 9; ++i) concrete.generator_degrees.push_back(5);
    for (int i = 0; i < 9; ++i) concrete.generator_degrees.push_back(4);
    for (int i = 0; i < 11; ++i) concrete.generator_degrees.push_back(3);
    for (int i = 0; i < 6; ++i) concrete.generator_degrees.push_back(2);
    for (int i = 0; i < 3; ++i) concrete.generator_degrees.push_back(1);
    concrete.dim = 19;
    concrete.a = -27;
    ok &= derksen_bound(concrete) == 82;

    BoundInput modulo;
    modulo.generator_degrees = concrete.generator_degrees;
    modulo.dim = 0;
    modulo.a = 48 - 27;
    ok &= derksen_bound(modulo) == 27;
    log << "  bounds 161, 82, 27 reproduced\n";
    return ok;
}

// ---- criterion 7: Hilbert consistency ----------------------------------------------

bool criterion7(std::ostream& log) {
    bool ok = true;
    Limits limits;
    limits.threads = g_threads;
    limits.hilbert_max_degree = 10;
    {
        auto spec = GenericMatrixSpec::plain(2, 2);
        auto gens = minimal_generators(spec, 3, limits);
        for (int k = 0; k <= 10; ++k) {
            long direct = hilbert_function(spec, k, limits);
            long presented = hilbert_function_presented(gens, {}, k, limits);
            if (direct != presented) {
                log << "  (2,2) k=" << k << ": " << direct << " vs " << presented << "\n";
                ok = false;
            }
        }
        log << "  (2,2): direct and presented agree for k <= 10\n";
    }
    {
        auto plain = GenericMatrixSpec::plain(2, 3);
        auto gens = minimal_generators(GenericMatrixSpec::all_traceless(2, 3, true), 3, limits);
        RelationAnalyzer analyzer(gens, limits);
        analyzer.minimal_relation_counts(6);
        for (int k = 0; k <= 10; ++k) {
            long direct = hilbert_function(plain, k, limits);
            long presented =
                hilbert_function_presented(gens, analyzer.found_relations(), k, limits);
            if (direct != presented) {
                log << "  (2,3) k=" << k << ": " << direct << " vs " << presented << "\n";
                ok = false;
            }
        }
        log << "  (2,3): direct and presented agree for k <= 10\n";
    }
    {
        auto& P = pipeline33();
        Limits limits33 = P.limits;
        limits33.hilbert_max_degree = 7;
        auto plain = GenericMatrixSpec::plain(3, 3);
        P.analyzer.minimal_relation_counts(7);
        for (int k = 0; k <= 7; ++k) {
            long direct = hilbert_function(plain, k, limits33);
            long presented =
                hilbert_function_presented(P.gens, P.analyzer.found_relations(), k, limits33);
            log << "  (3,3) k=" << k << ": dim " << direct << "\n";
            if (direct != presented) {
                log << "  (3,3) k=" << k << ": direct " << direct << " vs presented "
                    << presented << "\n";
                ok = false;
            }
        }
        log << "  (3,3): direct and presented agree for k <= 7\n";
    }
    return ok;
}

// Small random trace polynomial used by the property suite.
TracePolynomial testpoly(std::mt19937_64& rng) {
    TracePolynomial p;
    int terms = 1 + rng() % 3;
    for (int t = 0; t < terms; ++t) {
        std::vector<CyclicWord> fs;
        int nf = rng() % 3;
        for (int f = 0; f < nf; ++f) {
            Word w;
            int len = 1 + rng() % 3;
            for (int i = 0; i < len; ++i) w.push_back(static_cast<Letter>(1 + rng() % 3));
            fs.emplace_back(w);
        }
        long num = static_cast<long>(rng() % 9) - 4;
        p.add_term(TraceMonomial(std::move(fs)), ratio(num == 0 ? 1 : num, 1 + rng() % 3));
    }
    return p;
}

// ---- criterion 8: property suites ---------------------------------------------------

bool criterion8(std::ostream& log) {
    bool ok = true;
    auto random_matrix = [](std::mt19937_64& rng, int rows, int cols) {
        RationalMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng() % 100 < 60) {
                    long num = static_cast<long>(rng() % 11) - 5;
                    long den = static_cast<long>(rng() % 3) + 1;
                    m.set(r, c, ratio(num, den));
                }
        return m;
    };

    {
        std::mt19937_64 rng(801);
        for (int t = 0; t < 100; ++t) {
            auto m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
            auto once = rref(m);
            ok &= rref(once.matrix).matrix == once.matrix;
        }
        log << "  rref idempotence: 100 cases\n";
    }
    {
        std::mt19937_64 rng(802);
        for (int t = 0; t < 100; ++t) {
            auto m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
            ok &= rank(m) + static_cast<int>(kernel_basis(m).size()) == m.cols();
        }
        log << "  rank-nullity: 100 cases\n";
    }
    {
        std::mt19937_64 rng(803);
        Evaluator ev(GenericMatrixSpec::plain(2, 3));
        for (int t = 0; t < 100; ++t) {
            auto p = testpoly(rng);
            auto q = testpoly(rng);
            ok &= ev.pi(p * q) == ev.pi(p) * ev.pi(q);
            ok &= ev.pi(p + q) == ev.pi(p) + ev.pi(q);
        }
        log << "  pi homomorphism: 100 cases\n";
    }
    {
        std::mt19937_64 rng(804);
        Evaluator ev(GenericMatrixSpec::plain(2, 3));
        for (int t = 0; t < 100; ++t) {
            Word word;
            int len = 1 + rng() % 5;
            for (int i = 0; i < len; ++i) word.push_back(static_cast<Letter>(1 + rng() % 3));
            auto img = ev.pi(TracePolynomial::trace(word));
            for (const auto& [m, c] : img.terms()) {
                int deg = 0;
                for (auto e : m) deg += e;
                ok &= deg == len;
            }
        }
        log << "  pi grading: 100 cases\n";
    }
    {
        auto gens = minimal_generators(GenericMatrixSpec::plain(2, 2), 3);
        auto rule = solve_reduction(2);
        Rewriter rewriter(gens, rule);
        auto mdegs = gens.multidegrees();
        std::mt19937_64 rng(805);
        for (int t = 0; t < 100; ++t) {
            Word word;
            int len = 1 + rng() % 7;
            for (int i = 0; i < len; ++i) word.push_back(static_cast<Letter>(1 + rng() % 2));
            TPoly r = rewriter.R(TracePolynomial::trace(word));
            ok &= rewriter.R(rewriter.image(r)) == r;
            MultiDegree md = multidegree(word, 2);
            for (const auto& [m, c] : r.terms()) ok &= m.multidegree(mdegs) == md;
        }
        log << "  R idempotence and multigrading: 100 cases\n";
    }
    {
        std::mt19937_64 rng(806);
        for (int t = 0; t < 100; ++t) {
            Word word;
            int len = 1 + rng() % 8;
            for (int i = 0; i < len; ++i) word.push_back(static_cast<Letter>(1 + rng() % 4));
            CyclicWord canon(word);
            for (std::size_t k = 0; k < word.size(); ++k)
                ok &= CyclicWord(rotate(word, k)) == canon;
        }
        log << "  canonical-rotation invariance: 100 cases\n";
    }
    {
        std::mt19937_64 rng(807);
        for (int t = 0; t < 100; ++t) {
            auto m = random_matrix(rng, 1 + rng() % 7, 1 + rng() % 7);
            auto serial = rref(m, 1);
            auto parallel = rref(m, 4);
            ok &= serial.matrix == parallel.matrix &&
                  serial.pivot_columns == parallel.pivot_columns;
        }
        log << "  determinism across thread counts: 100 cases\n";
    }
    return ok;
}

}  // namespace


int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
        if (arg == "--threads" && i + 1 < argc) g_threads = std::atoi(argv[++i]);
    }
    if (g_threads == 0) g_threads = default_thread_count();

    struct Entry {
        int number;
        const char* name;
        bool (*run)(std::ostream&);
    };
    const Entry entries[] = {
        {1, "fundamental-identity vanishing", criterion1},
        {2, "2x2 reduction system and compact rule", criterion2},
        {3, "generator tables (2,2), (2,3), (3,3)", criterion3},
        {4, "degree-4 rewrite identities", criterion4},
        {5, "relation counts and certification", criterion5},
        {6, "Derksen-type bounds", criterion6},
        {7, "Hilbert consistency", criterion7},
        {8, "property suites", criterion8},
    };

    bool all_ok = true;
    for (const auto& e : entries) {
        if (only && e.number != only) continue;
        std::ostringstream log;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = e.run(log);
        } catch (const std::exception& ex) {
            log << "  exception: " << ex.what() << "\n";
        }
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        std::cout << "CRITERION " << e.number << " [" << e.name << "]: "
                  << (ok ? "PASS" : "FAIL") << " (" << secs << "s)\n"
                  << log.str();
        std::cout.flush();
        all_ok &= ok;
    }
    std::cout << (all_ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << "\n";
    return all_ok ? 0 : 1;
}
