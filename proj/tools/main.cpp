// Command-line front end: identity expansion, trace reduction, generator and
// relation computation, certification, degree bounds and Hilbert functions.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "tracealg/c33.hpp"
#include "tracealg/presentation.hpp"

using namespace tracealg;

namespace {

struct GlobalOpts {
    std::string format = "text";
    unsigned threads = 0;
    std::uint64_t seed = 1030;
    bool quiet = false;
};

Limits make_limits(const GlobalOpts& g) {
    Limits limits;
    limits.threads = g.threads ? g.threads : default_thread_count();
    limits.seed = g.seed;
    if (!g.quiet)
        limits.progress = [](const std::string& line) { std::cerr << line << "\n"; };
    return limits;
}

bool json_mode(const GlobalOpts& g) { return g.format == "json"; }

void emit(const nlohmann::json& j) { std::cout << j.dump(1) << "\n"; }

GenericMatrixSpec spec_from(int n, int d, bool traceless, bool diagonal_first) {
    return traceless ? GenericMatrixSpec::all_traceless(n, d, diagonal_first)
                     : GenericMatrixSpec::plain(n, d, diagonal_first);
}

Word parse_word_digits(const std::string& text) {
    std::string digits = text;
    if (digits.size() >= 2 && digits.front() == '[' && digits.back() == ']')
        digits = digits.substr(1, digits.size() - 2);
    Word w;
    for (char c : digits) {
        if (c < '1' || c > '9') throw ParseError("word must be digits 1-9: " + text);
        w.push_back(static_cast<Letter>(c - '0'));
    }
    if (w.empty()) throw ParseError("empty word");
    return w;
}

std::vector<int> parse_degree_list(const std::string& text) {
    // "6x10,5x9,4,3" -> ten 6s, nine 5s, one 4, one 3
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? text.size() : comma + 1;
        if (item.empty()) throw ParseError("empty item in degree list");
        std::size_t x = item.find('x');
        int degree = 0, count = 1;
        try {
            if (x == std::string::npos) {
                degree = std::stoi(item);
            } else {
                degree = std::stoi(item.substr(0, x));
                count = std::stoi(item.substr(x + 1));
            }
        } catch (const std::exception&) {
            throw ParseError("bad degree item: " + item);
        }
        if (degree < 1 || count < 1) throw ParseError("bad degree item: " + item);
        for (int i = 0; i < count; ++i) out.push_back(degree);
    }
    return out;
}

ReductionRule obtain_rule(int n, const std::string& rule_file, const GlobalOpts& g) {
    if (!rule_file.empty()) return reduction_rule_from_json(c33::load_json_file(rule_file));
    if (!g.quiet) std::cerr << "solving the reduction system for n = " << n << "\n";
    if (n >= 4) std::cerr << "warning: n >= 4 reduction systems are very expensive\n";
    return solve_reduction(n);
}

int run_identity(int n, const std::string& tuple_text, const GlobalOpts& g) {
    MonomialTuple tuple = MonomialTuple::parse(tuple_text);
    if (tuple.arity() != n + 1)
        throw ParseError("tuple arity " + std::to_string(tuple.arity()) +
                         " does not match n+1 = " + std::to_string(n + 1));
    TracePolynomial f = fundamental_identity(tuple);
    if (json_mode(g)) {
        nlohmann::json j = to_json(f);
        j["tuple"] = tuple.str();
        j["bracket"] = print_bracket(f);
        emit(j);
    } else {
        std::cout << print_bracket(f) << "\n";
    }
    return 0;
}

int run_reduce(int n, const std::string& word_text, const std::string& rule_file,
               const std::string& emit_rule, bool traceless, const GlobalOpts& g) {
    ReductionRule rule = obtain_rule(n, rule_file, g);
    if (!emit_rule.empty()) {
        std::ofstream out(emit_rule);
        out << to_json(rule).dump(1) << "\n";
    }
    Word w = parse_word_digits(word_text);
    TracePolynomial reduced = length_reduce(TracePolynomial::trace(w), rule, traceless);
    if (json_mode(g)) {
        nlohmann::json j = to_json(reduced);
        j["input"] = print_bracket(TraceMonomial::trace(w));
        j["bracket"] = print_bracket(reduced);
        emit(j);
    } else {
        std::cout << print_bracket(reduced) << "\n";
    }
    return 0;
}

int run_generators(int n, int d, bool traceless, bool diagonal_first, int max_degree,
                   const GlobalOpts& g) {
    Limits limits = make_limits(g);
    int bound = max_degree > 0 ? max_degree : nagata_higman(n);
    auto gens = minimal_generators(spec_from(n, d, traceless, diagonal_first), bound, limits);
    if (json_mode(g)) {
        emit(to_json(gens));
    } else {
        std::cout << gens.size() << " generators\n";
        for (const auto& e : gens.entries()) {
            std::cout << "  " << e.label << "  mdeg " << to_string(e.mdeg) << "  ";
            if (e.linear_letter > 0)
                std::cout << "Tr(X" << e.linear_letter << ") (free linear part)";
            else
                std::cout << print_bracket(e.definition);
            std::cout << "\n";
        }
    }
    return 0;
}

GeneratorTable obtain_generators(int n, int d, bool traceless, const std::string& gens_file,
                                 const Limits& limits) {
    if (!gens_file.empty()) return c33::load_generators(gens_file);
    return minimal_generators(spec_from(n, d, traceless, true), nagata_higman(n), limits);
}

int run_relations(int n, int d, bool traceless, int up_to, const std::string& gens_file,
                  const GlobalOpts& g) {
    Limits limits = make_limits(g);
    GeneratorTable gens = obtain_generators(n, d, traceless, gens_file, limits);
    RelationAnalyzer analyzer(gens, limits);
    auto report = analyzer.minimal_relation_counts(up_to);
    nlohmann::json j;
    j["conjectured_bound"] = n * (n + 1);
    nlohmann::json rows = nlohmann::json::array();
    long total = 0;
    for (const auto& c : report) {
        if (!c.feasible) {
            rows.push_back({{"mdeg", c.md.counts}, {"status", "unverified"}});
            continue;
        }
        if (c.new_count == 0 && c.relation_dim == 0) continue;
        rows.push_back({{"mdeg", c.md.counts},
                        {"relation_dim", c.relation_dim},
                        {"lower_span_dim", c.lower_span_dim},
                        {"new", c.new_count}});
        total += c.new_count;
    }
    j["multidegrees"] = std::move(rows);
    j["total_new"] = total;
    if (json_mode(g)) {
        emit(j);
    } else {
        for (const auto& row : j["multidegrees"]) {
            std::cout << "mdeg " << row["mdeg"].dump();
            if (row.contains("status"))
                std::cout << "  " << row["status"].get<std::string>() << "\n";
            else
                std::cout << "  dim " << row["relation_dim"] << "  new " << row["new"] << "\n";
        }
        std::cout << "total new relations: " << total << "\n";
        std::cout << "conjectured degree bound n(n+1): " << n * (n + 1) << "\n";
    }
    return 0;
}

int run_certify(const std::string& data_file, const std::string& gens_file,
                const std::string& hsop_file, const std::string& rule_file,
                const std::string& out_file, const GlobalOpts& g) {
    Limits limits = make_limits(g);
    std::string dir = c33::data_dir();
    GeneratorTable gens =
        c33::load_generators(gens_file.empty() ? dir + "/c33_generators.json" : gens_file);
    auto candidates =
        c33::load_relations(data_file.empty() ? dir + "/c33_relations.json" : data_file);
    report_progress(limits.progress, "verifying the generator table");
    verify_generator_table(gens, limits);
    ReductionRule rule = obtain_rule(gens.n(), rule_file, g);
    Rewriter rewriter(gens, rule, limits.threads);
    RelationAnalyzer analyzer(gens, limits);
    CertReport report = certify_relation_table(candidates, rewriter, analyzer);

    nlohmann::json j = to_json(report, gens, rule);
    {
        std::string hs = hsop_file.empty() ? dir + "/c33_hsop.json" : hsop_file;
        std::ifstream probe(hs);
        if (probe) {
            auto hsop = c33::load_hsop(hs, gens);
            auto hrep = hsop_consistency(hsop, rewriter, c33::degree4_identity_checks(gens));
            j["hsop"] = {{"count_ok", hrep.count_ok},
                         {"expected_count", hrep.expected_count},
                         {"substitution_well_defined", hrep.substitution_well_defined},
                         {"substitution_degree_preserving", hrep.substitution_degree_preserving},
                         {"kills_hsop", hrep.kills_hsop},
                         {"identities_ok", hrep.identities_ok}};
            if (!hrep.all_ok()) report.all_ok = false;
        }
    }
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        out << j.dump(1) << "\n";
    }
    if (json_mode(g)) {
        emit(j);
    } else {
        for (const auto& c : report.candidates)
            std::cout << c.tuple << "  " << c.status << "\n";
        for (const auto& s : report.mds)
            std::cout << "mdeg " << to_string(s.md) << "  kernel "
                      << (s.kernel_dim < 0 ? std::string("unverified")
                                           : std::to_string(s.kernel_dim))
                      << "  " << s.completeness << "\n";
        std::cout << (report.all_ok ? "certification passed" : "certification FAILED") << "\n";
    }
    if (!report.all_ok) throw VerificationError("certification failed");
    return 0;
}

int run_bound(const std::string& degrees, long dim, long a, const GlobalOpts& g) {
    BoundInput input;
    input.generator_degrees = parse_degree_list(degrees);
    input.dim = dim;
    input.a = a;
    long bound = derksen_bound(input);
    if (json_mode(g))
        emit({{"bound", bound}});
    else
        std::cout << bound << "\n";
    return 0;
}

int run_hilbert(int n, int d, bool traceless, int k, bool presented, bool compare,
                const std::string& gens_file, int relations_up_to, const GlobalOpts& g) {
    Limits limits = make_limits(g);
    limits.hilbert_max_degree = std::max(limits.hilbert_max_degree, k);
    auto spec = spec_from(n, d, traceless, false);
    nlohmann::json rows = nlohmann::json::array();
    bool ok = true;
    if (presented || compare) {
        GeneratorTable gens = obtain_generators(n, d, true, gens_file, limits);
        RelationAnalyzer analyzer(gens, limits);
        analyzer.minimal_relation_counts(std::min(relations_up_to, k));
        for (int i = compare ? 0 : k; i <= k; ++i) {
            long p = hilbert_function_presented(gens, analyzer.found_relations(), i, limits);
            if (compare) {
                long direct = hilbert_function(spec, i, limits);
                if (direct != p) ok = false;
                rows.push_back({{"k", i}, {"direct", direct}, {"presented", p}});
            } else {
                rows.push_back({{"k", i}, {"presented", p}});
            }
        }
    } else {
        long direct = hilbert_function(spec, k, limits);
        rows.push_back({{"k", k}, {"direct", direct}});
    }
    if (json_mode(g)) {
        emit({{"values", rows}, {"consistent", ok}});
    } else {
        for (const auto& row : rows) {
            std::cout << "k=" << row["k"];
            if (row.contains("direct")) std::cout << "  direct " << row["direct"];
            if (row.contains("presented")) std::cout << "  presented " << row["presented"];
            std::cout << "\n";
        }
        if (compare) std::cout << (ok ? "consistent" : "INCONSISTENT") << "\n";
    }
    if (!ok) throw VerificationError("hilbert functions disagree");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trace algebra toolkit"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--format", g.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", g.threads, "worker thread count (default: TRACEALG_THREADS or hardware)");
    app.add_option("--seed", g.seed, "seed for randomized exact checks");
    app.add_flag("--quiet", g.quiet, "suppress progress lines on stderr");

    // identity
    auto* identity = app.add_subcommand("identity", "expand the fundamental trace identity");
    int id_n = 2;
    std::string id_tuple;
    identity->add_option("-n", id_n, "matrix size")->required();
    identity->add_option("tuple", id_tuple, "monomial tuple, e.g. \"(12,3,4)\"")->required();

    // reduce
    auto* reduce = app.add_subcommand("reduce", "length-reduce a formal trace");
    int rd_n = 2;
    std::string rd_word, rd_rule, rd_emit;
    bool rd_traceless = false;
    reduce->add_option("-n", rd_n, "matrix size")->required();
    reduce->add_option("word", rd_word, "trace word, e.g. 1234 or [1234]")->required();
    reduce->add_option("--rule", rd_rule, "reduction rule JSON to import");
    reduce->add_option("--emit-rule", rd_emit, "write the rule used to this file");
    reduce->add_flag("--traceless", rd_traceless, "treat all letters as traceless");

    // generators
    auto* generators = app.add_subcommand("generators", "compute a minimal generating set");
    int gn_n = 2, gn_d = 2, gn_max = 0;
    bool gn_traceless = false, gn_diag = false;
    generators->add_option("-n", gn_n, "matrix size")->required();
    generators->add_option("-d", gn_d, "number of letters")->required();
    generators->add_flag("--traceless", gn_traceless, "use traceless letters");
    generators->add_flag("--diagonal-first", gn_diag, "restrict letter 1 to diagonal matrices");
    generators->add_option("--max-degree", gn_max, "degree cutoff (default N(n))");

    // relations
    auto* relations = app.add_subcommand("relations", "minimal relation counts per multidegree");
    int rl_n = 3, rl_d = 3, rl_up = 9;
    bool rl_traceless = true;
    std::string rl_gens;
    relations->add_option("-n", rl_n, "matrix size")->required();
    relations->add_option("-d", rl_d, "number of letters")->required();
    relations->add_option("--up-to", rl_up, "maximal total degree");
    relations->add_flag("--traceless,!--plain", rl_traceless, "letter specialization");
    relations->add_option("--gens", rl_gens, "generator table JSON (default: computed)");

    // certify
    auto* certify = app.add_subcommand("certify", "certify a relation-tuple table");
    std::string ct_data, ct_gens, ct_hsop, ct_rule, ct_out;
    certify->add_option("--data", ct_data, "relation table JSON");
    certify->add_option("--gens", ct_gens, "generator table JSON");
    certify->add_option("--hsop", ct_hsop, "hsop JSON");
    certify->add_option("--rule", ct_rule, "reduction rule JSON to import");
    certify->add_option("--out", ct_out, "write the JSON report here");

    // bound
    auto* bound = app.add_subcommand("bound", "Derksen-type degree bound");
    std::string bd_degrees;
    long bd_dim = 0, bd_a = 0;
    bound->add_option("--degrees", bd_degrees, "e.g. 6x10,5x9,4x9,3x11,2x6,1x3")->required();
    bound->add_option("--dim", bd_dim, "Krull dimension")->required();
    bound->add_option("--a", bd_a, "degree of the Hilbert series")->required();

    // hilbert
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert function, direct or presented");
    int hb_n = 2, hb_d = 2, hb_k = 4, hb_rel_up = 9;
    bool hb_traceless = false, hb_presented = false, hb_compare = false;
    std::string hb_gens;
    hilbert->add_option("-n", hb_n, "matrix size")->required();
    hilbert->add_option("-d", hb_d, "number of letters")->required();
    hilbert->add_option("--k", hb_k, "degree")->required();
    hilbert->add_flag("--traceless", hb_traceless, "direct form over traceless letters");
    hilbert->add_flag("--presented", hb_presented, "use generators and relations");
    hilbert->add_flag("--compare", hb_compare, "check both forms for all degrees up to k");
    hilbert->add_option("--gens", hb_gens, "generator table JSON for the presented form");
    hilbert->add_option("--relations-up-to", hb_rel_up, "relation degree cutoff");

    try {
        app.parse(argc, argv);
        if (*identity) return run_identity(id_n, id_tuple, g);
        if (*reduce) return run_reduce(rd_n, rd_word, rd_rule, rd_emit, rd_traceless, g);
        if (*generators)
            return run_generators(gn_n, gn_d, gn_traceless, gn_diag, gn_max, g);
        if (*relations)
            return run_relations(rl_n, rl_d, rl_traceless, rl_up, rl_gens, g);
        if (*certify) return run_certify(ct_data, ct_gens, ct_hsop, ct_rule, ct_out, g);
        if (*bound) return run_bound(bd_degrees, bd_dim, bd_a, g);
        if (*hilbert)
            return run_hilbert(hb_n, hb_d, hb_traceless, hb_k, hb_presented, hb_compare, hb_gens,
                               hb_rel_up, g);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::parse);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::parse);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::failure);
    }
}
