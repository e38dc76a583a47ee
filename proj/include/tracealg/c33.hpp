#pragma once

#include <cstdlib>
#include <fstream>
#include <string>

#include "tracealg/presentation.hpp"

// Loaders for the data files shipped with the toolkit: the 48-generator table
// of the trace algebra of three 3x3 matrices, the 19-element homogeneous
// system of parameters, and the table of relation tuples.
namespace tracealg::c33 {

inline std::string data_dir() {
    if (const char* env = std::getenv("TRACEALG_DATA")) return env;
#ifdef TRACEALG_DATA_DIR
    return TRACEALG_DATA_DIR;
#else
    return "data";
#endif
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline GeneratorTable load_generators(const std::string& path) {
    return generator_table_from_json(load_json_file(path));
}

inline HsopTable load_hsop(const std::string& path, const GeneratorTable& table) {
    nlohmann::json j = load_json_file(path);
    HsopTable hsop;
    for (const auto& e : j.at("elements")) hsop.elements.push_back(tpoly_from_json(e, table));
    const auto& subst = j.at("substitution");
    for (const auto& label : subst.at("zeros"))
        hsop.substitution.emplace(table.index_of(label.get<std::string>()), TPoly::zero());
    for (auto it = subst.at("images").begin(); it != subst.at("images").end(); ++it)
        hsop.substitution.emplace(table.index_of(it.key()), tpoly_from_json(it.value(), table));
    return hsop;
}

inline std::vector<RelationCandidate> load_relations(const std::string& path) {
    nlohmann::json j = load_json_file(path);
    std::vector<RelationCandidate> out;
    for (const auto& block : j.at("blocks")) {
        MultiDegree md;
        md.counts = block.at("mdeg").get<std::vector<int>>();
        for (const auto& t : block.at("tuples")) {
            RelationCandidate c;
            c.tuple = MonomialTuple::parse(t.get<std::string>());
            c.declared_md = md;
            out.push_back(std::move(c));
        }
    }
    return out;
}

// The three degree-4 identities expressing the quartic hsop traces in the
// generators: tr(x^2y^2), tr(x^2z^2), tr(y^2z^2).
inline std::vector<std::pair<Word, TPoly>> degree4_identity_checks(const GeneratorTable& t) {
    auto var = [&t](const char* label) { return t.index_of(label); };
    auto make = [&](int a, int b, int sq, int quart) {
        TPoly p;
        p.add_term(TMono::variable(a) * TMono::variable(b), ratio(1, 6));
        p.add_term(TMono::variable(sq, 2), ratio(1, 3));
        p.add_term(TMono::variable(quart), ratio(1, 3));
        return p;
    };
    std::vector<std::pair<Word, TPoly>> out;
    out.emplace_back(Word{1, 1, 2, 2}, make(var("t_1"), var("t_2"), var("t_4"), var("t_18")));
    out.emplace_back(Word{1, 1, 3, 3}, make(var("t_1"), var("t_3"), var("t_5"), var("t_19")));
    out.emplace_back(Word{2, 2, 3, 3}, make(var("t_2"), var("t_3"), var("t_6"), var("t_20")));
    return out;
}

}  // namespace tracealg::c33
