#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "tracealg/evaluate.hpp"
#include "tracealg/tpoly.hpp"
#include "tracealg/trace_poly.hpp"

namespace tracealg {

// One named generator. Regular entries carry a trace-polynomial definition in
// the table's letters. Entries with linear_letter > 0 stand for the trace of
// the plain k-th matrix: with traceless letters those traces split off as a
// free polynomial tensor factor and take part in no relation, so they are
// excluded from every pi-based computation.
struct GeneratorEntry {
    std::string label;
    std::string weight_tag;  // opaque metadata
    int linear_letter = 0;
    TracePolynomial definition;
    MultiDegree mdeg;
    int degree = 0;
};

class GeneratorTable {
public:
    GeneratorTable(GenericMatrixSpec spec, std::vector<GeneratorEntry> entries)
        : spec_(std::move(spec)), entries_(std::move(entries)) {
        spec_.validate();
        for (auto& e : entries_) {
            if (e.linear_letter > 0) {
                e.mdeg = MultiDegree(spec_.d);
                e.mdeg.counts[e.linear_letter - 1] = 1;
                e.degree = 1;
            } else {
                if (e.definition.is_zero())
                    throw ParseError("generator " + e.label + " has empty definition");
                MultiDegree md(spec_.d);
                if (!e.definition.is_multihomogeneous(spec_.d, &md))
                    throw ParseError("generator " + e.label + " is not multihomogeneous");
                e.mdeg = md;
                e.degree = md.total();
            }
        }
    }

    const GenericMatrixSpec& spec() const { return spec_; }
    int n() const { return spec_.n; }
    int d() const { return spec_.d; }
    const std::vector<GeneratorEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const GeneratorEntry& operator[](std::size_t i) const { return entries_[i]; }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].label == label) return static_cast<int>(i);
        throw ParseError("unknown generator label: " + label);
    }

    std::vector<int> degrees() const {
        std::vector<int> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.degree);
        return out;
    }
    std::vector<MultiDegree> multidegrees() const {
        std::vector<MultiDegree> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.mdeg);
        return out;
    }

    // Multiplicity of each total degree, ascending.
    std::map<int, int> counts_by_degree() const {
        std::map<int, int> out;
        for (const auto& e : entries_) out[e.degree] += 1;
        return out;
    }

    // Indices of the entries that live in the evaluation world.
    std::vector<int> evaluable_indices() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].linear_letter == 0) out.push_back(static_cast<int>(i));
        return out;
    }
    int linear_count() const {
        int c = 0;
        for (const auto& e : entries_)
            if (e.linear_letter > 0) ++c;
        return c;
    }

    // T-monomials of exact multidegree md over the evaluable entries, in the
    // deterministic exponent_vectors order.
    std::vector<TMono> monomials_of_multidegree(const MultiDegree& md) const {
        std::vector<int> idx = evaluable_indices();
        std::vector<MultiDegree> degs;
        degs.reserve(idx.size());
        for (int i : idx) degs.push_back(entries_[i].mdeg);
        std::vector<TMono> out;
        for (const auto& e : exponent_vectors(degs, md)) {
            TMono m;
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (e[i] > 0) m = m * TMono::variable(idx[i], e[i]);
            out.push_back(std::move(m));
        }
        return out;
    }

    // Number of degree-k monomials over all entries, linear ones included.
    unsigned long long monomial_count(int k) const {
        std::vector<unsigned long long> ways(k + 1, 0);
        ways[0] = 1;
        for (const auto& e : entries_)
            for (int deg = e.degree; deg <= k; ++deg) ways[deg] += ways[deg - e.degree];
        return ways[k];
    }

    std::string format_tpoly(const TPoly& p) const {
        if (p.is_zero()) return "0";
        std::string s;
        for (const auto& [m, c] : p.terms()) {
            Rational coeff = c;
            if (s.empty()) {
                if (sgn(coeff) < 0) {
                    s += "-";
                    coeff = -coeff;
                }
            } else {
                s += sgn(coeff) < 0 ? " - " : " + ";
                if (sgn(coeff) < 0) coeff = -coeff;
            }
            if (coeff != 1 || m.is_unit()) s += to_string(coeff) + (m.is_unit() ? "" : " ");
            bool first = true;
            for (const auto& [idx, exp] : m.exps) {
                if (!first) s += " ";
                first = false;
                s += entries_[idx].label;
                if (exp > 1) s += "^" + std::to_string(int(exp));
            }
        }
        return s;
    }

private:
    GenericMatrixSpec spec_;
    std::vector<GeneratorEntry> entries_;
};

// --- JSON --------------------------------------------------------------------

inline nlohmann::json to_json(const GeneratorTable& table) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& e : table.entries()) {
        nlohmann::json g;
        g["label"] = e.label;
        if (!e.weight_tag.empty()) g["weight"] = e.weight_tag;
        if (e.linear_letter > 0) {
            g["linear_letter"] = e.linear_letter;
        } else {
            g["terms"] = to_json(e.definition)["terms"];
        }
        g["mdeg"] = e.mdeg.counts;
        gens.push_back(std::move(g));
    }
    const auto& sp = table.spec();
    bool traceless = std::all_of(sp.traceless.begin(), sp.traceless.end(), [](bool b) { return b; });
    return {{"n", sp.n}, {"d", sp.d}, {"traceless", traceless}, {"generators", std::move(gens)}};
}

inline GeneratorTable generator_table_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    int d = j.at("d").get<int>();
    bool traceless = j.at("traceless").get<bool>();
    GenericMatrixSpec spec =
        traceless ? GenericMatrixSpec::all_traceless(n, d) : GenericMatrixSpec::plain(n, d);
    std::vector<GeneratorEntry> entries;
    for (const auto& g : j.at("generators")) {
        GeneratorEntry e;
        e.label = g.at("label").get<std::string>();
        if (g.contains("weight")) e.weight_tag = g.at("weight").get<std::string>();
        if (g.contains("linear_letter")) {
            e.linear_letter = g.at("linear_letter").get<int>();
            if (e.linear_letter < 1 || e.linear_letter > d)
                throw ParseError("linear_letter out of range for " + e.label);
        } else {
            e.definition = trace_polynomial_from_json({{"terms", g.at("terms")}});
            if (e.definition.max_letter() > d)
                throw ParseError("generator " + e.label + " uses a letter beyond d");
        }
        entries.push_back(std::move(e));
    }
    GeneratorTable table(spec, std::move(entries));
    // Optional declared multidegrees are cross-checked.
    std::size_t i = 0;
    for (const auto& g : j.at("generators")) {
        if (g.contains("mdeg")) {
            std::vector<int> declared = g.at("mdeg").get<std::vector<int>>();
            if (declared != table[i].mdeg.counts)
                throw ParseError("declared multidegree mismatch for " + table[i].label);
        }
        ++i;
    }
    return table;
}

// T-polynomial JSON: terms with a label -> exponent map.
inline nlohmann::json tpoly_to_json(const TPoly& p, const GeneratorTable& table) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json gens;
        for (const auto& [idx, exp] : m.exps) gens[table[idx].label] = static_cast<int>(exp);
        terms.push_back({{"coeff", to_string(c)}, {"gens", std::move(gens)}});
    }
    return terms;
}

inline TPoly tpoly_from_json(const nlohmann::json& terms, const GeneratorTable& table) {
    TPoly p;
    for (const auto& t : terms) {
        Rational c = parse_rational(t.at("coeff").get<std::string>());
        TMono m;
        if (t.contains("gens"))
            for (auto it = t.at("gens").begin(); it != t.at("gens").end(); ++it)
                m = m * TMono::variable(table.index_of(it.key()), it.value().get<int>());
        p.add_term(m, c);
    }
    return p;
}

}  // namespace tracealg
