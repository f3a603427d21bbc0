#pragma once

/// JSON schemas for every external surface: generator-set files, descent
/// scenario files, and the report payloads the CLI emits. Serialization is
/// deterministic (alphabetical keys, fixed field names) so identical inputs
/// produce byte-identical output. Group orders that may exceed 64 bits are
/// emitted as decimal strings.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gruen/arith.hpp"
#include "gruen/descent.hpp"
#include "gruen/errors.hpp"
#include "gruen/matgroup.hpp"
#include "gruen/theorems.hpp"
#include "gruen/verify.hpp"

namespace gruen {

using nlohmann::json;

// ---------------------------------------------------------------------------
// report payloads

inline void to_json(json& j, const SylowPrediction& p) {
    j = json{{"clause", to_string(p.clause)},
             {"m_ell", p.m_ell},
             {"r", p.r},
             {"i", p.i},
             {"derived_length_bound", p.derived_length_bound}};
    if (p.order_exponent) j["order_exponent"] = *p.order_exponent;
}

inline void to_json(json& j, const TrivialActionBound& b) {
    j = json{{"theorem", to_string(b.theorem)},
             {"m", b.m},
             {"m_ell", b.m_ell},
             {"nu", b.nu},
             {"conclusion", b.conclusion}};
}

inline void to_json(json& j, const GroupStructureReport& r) {
    j = json{{"order", r.order},
             {"is_abelian", r.is_abelian},
             {"is_elementary_abelian", r.is_elementary_abelian},
             {"solvable", r.solvable},
             {"exponent", r.exponent}};
    j["derived_length"] = r.derived_length ? json(*r.derived_length) : json(nullptr);
}

inline void to_json(json& j, const SylowVerification& v) {
    j = json{{"n", v.n},
             {"p", v.p},
             {"f", v.f},
             {"ell", v.ell},
             {"predicted", v.predicted},
             {"verdict", to_string(v.verdict)}};
    j["observed"] = v.observed ? json(*v.observed) : json(nullptr);
    j["observed_sylow_order"] =
        v.observed_sylow_order ? json(*v.observed_sylow_order) : json(nullptr);
}

inline void to_json(json& j, const ActionVerification& v) {
    j = json{{"theorem", to_string(v.theorem)},
             {"m", v.m},
             {"p", v.p},
             {"e", v.e},
             {"ell", v.ell},
             {"image_order", v.image_order},
             {"verdict", to_string(v.verdict)},
             {"note", v.note}};
    j["predicted"] = v.predicted ? json(*v.predicted) : json(nullptr);
    j["sylow_order"] = v.sylow_order ? json(*v.sylow_order) : json(nullptr);
    j["derived_term_order"] =
        v.derived_term_order ? json(*v.derived_term_order) : json(nullptr);
}

inline void to_json(json& j, const SweepResult& s) {
    json qs = json::array();
    for (auto q : s.options.q_values) qs.push_back(q);
    j = json{{"grid",
              {{"n_max", s.options.n_max},
               {"q_set", qs},
               {"ell_max", s.options.ell_max},
               {"cap", s.options.cap}}},
             {"cases", s.cases},
             {"counts",
              {{"confirmed", s.confirmed},
               {"refuted", s.refuted},
               {"skipped_too_large", s.skipped_too_large},
               {"skipped_out_of_scope", s.skipped_out_of_scope}}}};
}

inline void to_json(json& j, const JustificationStep& s) {
    j = json{{"rule", s.rule}, {"params", s.params}, {"detail", s.detail}};
}

inline void to_json(json& j, const Deduction& d) {
    j = json{{"conclusion", to_string(d.conclusion)},
             {"justification", d.justification}};
    j["subfield"] = d.subfield ? json(*d.subfield) : json(nullptr);
    if (d.m_ell) j["m_ell"] = *d.m_ell;
    if (d.nu) j["nu"] = *d.nu;
}

// ---------------------------------------------------------------------------
// generator-set files
//
// {
//   "dimension": 2,
//   "prime": 3,
//   "exponent": 2,
//   "generators": [ [[1, 1], [0, 1]], ... ]   // row-major entry rows
// }

struct GeneratorSet {
    int dimension;
    Modulus modulus;
    std::vector<ResidueMatrix> generators;
};

inline json generator_set_to_json(const GeneratorSet& gs) {
    json gens = json::array();
    for (const auto& g : gs.generators) {
        json rows = json::array();
        for (int i = 0; i < gs.dimension; ++i) {
            json row = json::array();
            for (int j = 0; j < gs.dimension; ++j) row.push_back(g.at(i, j));
            rows.push_back(row);
        }
        gens.push_back(rows);
    }
    return json{{"dimension", gs.dimension},
                {"prime", gs.modulus.p},
                {"exponent", gs.modulus.e},
                {"generators", gens}};
}

inline GeneratorSet generator_set_from_json(const json& j) {
    try {
        const int dim = j.at("dimension").get<int>();
        const Modulus mod(j.at("prime").get<std::int64_t>(), j.at("exponent").get<int>());
        GeneratorSet gs{dim, mod, {}};
        for (const auto& rows : j.at("generators")) {
            std::vector<std::int64_t> vals;
            if (static_cast<int>(rows.size()) != dim)
                throw domain_error("generator set: wrong row count");
            for (const auto& row : rows) {
                if (static_cast<int>(row.size()) != dim)
                    throw domain_error("generator set: wrong column count");
                for (const auto& v : row) vals.push_back(v.get<std::int64_t>());
            }
            gs.generators.emplace_back(dim, mod, vals);
        }
        return gs;
    } catch (const json::exception& e) {
        throw domain_error(std::string("generator set: malformed document: ") + e.what());
    }
}

inline void save_generator_set(const std::string& path, const GeneratorSet& gs) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot write " + path);
    out << generator_set_to_json(gs).dump(2) << '\n';
}

inline GeneratorSet load_generator_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw domain_error(std::string("generator set: invalid JSON: ") + e.what());
    }
    return generator_set_from_json(j);
}

// ---------------------------------------------------------------------------
// descent scenario files
//
// {
//   "galois": {"kind": "catalog", "catalog_id": "nonabelian_order_ell_cubed",
//              "ell": 3},
//       or    {"kind": "catalog", "catalog_id": "two_group_tower_step_3"},
//       or    {"kind": "explicit", "derived_structure": [4, 2], "order": 8},
//   "ell": 3,
//   "p": 5,
//   "observed_rank": 5,              // or "class_group_type"
//   "class_group_type": {"p": 5, "exponents": [1, 1, 1]},
//   "class_numbers": {               // optional divisibility checks
//     "pg0": {"n": 60, "h": 6},
//     "pg1": {"h_L": 8, "index_LK": 2, "h_K": 2}
//   }
// }

struct Pg0Inputs {
    std::int64_t n;
    std::int64_t h;
};

struct Pg1Inputs {
    std::int64_t h_L;
    std::int64_t index_LK;
    std::int64_t h_K;
};

struct DescentScenario {
    std::optional<GaloisDescriptor> galois;
    std::int64_t ell = 0;
    std::int64_t p = 0;
    std::optional<std::int64_t> observed_rank;
    std::optional<Pg0Inputs> pg0;
    std::optional<Pg1Inputs> pg1;
};

inline GaloisDescriptor galois_descriptor_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "catalog") {
        const std::string id = j.at("catalog_id").get<std::string>();
        if (id == "nonabelian_order_ell_cubed")
            return GaloisDescriptor::nonabelian_ell_cubed(j.at("ell").get<std::int64_t>());
        if (id == "two_group_tower_step_3") return GaloisDescriptor::two_tower_step_3();
        throw domain_error("scenario: unknown catalog_id '" + id + "'");
    }
    if (kind == "explicit") {
        std::vector<std::int64_t> indices;
        for (const auto& v : j.at("derived_structure")) indices.push_back(v.get<std::int64_t>());
        std::optional<BigInt> order;
        if (j.contains("order")) order = BigInt(j.at("order").get<std::int64_t>());
        return GaloisDescriptor::explicit_series(std::move(indices), std::move(order));
    }
    throw domain_error("scenario: unknown descriptor kind '" + kind + "'");
}

inline json galois_descriptor_to_json(const GaloisDescriptor& d) {
    if (d.kind == DescriptorKind::catalog) {
        json j{{"kind", "catalog"}, {"catalog_id", to_string(*d.catalog_id)}};
        if (*d.catalog_id == CatalogId::nonabelian_order_ell_cubed)
            j["ell"] = d.ell_parameter;
        return j;
    }
    json j{{"kind", "explicit"}, {"derived_structure", d.derived_structure}};
    if (d.order) j["order"] = d.order->convert_to<std::int64_t>();
    return j;
}

inline DescentScenario scenario_from_json(const json& j) {
    try {
        DescentScenario s;
        if (j.contains("galois")) {
            s.galois = galois_descriptor_from_json(j.at("galois"));
            s.ell = j.at("ell").get<std::int64_t>();
            s.p = j.at("p").get<std::int64_t>();
            const bool has_rank = j.contains("observed_rank");
            const bool has_type = j.contains("class_group_type");
            if (has_rank == has_type)
                throw domain_error(
                    "scenario: provide exactly one of observed_rank / class_group_type");
            if (has_rank) {
                s.observed_rank = j.at("observed_rank").get<std::int64_t>();
            } else {
                const auto& t = j.at("class_group_type");
                AbelianGroupType type(t.at("p").get<std::int64_t>(),
                                      t.at("exponents").get<std::vector<int>>());
                if (type.p != s.p)
                    throw domain_error(
                        "scenario: class_group_type prime must match the scenario prime");
                s.observed_rank = type.rank();
            }
        }
        if (j.contains("class_numbers")) {
            const auto& cn = j.at("class_numbers");
            if (cn.contains("pg0")) {
                s.pg0 = Pg0Inputs{cn.at("pg0").at("n").get<std::int64_t>(),
                                  cn.at("pg0").at("h").get<std::int64_t>()};
            }
            if (cn.contains("pg1")) {
                s.pg1 = Pg1Inputs{cn.at("pg1").at("h_L").get<std::int64_t>(),
                                  cn.at("pg1").at("index_LK").get<std::int64_t>(),
                                  cn.at("pg1").at("h_K").get<std::int64_t>()};
            }
        }
        if (!s.galois && !s.pg0 && !s.pg1)
            throw domain_error("scenario: nothing to deduce (no galois, no class_numbers)");
        return s;
    } catch (const json::exception& e) {
        throw domain_error(std::string("scenario: malformed document: ") + e.what());
    }
}

inline DescentScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw domain_error(std::string("scenario: invalid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

} // namespace gruen
