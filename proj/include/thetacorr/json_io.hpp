#ifndef THETACORR_JSON_IO_HPP
#define THETACORR_JSON_IO_HPP

#include <json.hpp>

#include "thetacorr/solver.hpp"

namespace thetacorr {

using json = nlohmann::json;

// Problem instance as accepted by `solve` and friends:
// {"p": 79, "modulus": null, "g": 1, "n": 4, "ell": 3, "b": [1,1,12,1],
//  "seed": 42, "flags": {...}}
struct Instance {
    ContextPtr base;
    int g = 1;
    int n = 0;
    int ell = 0;
    ThetaPoint b;
    SolveConfig cfg;
};

Instance parse_instance(const json& j);

json field_to_json(const FieldElement& e);
FieldElement field_from_json(const ContextPtr& ctx, const json& j);

UniPolynomial upoly_from_json(const ContextPtr& ctx, const json& j);
json upoly_to_json(const UniPolynomial& f);

// base + extension moduli, lowest coefficients first
json tower_to_json(const ContextPtr& field);
ContextPtr tower_from_json(const json& j);

json point_coords_to_json(const std::vector<FieldElement>& coords);
std::vector<FieldElement> point_coords_from_json(const ContextPtr& ctx, const json& j);

json record_to_json(const SolutionRecord& rec);
json solve_result_to_json(const SolveResult& res);

}  // namespace thetacorr

#endif
