#pragma once

// JSON forms of the library's result types, shared by the scenario registry
// and the CLI. Vectors are written sparsely as [index, value] pairs with
// 1-based indices.

#include <span>

#include <json.hpp>

#include "normlab/attainment.hpp"
#include "normlab/norm_estimate.hpp"

namespace normlab {

using Json = nlohmann::ordered_json;

Json doubles(std::span<const double> v);
Json to_json(const LpVector& v);
LpVector lp_vector_from_json(const Json& j);
Json to_json(const SolverConfig& cfg);
Json to_json(const NormEstimate& e);
Json to_json(const SweepResult& s);
Json to_json(const WeakNullClass& c);
Json to_json(const AttainmentReport& r);

}  // namespace normlab
