#include "normlab/json_io.hpp"

#include "normlab/error.hpp"

namespace normlab {

Json doubles(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json to_json(const LpVector& v) {
  Json support = Json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i] != 0.0) support.push_back(Json::array({i + 1, v[i]}));
  }
  return Json{{"p", v.exponent().value()}, {"dim", v.dim()}, {"support", std::move(support)}};
}

LpVector lp_vector_from_json(const Json& j) {
  try {
    const double p = j.at("p").get<double>();
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<double> coords(dim, 0.0);
    for (const auto& entry : j.at("support")) {
      const auto index = entry.at(0).get<std::size_t>();
      if (index == 0 || index > dim) throw Error(ErrorKind::MalformedInput, "support index out of range");
      coords[index - 1] = entry.at(1).get<double>();
    }
    const Exponent e = p > 1.0 ? Exponent::domain(p) : Exponent::range(p);
    return LpVector(std::move(coords), e);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::MalformedInput, std::string("vector record: ") + ex.what());
  }
}

Json to_json(const SolverConfig& cfg) {
  return Json{{"tol", cfg.tol},
              {"max_iter", cfg.max_iter},
              {"restarts", cfg.restarts},
              {"seed", cfg.seed},
              {"grid_resolution", cfg.grid_resolution}};
}

Json to_json(const NormEstimate& e) {
  Json j{{"value", e.value},
         {"method", std::string(to_string(e.method))},
         {"iterations", e.iterations},
         {"stationarity_gap", e.stationarity_gap},
         {"is_lower_bound", e.is_lower_bound},
         {"converged", e.converged}};
  if (e.method == Method::BruteForce) j["error_bound"] = e.error_bound;
  j["witness"] = e.witness ? to_json(*e.witness) : Json(nullptr);
  return j;
}

Json to_json(const SweepResult& s) {
  Json witnesses = Json::array();
  for (const auto& w : s.witnesses) witnesses.push_back(to_json(w));
  Json methods = Json::array();
  for (Method m : s.methods) methods.push_back(std::string(to_string(m)));
  return Json{{"dims", s.dims},
              {"values", doubles(s.values)},
              {"methods", std::move(methods)},
              {"extrapolated_sup", s.extrapolated_sup},
              {"attained_at_finite_dim", s.attained_at_finite_dim},
              {"inconclusive", s.inconclusive},
              {"witnesses", std::move(witnesses)}};
}

Json to_json(const WeakNullClass& c) {
  return Json{{"kind", std::string(to_string(c.kind))},
              {"limit_norm", c.limit_norm},
              {"limit", to_json(c.estimate.limit)},
              {"window", c.estimate.window},
              {"tail", Json::array({c.estimate.tail_first, c.estimate.tail_last})},
              {"unsettled", c.estimate.unsettled},
              {"max_oscillation", c.estimate.max_oscillation}};
}

Json to_json(const AttainmentReport& r) {
  Json j{{"verdict", std::string(to_string(r.verdict))},
         {"rationale", r.rationale},
         {"limit_shortcut_enabled", r.limit_shortcut_enabled}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["weak_null"] = r.weak_null ? to_json(*r.weak_null) : Json(nullptr);
  j["normalized_limit_check"] = r.normalized_limit_check ? Json(*r.normalized_limit_check) : Json(nullptr);
  j["evidence"] = to_json(r.evidence);
  return j;
}

}  // namespace normlab
