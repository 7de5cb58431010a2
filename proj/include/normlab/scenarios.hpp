#pragma once

// Registry of fixed pipelines that reproduce the worked examples: each one
// runs its computation and grades the observations against expected values
// that carry their provenance.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "normlab/attainment.hpp"
#include "normlab/lp_space.hpp"
#include "normlab/matrix.hpp"
#include "normlab/norm_estimate.hpp"

namespace normlab {

/// Where an expected value comes from.
enum class Provenance {
  None,        // missing: the check fails
  Literature,  // a value stated in the source literature
  Derived,     // an independent computation or hand derivation
  Exact,       // true by construction
};
std::string_view to_string(Provenance p);

struct Check {
  enum class Kind { Near, AtMost, AtLeast, Label, Flag };

  std::string name;
  Kind kind = Kind::Near;
  double expected = 0.0;
  double observed = 0.0;
  double tol = 0.0;
  std::string expected_label;
  std::string observed_label;
  Provenance provenance = Provenance::None;
  bool pass = false;

  static Check near(std::string name, double observed, double expected, double tol, Provenance p);
  static Check at_most(std::string name, double observed, double bound, double tol, Provenance p);
  static Check at_least(std::string name, double observed, double bound, double tol, Provenance p);
  static Check label(std::string name, std::string_view observed, std::string_view expected,
                     Provenance p);
  static Check flag(std::string name, bool observed, Provenance p);
};
std::string_view to_string(Check::Kind k);

struct ScenarioReport {
  std::string name;
  nlohmann::ordered_json estimates = nlohmann::ordered_json::object();
  nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool pass() const;
};

struct ScenarioOptions {
  SolverConfig solver;
  /// Overrides the structured sweep (10, 100, 1000, 10000).
  std::optional<std::vector<std::size_t>> dims;
  double tol = kClassificationTol;
  /// Degrees run by "pm-family".
  std::vector<unsigned> pm_degrees{3, 4, 5};
  /// Configured quadratic form for "quadratic-wmp", next to the random ones.
  Matrix quadratic = Matrix::from_rows({{2.0, 1.0}, {1.0, 2.0}});
  std::size_t random_quadratics = 25;
  std::size_t brezis_lieb_n_max = 20000;
  std::vector<double> ineq_r{1.5, 2.0, 3.0};
  std::vector<double> ineq_eps{0.1, 0.5};
  SampleGrid ineq_grid;
};

const std::vector<std::string>& scenario_names();
bool scenario_exists(std::string_view name);

/// Throws Error(Configuration) for an unregistered name.
ScenarioReport run_scenario(std::string_view name, const ScenarioOptions& opts);

}  // namespace normlab
