#pragma once

// Experiment runner behind the command-line tool. Every command returns a
// report document plus an exit status so it can be driven from tests without
// spawning processes.
//
// Exit status: 0 all pass, 1 some scenario failed, 2 usage or configuration
// error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normlab/json_io.hpp"
#include "normlab/operators.hpp"
#include "normlab/polynomials.hpp"
#include "normlab/scenarios.hpp"

namespace normlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Json, Csv };

/// Command-line flags that override the config document.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::size_t>> dims;
  std::optional<double> tol;
  std::optional<std::size_t> restarts;
};

struct CommandResult {
  Json document;
  int exit_code = kExitPass;
};

/// Reads a number stored either as a decimal string or as a JSON number.
double config_number(const Json& j, const std::string& path);
std::size_t config_count(const Json& j, const std::string& path);

OperatorSpec operator_from_config(const Json& j, const std::string& path = "operator");
PolySpec polynomial_from_config(const Json& j, const std::string& path = "polynomial");
SolverConfig solver_from_config(const Json& root, const Overrides& o);
ScenarioOptions scenario_options_from_config(const Json& root, const Overrides& o);
std::vector<std::size_t> parse_dims(const std::string& list);

CommandResult cmd_norm(const Json& config, const Overrides& o);
/// plot, when given, receives (dim, value) rows.
CommandResult cmd_sweep(const Json& config, const Overrides& o,
                        std::vector<std::pair<std::size_t, double>>* plot = nullptr);
CommandResult cmd_scenario(const std::string& name, const Json& config, const Overrides& o);

struct IneqArgs {
  double r = 2.0;
  double eps = 0.1;
  SampleGrid grid;
};
CommandResult cmd_ineq_check(const IneqArgs& a);

/// Re-parses report files and checks their schema; fails if any report failed.
CommandResult cmd_report(std::span<const std::string> paths);

/// Top-level keys every report carries.
const std::vector<std::string>& report_keys();

std::string render(const Json& doc, Format f);
/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& content);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace normlab::cli
