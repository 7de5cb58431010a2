#include "normlab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "normlab/error.hpp"

namespace normlab::cli {

namespace {

[[noreturn]] void bad_key(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::MalformedInput, "config key '" + path + "': " + what);
}

const Json& child(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad_key(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad_key(path + "." + key, "missing");
  return *it;
}

std::string config_string(const Json& j, const std::string& path) {
  if (!j.is_string()) bad_key(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> number_list(const Json& j, const std::string& path) {
  if (!j.is_array()) bad_key(path, "expected a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(config_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Matrix matrix_from_config(const Json& j, const std::string& path) {
  if (!j.is_array()) bad_key(path, "expected a list of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(number_list(j[i], path + "[" + std::to_string(i) + "]"));
  if (rows.empty()) return Matrix();
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) bad_key(path, "rows differ in length");
  return Matrix::from_rows(rows);
}

DiagonalRule rule_from_config(const Json& j, const std::string& path) {
  const std::string name = j.is_string() ? j.get<std::string>() : config_string(child(j, "name", path), path + ".name");
  if (name == "(n-1)/n" || name == "ratio") return DiagonalRule::ratio();
  if (name == "unit-head-ratio") return DiagonalRule::unit_head_ratio();
  if (name == "1/n" || name == "reciprocal") return DiagonalRule::reciprocal();
  if (name == "const") return DiagonalRule::constant(config_number(child(j, "value", path), path + ".value"));
  if (name == "table") return DiagonalRule::table(number_list(child(j, "values", path), path + ".values"));
  bad_key(path, "unknown rule '" + name + "'");
}

std::pair<Exponent, Exponent> exponents(const Json& j, const std::string& path) {
  const double p = config_number(child(j, "p", path), path + ".p");
  const double q = config_number(child(j, "q", path), path + ".q");
  try {
    return {Exponent::domain(p), Exponent::range(q)};
  } catch (const Error& e) {
    throw Error(e.kind(), "config key '" + path + "': " + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json skeleton(const std::string& scenario, Json config_echo) {
  return Json{{"scenario", scenario},
              {"config_echo", std::move(config_echo)},
              {"estimates", Json::object()},
              {"verdicts", Json::object()},
              {"residuals", Json::object()},
              {"provenance", Json::object()},
              {"runtime_ms", 0.0},
              {"timestamp", ""}};
}

void stamp(Json& doc, std::chrono::steady_clock::time_point start) {
  doc["runtime_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  doc["timestamp"] = utc_timestamp();
}

Json echo(const std::string& command, const Json& config, const SolverConfig& cfg) {
  return Json{{"command", command}, {"solver", to_json(cfg)}, {"config", config.is_null() ? Json::object() : config}};
}

Json check_json(const Check& c) {
  Json j{{"name", c.name}, {"kind", std::string(to_string(c.kind))}};
  if (c.kind == Check::Kind::Label) {
    j["expected"] = c.expected_label;
    j["observed"] = c.observed_label;
  } else {
    j["expected"] = c.expected;
    j["observed"] = c.observed;
    j["tol"] = c.tol;
  }
  j["provenance"] = std::string(to_string(c.provenance));
  j["pass"] = c.pass;
  return j;
}

void put_scenario(Json& estimates, Json& verdicts, Json& residuals, Json& provenance, const ScenarioReport& r) {
  estimates = r.estimates;
  residuals = r.residuals;
  Json checks = Json::array();
  provenance = Json::object();
  for (const Check& c : r.checks) {
    checks.push_back(check_json(c));
    provenance[c.name] = std::string(to_string(c.provenance));
  }
  verdicts = Json{{"checks", std::move(checks)}, {"notes", r.notes}, {"pass", r.pass()}};
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      v = q + "\"";
    }
    out << prefix << ',' << v << '\n';
  }
}

}  // namespace

double config_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) bad_key(path, "expected a decimal number");
  const std::string s = j.get<std::string>();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad_key(path, "not a decimal number: '" + s + "'");
  return v;
}

std::size_t config_count(const Json& j, const std::string& path) {
  const double v = config_number(j, path);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) bad_key(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

OperatorSpec operator_from_config(const Json& j, const std::string& path) {
  const std::string kind = config_string(child(j, "kind", path), path + ".kind");
  if (kind == "sum") {
    const Json& terms = child(j, "terms", path);
    if (!terms.is_array() || terms.empty()) bad_key(path + ".terms", "expected a nonempty list");
    std::vector<OperatorSpec> parts;
    for (std::size_t i = 0; i < terms.size(); ++i)
      parts.push_back(operator_from_config(terms[i], path + ".terms[" + std::to_string(i) + "]"));
    return OperatorSpec::sum(std::move(parts));
  }
  if (kind == "scaled") {
    return OperatorSpec::scaled(operator_from_config(child(j, "base", path), path + ".base"),
                                config_number(child(j, "factor", path), path + ".factor"));
  }
  const auto [p, q] = exponents(j, path);
  if (kind == "diagonal") return OperatorSpec::diagonal(rule_from_config(child(j, "rule", path), path + ".rule"), p, q);
  if (kind == "dense") return OperatorSpec::dense(matrix_from_config(child(j, "matrix", path), path + ".matrix"), p, q);
  if (kind == "rank_one") {
    const double scale = j.contains("scale") ? config_number(j["scale"], path + ".scale") : 1.0;
    return OperatorSpec::rank_one(number_list(child(j, "functional", path), path + ".functional"),
                                  number_list(child(j, "range_vector", path), path + ".range_vector"), scale, p, q);
  }
  bad_key(path + ".kind", "unknown operator kind '" + kind + "'");
}

PolySpec polynomial_from_config(const Json& j, const std::string& path) {
  const std::string shape = config_string(child(j, "shape", path), path + ".shape");
  if (shape == "quadratic") {
    const Matrix a = j.contains("matrix") ? matrix_from_config(j["matrix"], path + ".matrix") : Matrix();
    const DiagonalRule d = j.contains("rule") ? rule_from_config(j["rule"], path + ".rule") : DiagonalRule::zero();
    return PolySpec::quadratic_form(a, d);
  }
  if (shape == "pm") {
    const std::size_t m = config_count(child(j, "m", path), path + ".m");
    return PolySpec::pm_family(static_cast<unsigned>(m));
  }
  if (shape == "vector-coupling") return PolySpec::vector_coupling();
  bad_key(path + ".shape", "unknown polynomial shape '" + shape + "'");
}

SolverConfig solver_from_config(const Json& root, const Overrides& o) {
  SolverConfig cfg;
  if (root.is_object() && root.contains("solver")) {
    const Json& s = root["solver"];
    if (!s.is_object()) bad_key("solver", "expected an object");
    if (s.contains("tol")) cfg.tol = config_number(s["tol"], "solver.tol");
    if (s.contains("max_iter")) cfg.max_iter = config_count(s["max_iter"], "solver.max_iter");
    if (s.contains("restarts")) cfg.restarts = config_count(s["restarts"], "solver.restarts");
    if (s.contains("seed")) cfg.seed = config_count(s["seed"], "solver.seed");
    if (s.contains("grid_resolution")) cfg.grid_resolution = config_number(s["grid_resolution"], "solver.grid_resolution");
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.restarts) cfg.restarts = *o.restarts;
  cfg.validate();
  return cfg;
}

std::vector<std::size_t> parse_dims(const std::string& list) {
  std::vector<std::size_t> dims;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw Error(ErrorKind::MalformedInput, "--dims: not a count: '" + item + "'");
    }
    dims.push_back(v);
  }
  if (dims.empty()) throw Error(ErrorKind::MalformedInput, "--dims: empty list");
  return dims;
}

namespace {

std::optional<std::vector<std::size_t>> dims_from(const Json& root, const Overrides& o) {
  if (o.dims) return o.dims;
  if (root.is_object() && root.contains("dims")) {
    std::vector<std::size_t> d;
    const Json& j = root["dims"];
    if (!j.is_array()) bad_key("dims", "expected a list");
    for (std::size_t i = 0; i < j.size(); ++i) d.push_back(config_count(j[i], "dims[" + std::to_string(i) + "]"));
    return d;
  }
  return std::nullopt;
}

void check_dims(const std::vector<std::size_t>& d) {
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] == 0 || (k > 0 && d[k] <= d[k - 1])) {
      throw Error(ErrorKind::Configuration, "dims must be positive and strictly increasing");
    }
  }
}

double tol_from(const Json& root, const Overrides& o) {
  double tol = kClassificationTol;
  if (root.is_object() && root.contains("tol")) tol = config_number(root["tol"], "tol");
  if (o.tol) tol = *o.tol;
  if (!(tol > 0.0)) throw Error(ErrorKind::Configuration, "tol must be positive");
  return tol;
}

}  // namespace

ScenarioOptions scenario_options_from_config(const Json& root, const Overrides& o) {
  ScenarioOptions opts;
  opts.solver = solver_from_config(root, o);
  opts.dims = dims_from(root, o);
  if (opts.dims) check_dims(*opts.dims);
  opts.tol = tol_from(root, o);
  if (root.is_object() && root.contains("scenario")) {
    const Json& s = root["scenario"];
    const std::string base = "scenario";
    if (!s.is_object()) bad_key(base, "expected an object");
    if (s.contains("pm_degrees")) {
      opts.pm_degrees.clear();
      for (double m : number_list(s["pm_degrees"], base + ".pm_degrees")) {
        if (m < 3 || m != std::floor(m)) bad_key(base + ".pm_degrees", "degrees must be integers >= 3");
        opts.pm_degrees.push_back(static_cast<unsigned>(m));
      }
    }
    if (s.contains("quadratic")) opts.quadratic = matrix_from_config(s["quadratic"], base + ".quadratic");
    if (s.contains("random_quadratics")) opts.random_quadratics = config_count(s["random_quadratics"], base + ".random_quadratics");
    if (s.contains("brezis_lieb_n_max")) opts.brezis_lieb_n_max = config_count(s["brezis_lieb_n_max"], base + ".brezis_lieb_n_max");
    if (s.contains("ineq_r")) opts.ineq_r = number_list(s["ineq_r"], base + ".ineq_r");
    if (s.contains("ineq_eps")) opts.ineq_eps = number_list(s["ineq_eps"], base + ".ineq_eps");
    if (s.contains("grid")) {
      const Json& g = s["grid"];
      if (g.contains("lo")) opts.ineq_grid.lo = config_number(g["lo"], base + ".grid.lo");
      if (g.contains("hi")) opts.ineq_grid.hi = config_number(g["hi"], base + ".grid.hi");
      if (g.contains("step")) opts.ineq_grid.step = config_number(g["step"], base + ".grid.step");
    }
    if (opts.quadratic.rows() != opts.quadratic.cols() || opts.quadratic.empty()) {
      bad_key(base + ".quadratic", "expected a nonempty square matrix");
    }
  }
  return opts;
}

CommandResult cmd_norm(const Json& config, const Overrides& o) {
  const auto start = std::chrono::steady_clock::now();
  const SolverConfig cfg = solver_from_config(config, o);
  const std::size_t n = config_count(child(config, "n", "config"), "n");
  if (n == 0) bad_key("n", "expected a positive count");
  NormEstimate est;
  std::string subject;
  if (config.contains("operator")) {
    const OperatorSpec t = operator_from_config(config["operator"]);
    subject = t.describe();
    est = section_norm(t, n, cfg);
  } else if (config.contains("polynomial")) {
    const PolySpec p = polynomial_from_config(config["polynomial"]);
    subject = p.describe();
    est = polynomial_section_norm(p, n, cfg);
  } else {
    bad_key("config", "needs an 'operator' or 'polynomial' record");
  }
  Json doc = skeleton("norm", echo("norm", config, cfg));
  doc["estimates"] = Json{{"subject", subject}, {"n", n}, {"estimate", to_json(est)}};
  doc["verdicts"] = Json{{"converged", est.converged}};
  stamp(doc, start);
  return {std::move(doc), kExitPass};
}

CommandResult cmd_sweep(const Json& config, const Overrides& o,
                        std::vector<std::pair<std::size_t, double>>* plot) {
  const auto start = std::chrono::steady_clock::now();
  const SolverConfig cfg = solver_from_config(config, o);
  const std::vector<std::size_t> dims = dims_from(config, o).value_or(default_structured_dims());
  check_dims(dims);
  const double tol = tol_from(config, o);
  AttainmentReport report;
  std::string subject;
  if (config.is_object() && config.contains("operator")) {
    const OperatorSpec t = operator_from_config(config["operator"]);
    subject = t.describe();
    report = attainment_verdict(t, sweep_maximizing(t, dims, cfg), tol);
  } else if (config.is_object() && config.contains("polynomial")) {
    const PolySpec p = polynomial_from_config(config["polynomial"]);
    subject = p.describe();
    report = attainment_verdict(p, sweep_maximizing(p, dims, cfg), tol);
  } else {
    bad_key("config", "needs an 'operator' or 'polynomial' record");
  }
  Json ce = echo("sweep", config, cfg);
  ce["dims"] = dims;
  ce["tol"] = tol;
  Json doc = skeleton("sweep", std::move(ce));
  doc["estimates"] = Json{{"subject", subject}, {"sweep", to_json(report.evidence)}};
  Json v = to_json(report);
  v.erase("evidence");
  doc["verdicts"] = std::move(v);
  if (plot) {
    plot->clear();
    for (std::size_t k = 0; k < report.evidence.dims.size(); ++k)
      plot->emplace_back(report.evidence.dims[k], report.evidence.values[k]);
  }
  stamp(doc, start);
  return {std::move(doc), kExitPass};
}

CommandResult cmd_scenario(const std::string& name, const Json& config, const Overrides& o) {
  const auto start = std::chrono::steady_clock::now();
  if (name != "all" && !scenario_exists(name)) {
    std::string list;
    for (const auto& n : scenario_names()) list += "\n  " + n;
    throw Error(ErrorKind::Configuration, "unknown scenario '" + name + "'; registered scenarios:" + list + "\n  all");
  }
  const ScenarioOptions opts = scenario_options_from_config(config, o);
  Json ce = echo("scenario", config, opts.solver);
  ce["dims"] = opts.dims ? Json(*opts.dims) : Json(nullptr);
  ce["tol"] = opts.tol;
  Json doc = skeleton(name, std::move(ce));
  bool all_pass = true;
  if (name == "all") {
    Json verdicts = Json::object();
    for (const auto& n : scenario_names()) {
      const ScenarioReport r = run_scenario(n, opts);
      put_scenario(doc["estimates"][n], verdicts[n], doc["residuals"][n], doc["provenance"][n], r);
      all_pass = all_pass && r.pass();
    }
    verdicts["pass"] = all_pass;
    doc["verdicts"] = std::move(verdicts);
  } else {
    const ScenarioReport r = run_scenario(name, opts);
    put_scenario(doc["estimates"], doc["verdicts"], doc["residuals"], doc["provenance"], r);
    all_pass = r.pass();
  }
  stamp(doc, start);
  return {std::move(doc), all_pass ? kExitPass : kExitFail};
}

CommandResult cmd_ineq_check(const IneqArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  if (!(a.grid.step > 0.0) || !(a.grid.hi > a.grid.lo)) {
    throw Error(ErrorKind::Configuration, "grid needs lo < hi and a positive step");
  }
  const ScalarInequalityCheck c = scalar_ineq_constant(a.r, a.eps, a.grid);
  Json doc = skeleton("ineq-check", Json{{"command", "ineq-check"},
                                         {"r", a.r},
                                         {"epsilon", a.eps},
                                         {"grid", Json{{"lo", a.grid.lo}, {"hi", a.grid.hi}, {"step", a.grid.step}}}});
  doc["estimates"] = Json{{"c_epsilon", c.c_epsilon},     {"delta_epsilon", c.delta_epsilon},
                          {"required_c", c.required_c},   {"doublings", c.doublings},
                          {"bisections", c.bisections},   {"grid_points", a.grid.size()}};
  doc["residuals"] = Json{{"max_violation", c.max_violation}, {"witness_x", c.witness_x}};
  doc["verdicts"] = Json{{"pass", c.passed}};
  stamp(doc, start);
  return {std::move(doc), c.passed ? kExitPass : kExitFail};
}

const std::vector<std::string>& report_keys() {
  static const std::vector<std::string> keys{"scenario", "config_echo", "estimates", "verdicts",
                                             "residuals", "provenance", "runtime_ms", "timestamp"};
  return keys;
}

CommandResult cmd_report(std::span<const std::string> paths) {
  const auto start = std::chrono::steady_clock::now();
  if (paths.empty()) throw Error(ErrorKind::Configuration, "report: no files given");
  Json files = Json::array();
  int code = kExitPass;
  for (const std::string& path : paths) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Configuration, "report: cannot read '" + path + "'");
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::MalformedInput, "report: '" + path + "' is not valid JSON: " + e.what());
    }
    for (const auto& k : report_keys()) {
      if (!doc.is_object() || !doc.contains(k)) {
        throw Error(ErrorKind::MalformedInput, "report: '" + path + "' lacks key '" + k + "'");
      }
    }
    // Lossless round trip: dumping the parsed document reproduces it.
    const bool round_trip = Json::parse(doc.dump()) == doc;
    const Json& v = doc["verdicts"];
    const bool pass = !v.contains("pass") || v["pass"] == true;
    if (!pass) code = std::max(code, kExitFail);
    if (!round_trip) code = kExitUsage;
    files.push_back(Json{{"path", path}, {"scenario", doc["scenario"]}, {"pass", pass}, {"round_trip", round_trip}});
  }
  Json doc = skeleton("report", Json{{"command", "report"}, {"files", paths.size()}});
  doc["estimates"] = Json{{"files", std::move(files)}};
  doc["verdicts"] = Json{{"pass", code == kExitPass}};
  stamp(doc, start);
  return {std::move(doc), code};
}

std::string render(const Json& doc, Format f) {
  if (f == Format::Json) return doc.dump(2) + "\n";
  std::ostringstream out;
  out << "path,value\n";
  flatten(doc, "", out);
  return out.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Configuration, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Configuration, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::Configuration, "cannot move output into '" + path + "': " + ec.message());
  }
}

namespace {

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Configuration, "cannot read config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, "config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"normlab: norms, maximizing sequences and attainment on sequence spaces"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json", dims, scenario_name, plot_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> restarts;
  IneqArgs ineq;
  std::vector<std::string> report_files;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config document");
    sub->add_option("--out", out_path, "output file (stdout when omitted)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--dims", dims, "comma-separated section sizes");
    sub->add_option("--tol", tol, "classification tolerance");
    sub->add_option("--restarts", restarts, "solver restarts");
  };
  auto* norm = app.add_subcommand("norm", "norm of one finite section");
  common(norm);
  auto* sweep = app.add_subcommand("sweep", "section sweep with attainment verdict");
  common(sweep);
  sweep->add_option("--plot-data", plot_path, "two-column dim,value file");
  auto* scen = app.add_subcommand("scenario", "run a registered scenario or 'all'");
  common(scen);
  scen->add_option("--scenario", scenario_name, "scenario name or 'all'");
  scen->add_option("name", scenario_name, "scenario name or 'all'");
  auto* ineq_cmd = app.add_subcommand("ineq-check", "constant search for the scalar splitting inequality");
  ineq_cmd->add_option("--out", out_path);
  ineq_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  ineq_cmd->add_option("--r", ineq.r, "exponent r > 1");
  ineq_cmd->add_option("--eps", ineq.eps, "epsilon > 0");
  ineq_cmd->add_option("--grid-min", ineq.grid.lo);
  ineq_cmd->add_option("--grid-max", ineq.grid.hi);
  ineq_cmd->add_option("--grid-step", ineq.grid.step);
  auto* report = app.add_subcommand("report", "validate and summarise report files");
  report->add_option("files", report_files, "report documents")->required();
  report->add_option("--out", out_path);
  report->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    Overrides o;
    o.seed = seed;
    o.tol = tol;
    o.restarts = restarts;
    if (!dims.empty()) o.dims = parse_dims(dims);
    CommandResult result;
    std::vector<std::pair<std::size_t, double>> plot;
    if (*norm) {
      result = cmd_norm(load_config(config_path), o);
    } else if (*sweep) {
      result = cmd_sweep(load_config(config_path), o, &plot);
    } else if (*scen) {
      if (scenario_name.empty()) throw Error(ErrorKind::Configuration, "scenario: name required (or 'all')");
      result = cmd_scenario(scenario_name, load_config(config_path), o);
    } else if (*ineq_cmd) {
      result = cmd_ineq_check(ineq);
    } else {
      result = cmd_report(report_files);
    }
    const std::string text = render(result.document, format == "csv" ? Format::Csv : Format::Json);
    if (out_path.empty()) {
      out << text;
    } else {
      write_atomic(out_path, text);
    }
    if (!plot_path.empty()) {
      std::ostringstream rows;
      rows << "dim,value\n";
      for (const auto& [d, v] : plot) rows << d << ',' << Json(v).dump() << '\n';
      write_atomic(plot_path, rows.str());
    }
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace normlab::cli
