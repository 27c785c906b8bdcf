#include "ewfs/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "ewfs/lf_constraints.hpp"
#include "ewfs/measures.hpp"
#include "ewfs/quantum.hpp"
#include "ewfs/serialize.hpp"

namespace ewfs::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Common {
  std::string mode;
  double tolerance = kDefaultTolerance;
  std::string output;
};

void add_common(CLI::App& cmd, Common& c, const std::string& default_mode) {
  c.mode = default_mode;
  cmd.add_option("--mode", c.mode, "Arithmetic: rational or float")
      ->check(CLI::IsMember({"rational", "float"}))
      ->capture_default_str();
  cmd.add_option("--tolerance", c.tolerance, "Float-mode tolerance")->capture_default_str();
  cmd.add_option("-o,--output", c.output, "Write to this file instead of stdout");
}

SolveOptions solve_options(const Common& c) {
  SolveOptions o;
  o.tolerance = c.tolerance;
  return o;
}

// Everything a command reports; serialized as the run record.
struct Run {
  std::string command;
  Json scenario;
  Json parameters = Json::object();
  Mode mode = Mode::rational;
  double tolerance = 0.0;
  Json results = Json::object();
};

Json record(const Run& run, Clock::time_point start) {
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();
  return Json{{"command", run.command},
              {"scenario", run.scenario},
              {"parameters", run.parameters},
              {"mode", mode_name(run.mode)},
              {"tolerance", run.mode == Mode::rational ? 0.0 : run.tolerance},
              {"results", run.results},
              {"wall_time_s", wall},
              {"version", EWFS_VERSION}};
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw ValidationError("cannot write " + c.output);
  file << text;
}

void emit_json(const Json& j, const Common& c, std::ostream& out) { emit(j.dump(2) + "\n", c, out); }

template <class T>
std::string decimal(const T& v) {
  std::ostringstream s;
  s << std::setprecision(10) << NumTraits<T>::to_double(v);
  return s.str();
}

template <class T>
T parse_epsilon(const std::string& text) {
  Rational eps;
  try {
    eps = parse_rational(text);
  } catch (const ParseError& e) {
    throw ValidationError("--epsilon: " + std::string(e.what()));
  }
  return NumTraits<T>::from_rational(eps);
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ValidationError("range '" + text + "' is not of the form lo..hi");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

ScenarioSpec with_convention(ScenarioSpec s, const std::string& convention) {
  if (!convention.empty()) s.friend_inputs = parse_friend_inputs(convention, s.parties, s.inputs);
  s.validate();
  return s;
}

bool looks_like_file(const std::string& text) {
  return text.ends_with(".json") || std::filesystem::exists(text);
}

// bound -----------------------------------------------------------------------

struct BoundArgs {
  Common common;
  std::string inequality;
  std::string epsilon = "0";
  int m = 3;
  int j = 0;
  std::string convention;
};

InequalityExpr resolve_inequality(const std::string& text, int m, int j) {
  if (looks_like_file(text)) return inequality_from_json(read_json_file(text));
  try {
    return inequality_by_label(text, m, j);
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError("unknown inequality '" + text + "' (" + e.what() + ")");
  }
}

template <class T>
Json bound_results(const InequalityExpr& ineq, const ScenarioSpec& s, const BoundArgs& a) {
  const T eps = parse_epsilon<T>(a.epsilon);
  const auto options = solve_options(a.common);
  const auto rlf = optimize_over_rlf<T>(ineq, s, eps, options);
  const T ns = max_over_ns<T>(ineq, s, options);
  Json r{{"label", ineq.label()},
         {"epsilon", scalar_to_json(eps)},
         {"omega", scalar_to_json(rlf.value)},
         {"omega_decimal", NumTraits<T>::to_double(rlf.value)},
         {"ns_bound", scalar_to_json(ns)},
         {"ns_bound_decimal", NumTraits<T>::to_double(ns)},
         {"friend_inputs", s.convention_label()},
         {"pivots", rlf.pivots}};
  if (const auto& kb = ineq.known_bounds()) {
    const T claimed = NumTraits<T>::from_rational(kb->lf) + NumTraits<T>::from_rational(kb->lf_relaxed_slope) * eps;
    r["claimed"] = scalar_to_json(claimed);
    r["matches_claim"] = NumTraits<T>::is_zero(T(claimed - rlf.value), a.common.tolerance);
  }
  return r;
}

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const InequalityExpr ineq = resolve_inequality(a.inequality, a.m, a.j);
  const ScenarioSpec s = with_convention(ineq.scenario(), a.convention);
  Run run{"bound", scenario_to_json(s)};
  run.mode = parse_mode(a.common.mode);
  run.tolerance = a.common.tolerance;
  run.parameters = Json{{"inequality", a.inequality}, {"epsilon", a.epsilon}, {"m", a.m}, {"j", a.j}};
  run.results = run.mode == Mode::rational ? bound_results<Rational>(ineq, s, a) : bound_results<double>(ineq, s, a);
  emit_json(record(run, start), a.common, out);
  return kSuccess;
}

// measures --------------------------------------------------------------------

struct MeasuresArgs {
  Common common;
  std::string behavior;
  int quantum_chained = 0;
  bool ghz = false;
  bool witness = false;
};

// Functionals whose lower bound on A_f is reported for a scenario.
std::vector<InequalityExpr> functionals_for(const ScenarioSpec& s) {
  std::vector<InequalityExpr> out;
  if (s.parties == 2 && s.inputs >= 2 && s.friend_outputs == 2) {
    out.push_back(chained(s.inputs));
    if (s.inputs == 3) {
      for (auto& e : lf_catalog_m3()) out.push_back(std::move(e));
    }
  } else if (s.parties == 3 && s.inputs == 3 && s.friend_outputs == 2) {
    out.push_back(mermin());
  }
  for (auto& e : out) e.set_scenario(s);
  return out;
}

template <class T>
Behavior<T> behavior_as(const AnyBehavior& any) {
  if (const auto* exact = std::get_if<Behavior<Rational>>(&any)) {
    if constexpr (std::is_same_v<T, Rational>) {
      return *exact;
    } else {
      return convert<double>(*exact);
    }
  }
  const auto& approx = std::get<Behavior<double>>(any);
  if constexpr (std::is_same_v<T, double>) {
    return approx;
  } else {
    return rationalize_behavior(approx);
  }
}

template <class T>
Json measures_results(const Behavior<T>& b, const MeasuresArgs& a) {
  const auto options = solve_options(a.common);
  const auto af = non_absoluteness_fraction(b, options);
  const auto ac = non_absoluteness_coefficient(b, options);
  const double tol = NumTraits<T>::exact ? 0.0 : std::max(a.common.tolerance, 1e-7);
  const bool ordered = NumTraits<T>::sign(T(ac.value - af.value), tol) <= 0;
  if (!ordered) {
    throw SolverError("A_c = " + decimal(ac.value) + " exceeds A_f = " + decimal(af.value));
  }
  Json rows = Json::array();
  bool bounds_hold = true;
  for (const auto& ineq : functionals_for(b.scenario())) {
    // Bounds come from the LP every time; known_bounds are only advisory.
    const Rational lf = max_over_rlf<Rational>(ineq, b.scenario(), Rational(0));
    const Rational ns = max_over_ns<Rational>(ineq, b.scenario());
    const T value = evaluate(ineq, b);
    Json row{{"label", ineq.label()},
             {"value", scalar_to_json(value)},
             {"lf_bound", to_string(lf)},
             {"ns_bound", to_string(ns)}};
    if (lf < ns) {
      const T bound = af_lower_bound<T>(value, NumTraits<T>::from_rational(lf), NumTraits<T>::from_rational(ns));
      row["af_lower_bound"] = scalar_to_json(bound);
      if (NumTraits<T>::sign(T(bound - af.value), tol) > 0) bounds_hold = false;
    }
    rows.push_back(std::move(row));
  }
  return Json{{"A_f", measure_to_json(af, a.witness)},
              {"A_c", measure_to_json(ac, a.witness)},
              {"A_c_le_A_f", ordered},
              {"lower_bounds_hold", bounds_hold},
              {"inequalities", std::move(rows)}};
}

int cmd_measures(const MeasuresArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  Run run{"measures", Json()};
  run.mode = parse_mode(a.common.mode);
  run.tolerance = a.common.tolerance;
  std::optional<AnyBehavior> behavior;
  if (a.quantum_chained > 0) {
    const ScenarioSpec s = ScenarioSpec::bipartite(a.quantum_chained);
    behavior = behavior_from_config(chained_optimal_config(a.quantum_chained), s);
    run.parameters = Json{{"quantum_chained", a.quantum_chained}};
  } else if (a.ghz) {
    ScenarioSpec s = ScenarioSpec::make(3, 3);
    s.friend_inputs = mermin_friend_inputs();
    behavior = behavior_from_config(ghz_mermin_config(), s);
    run.parameters = Json{{"ghz", true}};
  } else {
    behavior = behavior_from_json(read_json_file(a.behavior));
    run.parameters = Json{{"behavior", a.behavior}};
  }
  if (run.mode == Mode::rational) {
    const auto b = behavior_as<Rational>(*behavior);
    run.scenario = scenario_to_json(b.scenario());
    run.results = measures_results(b, a);
  } else {
    const auto b = behavior_as<double>(*behavior);
    run.scenario = scenario_to_json(b.scenario());
    run.results = measures_results(b, a);
  }
  emit_json(record(run, start), a.common, out);
  return kSuccess;
}

// sweep -----------------------------------------------------------------------

struct SweepArgs {
  Common common;
  std::string family = "chained";
  std::string m_range = "2..10";
  std::string format = "csv";
  std::string label = "I_1";
  std::string epsilons = "0,1/8,1/4,3/8,1/2";
  int m = 3;
  int j = 0;
  std::string convention;
};

template <class T>
Json chained_row(int m, const ScenarioSpec& s, const SolveOptions& options) {
  const auto b = behavior_as<T>(behavior_from_config(chained_optimal_config(m), s));
  InequalityExpr c = chained(m);
  c.set_scenario(s);
  const Rational lf = max_over_rlf<Rational>(c, s, Rational(0), options);
  const Rational ns = max_over_ns<Rational>(c, s, options);
  const T value = evaluate(c, b);
  const auto af = non_absoluteness_fraction(b, options);
  const auto ac = non_absoluteness_coefficient(b, options);
  const T bound = af_lower_bound<T>(value, NumTraits<T>::from_rational(lf), NumTraits<T>::from_rational(ns));
  return Json{{"m", m},
              {"quantum_value", NumTraits<T>::to_double(value)},
              {"lf_bound", to_string(lf)},
              {"ns_bound", to_string(ns)},
              {"A_f", NumTraits<T>::to_double(af.value)},
              {"A_c", NumTraits<T>::to_double(ac.value)},
              {"af_lower_bound", NumTraits<T>::to_double(bound)},
              {"friend_inputs", s.convention_label()}};
}

bool non_decreasing(const Json& rows, const char* column, double tol) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][column].get<double>() < rows[i - 1][column].get<double>() - tol) return false;
  }
  return true;
}

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(10) << v.get<double>();
    return s.str();
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

std::string to_csv(const Json& rows) {
  std::ostringstream s;
  if (rows.empty()) return "";
  bool first = true;
  for (const auto& [key, _] : rows[0].items()) {
    s << (first ? "" : ",") << key;
    first = false;
  }
  s << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [_, v] : row.items()) {
      s << (first ? "" : ",") << cell(v);
      first = false;
    }
    s << '\n';
  }
  return s.str();
}

template <class T>
Json relaxed_rows(const InequalityExpr& ineq, const ScenarioSpec& s, const SweepArgs& a) {
  Json rows = Json::array();
  const auto options = solve_options(a.common);
  const T ns = max_over_ns<T>(ineq, s, options);
  for (const auto& text : split_list(a.epsilons)) {
    const T eps = parse_epsilon<T>(text);
    const T omega = max_over_rlf<T>(ineq, s, eps, options);
    Json row{{"label", ineq.label()}, {"epsilon", scalar_to_json(eps)}, {"omega", scalar_to_json(omega)}};
    if (const auto& kb = ineq.known_bounds()) {
      row["claimed"] = scalar_to_json(T(NumTraits<T>::from_rational(kb->lf) +
                                        NumTraits<T>::from_rational(kb->lf_relaxed_slope) * eps));
    }
    row["ns_bound"] = scalar_to_json(ns);
    row["friend_inputs"] = s.convention_label();
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  Run run{"sweep", Json()};
  run.mode = parse_mode(a.common.mode);
  run.tolerance = a.common.tolerance;
  Json rows = Json::array();
  if (a.family == "chained") {
    const auto [lo, hi] = parse_range(a.m_range);
    if (lo < 2 || hi < lo) throw ValidationError("--m-range must satisfy 2 <= lo <= hi");
    run.parameters = Json{{"family", a.family}, {"m_range", a.m_range}};
    const auto options = solve_options(a.common);
    for (int m = lo; m <= hi; ++m) {
      const ScenarioSpec s = with_convention(ScenarioSpec::bipartite(m), a.convention);
      if (m == lo) run.scenario = scenario_to_json(s);
      rows.push_back(run.mode == Mode::rational ? chained_row<Rational>(m, s, options)
                                                : chained_row<double>(m, s, options));
    }
    const double tol = run.mode == Mode::rational ? 0.0 : std::max(a.common.tolerance, 1e-7);
    run.results["A_f_non_decreasing"] = non_decreasing(rows, "A_f", tol);
    run.results["A_c_non_decreasing"] = non_decreasing(rows, "A_c", tol);
  } else if (a.family == "relaxed") {
    const InequalityExpr ineq = resolve_inequality(a.label, a.m, a.j);
    const ScenarioSpec s = with_convention(ineq.scenario(), a.convention);
    run.scenario = scenario_to_json(s);
    run.parameters = Json{{"family", a.family}, {"inequality", a.label}, {"epsilons", a.epsilons}};
    rows = run.mode == Mode::rational ? relaxed_rows<Rational>(ineq, s, a) : relaxed_rows<double>(ineq, s, a);
  } else {
    throw ValidationError("unknown family '" + a.family + "' (expected chained or relaxed)");
  }
  if (a.format == "csv") {
    for (const auto& [key, v] : run.results.items()) err << key << ": " << cell(v) << '\n';
    emit(to_csv(rows), a.common, out);
  } else {
    run.results["rows"] = std::move(rows);
    emit_json(record(run, start), a.common, out);
  }
  return kSuccess;
}

// gen -------------------------------------------------------------------------

struct GenArgs {
  Common common;
  int quantum_chained = 0;
  bool pr_box = false;
  bool uniform = false;
  bool ghz = false;
  std::string config;
  int m = 2;
  int parties = 2;
  std::string convention;
  std::string bob_angles = "half-step";
};

template <class T>
Json gen_table(const GenArgs& a) {
  if (a.quantum_chained > 0 || a.ghz || !a.config.empty()) {
    ScenarioSpec s;
    QuantumConfig config;
    if (a.quantum_chained > 0) {
      const auto bob = a.bob_angles == "as-printed" ? BobAngles::as_printed : BobAngles::half_step;
      config = chained_optimal_config(a.quantum_chained, bob);
      s = with_convention(ScenarioSpec::bipartite(a.quantum_chained), a.convention);
    } else if (a.ghz) {
      config = ghz_mermin_config();
      s = ScenarioSpec::make(3, 3);
      s.friend_inputs = mermin_friend_inputs();
      s = with_convention(s, a.convention);
    } else {
      config = quantum_config_from_json(read_json_file(a.config));
      const int inputs = static_cast<int>(config.observables.front().size());
      s = with_convention(ScenarioSpec::make(config.parties, inputs), a.convention);
    }
    return behavior_to_json(behavior_as<T>(behavior_from_config(config, s)));
  }
  const ScenarioSpec s = with_convention(ScenarioSpec::make(a.pr_box ? 2 : a.parties, a.m), a.convention);
  if (a.pr_box) return behavior_to_json(pr_box<T>(s));
  return behavior_to_json(uniform_behavior<T>(s));
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const int sources = (a.quantum_chained > 0) + a.pr_box + a.uniform + a.ghz + !a.config.empty();
  if (sources != 1) {
    throw ValidationError("gen needs exactly one of --quantum-chained, --pr-box, --uniform, --ghz, --config");
  }
  const Json j = parse_mode(a.common.mode) == Mode::rational ? gen_table<Rational>(a) : gen_table<double>(a);
  emit_json(j, a.common, out);
  return kSuccess;
}

// check -----------------------------------------------------------------------

struct CheckArgs {
  Common common;
  std::string behavior;
};

template <class T>
Json check_results(const Behavior<T>& b, double tol, bool& ok) {
  const auto report = check_no_signalling(b);
  ok = report.ok(tol);
  Json per_party = Json::object();
  for (std::size_t p = 0; p < report.per_party.size(); ++p) {
    per_party[report.family_labels[p]] = scalar_to_json(report.per_party[p]);
  }
  return Json{{"normalized", true},
              {"non_negative", true},
              {"no_signalling", ok},
              {"max_violation", scalar_to_json(report.max_violation)},
              {"families", std::move(per_party)}};
}

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  // Normalization and non-negativity are enforced while loading.
  const AnyBehavior any = behavior_from_json(read_json_file(a.behavior));
  Run run{"check", Json()};
  run.parameters = Json{{"behavior", a.behavior}};
  run.tolerance = a.common.tolerance;
  bool ok = false;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b.table()[0])>;
        run.mode = NumTraits<T>::mode;
        run.scenario = scenario_to_json(b.scenario());
        run.results = check_results(b, a.common.tolerance, ok);
      },
      any);
  emit_json(record(run, start), a.common, out);
  if (!ok) {
    err << "ewfs: behavior is signalling (max violation " << cell(run.results["max_violation"]) << ")\n";
    return kValidationError;
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local-friendliness bounds and non-absoluteness measures", "ewfs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EWFS_VERSION);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Maximum of an inequality over the relaxed LF and NS sets");
  bound_cmd->add_option("inequality", bound.inequality, "Catalog label (I_1..I_6, chained, chained_partial, "
                                                        "chsh_tilde, chsh, mermin) or inequality JSON file")
      ->required();
  bound_cmd->add_option("--epsilon", bound.epsilon, "Relaxation parameter as a fraction, e.g. 1/4")
      ->capture_default_str();
  bound_cmd->add_option("--m", bound.m, "Inputs per party for parameterized families")->capture_default_str();
  bound_cmd->add_option("--j", bound.j, "Index for chained_partial and chsh_tilde")->capture_default_str();
  bound_cmd->add_option("--convention", bound.convention, "Friend inputs: last, first, or a list like 2,2");
  add_common(*bound_cmd, bound.common, "rational");

  MeasuresArgs measures;
  auto* measures_cmd = app.add_subcommand("measures", "Non-absoluteness fraction and coefficient of a behavior");
  auto* behavior_opt = measures_cmd->add_option("behavior", measures.behavior, "Behavior JSON file");
  auto* qc_opt = measures_cmd->add_option("--quantum-chained", measures.quantum_chained,
                                          "Use the chained-optimal quantum behavior with m inputs");
  auto* ghz_opt = measures_cmd->add_flag("--ghz", measures.ghz, "Use the GHZ behavior for the Mermin scenario");
  behavior_opt->excludes(qc_opt)->excludes(ghz_opt);
  qc_opt->excludes(ghz_opt);
  measures_cmd->add_flag("--witness", measures.witness, "Include the optimal decompositions");
  add_common(*measures_cmd, measures.common, "float");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tables over m (chained family) or epsilon (relaxed bounds)");
  sweep_cmd->add_option("--family", sweep.family, "chained or relaxed")->capture_default_str();
  sweep_cmd->add_option("--m-range", sweep.m_range, "Range lo..hi for the chained family")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep_cmd->add_option("--label", sweep.label, "Inequality for the relaxed family")->capture_default_str();
  sweep_cmd->add_option("--epsilons", sweep.epsilons, "Comma-separated fractions")->capture_default_str();
  sweep_cmd->add_option("--m", sweep.m, "Inputs for parameterized inequalities")->capture_default_str();
  sweep_cmd->add_option("--j", sweep.j, "Index for chained_partial and chsh_tilde")->capture_default_str();
  sweep_cmd->add_option("--convention", sweep.convention, "Friend inputs: last, first, or a list");
  std::string sweep_mode;
  sweep_cmd->add_option("--mode", sweep_mode, "Arithmetic (default: float for chained, rational for relaxed)")
      ->check(CLI::IsMember({"rational", "float"}));
  sweep_cmd->add_option("--tolerance", sweep.common.tolerance, "Float-mode tolerance")->capture_default_str();
  sweep_cmd->add_option("-o,--output", sweep.common.output, "Write to this file instead of stdout");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a behavior JSON document");
  gen_cmd->add_option("--quantum-chained", gen.quantum_chained, "Chained-optimal two-qubit behavior with m inputs");
  gen_cmd->add_flag("--pr-box", gen.pr_box, "PR box");
  gen_cmd->add_flag("--uniform", gen.uniform, "Uniformly random outcomes");
  gen_cmd->add_flag("--ghz", gen.ghz, "GHZ state with the Mermin settings");
  gen_cmd->add_option("--config", gen.config, "Quantum config JSON file");
  gen_cmd->add_option("--m", gen.m, "Inputs per party for --pr-box and --uniform")->capture_default_str();
  gen_cmd->add_option("--parties", gen.parties, "Parties for --uniform")->capture_default_str();
  gen_cmd->add_option("--convention", gen.convention, "Friend inputs: last, first, or a list");
  gen_cmd->add_option("--bob-angles", gen.bob_angles, "half-step or as-printed")
      ->check(CLI::IsMember({"half-step", "as-printed"}))
      ->capture_default_str();
  std::string gen_mode;
  gen_cmd->add_option("--mode", gen_mode, "Arithmetic (default: float for quantum, rational otherwise)")
      ->check(CLI::IsMember({"rational", "float"}));
  gen_cmd->add_option("-o,--output", gen.common.output, "Write to this file instead of stdout");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Validate normalization and no-signalling of a behavior");
  check_cmd->add_option("behavior", check.behavior, "Behavior JSON file")->required();
  check_cmd->add_option("--tolerance", check.common.tolerance, "Float-mode tolerance")->capture_default_str();
  check_cmd->add_option("-o,--output", check.common.output, "Write to this file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  try {
    if (*bound_cmd) return cmd_bound(bound, out);
    if (*measures_cmd) {
      if (measures.behavior.empty() && measures.quantum_chained == 0 && !measures.ghz) {
        throw ValidationError("measures needs a behavior file, --quantum-chained or --ghz");
      }
      return cmd_measures(measures, out);
    }
    if (*sweep_cmd) {
      sweep.common.mode = !sweep_mode.empty() ? sweep_mode : sweep.family == "relaxed" ? "rational" : "float";
      return cmd_sweep(sweep, out, err);
    }
    if (*gen_cmd) {
      const bool quantum = gen.quantum_chained > 0 || gen.ghz || !gen.config.empty();
      gen.common.mode = !gen_mode.empty() ? gen_mode : quantum ? "float" : "rational";
      return cmd_gen(gen, out);
    }
    if (*check_cmd) return cmd_check(check, out, err);
  } catch (const SolverError& e) {
    err << "ewfs: solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const ValidationError& e) {
    err << "ewfs: " << e.what() << '\n';
    return kValidationError;
  } catch (const ParseError& e) {
    err << "ewfs: " << e.what() << '\n';
    return kValidationError;
  } catch (const MalformedProgram& e) {
    err << "ewfs: solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const std::exception& e) {
    err << "ewfs: " << e.what() << '\n';
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace ewfs::cli
