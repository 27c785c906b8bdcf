#include "ewfs/serialize.hpp"

#include <fstream>
#include <sstream>

namespace ewfs {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

int party_index(const std::string& name, int parties) {
  if (name.size() == 1 && name[0] >= 'A' && name[0] < 'A' + parties) return name[0] - 'A';
  throw ValidationError("unknown party \"" + name + "\"");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

int parse_index(const std::string& text, int limit, const std::string& where) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || v < 0 || v >= limit) {
    throw ValidationError(where + ": bad input index \"" + text + "\"");
  }
  return v;
}

TermKey parse_term_key(const std::string& text, const ScenarioSpec& s) {
  const auto parts = split(text, ',');
  if (parts.size() != static_cast<std::size_t>(s.parties)) {
    throw ValidationError("term key \"" + text + "\" needs " + std::to_string(s.parties) + " entries");
  }
  TermKey key;
  for (const auto& p : parts) key.push_back(p == "_" ? kAbsent : parse_index(p, s.inputs, "term key"));
  return key;
}

std::string term_key_text(const TermKey& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ',';
    out += key[i] == kAbsent ? std::string("_") : std::to_string(key[i]);
  }
  return out;
}

/// Nested arrays with the given dimensions, filled in row-major order.
template <class T>
Json nest(std::span<const T> flat, std::span<const std::size_t> dims) {
  if (dims.empty()) return scalar_to_json(flat[0]);
  Json arr = Json::array();
  const std::size_t stride = flat.size() / dims[0];
  for (std::size_t i = 0; i < dims[0]; ++i) arr.push_back(nest(flat.subspan(i * stride, stride), dims.subspan(1)));
  return arr;
}

template <class T>
void unnest(const Json& j, std::span<const std::size_t> dims, std::vector<T>& out, const std::string& where) {
  if (dims.empty()) {
    out.push_back(scalar_from_json<T>(j));
    return;
  }
  if (!j.is_array() || j.size() != dims[0]) {
    throw ValidationError(where + ": expected an array of length " + std::to_string(dims[0]));
  }
  for (const auto& item : j) unnest(item, dims.subspan(1), out, where);
}

template <class T>
Behavior<T> behavior_table_from_json(const Json& j, const ScenarioSpec& s) {
  const Json& table = require(j, "table", "behavior");
  if (!table.is_object()) throw ValidationError("behavior: \"table\" must be an object");
  if (table.size() != s.context_count()) {
    throw ValidationError("behavior: table has " + std::to_string(table.size()) + " contexts, expected " +
                          std::to_string(s.context_count()));
  }
  const std::vector<std::size_t> dims(static_cast<std::size_t>(s.parties), 2);
  std::vector<T> flat;
  flat.reserve(s.behavior_size());
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const std::string key = context_key(s, c);
    if (!table.contains(key)) throw ValidationError("behavior: missing context " + context_label(s, c));
    try {
      unnest<T>(table.at(key), dims, flat, "context " + context_label(s, c));
    } catch (const ParseError& e) {
      throw ValidationError("behavior: context " + context_label(s, c) + ": " + e.what());
    }
  }
  return Behavior<T>(s, std::move(flat));
}

}  // namespace

std::string party_name(int party) { return std::string(1, static_cast<char>('A' + party)); }

template <>
Json scalar_to_json<Rational>(const Rational& v) {
  return to_string(v);
}

template <>
Json scalar_to_json<double>(const double& v) {
  return v;
}

template <>
Rational scalar_from_json<Rational>(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) throw ParseError("exact values must be written as \"p/q\" strings");
  throw ParseError("expected a number or a \"p/q\" string");
}

template <>
double scalar_from_json<double>(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw ParseError("expected a number or a \"p/q\" string");
}

Json scenario_to_json(const ScenarioSpec& s) {
  return Json{{"parties", s.parties}, {"m", s.inputs}, {"k", s.friend_outputs}, {"friend_inputs", s.friend_inputs}};
}

ScenarioSpec scenario_from_json(const Json& j) {
  const Json& parties = require(j, "parties", "scenario");
  const Json& m = require(j, "m", "scenario");
  if (!parties.is_number_integer() || !m.is_number_integer()) {
    throw ValidationError("scenario: \"parties\" and \"m\" must be integers");
  }
  ScenarioSpec s;
  s.parties = parties.get<int>();
  s.inputs = m.get<int>();
  s.friend_outputs = j.value("k", 2);
  if (s.parties < 1 || s.inputs < 1) throw ValidationError("scenario: parties and m must be positive");
  if (!j.contains("friend_inputs")) {
    s.friend_inputs.assign(static_cast<std::size_t>(s.parties), s.inputs - 1);
  } else if (j["friend_inputs"].is_string()) {
    s.friend_inputs = parse_friend_inputs(j["friend_inputs"].get<std::string>(), s.parties, s.inputs);
  } else if (j["friend_inputs"].is_array()) {
    for (const auto& v : j["friend_inputs"]) {
      if (!v.is_number_integer()) throw ValidationError("scenario: friend_inputs entries must be integers");
      s.friend_inputs.push_back(v.get<int>());
    }
  } else {
    throw ValidationError("scenario: friend_inputs must be \"last\", \"first\" or a list");
  }
  s.validate();
  return s;
}

std::string context_key(const ScenarioSpec& s, std::size_t context) {
  const auto x = s.context_inputs(context);
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(x[i]);
  }
  return out;
}

template <class T>
Json behavior_to_json(const Behavior<T>& b) {
  const ScenarioSpec& s = b.scenario();
  const std::vector<std::size_t> dims(static_cast<std::size_t>(s.parties), 2);
  Json table = Json::object();
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    table[context_key(s, c)] = nest<T>(b.table().subspan(c * s.outcome_count(), s.outcome_count()), dims);
  }
  return Json{{"scenario", scenario_to_json(s)}, {"mode", NumTraits<T>::name()}, {"table", std::move(table)}};
}

AnyBehavior behavior_from_json(const Json& j) {
  const ScenarioSpec s = scenario_from_json(require(j, "scenario", "behavior"));
  const Json& mode = require(j, "mode", "behavior");
  if (!mode.is_string()) throw ValidationError("behavior: \"mode\" must be a string");
  Mode m;
  try {
    m = parse_mode(mode.get<std::string>());
  } catch (const ParseError& e) {
    throw ValidationError(std::string("behavior: ") + e.what());
  }
  if (m == Mode::rational) return behavior_table_from_json<Rational>(j, s);
  return behavior_table_from_json<double>(j, s);
}

template <class T>
Behavior<T> behavior_from_json_as(const Json& j) {
  AnyBehavior any = behavior_from_json(j);
  if (auto* exact = std::get_if<Behavior<Rational>>(&any)) {
    if constexpr (std::is_same_v<T, Rational>) {
      return std::move(*exact);
    } else {
      return convert<double>(*exact);
    }
  }
  auto& approx = std::get<Behavior<double>>(any);
  if constexpr (std::is_same_v<T, double>) {
    return std::move(approx);
  } else {
    return rationalize_behavior(approx);
  }
}

template <class T>
Json joint_to_json(const JointModel<T>& joint) {
  const ScenarioSpec& s = joint.scenario();
  std::vector<std::size_t> dims(static_cast<std::size_t>(s.parties), 2);
  dims.insert(dims.end(), static_cast<std::size_t>(s.parties), static_cast<std::size_t>(s.friend_outputs));
  const std::size_t per_context = s.outcome_count() * s.friend_count();
  Json table = Json::object();
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    table[context_key(s, c)] = nest<T>(joint.table().subspan(c * per_context, per_context), dims);
  }
  return Json{{"scenario", scenario_to_json(s)}, {"mode", NumTraits<T>::name()}, {"table", std::move(table)}};
}

Json inequality_to_json(const InequalityExpr& ineq) {
  Json corr = Json::object();
  Json marg = Json::object();
  for (const auto& [key, c] : ineq.terms()) {
    int present = 0;
    int who = 0;
    for (std::size_t p = 0; p < key.size(); ++p) {
      if (key[p] != kAbsent) {
        ++present;
        who = static_cast<int>(p);
      }
    }
    if (present == 1) {
      marg[party_name(who)][std::to_string(key[static_cast<std::size_t>(who)])] = to_string(c);
    } else {
      corr[term_key_text(key)] = to_string(c);
    }
  }
  Json out{{"label", ineq.label()},
           {"scenario", scenario_to_json(ineq.scenario())},
           {"correlator_coeffs", std::move(corr)},
           {"marginal_coeffs", std::move(marg)}};
  if (const auto& kb = ineq.known_bounds()) {
    Json b{{"lf", to_string(kb->lf)}, {"lf_relaxed_slope", to_string(kb->lf_relaxed_slope)}};
    if (kb->ns) b["ns"] = to_string(*kb->ns);
    if (kb->quantum_max) b["quantum_max"] = *kb->quantum_max;
    out["known_bounds"] = std::move(b);
  }
  return out;
}

InequalityExpr inequality_from_json(const Json& j) {
  const Json& label = require(j, "label", "inequality");
  if (!label.is_string()) throw ValidationError("inequality: \"label\" must be a string");
  const std::string where = "inequality '" + label.get<std::string>() + "'";
  const ScenarioSpec s = scenario_from_json(require(j, "scenario", where));
  InequalityExpr e(s, label.get<std::string>());
  try {
    if (j.contains("correlator_coeffs")) {
      for (const auto& [k, v] : j["correlator_coeffs"].items()) e.add(parse_term_key(k, s), scalar_from_json<Rational>(v));
    }
    if (j.contains("marginal_coeffs")) {
      for (const auto& [party, entries] : j["marginal_coeffs"].items()) {
        const int p = party_index(party, s.parties);
        for (const auto& [x, v] : entries.items()) {
          TermKey key(static_cast<std::size_t>(s.parties), kAbsent);
          key[static_cast<std::size_t>(p)] = parse_index(x, s.inputs, where);
          e.add(std::move(key), scalar_from_json<Rational>(v));
        }
      }
    }
    if (j.contains("known_bounds")) {
      const Json& b = j["known_bounds"];
      KnownBounds kb{scalar_from_json<Rational>(require(b, "lf", where)),
                     scalar_from_json<Rational>(require(b, "lf_relaxed_slope", where)), std::nullopt, std::nullopt};
      if (b.contains("ns")) kb.ns = scalar_from_json<Rational>(b["ns"]);
      if (b.contains("quantum_max")) kb.quantum_max = scalar_from_json<double>(b["quantum_max"]);
      e.set_known_bounds(kb);
    }
  } catch (const ParseError& err) {
    throw ValidationError(where + ": " + err.what());
  }
  if (e.terms().empty()) throw ValidationError(where + " has no terms");
  return e;
}

Json quantum_config_to_json(const QuantumConfig& config) {
  Json state = Json::array();
  for (const auto& a : config.state) state.push_back(Json::array({a.real(), a.imag()}));
  Json obs = Json::object();
  for (int p = 0; p < config.parties; ++p) {
    Json list = Json::array();
    for (const auto& o : config.observables[static_cast<std::size_t>(p)]) {
      Json item{{"r", o.r}, {"s", o.s}};
      if (o.t != 0.0) item["t"] = o.t;
      list.push_back(std::move(item));
    }
    obs[party_name(p)] = std::move(list);
  }
  return Json{{"parties", config.parties}, {"state", std::move(state)}, {"observables", std::move(obs)}};
}

QuantumConfig quantum_config_from_json(const Json& j) {
  QuantumConfig c;
  const Json& state = require(j, "state", "quantum config");
  if (!state.is_array()) throw ValidationError("quantum config: \"state\" must be an array");
  for (const auto& a : state) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw ValidationError("quantum config: amplitudes are [re, im] pairs");
    }
    c.state.emplace_back(a[0].get<double>(), a[1].get<double>());
  }
  int parties = 0;
  while ((std::size_t{1} << parties) < c.state.size()) ++parties;
  c.parties = j.value("parties", parties);
  const Json& obs = require(j, "observables", "quantum config");
  c.observables.resize(static_cast<std::size_t>(c.parties));
  for (const auto& [party, list] : obs.items()) {
    auto& target = c.observables[static_cast<std::size_t>(party_index(party, c.parties))];
    for (const auto& o : list) {
      if (!o.is_object() || !o.contains("r") || !o.contains("s")) {
        throw ValidationError("quantum config: observables are {\"r\", \"s\"[, \"t\"]} objects");
      }
      target.push_back(Observable{o["r"].get<double>(), o["s"].get<double>(), o.value("t", 0.0)});
    }
  }
  c.validate();
  return c;
}

template <class T>
Json measure_to_json(const MeasureResult<T>& result, bool include_witness) {
  Json out{{"measure", measure_name(result.kind)},
           {"value", scalar_to_json(result.value)},
           {"value_decimal", NumTraits<T>::to_double(result.value)}};
  if (result.kind == MeasureKind::coefficient) {
    out["epsilon_star"] = scalar_to_json(result.coefficient().epsilon);
  } else {
    const T& q = result.fraction().lf_weight;
    out["weights"] = Json{{"lf", scalar_to_json(q)}, {"ns", scalar_to_json(T(T(1) - q))}};
  }
  out["mode"] = NumTraits<T>::name();
  out["tolerance"] = result.tolerance;
  if (include_witness) {
    if (result.kind == MeasureKind::coefficient) {
      out["witness"] = joint_to_json(result.coefficient().joint);
    } else {
      Json lf = Json::array();
      Json ns = Json::array();
      for (const auto& v : result.fraction().lf_joint) lf.push_back(scalar_to_json(v));
      for (const auto& v : result.fraction().ns_part) ns.push_back(scalar_to_json(v));
      out["witness"] = Json{{"lf_joint", std::move(lf)}, {"ns_part", std::move(ns)}};
    }
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << '\n';
}

#define EWFS_INSTANTIATE(T)                                           \
  template Json behavior_to_json(const Behavior<T>&);                 \
  template Behavior<T> behavior_from_json_as(const Json&);            \
  template Json joint_to_json(const JointModel<T>&);                  \
  template Json measure_to_json(const MeasureResult<T>&, bool);

EWFS_INSTANTIATE(Rational)
EWFS_INSTANTIATE(double)

#undef EWFS_INSTANTIATE

}  // namespace ewfs
