#pragma once

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "ewfs/behavior.hpp"
#include "ewfs/inequality.hpp"
#include "ewfs/measures.hpp"
#include "ewfs/quantum.hpp"

namespace ewfs {

using Json = nlohmann::ordered_json;

/// Either arithmetic; files declare theirs in "mode".
using AnyBehavior = std::variant<Behavior<Rational>, Behavior<double>>;

/// Rationals as "p/q" strings, doubles as numbers.
template <class T>
Json scalar_to_json(const T& v);
/// Accepts "p/q" / decimal strings and JSON numbers. Rationals refuse
/// non-integral JSON numbers (write them as strings).
template <class T>
T scalar_from_json(const Json& j);

Json scenario_to_json(const ScenarioSpec& s);
/// {"parties", "m", "k" (default 2), "friend_inputs" ("last", "first" or a
/// list; default "last")}.
ScenarioSpec scenario_from_json(const Json& j);

/// "0,2" style key for a context.
std::string context_key(const ScenarioSpec& s, std::size_t context);

template <class T>
Json behavior_to_json(const Behavior<T>& b);
AnyBehavior behavior_from_json(const Json& j);
/// Reads either mode and converts to T. Float tables become rationals only
/// through rationalize_behavior.
template <class T>
Behavior<T> behavior_from_json_as(const Json& j);

/// Same shape as a behavior document, with one nesting level per party for
/// the super-observers followed by one per party for the friends.
template <class T>
Json joint_to_json(const JointModel<T>& joint);

Json inequality_to_json(const InequalityExpr& ineq);
InequalityExpr inequality_from_json(const Json& j);

Json quantum_config_to_json(const QuantumConfig& config);
QuantumConfig quantum_config_from_json(const Json& j);

/// {"measure", "value", "epsilon_star"?, "weights"?, "mode", "tolerance"}.
template <class T>
Json measure_to_json(const MeasureResult<T>& result, bool include_witness = false);

/// Party letter "A", "B", "C".
std::string party_name(int party);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ewfs
