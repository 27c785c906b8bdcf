#include "ewfs/scenario.hpp"

#include <sstream>

namespace ewfs {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

ScenarioSpec ScenarioSpec::make(int parties, int inputs, FriendConvention convention,
                                int friend_outputs) {
  ScenarioSpec s;
  s.parties = parties;
  s.inputs = inputs;
  s.friend_outputs = friend_outputs;
  s.friend_inputs.assign(static_cast<std::size_t>(parties > 0 ? parties : 0),
                         convention == FriendConvention::last ? inputs - 1 : 0);
  s.validate();
  return s;
}

void ScenarioSpec::validate() const {
  if (parties != 2 && parties != 3) {
    throw ValidationError("parties must be 2 or 3, got " + std::to_string(parties));
  }
  if (inputs < 1) throw ValidationError("inputs per party must be positive");
  if (friend_outputs < 1) throw ValidationError("friend outputs must be positive");
  if (friend_inputs.size() != static_cast<std::size_t>(parties)) {
    throw ValidationError("friend_inputs needs one entry per party");
  }
  for (int p = 0; p < parties; ++p) {
    const int f = friend_inputs[static_cast<std::size_t>(p)];
    if (f < 0 || f >= inputs) {
      throw ValidationError("friend input " + std::to_string(f) + " of party " + std::to_string(p) +
                            " is outside 0.." + std::to_string(inputs - 1));
    }
  }
}

std::size_t ScenarioSpec::context_count() const {
  return ipow(static_cast<std::size_t>(inputs), parties);
}
std::size_t ScenarioSpec::outcome_count() const { return ipow(2, parties); }
std::size_t ScenarioSpec::friend_count() const {
  return ipow(static_cast<std::size_t>(friend_outputs), parties);
}

std::vector<int> ScenarioSpec::context_inputs(std::size_t context) const {
  std::vector<int> x(static_cast<std::size_t>(parties));
  for (int p = parties - 1; p >= 0; --p) {
    x[static_cast<std::size_t>(p)] = static_cast<int>(context % static_cast<std::size_t>(inputs));
    context /= static_cast<std::size_t>(inputs);
  }
  return x;
}

std::size_t ScenarioSpec::context_index(std::span<const int> x) const {
  std::size_t c = 0;
  for (int v : x) c = c * static_cast<std::size_t>(inputs) + static_cast<std::size_t>(v);
  return c;
}

int ScenarioSpec::friend_outcome_of(std::size_t friends, int party) const {
  for (int p = parties - 1; p > party; --p) friends /= static_cast<std::size_t>(friend_outputs);
  return static_cast<int>(friends % static_cast<std::size_t>(friend_outputs));
}

std::string ScenarioSpec::convention_label() const {
  bool all_last = true, all_first = true;
  for (int f : friend_inputs) {
    all_last = all_last && f == inputs - 1;
    all_first = all_first && f == 0;
  }
  if (all_last) return "last";
  if (all_first) return "first";
  std::string out;
  for (std::size_t i = 0; i < friend_inputs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(friend_inputs[i]);
  }
  return out;
}

std::string entry_label(const ScenarioSpec& s, std::size_t context, std::size_t outcome) {
  std::ostringstream out;
  out << '(';
  for (int p = 0; p < s.parties; ++p) out << (p ? "," : "") << s.outcome_of(outcome, p);
  out << '|';
  const auto x = s.context_inputs(context);
  for (std::size_t p = 0; p < x.size(); ++p) out << (p ? "," : "") << x[p];
  out << ')';
  return out.str();
}

std::string context_label(const ScenarioSpec& s, std::size_t context) {
  std::ostringstream out;
  out << '(';
  const auto x = s.context_inputs(context);
  for (std::size_t p = 0; p < x.size(); ++p) out << (p ? "," : "") << x[p];
  out << ')';
  return out.str();
}

std::vector<int> parse_friend_inputs(const std::string& text, int parties, int inputs) {
  if (text == "last") return std::vector<int>(static_cast<std::size_t>(parties), inputs - 1);
  if (text == "first") return std::vector<int>(static_cast<std::size_t>(parties), 0);
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("bad friend input '" + item + "' in '" + text + "'");
    }
  }
  if (out.size() != static_cast<std::size_t>(parties)) {
    throw ValidationError("friend input list '" + text + "' needs " + std::to_string(parties) +
                          " entries");
  }
  return out;
}

}  // namespace ewfs
