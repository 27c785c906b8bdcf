#include "ewfs/behavior.hpp"

#include <bit>
#include <sstream>

namespace ewfs {

namespace {

template <class T>
std::string show(const T& v) {
  if constexpr (NumTraits<T>::exact) {
    return to_string(v);
  } else {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  }
}

// Validates non-negativity and normalization of a table whose contexts are
// blocks of `block` consecutive entries, each block split into
// `outcome_count` groups of `group` entries.
template <class T>
void validate_table(const ScenarioSpec& s, std::span<const T> table, std::size_t group, double tol,
                    const char* what) {
  s.validate();
  const std::size_t block = s.outcome_count() * group;
  if (table.size() != s.context_count() * block) {
    throw ValidationError(std::string(what) + " table has " + std::to_string(table.size()) +
                          " entries, expected " + std::to_string(s.context_count() * block));
  }
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    T sum(0);
    for (std::size_t k = 0; k < block; ++k) {
      const T& v = table[c * block + k];
      if (NumTraits<T>::sign(v, tol) < 0) {
        throw ValidationError(std::string("negative probability ") + show(v) + " in " + what +
                              " at (outcomes|inputs) = " + entry_label(s, c, k / group));
      }
      sum += v;
    }
    if (!NumTraits<T>::is_zero(T(sum - T(1)), tol)) {
      throw ValidationError(std::string(what) + " context (inputs) = " + context_label(s, c) +
                            " sums to " + show(sum) + ", expected 1");
    }
  }
}

int parity_of(std::size_t outcome, unsigned subset_mask, int parties) {
  int parity = 0;
  for (int p = 0; p < parties; ++p) {
    if (subset_mask & (1U << p)) parity ^= static_cast<int>((outcome >> (parties - 1 - p)) & 1U);
  }
  return parity;
}

std::vector<int> full_context(const TermKey& key) {
  std::vector<int> x(key.size());
  for (std::size_t p = 0; p < key.size(); ++p) x[p] = key[p] == kAbsent ? 0 : key[p];
  return x;
}

}  // namespace

template <class T>
Behavior<T>::Behavior(ScenarioSpec scenario, std::vector<T> table, double tol)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  validate_table<T>(scenario_, table_, 1, tol, "behavior");
}

template <class T>
const T& Behavior<T>::operator()(std::span<const int> outcomes, std::span<const int> inputs) const {
  std::size_t o = 0;
  for (int v : outcomes) o = (o << 1) | static_cast<std::size_t>(v);
  return at(scenario_.context_index(inputs), o);
}

template <class T>
const T& Behavior<T>::p(int a, int b, int x, int y) const {
  const int outcomes[] = {a, b};
  const int inputs[] = {x, y};
  return (*this)(outcomes, inputs);
}

template <class T>
JointModel<T>::JointModel(ScenarioSpec scenario, std::vector<T> table, double tol)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  validate_table<T>(scenario_, table_, scenario_.friend_count(), tol, "joint model");
}

template <class T>
const T& CorrelatorTable<T>::marginal(int party, int x) const {
  TermKey key(static_cast<std::size_t>(scenario_.parties), kAbsent);
  key[static_cast<std::size_t>(party)] = x;
  return values_.at(key);
}

/// All subset terms, enumerated in (subset, inputs) order.
template <class F>
void for_each_term(const ScenarioSpec& s, F&& f) {
  const unsigned full = (1U << s.parties) - 1;
  for (unsigned mask = 1; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    std::size_t combos = 1;
    for (int i = 0; i < size; ++i) combos *= static_cast<std::size_t>(s.inputs);
    for (std::size_t c = 0; c < combos; ++c) {
      TermKey key(static_cast<std::size_t>(s.parties), kAbsent);
      std::size_t rest = c;
      for (int p = s.parties - 1; p >= 0; --p) {
        if (mask & (1U << p)) {
          key[static_cast<std::size_t>(p)] = static_cast<int>(rest % static_cast<std::size_t>(s.inputs));
          rest /= static_cast<std::size_t>(s.inputs);
        }
      }
      f(mask, key);
    }
  }
}

template <class T>
CorrelatorTable<T> correlators(const Behavior<T>& behavior) {
  const ScenarioSpec& s = behavior.scenario();
  std::map<TermKey, T> values;
  for_each_term(s, [&](unsigned mask, const TermKey& key) {
    const std::size_t ctx = s.context_index(full_context(key));
    T v(0);
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      if (parity_of(o, mask, s.parties)) {
        v -= behavior.at(ctx, o);
      } else {
        v += behavior.at(ctx, o);
      }
    }
    values.emplace(key, std::move(v));
  });
  return CorrelatorTable<T>(s, std::move(values));
}

template <class T>
Behavior<T> behavior_from_correlators(const CorrelatorTable<T>& table, double tol) {
  const ScenarioSpec& s = table.scenario();
  std::vector<T> out(s.behavior_size(), T(0));
  const T scale = T(1) / T(static_cast<long>(s.outcome_count()));
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto x = s.context_inputs(c);
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      T v(1);
      const unsigned full = (1U << s.parties) - 1;
      for (unsigned mask = 1; mask <= full; ++mask) {
        TermKey key(static_cast<std::size_t>(s.parties), kAbsent);
        for (int p = 0; p < s.parties; ++p) {
          if (mask & (1U << p)) key[static_cast<std::size_t>(p)] = x[static_cast<std::size_t>(p)];
        }
        if (parity_of(o, mask, s.parties)) {
          v -= table[key];
        } else {
          v += table[key];
        }
      }
      out[c * s.outcome_count() + o] = v * scale;
    }
  }
  return Behavior<T>(s, std::move(out), tol);
}

template <class T>
Behavior<T> marginalize(const JointModel<T>& joint) {
  const ScenarioSpec& s = joint.scenario();
  std::vector<T> out(s.behavior_size(), T(0));
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      T& cell = out[c * s.outcome_count() + o];
      for (std::size_t f = 0; f < s.friend_count(); ++f) cell += joint.at(c, o, f);
    }
  }
  // The joint was validated; normalization carries over exactly in rational
  // mode and up to summation error in float mode.
  return Behavior<T>(s, std::move(out), 1e-7);
}

template <class T>
NoSignallingReport<T> check_no_signalling(const Behavior<T>& behavior) {
  const ScenarioSpec& s = behavior.scenario();
  NoSignallingReport<T> report{std::vector<T>(static_cast<std::size_t>(s.parties), T(0)), T(0), {}};
  static const char* names[] = {"A", "B", "C"};
  for (int p = 0; p < s.parties; ++p) {
    std::string others;
    for (int q = 0; q < s.parties; ++q) {
      if (q != p) others += names[q];
    }
    report.family_labels.push_back("p(" + others + ") independent of input of " + names[p]);
    const std::size_t bit = std::size_t{1} << (s.parties - 1 - p);
    T& worst = report.per_party[static_cast<std::size_t>(p)];
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      auto x = s.context_inputs(c);
      if (x[static_cast<std::size_t>(p)] == 0) continue;
      auto ref = x;
      ref[static_cast<std::size_t>(p)] = 0;
      const std::size_t rc = s.context_index(ref);
      for (std::size_t o = 0; o < s.outcome_count(); ++o) {
        if (o & bit) continue;
        T here = behavior.at(c, o) + behavior.at(c, o | bit);
        T there = behavior.at(rc, o) + behavior.at(rc, o | bit);
        T diff = NumTraits<T>::abs(T(here - there));
        if (diff > worst) worst = diff;
      }
    }
    if (worst > report.max_violation) report.max_violation = worst;
  }
  return report;
}

template <class T>
void require_no_signalling(const Behavior<T>& behavior, double tol) {
  const auto report = check_no_signalling(behavior);
  if (report.ok(tol)) return;
  std::size_t worst = 0;
  for (std::size_t p = 1; p < report.per_party.size(); ++p) {
    if (report.per_party[p] > report.per_party[worst]) worst = p;
  }
  throw ValidationError("behavior is signalling: max violation " + show(report.max_violation) +
                        " in family '" + report.family_labels[worst] + "'");
}

template <class T>
Behavior<T> mix(const Behavior<T>& a, const Behavior<T>& b, const T& weight_a) {
  if (!(a.scenario() == b.scenario())) throw ValidationError("cannot mix behaviors of different scenarios");
  std::vector<T> out(a.table().size());
  const T weight_b = T(1) - weight_a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = weight_a * a.table()[i] + weight_b * b.table()[i];
  return Behavior<T>(a.scenario(), std::move(out));
}

template <class T>
Behavior<T> convert(const Behavior<Rational>& exact) {
  std::vector<T> out;
  out.reserve(exact.table().size());
  for (const auto& v : exact.table()) out.push_back(NumTraits<T>::from_rational(v));
  return Behavior<T>(exact.scenario(), std::move(out));
}

template <class T>
Behavior<T> uniform_behavior(const ScenarioSpec& scenario) {
  const T v = T(1) / T(static_cast<long>(scenario.outcome_count()));
  return Behavior<T>(scenario, std::vector<T>(scenario.behavior_size(), v));
}

template <class T>
Behavior<T> deterministic_behavior(const ScenarioSpec& s, const std::vector<std::vector<int>>& responses) {
  if (responses.size() != static_cast<std::size_t>(s.parties)) {
    throw ValidationError("deterministic strategy needs one response list per party");
  }
  std::vector<T> out(s.behavior_size(), T(0));
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto x = s.context_inputs(c);
    std::size_t o = 0;
    for (int p = 0; p < s.parties; ++p) {
      const auto& r = responses[static_cast<std::size_t>(p)];
      if (r.size() != static_cast<std::size_t>(s.inputs)) {
        throw ValidationError("deterministic strategy needs one response per input");
      }
      o = (o << 1) | static_cast<std::size_t>(r[static_cast<std::size_t>(x[static_cast<std::size_t>(p)])] & 1);
    }
    out[c * s.outcome_count() + o] = T(1);
  }
  return Behavior<T>(s, std::move(out));
}

template <class T>
Behavior<T> parity_box(const ScenarioSpec& s, const std::function<int(std::span<const int>)>& parity) {
  std::vector<T> out(s.behavior_size(), T(0));
  const T half_weight = T(2) / T(static_cast<long>(s.outcome_count()));
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto x = s.context_inputs(c);
    const int target = parity(x) & 1;
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      if ((std::popcount(o) & 1) == target) out[c * s.outcome_count() + o] = half_weight;
    }
  }
  return Behavior<T>(s, std::move(out));
}

template <class T>
Behavior<T> pr_box(const ScenarioSpec& s) {
  if (s.parties != 2) throw ValidationError("PR box is bipartite");
  return parity_box<T>(s, [](std::span<const int> x) { return (x[0] == 1 && x[1] == 1) ? 1 : 0; });
}

#define EWFS_INSTANTIATE(T)                                                                     \
  template class Behavior<T>;                                                                   \
  template class JointModel<T>;                                                                 \
  template class CorrelatorTable<T>;                                                            \
  template CorrelatorTable<T> correlators(const Behavior<T>&);                                  \
  template Behavior<T> behavior_from_correlators(const CorrelatorTable<T>&, double);            \
  template Behavior<T> marginalize(const JointModel<T>&);                                       \
  template NoSignallingReport<T> check_no_signalling(const Behavior<T>&);                       \
  template void require_no_signalling(const Behavior<T>&, double);                              \
  template Behavior<T> mix(const Behavior<T>&, const Behavior<T>&, const T&);                   \
  template Behavior<T> convert(const Behavior<Rational>&);                                      \
  template Behavior<T> uniform_behavior(const ScenarioSpec&);                                   \
  template Behavior<T> deterministic_behavior(const ScenarioSpec&, const std::vector<std::vector<int>>&); \
  template Behavior<T> parity_box(const ScenarioSpec&, const std::function<int(std::span<const int>)>&); \
  template Behavior<T> pr_box(const ScenarioSpec&);

EWFS_INSTANTIATE(Rational)
EWFS_INSTANTIATE(double)

#undef EWFS_INSTANTIATE

}  // namespace ewfs
