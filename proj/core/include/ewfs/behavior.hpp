#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ewfs/field.hpp"
#include "ewfs/scenario.hpp"

namespace ewfs {

/// Marks a party that does not appear in a correlator term.
inline constexpr int kAbsent = -1;

/// Input tuple with kAbsent for parties outside the term, e.g. {2, kAbsent}
/// is <A_2> and {1, 0} is <A_1 B_0>.
using TermKey = std::vector<int>;

/// Observed conditional distribution p(outcomes | inputs) of the
/// super-observers. Immutable; the constructor validates non-negativity and
/// per-context normalization (exact for rationals, within `tol` for floats).
template <class T>
class Behavior {
 public:
  Behavior(ScenarioSpec scenario, std::vector<T> table, double tol = kDefaultTolerance);

  const ScenarioSpec& scenario() const { return scenario_; }
  std::span<const T> table() const { return table_; }

  const T& at(std::size_t context, std::size_t outcome) const {
    return table_[context * scenario_.outcome_count() + outcome];
  }
  /// p(outcomes | inputs); both spans have one entry per party.
  const T& operator()(std::span<const int> outcomes, std::span<const int> inputs) const;
  /// Bipartite shorthand p(a, b | x, y).
  const T& p(int a, int b, int x, int y) const;

  bool operator==(const Behavior&) const = default;

 private:
  ScenarioSpec scenario_;
  std::vector<T> table_;
};

/// Underlying distribution P(a, b, c, d | x, y) including the friends'
/// outcomes. Same validation rules as Behavior.
template <class T>
class JointModel {
 public:
  JointModel(ScenarioSpec scenario, std::vector<T> table, double tol = kDefaultTolerance);

  const ScenarioSpec& scenario() const { return scenario_; }
  std::span<const T> table() const { return table_; }
  const T& at(std::size_t context, std::size_t outcome, std::size_t friends) const {
    return table_[(context * scenario_.outcome_count() + outcome) * scenario_.friend_count() + friends];
  }

 private:
  ScenarioSpec scenario_;
  std::vector<T> table_;
};

/// Full and lower-order correlators. Lower-order terms are read in the
/// context where absent parties use input 0; for no-signalling behaviors the
/// choice does not matter.
template <class T>
class CorrelatorTable {
 public:
  CorrelatorTable(ScenarioSpec scenario, std::map<TermKey, T> values)
      : scenario_(std::move(scenario)), values_(std::move(values)) {}

  const ScenarioSpec& scenario() const { return scenario_; }
  const std::map<TermKey, T>& values() const { return values_; }
  const T& operator[](const TermKey& key) const { return values_.at(key); }

  /// <A_x B_y>
  const T& full(int x, int y) const { return values_.at({x, y}); }
  /// Single-party marginal <P_x> of `party`.
  const T& marginal(int party, int x) const;

 private:
  ScenarioSpec scenario_;
  std::map<TermKey, T> values_;
};

template <class T>
CorrelatorTable<T> correlators(const Behavior<T>& behavior);

/// Rebuilds p(o|x) = 2^-n * sum_S (-1)^(sum_S o) <prod_S>. Exact inverse of
/// correlators() on no-signalling behaviors.
template <class T>
Behavior<T> behavior_from_correlators(const CorrelatorTable<T>& table, double tol = kDefaultTolerance);

/// Sums out the friends' outcomes context by context.
template <class T>
Behavior<T> marginalize(const JointModel<T>& joint);

/// Largest deviation from each no-signalling family. Entry p of
/// `per_party` measures how much the marginal of the *other* parties moves
/// when party p changes its input (bipartite: p = 1 is p(a|x,y) = p(a|x)).
template <class T>
struct NoSignallingReport {
  std::vector<T> per_party;
  T max_violation;
  std::vector<std::string> family_labels;

  bool ok(double tol) const { return NumTraits<T>::sign(max_violation, tol) <= 0; }
};

template <class T>
NoSignallingReport<T> check_no_signalling(const Behavior<T>& behavior);

/// Throws ValidationError with the worst violation when the behavior signals.
template <class T>
void require_no_signalling(const Behavior<T>& behavior, double tol = kDefaultTolerance);

template <class T>
Behavior<T> mix(const Behavior<T>& a, const Behavior<T>& b, const T& weight_a);

template <class T>
Behavior<T> convert(const Behavior<Rational>& exact);

// Standard behaviors ------------------------------------------------------

template <class T>
Behavior<T> uniform_behavior(const ScenarioSpec& scenario);

/// Deterministic strategy: `responses[p][x]` is party p's outcome on input x.
template <class T>
Behavior<T> deterministic_behavior(const ScenarioSpec& scenario,
                                   const std::vector<std::vector<int>>& responses);

/// Uniform-marginal box with a XOR b (XOR c ...) = parity(inputs).
template <class T>
Behavior<T> parity_box(const ScenarioSpec& scenario,
                       const std::function<int(std::span<const int>)>& parity);

/// PR box a XOR b = x*y on the first two inputs of each party (bipartite);
/// remaining input pairs are perfectly correlated.
template <class T>
Behavior<T> pr_box(const ScenarioSpec& scenario);

}  // namespace ewfs
