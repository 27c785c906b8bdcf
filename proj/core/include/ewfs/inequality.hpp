#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ewfs/behavior.hpp"
#include "ewfs/field.hpp"
#include "ewfs/scenario.hpp"

namespace ewfs {

/// Claimed bounds carried alongside an inequality. Advisory only: tests
/// check them against the LP, nothing trusts them at run time.
struct KnownBounds {
  Rational lf;                        // bound over the local-friendliness set
  Rational lf_relaxed_slope;          // relaxed bound is lf + slope * epsilon
  std::optional<Rational> ns;         // no-signalling maximum
  std::optional<double> quantum_max;  // known quantum maximum (may be irrational)

  bool operator==(const KnownBounds&) const = default;
};

/// Linear functional on behaviors written over correlators:
///   sum_key coeff(key) * <prod_{p in key} P_{key[p]}>.
/// Full correlators have every party present; marginals mark the missing
/// parties with kAbsent.
class InequalityExpr {
 public:
  InequalityExpr() = default;
  InequalityExpr(ScenarioSpec scenario, std::string label)
      : scenario_(std::move(scenario)), label_(std::move(label)) {}

  const ScenarioSpec& scenario() const { return scenario_; }
  const std::string& label() const { return label_; }
  const std::map<TermKey, Rational>& terms() const { return terms_; }
  const std::optional<KnownBounds>& known_bounds() const { return known_bounds_; }

  void set_label(std::string label) { label_ = std::move(label); }
  void set_scenario(ScenarioSpec scenario) { scenario_ = std::move(scenario); }
  void set_known_bounds(std::optional<KnownBounds> bounds) { known_bounds_ = std::move(bounds); }

  /// Adds `coeff` to the term (terms that cancel to zero are removed).
  InequalityExpr& add(TermKey key, const Rational& coeff);

  Rational coeff(const TermKey& key) const;
  /// Bipartite <A_x B_y> coefficient.
  Rational correlator_coeff(int x, int y) const { return coeff({x, y}); }
  /// Single-party marginal coefficient.
  Rational marginal_coeff(int party, int x) const;

  /// Same coefficient map (labels and bounds ignored).
  bool same_terms(const InequalityExpr& other) const { return terms_ == other.terms_; }

  InequalityExpr operator+(const InequalityExpr& other) const;
  InequalityExpr operator-(const InequalityExpr& other) const;

 private:
  ScenarioSpec scenario_;
  std::string label_;
  std::map<TermKey, Rational> terms_;
  std::optional<KnownBounds> known_bounds_;
};

/// Functional value on a behavior, computed from its correlators.
template <class T>
T evaluate(const InequalityExpr& ineq, const Behavior<T>& behavior);

/// Coefficients w(o, x) with I(p) = sum w(o,x) p(o|x), laid out like a
/// Behavior table. Marginal terms are read in the context with input 0 for
/// the absent parties.
template <class T>
std::vector<T> probability_form(const InequalityExpr& ineq);

/// Applies input permutations: input x of party p becomes perm[p][x].
InequalityExpr relabel_inputs(const InequalityExpr& ineq, const std::vector<std::vector<int>>& perm);

// Generators ---------------------------------------------------------------

/// C^(m-1) = <A_{m-1}B_{m-1}> - <A_0B_{m-1}> + sum_{l<m-1} (<A_lB_l> + <A_{l+1}B_l>).
InequalityExpr chained(int m);
/// C^(m-1)_j: the chained sum restricted to inputs j..m-1 (0 <= j <= m-2).
InequalityExpr chained_partial(int m, int j);
/// Two-input CHSH block <A_{j+1}B_{m-1}> - <A_jB_{m-1}> + <A_jB_j> + <A_{j+1}B_j>
/// (0 <= j <= m-3).
InequalityExpr chsh_tilde(int m, int j);
/// CHSH symmetry used for m = 2: identical to chained(2).
InequalityExpr chsh();

/// The six local-friendliness inequality classes for m = 3, k = 2, loaded
/// from the embedded catalog after verifying its checksum.
std::vector<InequalityExpr> lf_catalog_m3();
/// Catalog entry by label ("I_1" .. "I_6").
InequalityExpr catalog_entry(const std::string& label);
/// CRC-32 of the embedded catalog file and the value it must match.
unsigned long catalog_checksum();
unsigned long expected_catalog_checksum();
int catalog_version();

/// Maps Mermin labels {1,2,3} to 0-based inputs, per party.
struct MerminLabels {
  std::vector<std::vector<int>> input_of_label;  // [party][label - 1]

  /// label i -> input i - 1 for every party.
  static MerminLabels shifted();
  int input(int party, int label) const;
};

/// Friend inputs (A, B, C) used by mermin(): label 3 for every party, i.e. the
/// default last-input convention. Under it the LF bound is 2 and the relaxed
/// bound 2 + 8 epsilon up to the no-signalling cap of 4 at epsilon = 1/4.
std::vector<int> mermin_friend_inputs();

/// M = <A_3B_3C_2> + <A_1B_1C_2> + <A_1B_3C_1> - <A_3B_1C_1>, three inputs per
/// party, with the given label mapping.
InequalityExpr mermin(const MerminLabels& labels = MerminLabels::shifted());

/// Resolves "I_1".."I_6", "chained", "chained_partial", "chsh_tilde", "chsh",
/// "mermin". `m` and `j` are used by the parameterized families.
InequalityExpr inequality_by_label(const std::string& label, int m, int j);

}  // namespace ewfs
