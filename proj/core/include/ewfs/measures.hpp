#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "ewfs/behavior.hpp"
#include "ewfs/lf_constraints.hpp"

namespace ewfs {

/// Optimal decomposition p = q * p_LF + (1 - q) * p_NS, both parts stored
/// sub-normalized (already multiplied by their weight).
template <class T>
struct FractionWitness {
  T lf_weight;
  std::vector<T> lf_joint;  // joint-model layout, sums to q per context
  std::vector<T> ns_part;   // behavior layout, sums to 1 - q per context
};

/// Optimal epsilon and a joint model in S^RLF_eps reproducing the behavior.
template <class T>
struct CoefficientWitness {
  T epsilon;
  JointModel<T> joint;
};

enum class MeasureKind { fraction, coefficient };
const char* measure_name(MeasureKind kind);  // "A_f" / "A_c"

template <class T>
struct MeasureResult {
  MeasureKind kind;
  T value;  // in [0, 1]
  std::variant<FractionWitness<T>, CoefficientWitness<T>> witness;
  double tolerance = 0.0;  // 0 in rational mode
  std::size_t pivots = 0;

  Mode mode() const { return NumTraits<T>::mode; }
  const FractionWitness<T>& fraction() const { return std::get<FractionWitness<T>>(witness); }
  const CoefficientWitness<T>& coefficient() const { return std::get<CoefficientWitness<T>>(witness); }
};

/// A_f = 1 - q*, q* the largest LF weight over all decompositions into an LF
/// part and a no-signalling part. Signalling input throws ValidationError.
template <class T>
MeasureResult<T> non_absoluteness_fraction(const Behavior<T>& behavior, const SolveOptions& options = {});

/// A_c = 2 eps*, eps* the least epsilon with behavior in S^RLF_eps.
template <class T>
MeasureResult<T> non_absoluteness_coefficient(const Behavior<T>& behavior, const SolveOptions& options = {});

/// 1 - (ns - q) / (ns - lf) clamped to [0, 1]. Requires lf < ns and q <= ns.
template <class T>
T af_lower_bound(const T& omega_q, const T& omega_lf, const T& omega_ns);

template <class T>
struct MerminMeasures {
  MeasureResult<T> coefficient;
  MeasureResult<T> fraction;
};

/// Both measures for a tripartite behavior.
template <class T>
MerminMeasures<T> mermin_measures(const Behavior<T>& behavior, const SolveOptions& options = {});

/// Exact no-signalling behavior near a floating one: correlators are rounded to
/// the nearest fractions with denominator <= max_denominator and the table is
/// rebuilt from them. Throws ValidationError if rounding leaves a negative
/// entry.
Behavior<Rational> rationalize_behavior(const Behavior<double>& behavior,
                                        std::uint64_t max_denominator = 1'000'000'000'000ULL);

}  // namespace ewfs
