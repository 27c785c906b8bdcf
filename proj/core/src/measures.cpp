#include "ewfs/measures.hpp"

#include <algorithm>

namespace ewfs {

namespace {

template <class T>
T clamp_unit(T v) {
  if constexpr (!NumTraits<T>::exact) {
    return std::clamp(v, 0.0, 1.0);
  } else {
    return v;
  }
}

template <class T>
double joint_tolerance(const SolveOptions& options) {
  return NumTraits<T>::exact ? 0.0 : std::max(options.tolerance, 1e-7);
}

}  // namespace

const char* measure_name(MeasureKind kind) { return kind == MeasureKind::fraction ? "A_f" : "A_c"; }

template <class T>
MeasureResult<T> non_absoluteness_fraction(const Behavior<T>& behavior, const SolveOptions& options) {
  require_no_signalling(behavior, options.tolerance);
  const ScenarioSpec& s = behavior.scenario();
  const std::size_t joint = s.joint_size();
  const std::size_t per_context = s.outcome_count() * s.friend_count();
  const auto q_col = static_cast<std::uint32_t>(joint);

  // Columns: LF cone block Q, then the weight q. The no-signalling part is
  // p - marg(Q); it is no-signalling whenever p and Q are, so only its
  // non-negativity needs a row, and the origin is always feasible.
  LinearProgram<T> lp(joint + 1);
  lp.sense = Sense::maximize;
  lp.objective.assign(lp.variable_count, T(0));
  lp.objective[q_col] = T(1);

  for (std::size_t c = 0; c < s.context_count(); ++c) {
    SparseRow<T> row;
    for (std::size_t k = 0; k < per_context; ++k) {
      row.push_back({static_cast<std::uint32_t>(c * per_context + k), T(1)});
    }
    row.push_back({q_col, T(-1)});
    lp.add_equality(std::move(row), T(0));
  }
  add_no_signalling_rows(lp, s, 0, s.friend_count());

  for (int p = 0; p < s.parties; ++p) {
    std::vector<SparseRow<T>> rows(s.context_count());
    for_each_aoe_entry(s, p, 0, [&](std::size_t c, std::size_t col) {
      rows[c].push_back({static_cast<std::uint32_t>(col), T(-1)});
    });
    for (auto& row : rows) {
      if (row.empty()) continue;
      row.push_back({q_col, T(1)});
      lp.add_inequality(std::move(row), T(0));
    }
  }

  for (std::size_t c = 0; c < s.context_count(); ++c) {
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      SparseRow<T> row;
      for (std::size_t f = 0; f < s.friend_count(); ++f) {
        row.push_back({static_cast<std::uint32_t>(c * per_context + o * s.friend_count() + f), T(1)});
      }
      lp.add_inequality(std::move(row), behavior.at(c, o));
    }
  }

  const auto sol = solve(lp, options);
  if (!sol.optimal()) {
    throw SolverError(std::string("non-absoluteness fraction program ended ") + to_string(sol.status));
  }
  const T q = clamp_unit<T>(*sol.objective_value);
  std::vector<T> lf_joint(sol.primal.begin(), sol.primal.begin() + static_cast<std::ptrdiff_t>(joint));
  std::vector<T> ns_part(behavior.table().begin(), behavior.table().end());
  for (std::size_t i = 0; i < joint; ++i) ns_part[i / s.friend_count()] -= lf_joint[i];
  if constexpr (!NumTraits<T>::exact) {
    for (auto& v : ns_part) v = std::max(v, 0.0);
  }
  FractionWitness<T> w{q, std::move(lf_joint), std::move(ns_part)};
  return MeasureResult<T>{MeasureKind::fraction, clamp_unit<T>(T(1) - q), std::move(w),
                          NumTraits<T>::exact ? 0.0 : options.tolerance, sol.pivots};
}

template <class T>
MeasureResult<T> non_absoluteness_coefficient(const Behavior<T>& behavior, const SolveOptions& options) {
  require_no_signalling(behavior, options.tolerance);
  const ScenarioSpec& s = behavior.scenario();
  RlfProgramSpec<T> spec{s, FreeEpsilon{}, std::nullopt, behavior};
  const auto lp = build_rlf_lp(spec);
  const auto sol = solve(lp, options);
  if (!sol.optimal()) {
    throw SolverError(std::string("non-absoluteness coefficient program ended ") + to_string(sol.status));
  }
  const T eps = sol.primal[epsilon_variable(s)];
  std::vector<T> joint(sol.primal.begin(), sol.primal.begin() + static_cast<std::ptrdiff_t>(s.joint_size()));
  CoefficientWitness<T> w{eps, JointModel<T>(s, std::move(joint), joint_tolerance<T>(options))};
  return MeasureResult<T>{MeasureKind::coefficient, clamp_unit<T>(*sol.objective_value), std::move(w),
                          NumTraits<T>::exact ? 0.0 : options.tolerance, sol.pivots};
}

template <class T>
T af_lower_bound(const T& omega_q, const T& omega_lf, const T& omega_ns) {
  if (!(omega_lf < omega_ns)) {
    throw ValidationError("lower bound needs the LF bound strictly below the no-signalling bound");
  }
  if (NumTraits<T>::sign(T(omega_q - omega_ns), kDefaultTolerance) > 0) {
    throw ValidationError("value exceeds the no-signalling bound");
  }
  const T bound = T(1) - T(omega_ns - omega_q) / T(omega_ns - omega_lf);
  if (bound < T(0)) return T(0);
  return bound > T(1) ? T(1) : bound;
}

template <class T>
MerminMeasures<T> mermin_measures(const Behavior<T>& behavior, const SolveOptions& options) {
  if (behavior.scenario().parties != 3) {
    throw ValidationError("Mermin measures need a tripartite behavior");
  }
  return MerminMeasures<T>{non_absoluteness_coefficient(behavior, options),
                           non_absoluteness_fraction(behavior, options)};
}

Behavior<Rational> rationalize_behavior(const Behavior<double>& behavior, std::uint64_t max_denominator) {
  const auto table = correlators(behavior);
  std::map<TermKey, Rational> exact;
  for (const auto& [key, v] : table.values()) exact.emplace(key, approximate_rational(v, max_denominator));
  try {
    return behavior_from_correlators(CorrelatorTable<Rational>(behavior.scenario(), std::move(exact)));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("rationalized behavior is invalid: ") + e.what());
  }
}

#define EWFS_INSTANTIATE(T)                                                                         \
  template MeasureResult<T> non_absoluteness_fraction(const Behavior<T>&, const SolveOptions&);    \
  template MeasureResult<T> non_absoluteness_coefficient(const Behavior<T>&, const SolveOptions&); \
  template T af_lower_bound(const T&, const T&, const T&);                                          \
  template MerminMeasures<T> mermin_measures(const Behavior<T>&, const SolveOptions&);

EWFS_INSTANTIATE(Rational)
EWFS_INSTANTIATE(double)

#undef EWFS_INSTANTIATE

}  // namespace ewfs
