#pragma once

#include <optional>
#include <variant>

#include "ewfs/behavior.hpp"
#include "ewfs/inequality.hpp"
#include "ewfs/lp.hpp"

namespace ewfs {

/// Epsilon left as an LP variable; only valid with the "minimize 2 epsilon"
/// objective.
struct FreeEpsilon {};

/// Linear program over the relaxed local-friendliness set S^RLF_eps.
///
/// Variables are the stacked joint-model entries P(o, f | x) in the
/// ScenarioSpec layout, followed by epsilon when it is free. Constraints:
/// non-negativity, per-context normalization, the no-superdeterminism plus
/// parameter-independence equalities (for every party, the marginal of all
/// other outcomes and all friend outcomes does not depend on that party's
/// input), the relaxed absoluteness rows p(o_p = f_p | x_p = friend input)
/// >= 1 - eps for every context, and optionally the marginal-match rows
/// sum_f P(o, f | x) = p(o | x).
template <class T>
struct RlfProgramSpec {
  ScenarioSpec scenario;
  std::variant<T, FreeEpsilon> epsilon = T(0);
  /// Maximized when set; with no objective the program is a feasibility
  /// problem, or "minimize 2 eps" when epsilon is free.
  std::optional<InequalityExpr> objective;
  std::optional<Behavior<T>> observed;
};

template <class T>
LinearProgram<T> build_rlf_lp(const RlfProgramSpec<T>& spec);

/// Index of the epsilon variable in a free-epsilon program.
std::size_t epsilon_variable(const ScenarioSpec& scenario);

/// Optimum of a functional over S^RLF_eps together with an optimal joint model.
template <class T>
struct RlfOptimum {
  T value;
  JointModel<T> witness;
  std::size_t pivots = 0;
};

template <class T>
RlfOptimum<T> optimize_over_rlf(const InequalityExpr& ineq, const ScenarioSpec& scenario, const T& epsilon,
                                const SolveOptions& options = {});

template <class T>
T max_over_rlf(const InequalityExpr& ineq, const ScenarioSpec& scenario, const T& epsilon,
               const SolveOptions& options = {}) {
  return optimize_over_rlf<T>(ineq, scenario, epsilon, options).value;
}

enum class Membership { inside, outside };
const char* to_string(Membership m);

/// Whether `behavior` lies in S^RLF_eps for its own scenario's friend inputs.
/// Signalling behaviors are rejected with ValidationError.
template <class T>
Membership membership(const Behavior<T>& behavior, const T& epsilon, const SolveOptions& options = {});

/// LP over behaviors p(o | x) directly: non-negativity, normalization and the
/// no-signalling equalities; maximizes `objective`.
template <class T>
LinearProgram<T> build_ns_lp(const InequalityExpr& objective, const ScenarioSpec& scenario);

template <class T>
T max_over_ns(const InequalityExpr& objective, const ScenarioSpec& scenario, const SolveOptions& options = {});

/// Maximizing no-signalling behavior for `objective`.
template <class T>
Behavior<T> ns_maximizer(const InequalityExpr& objective, const ScenarioSpec& scenario,
                         const SolveOptions& options = {});

// Building blocks shared with the measures module -----------------------------

/// Adds no-signalling equalities on a block of variables starting at
/// `offset`, laid out as contexts x outcomes x `inner` (inner = friend_count
/// for joint models, 1 for behaviors). For every party p and context with
/// x_p != 0: sum over o_p at x equals the same sum at x with x_p = 0.
template <class T>
void add_no_signalling_rows(LinearProgram<T>& lp, const ScenarioSpec& scenario, std::size_t offset,
                            std::size_t inner);

/// Variables (c, o, f) of a joint-model block whose super-observer outcome of
/// `party` equals its friend's outcome, in contexts where that party uses its
/// friend input; calls f(context, column).
template <class F>
void for_each_aoe_entry(const ScenarioSpec& s, int party, std::size_t offset, F&& f) {
  const std::size_t per_context = s.outcome_count() * s.friend_count();
  const int special = s.friend_inputs[static_cast<std::size_t>(party)];
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    if (s.context_inputs(c)[static_cast<std::size_t>(party)] != special) continue;
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      for (std::size_t fr = 0; fr < s.friend_count(); ++fr) {
        if (s.outcome_of(o, party) == s.friend_outcome_of(fr, party)) {
          f(c, offset + c * per_context + o * s.friend_count() + fr);
        }
      }
    }
  }
}

}  // namespace ewfs
