#include "ewfs/lf_constraints.hpp"

namespace ewfs {

namespace {

void require_same_shape(const ScenarioSpec& a, const ScenarioSpec& b, const std::string& what) {
  if (a.parties != b.parties || a.inputs != b.inputs) {
    throw ValidationError(what + " has " + std::to_string(b.parties) + " parties / " +
                          std::to_string(b.inputs) + " inputs but the scenario has " +
                          std::to_string(a.parties) + " / " + std::to_string(a.inputs));
  }
}

template <class T>
void check_epsilon(const T& eps) {
  if (NumTraits<T>::sign(eps, 0.0) < 0 || NumTraits<T>::sign(T(eps - T(1) / T(2)), 0.0) > 0) {
    throw ValidationError("epsilon must lie in [0, 1/2]");
  }
}

}  // namespace

const char* to_string(Membership m) { return m == Membership::inside ? "inside" : "outside"; }

std::size_t epsilon_variable(const ScenarioSpec& scenario) { return scenario.joint_size(); }

template <class T>
void add_no_signalling_rows(LinearProgram<T>& lp, const ScenarioSpec& s, std::size_t offset,
                            std::size_t inner) {
  const std::size_t per_context = s.outcome_count() * inner;
  for (int p = 0; p < s.parties; ++p) {
    const std::size_t bit = std::size_t{1} << (s.parties - 1 - p);
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      auto x = s.context_inputs(c);
      if (x[static_cast<std::size_t>(p)] == 0) continue;
      x[static_cast<std::size_t>(p)] = 0;
      const std::size_t ref = s.context_index(x);
      for (std::size_t o = 0; o < s.outcome_count(); ++o) {
        if (o & bit) continue;
        for (std::size_t f = 0; f < inner; ++f) {
          auto col = [&](std::size_t ctx, std::size_t out) {
            return static_cast<std::uint32_t>(offset + ctx * per_context + out * inner + f);
          };
          lp.add_equality({{col(c, o), T(1)}, {col(c, o | bit), T(1)}, {col(ref, o), T(-1)},
                           {col(ref, o | bit), T(-1)}},
                          T(0));
        }
      }
    }
  }
}

template <class T>
LinearProgram<T> build_rlf_lp(const RlfProgramSpec<T>& spec) {
  const ScenarioSpec& s = spec.scenario;
  s.validate();
  const bool free_eps = std::holds_alternative<FreeEpsilon>(spec.epsilon);
  if (free_eps && spec.objective) {
    throw ValidationError("a free epsilon is only allowed with the 'minimize 2 epsilon' objective");
  }
  if (!free_eps) check_epsilon(std::get<T>(spec.epsilon));
  if (spec.objective) require_same_shape(s, spec.objective->scenario(), "objective '" + spec.objective->label() + "'");
  if (spec.observed) require_same_shape(s, spec.observed->scenario(), "observed behavior");

  const std::size_t joint = s.joint_size();
  const std::size_t per_context = s.outcome_count() * s.friend_count();
  LinearProgram<T> lp(joint + (free_eps ? 1 : 0));
  lp.objective.assign(lp.variable_count, T(0));

  if (free_eps) {
    lp.sense = Sense::minimize;
    lp.objective[joint] = T(2);
  } else if (spec.objective) {
    lp.sense = Sense::maximize;
    const auto w = probability_form<T>(*spec.objective);
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      for (std::size_t o = 0; o < s.outcome_count(); ++o) {
        const T& coeff = w[c * s.outcome_count() + o];
        if (coeff == T(0)) continue;
        for (std::size_t f = 0; f < s.friend_count(); ++f) {
          lp.objective[c * per_context + o * s.friend_count() + f] = coeff;
        }
      }
    }
  }

  for (std::size_t c = 0; c < s.context_count(); ++c) {
    SparseRow<T> row;
    for (std::size_t k = 0; k < per_context; ++k) {
      row.push_back({static_cast<std::uint32_t>(c * per_context + k), T(1)});
    }
    lp.add_equality(std::move(row), T(1));
  }

  add_no_signalling_rows(lp, s, 0, s.friend_count());

  for (int p = 0; p < s.parties; ++p) {
    std::vector<SparseRow<T>> rows(s.context_count());
    for_each_aoe_entry(s, p, 0, [&](std::size_t c, std::size_t col) {
      rows[c].push_back({static_cast<std::uint32_t>(col), T(-1)});
    });
    for (auto& row : rows) {
      if (row.empty()) continue;
      if (free_eps) {
        row.push_back({static_cast<std::uint32_t>(joint), T(-1)});
        lp.add_inequality(std::move(row), T(-1));
      } else {
        lp.add_inequality(std::move(row), T(std::get<T>(spec.epsilon) - T(1)));
      }
    }
  }

  if (spec.observed) {
    const Behavior<T>& b = *spec.observed;
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      for (std::size_t o = 0; o < s.outcome_count(); ++o) {
        SparseRow<T> row;
        for (std::size_t f = 0; f < s.friend_count(); ++f) {
          row.push_back({static_cast<std::uint32_t>(c * per_context + o * s.friend_count() + f), T(1)});
        }
        lp.add_equality(std::move(row), b.at(c, o));
      }
    }
  }
  return lp;
}

template <class T>
RlfOptimum<T> optimize_over_rlf(const InequalityExpr& ineq, const ScenarioSpec& scenario, const T& epsilon,
                                const SolveOptions& options) {
  RlfProgramSpec<T> spec{scenario, epsilon, ineq, std::nullopt};
  const auto lp = build_rlf_lp(spec);
  const auto sol = solve(lp, options);
  if (!sol.optimal()) {
    throw SolverError(std::string("relaxed LF program for '") + ineq.label() + "' ended " + to_string(sol.status));
  }
  std::vector<T> joint(sol.primal.begin(), sol.primal.begin() + static_cast<std::ptrdiff_t>(scenario.joint_size()));
  const double tol = NumTraits<T>::exact ? 0.0 : std::max(options.tolerance, 1e-7);
  return RlfOptimum<T>{*sol.objective_value, JointModel<T>(scenario, std::move(joint), tol), sol.pivots};
}

template <class T>
Membership membership(const Behavior<T>& behavior, const T& epsilon, const SolveOptions& options) {
  require_no_signalling(behavior, options.tolerance);
  RlfProgramSpec<T> spec{behavior.scenario(), epsilon, std::nullopt, behavior};
  const auto lp = build_rlf_lp(spec);
  return check_feasible(lp, options) == Feasibility::feasible ? Membership::inside : Membership::outside;
}

template <class T>
LinearProgram<T> build_ns_lp(const InequalityExpr& objective, const ScenarioSpec& s) {
  s.validate();
  require_same_shape(s, objective.scenario(), "objective '" + objective.label() + "'");
  LinearProgram<T> lp(s.behavior_size());
  lp.sense = Sense::maximize;
  lp.objective = probability_form<T>(objective);
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    SparseRow<T> row;
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      row.push_back({static_cast<std::uint32_t>(c * s.outcome_count() + o), T(1)});
    }
    lp.add_equality(std::move(row), T(1));
  }
  add_no_signalling_rows(lp, s, 0, 1);
  return lp;
}

template <class T>
Behavior<T> ns_maximizer(const InequalityExpr& objective, const ScenarioSpec& scenario,
                         const SolveOptions& options) {
  const auto sol = solve(build_ns_lp<T>(objective, scenario), options);
  if (!sol.optimal()) throw SolverError("no-signalling program ended " + std::string(to_string(sol.status)));
  const double tol = NumTraits<T>::exact ? 0.0 : std::max(options.tolerance, 1e-7);
  return Behavior<T>(scenario, sol.primal, tol);
}

template <class T>
T max_over_ns(const InequalityExpr& objective, const ScenarioSpec& scenario, const SolveOptions& options) {
  const auto sol = solve(build_ns_lp<T>(objective, scenario), options);
  if (!sol.optimal()) throw SolverError("no-signalling program ended " + std::string(to_string(sol.status)));
  return *sol.objective_value;
}

#define EWFS_INSTANTIATE(T)                                                                              \
  template void add_no_signalling_rows(LinearProgram<T>&, const ScenarioSpec&, std::size_t, std::size_t); \
  template LinearProgram<T> build_rlf_lp(const RlfProgramSpec<T>&);                                      \
  template RlfOptimum<T> optimize_over_rlf(const InequalityExpr&, const ScenarioSpec&, const T&,         \
                                           const SolveOptions&);                                         \
  template Membership membership(const Behavior<T>&, const T&, const SolveOptions&);                     \
  template LinearProgram<T> build_ns_lp(const InequalityExpr&, const ScenarioSpec&);                     \
  template Behavior<T> ns_maximizer(const InequalityExpr&, const ScenarioSpec&, const SolveOptions&);    \
  template T max_over_ns(const InequalityExpr&, const ScenarioSpec&, const SolveOptions&);

EWFS_INSTANTIATE(Rational)
EWFS_INSTANTIATE(double)

#undef EWFS_INSTANTIATE

}  // namespace ewfs
