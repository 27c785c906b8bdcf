#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ewfs/field.hpp"

namespace ewfs {

/// Thrown for structurally invalid programs (index out of range, length
/// mismatch). Never used to signal infeasibility.
class MalformedProgram : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
struct RowEntry {
  std::uint32_t col;
  T value;
};

/// Sparse constraint row, sorted by column with no duplicates once normalized.
template <class T>
using SparseRow = std::vector<RowEntry<T>>;

/// The solver gave up (pivot cap reached or numerical breakdown in float mode).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sense { maximize, minimize };
enum class LpStatus { optimal, infeasible, unbounded };
enum class Feasibility { feasible, infeasible };

const char* to_string(LpStatus status);

/// Linear program
///
///     optimize  c·x
///     s.t.      A x  = b
///               G x <= h
///               x   >= lower   (componentwise, default 0)
///
/// Rows are stored sparsely; every stored index must be < variable_count.
template <class T>
struct LinearProgram {
  std::size_t variable_count = 0;
  std::vector<T> objective;  // empty means all zero
  Sense sense = Sense::maximize;
  std::vector<SparseRow<T>> eq_rows;
  std::vector<T> eq_rhs;
  std::vector<SparseRow<T>> ineq_rows;
  std::vector<T> ineq_rhs;
  std::vector<T> lower_bounds;  // empty means all zero

  LinearProgram() = default;
  explicit LinearProgram(std::size_t n) : variable_count(n) {}

  /// Sorts and merges duplicate columns, dropping exact zeros.
  static SparseRow<T> normalize(SparseRow<T> row);

  void add_equality(SparseRow<T> row, T rhs);
  void add_inequality(SparseRow<T> row, T rhs);
  /// Dense convenience overloads; the row length must equal variable_count.
  void add_equality(const std::vector<T>& dense, T rhs);
  void add_inequality(const std::vector<T>& dense, T rhs);

  /// Throws MalformedProgram if the program violates its shape invariants.
  void validate() const;
};

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::optional<T> objective_value;
  std::vector<T> primal;  // non-empty iff optimal

  /// Dual certificate (only when optimal). For a maximization problem
  ///   A^T y + G^T z >= c,  z >= 0,  b·y + h·z - (A^T y + G^T z - c)·lower = c·x*
  /// and with the inequalities reversed (z <= 0, <= c) for minimization.
  std::vector<T> eq_duals;
  std::vector<T> ineq_duals;

  std::size_t pivots = 0;

  bool optimal() const { return status == LpStatus::optimal; }
};

enum class Pricing {
  /// Reduced cost divided by the Euclidean norm of the tableau column.
  steepest_edge,
  /// Most negative reduced cost.
  dantzig,
};

struct SolveOptions {
  /// Feasibility / optimality tolerance in float mode; unused for rationals.
  double tolerance = kDefaultTolerance;
  Pricing pricing = Pricing::steepest_edge;
  /// Consecutive degenerate pivots tolerated before switching from
  /// `pricing` to Bland's smallest-index rule. The switch
  /// lasts until the objective moves, so every solve terminates.
  std::size_t degenerate_streak_limit = 1000;
  /// Hard cap on pivots; 0 means unlimited.
  std::size_t max_pivots = 0;
};

/// Two-phase primal simplex. Deterministic for identical input.
template <class T>
LpSolution<T> solve(const LinearProgram<T>& lp, const SolveOptions& options = {});

/// Phase-one only; the objective is ignored.
template <class T>
Feasibility check_feasible(const LinearProgram<T>& lp, const SolveOptions& options = {});

/// Plain-text dump, one line per constraint; rationals print as "p/q".
template <class T>
void write_lp(std::ostream& out, const LinearProgram<T>& lp);

/// Maximum absolute constraint violation of `x` (0 when exactly feasible).
template <class T>
T max_violation(const LinearProgram<T>& lp, const std::vector<T>& x);

}  // namespace ewfs
