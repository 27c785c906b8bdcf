#include "ewfs/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

namespace ewfs {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// LinearProgram

template <class T>
SparseRow<T> LinearProgram<T>::normalize(SparseRow<T> row) {
  std::stable_sort(row.begin(), row.end(),
                   [](const RowEntry<T>& a, const RowEntry<T>& b) { return a.col < b.col; });
  SparseRow<T> out;
  out.reserve(row.size());
  for (auto& e : row) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().value += e.value;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const RowEntry<T>& e) { return e.value == T(0); });
  return out;
}

template <class T>
void LinearProgram<T>::add_equality(SparseRow<T> row, T rhs) {
  eq_rows.push_back(normalize(std::move(row)));
  eq_rhs.push_back(std::move(rhs));
}

template <class T>
void LinearProgram<T>::add_inequality(SparseRow<T> row, T rhs) {
  ineq_rows.push_back(normalize(std::move(row)));
  ineq_rhs.push_back(std::move(rhs));
}

namespace {

template <class T>
SparseRow<T> from_dense(const std::vector<T>& dense, std::size_t n) {
  if (dense.size() != n) {
    throw MalformedProgram("row width " + std::to_string(dense.size()) +
                           " does not match variable_count " + std::to_string(n));
  }
  SparseRow<T> row;
  for (std::size_t j = 0; j < n; ++j) {
    if (dense[j] != T(0)) row.push_back({static_cast<std::uint32_t>(j), dense[j]});
  }
  return row;
}

}  // namespace

template <class T>
void LinearProgram<T>::add_equality(const std::vector<T>& dense, T rhs) {
  add_equality(from_dense(dense, variable_count), std::move(rhs));
}

template <class T>
void LinearProgram<T>::add_inequality(const std::vector<T>& dense, T rhs) {
  add_inequality(from_dense(dense, variable_count), std::move(rhs));
}

template <class T>
void LinearProgram<T>::validate() const {
  if (variable_count == 0) throw MalformedProgram("variable_count must be positive");
  if (!objective.empty() && objective.size() != variable_count) {
    throw MalformedProgram("objective has " + std::to_string(objective.size()) +
                           " coefficients, expected " + std::to_string(variable_count));
  }
  if (!lower_bounds.empty() && lower_bounds.size() != variable_count) {
    throw MalformedProgram("lower_bounds has " + std::to_string(lower_bounds.size()) +
                           " entries, expected " + std::to_string(variable_count));
  }
  if (eq_rows.size() != eq_rhs.size()) throw MalformedProgram("eq_rows/eq_rhs length mismatch");
  if (ineq_rows.size() != ineq_rhs.size()) {
    throw MalformedProgram("ineq_rows/ineq_rhs length mismatch");
  }
  if (eq_rows.empty() && ineq_rows.empty()) {
    throw MalformedProgram("program has no constraints");
  }
  auto check_rows = [&](const std::vector<SparseRow<T>>& rows, const char* kind) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& e : rows[i]) {
        if (e.col >= variable_count) {
          throw MalformedProgram(std::string(kind) + " row " + std::to_string(i) +
                                 " references column " + std::to_string(e.col) +
                                 " >= variable_count " + std::to_string(variable_count));
        }
      }
    }
  };
  check_rows(eq_rows, "equality");
  check_rows(ineq_rows, "inequality");
}

// ---------------------------------------------------------------------------
// Simplex tableau

namespace {

template <class T>
const T* find_entry(const SparseRow<T>& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const RowEntry<T>& e, std::uint32_t c) { return e.col < c; });
  if (it == row.end() || it->col != col) return nullptr;
  return &it->value;
}

// Minimizes cost·x over { rows x = rhs, x >= 0 } starting from the identity
// basis given by the slack/artificial columns.
template <class T>
class Tableau {
 public:
  Tableau(const LinearProgram<T>& lp, const SolveOptions& options)
      : tol_(options.tolerance), options_(options) {
    using Traits = NumTraits<T>;
    n_ = lp.variable_count;
    const std::size_t n_eq = lp.eq_rows.size();
    const std::size_t n_ineq = lp.ineq_rows.size();
    m_ = n_eq + n_ineq;
    slack_begin_ = n_;
    art_begin_ = n_ + n_ineq;

    auto shifted_rhs = [&](const SparseRow<T>& row, const T& rhs) {
      T r = rhs;
      if (!lp.lower_bounds.empty()) {
        for (const auto& e : row) r -= e.value * lp.lower_bounds[e.col];
      }
      return r;
    };

    rows_.resize(m_);
    rhs_.resize(m_);
    flipped_.assign(m_, false);
    identity_col_.resize(m_);
    basis_.resize(m_);

    std::size_t artificials = 0;
    std::vector<bool> needs_art(m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      const bool is_eq = i < n_eq;
      const SparseRow<T>& src = is_eq ? lp.eq_rows[i] : lp.ineq_rows[i - n_eq];
      T r = shifted_rhs(src, is_eq ? lp.eq_rhs[i] : lp.ineq_rhs[i - n_eq]);
      const bool flip = Traits::sign(r, 0.0) < 0;
      flipped_[i] = flip;
      rows_[i] = LinearProgram<T>::normalize(src);
      if (!is_eq) {
        rows_[i].push_back({static_cast<std::uint32_t>(slack_begin_ + (i - n_eq)), T(1)});
      }
      if (flip) {
        for (auto& e : rows_[i]) e.value = -e.value;
        r = -r;
      }
      rhs_scale_ += NumTraits<T>::to_double(r);
      rhs_[i] = std::move(r);
      needs_art[i] = is_eq || flip;
      if (needs_art[i]) ++artificials;
    }
    cols_ = art_begin_ + artificials;

    std::size_t next_art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      if (needs_art[i]) {
        identity_col_[i] = next_art;
        rows_[i].push_back({static_cast<std::uint32_t>(next_art), T(1)});
        ++next_art;
      } else {
        identity_col_[i] = slack_begin_ + (i - n_eq);
      }
      basis_[i] = identity_col_[i];
    }

    cost_.assign(cols_, T(0));
    for (std::size_t j = 0; j < n_ && j < lp.objective.size(); ++j) {
      cost_[j] = lp.sense == Sense::maximize ? T(-lp.objective[j]) : lp.objective[j];
    }
  }

  bool has_artificials() const { return cols_ > art_begin_; }

  // Returns false when phase one proves infeasibility.
  bool phase_one() {
    if (!has_artificials()) return true;
    std::vector<T> phase_cost(cols_, T(0));
    for (std::size_t j = art_begin_; j < cols_; ++j) phase_cost[j] = T(1);
    // Rounding accumulates over the rows, so float mode compares against the
    // size of the right-hand side.
    const double threshold = tol_ * std::max(1.0, rhs_scale_);
    if (NumTraits<T>::sign(infeasibility(), threshold) == 0) {
      // Already feasible: the artificials sit at zero and leave lazily in
      // phase two (see choose_leaving).
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= art_begin_) rhs_[i] = T(0);
      }
      return true;
    }
    price(phase_cost);
    // An artificial that has left the basis is never needed again.
    allowed_end_ = art_begin_;
    const LpStatus status = iterate();
    if (status != LpStatus::optimal) {
      throw SolverError("phase one did not terminate at an optimum");
    }
    if (NumTraits<T>::sign(infeasibility(), threshold) > 0) return false;
    drive_out_artificials();
    return true;
  }

  T infeasibility() const {
    T sum(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= art_begin_) sum += rhs_[i];
    }
    return sum;
  }

  LpStatus phase_two() {
    price(cost_);
    allowed_end_ = art_begin_;
    return iterate();
  }

  std::vector<T> basic_solution() const {
    std::vector<T> x(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    }
    if constexpr (!NumTraits<T>::exact) {
      for (auto& v : x) {
        if (v < 0 && v > -tol_) v = 0;
      }
    }
    return x;
  }

  // Duals of the internal minimization over the original (unflipped) rows.
  std::vector<T> min_form_duals() const {
    std::vector<T> y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      T v = -reduced_[identity_col_[i]];
      y[i] = flipped_[i] ? T(-v) : v;
    }
    return y;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  void price(const std::vector<T>& cost) {
    reduced_ = cost;
    for (std::size_t i = 0; i < m_; ++i) {
      const T& cb = cost[basis_[i]];
      if (cb == T(0)) continue;
      for (const auto& e : rows_[i]) reduced_[e.col] -= cb * e.value;
    }
    // Basic columns have exactly zero reduced cost.
    for (std::size_t i = 0; i < m_; ++i) reduced_[basis_[i]] = T(0);
  }

  LpStatus iterate() {
    std::size_t streak = 0;
    bland_ = false;
    for (;;) {
      const std::size_t entering = choose_entering();
      if (entering == kNone) return LpStatus::optimal;
      const std::size_t leaving = choose_leaving(entering);
      if (leaving == kNone) return LpStatus::unbounded;
      const bool degenerate = NumTraits<T>::is_zero(rhs_[leaving], tol_);
      pivot(leaving, entering);
      if (degenerate) {
        if (++streak >= options_.degenerate_streak_limit) bland_ = true;
      } else {
        streak = 0;
        bland_ = false;
      }
      if (options_.max_pivots != 0 && pivots_ >= options_.max_pivots) {
        throw SolverError("pivot limit of " + std::to_string(options_.max_pivots) + " reached");
      }
    }
  }

  // Most negative reduced cost, scaled by the column norm under steepest-edge
  // pricing; the first negative column under Bland's rule.
  std::size_t choose_entering() const {
    if (bland_) {
      for (std::size_t j = 0; j < allowed_end_; ++j) {
        if (NumTraits<T>::sign(reduced_[j], tol_) < 0) return j;
      }
      return kNone;
    }
    const bool steepest = options_.pricing == Pricing::steepest_edge;
    if (steepest) {
      // Norms only rank candidates, so doubles suffice even in exact mode.
      weight_.assign(allowed_end_, 1.0);
      for (const auto& row : rows_) {
        for (const auto& e : row) {
          if (e.col >= allowed_end_) continue;
          const double v = NumTraits<T>::to_double(e.value);
          weight_[e.col] += v * v;
        }
      }
    }
    std::size_t best = kNone;
    double best_score = 0.0;
    for (std::size_t j = 0; j < allowed_end_; ++j) {
      if (NumTraits<T>::sign(reduced_[j], tol_) >= 0) continue;
      const double d = NumTraits<T>::to_double(reduced_[j]);
      const double score = steepest ? d * d / weight_[j] : -d;
      if (best == kNone || score > best_score) {
        best = j;
        best_score = score;
      }
    }
    return best;
  }

  // Minimum-ratio row, ties broken by tie_break. A basic artificial at zero
  // leaves on any nonzero entry, so it can never turn positive.
  std::size_t choose_leaving(std::size_t col) const {
    std::size_t best = kNone;
    const T* best_a = nullptr;
    const auto c = static_cast<std::uint32_t>(col);
    for (std::size_t i = 0; i < m_; ++i) {
      const T* a = find_entry(rows_[i], c);
      if (a != nullptr && basis_[i] >= art_begin_ && NumTraits<T>::is_zero(rhs_[i], tol_) &&
          !NumTraits<T>::is_zero(*a, tol_)) {
        return i;
      }
      if (a == nullptr || NumTraits<T>::sign(*a, tol_) <= 0) continue;
      if (best == kNone) {
        best = i;
        best_a = a;
        continue;
      }
      // rhs_i / a < rhs_best / best_a  <=>  rhs_i * best_a < rhs_best * a
      const T lhs = rhs_[i] * *best_a;
      const T rhs = rhs_[best] * *a;
      bool better;
      if constexpr (NumTraits<T>::exact) {
        better = lhs < rhs || (lhs == rhs && tie_break(i, best));
      } else {
        const double slack = tol_ * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        better = lhs < rhs - slack || (std::fabs(lhs - rhs) <= slack && tie_break(i, best));
      }
      if (better) {
        best = i;
        best_a = a;
      }
    }
    return best;
  }

  // Ratio-test tie between rows i and k. Under Bland's rule the smallest basic
  // index leaves; otherwise the sparser row, which limits fill-in.
  bool tie_break(std::size_t i, std::size_t k) const {
    if (!bland_ && rows_[i].size() != rows_[k].size()) return rows_[i].size() < rows_[k].size();
    return basis_[i] < basis_[k];
  }

  void pivot(std::size_t r, std::size_t col) {
    ++pivots_;
    const auto c = static_cast<std::uint32_t>(col);
    SparseRow<T>& prow = rows_[r];
    {
      const T piv = *find_entry(prow, c);
      for (auto& e : prow) e.value /= piv;
      rhs_[r] /= piv;
      for (auto& e : prow) {
        if (e.col == c) e.value = T(1);
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const T* a = find_entry(rows_[i], c);
      if (a == nullptr) continue;
      const T factor = *a;
      rows_[i] = axpy(rows_[i], factor, prow, c);
      rhs_[i] -= factor * rhs_[r];
      if constexpr (!NumTraits<T>::exact) {
        if (std::fabs(rhs_[i]) < drop_tol_) rhs_[i] = 0;
      }
    }
    const T factor = reduced_[col];
    if (factor != T(0)) {
      for (const auto& e : prow) reduced_[e.col] -= factor * e.value;
      reduced_[col] = T(0);
    }
    basis_[r] = col;
  }

  // row - factor * prow, with the pivot column removed exactly.
  SparseRow<T> axpy(const SparseRow<T>& row, const T& factor, const SparseRow<T>& prow,
                    std::uint32_t pivot_col) const {
    SparseRow<T> out;
    out.reserve(row.size() + prow.size());
    auto a = row.begin();
    auto b = prow.begin();
    auto keep = [&](std::uint32_t col, T&& v) {
      if (col == pivot_col) return;
      if constexpr (NumTraits<T>::exact) {
        if (sgn(v) == 0) return;
      } else {
        if (std::fabs(v) < drop_tol_) return;
      }
      out.push_back({col, std::move(v)});
    };
    while (a != row.end() || b != prow.end()) {
      if (b == prow.end() || (a != row.end() && a->col < b->col)) {
        out.push_back(*a);
        ++a;
      } else if (a == row.end() || b->col < a->col) {
        keep(b->col, T(-(factor * b->value)));
        ++b;
      } else {
        keep(a->col, T(a->value - factor * b->value));
        ++a;
        ++b;
      }
    }
    return out;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      std::size_t candidate = kNone;
      for (const auto& e : rows_[i]) {
        if (e.col < art_begin_ && !NumTraits<T>::is_zero(e.value, tol_)) {
          candidate = e.col;
          break;
        }
      }
      if constexpr (!NumTraits<T>::exact) rhs_[i] = 0;
      if (candidate != kNone) {
        pivot(i, candidate);
      } else {
        // Redundant row: clear structural noise so it stays inert.
        std::erase_if(rows_[i], [&](const RowEntry<T>& e) { return e.col < art_begin_; });
      }
    }
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  double tol_;
  double drop_tol_ = 1e-13;
  SolveOptions options_;
  std::size_t n_ = 0, m_ = 0, cols_ = 0;
  std::size_t slack_begin_ = 0, art_begin_ = 0, allowed_end_ = 0;
  std::vector<SparseRow<T>> rows_;
  std::vector<T> rhs_;
  std::vector<bool> flipped_;
  std::vector<std::size_t> identity_col_;
  bool bland_ = false;
  double rhs_scale_ = 0.0;  // sum of |rhs| after flipping
  mutable std::vector<double> weight_;
  std::vector<std::size_t> basis_;
  std::vector<T> cost_;
  std::vector<T> reduced_;
  std::size_t pivots_ = 0;
};

}  // namespace

template <class T>
LpSolution<T> solve(const LinearProgram<T>& lp, const SolveOptions& options) {
  lp.validate();
  Tableau<T> tab(lp, options);
  LpSolution<T> sol;
  if (!tab.phase_one()) {
    sol.status = LpStatus::infeasible;
    sol.pivots = tab.pivots();
    return sol;
  }
  sol.status = tab.phase_two();
  sol.pivots = tab.pivots();
  if (sol.status != LpStatus::optimal) return sol;

  std::vector<T> x = tab.basic_solution();
  if (!lp.lower_bounds.empty()) {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += lp.lower_bounds[j];
  }
  T value(0);
  for (std::size_t j = 0; j < lp.objective.size(); ++j) value += lp.objective[j] * x[j];
  sol.objective_value = value;
  sol.primal = std::move(x);

  std::vector<T> y = tab.min_form_duals();
  if (lp.sense == Sense::maximize) {
    for (auto& v : y) v = -v;
  }
  const std::size_t n_eq = lp.eq_rows.size();
  sol.eq_duals.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n_eq));
  sol.ineq_duals.assign(y.begin() + static_cast<std::ptrdiff_t>(n_eq), y.end());
  return sol;
}

template <class T>
Feasibility check_feasible(const LinearProgram<T>& lp, const SolveOptions& options) {
  lp.validate();
  Tableau<T> tab(lp, options);
  return tab.phase_one() ? Feasibility::feasible : Feasibility::infeasible;
}

template <class T>
void write_lp(std::ostream& out, const LinearProgram<T>& lp) {
  auto str = [](const T& v) {
    if constexpr (NumTraits<T>::exact) {
      return to_string(v);
    } else {
      std::ostringstream s;
      s.precision(17);
      s << v;
      return s.str();
    }
  };
  auto terms = [&](const SparseRow<T>& row) {
    std::string s;
    for (const auto& e : row) s += " x" + std::to_string(e.col) + ":" + str(e.value);
    return s;
  };
  out << "# variables " << lp.variable_count << " mode " << NumTraits<T>::name() << '\n';
  out << (lp.sense == Sense::maximize ? "maximize" : "minimize");
  for (std::size_t j = 0; j < lp.objective.size(); ++j) {
    if (lp.objective[j] != T(0)) out << " x" << j << ':' << str(lp.objective[j]);
  }
  out << '\n';
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) {
    out << "eq" << terms(lp.eq_rows[i]) << " = " << str(lp.eq_rhs[i]) << '\n';
  }
  for (std::size_t i = 0; i < lp.ineq_rows.size(); ++i) {
    out << "le" << terms(lp.ineq_rows[i]) << " <= " << str(lp.ineq_rhs[i]) << '\n';
  }
  for (std::size_t j = 0; j < lp.lower_bounds.size(); ++j) {
    if (lp.lower_bounds[j] != T(0)) out << "lb x" << j << " >= " << str(lp.lower_bounds[j]) << '\n';
  }
}

template <class T>
T max_violation(const LinearProgram<T>& lp, const std::vector<T>& x) {
  using Traits = NumTraits<T>;
  T worst(0);
  auto bump = [&](const T& v) {
    if (v > worst) worst = v;
  };
  auto dot = [&](const SparseRow<T>& row) {
    T s(0);
    for (const auto& e : row) s += e.value * x[e.col];
    return s;
  };
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i) bump(Traits::abs(T(dot(lp.eq_rows[i]) - lp.eq_rhs[i])));
  for (std::size_t i = 0; i < lp.ineq_rows.size(); ++i) bump(T(dot(lp.ineq_rows[i]) - lp.ineq_rhs[i]));
  for (std::size_t j = 0; j < x.size(); ++j) {
    const T lb = lp.lower_bounds.empty() ? T(0) : lp.lower_bounds[j];
    bump(T(lb - x[j]));
  }
  return worst;
}

template struct LinearProgram<Rational>;
template struct LinearProgram<double>;
template LpSolution<Rational> solve(const LinearProgram<Rational>&, const SolveOptions&);
template LpSolution<double> solve(const LinearProgram<double>&, const SolveOptions&);
template Feasibility check_feasible(const LinearProgram<Rational>&, const SolveOptions&);
template Feasibility check_feasible(const LinearProgram<double>&, const SolveOptions&);
template void write_lp(std::ostream&, const LinearProgram<Rational>&);
template void write_lp(std::ostream&, const LinearProgram<double>&);
template Rational max_violation(const LinearProgram<Rational>&, const std::vector<Rational>&);
template double max_violation(const LinearProgram<double>&, const std::vector<double>&);

}  // namespace ewfs
