#include "wardmip/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wardmip {

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "numerical_failure";
}

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

LpRelaxation::LpRelaxation(const IlpModel& model, LpOptions options)
    : model_(model), options_(options), num_columns_(model.num_columns) {
  // Empty rows are dropped here; an unsatisfiable one marks the LP infeasible.
  std::vector<int> kept;
  for (size_t i = 0; i < model.rows.size(); ++i) {
    const ConstraintRow& row = model.rows[i];
    if (!row.terms.empty()) {
      kept.push_back(static_cast<int>(i));
      continue;
    }
    const double tol = options_.feasibility_tol;
    const bool ok = (row.sense == Sense::kLessEqual && 0 <= row.rhs + tol) ||
                    (row.sense == Sense::kGreaterEqual && 0 >= row.rhs - tol) ||
                    (row.sense == Sense::kEqual && std::abs(row.rhs) <= tol);
    if (!ok) trivially_infeasible_ = true;
  }

  std::vector<int> count(num_columns_, 0);
  for (int i : kept) {
    for (const Term& term : model.rows[i].terms) ++count[term.column];
  }
  col_start_.assign(num_columns_ + 1, 0);
  for (int j = 0; j < num_columns_; ++j) {
    col_start_[j + 1] = col_start_[j] + count[j];
  }
  row_index_.resize(col_start_.back());
  coef_.resize(col_start_.back());
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (size_t r = 0; r < kept.size(); ++r) {
    const ConstraintRow& row = model.rows[kept[r]];
    sense_.push_back(row.sense);
    rhs_.push_back(row.rhs);
    for (const Term& term : row.terms) {
      row_index_[fill[term.column]] = static_cast<int>(r);
      coef_[fill[term.column]] = term.coef;
      ++fill[term.column];
    }
  }
  cost_.resize(num_columns_);
  const double sign = model.maximize() ? -1.0 : 1.0;
  for (int j = 0; j < num_columns_; ++j) cost_[j] = sign * model.objective[j];
}

// Variables are laid out as [structural | slack | artificial]. Row i reads
// a_i x + s_i + sigma_i t_i = b_i, so a <= row has s_i in [0, inf), a >= row
// has s_i in (-inf, 0] and an equality row has s_i fixed at 0. Artificial t_i
// only exists for rows whose starting residual the slack cannot absorb.
//
// The basis inverse is stored explicitly, column-major, and updated in
// product form. Updates only touch the nonzeros of the pivot column and the
// pivot row, which keeps iterations cheap while the basis is mostly slacks.
class SimplexRun {
 public:
  SimplexRun(const LpRelaxation& lp, std::span<const double> lower,
             std::span<const double> upper)
      : lp_(lp),
        opt_(lp.options_),
        m_(lp.num_rows()),
        n_(lp.num_columns()),
        num_vars_(n_ + 2 * m_) {
    lb_.assign(num_vars_, 0.0);
    ub_.assign(num_vars_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lb_[j] = lower[j];
      ub_[j] = upper[j];
    }
    iteration_limit_ = opt_.iteration_limit > 0
                           ? opt_.iteration_limit
                           : 50 * static_cast<int64_t>(n_ + m_) + 10000;
  }

  LpSolution Run() {
    LpSolution result;
    if (lp_.trivially_infeasible_) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    for (int j = 0; j < n_; ++j) {
      if (lb_[j] > ub_[j] + opt_.feasibility_tol) {
        result.status = LpStatus::kInfeasible;
        return result;
      }
    }
    InitialBasis();

    if (num_artificial_ > 0) {
      cost_.assign(num_vars_, 0.0);
      for (int i = 0; i < m_; ++i) {
        if (artificial_used_[i]) cost_[Artificial(i)] = 1.0;
      }
      const LpStatus phase1 = Optimize();
      if (phase1 != LpStatus::kOptimal) {
        result.status = LpStatus::kNumericalFailure;
        result.iterations = iterations_;
        return result;
      }
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) infeasibility += x_[Artificial(i)];
      if (infeasibility > opt_.feasibility_tol * std::max(1, m_ / 10)) {
        result.status = LpStatus::kInfeasible;
        result.iterations = iterations_;
        return result;
      }
      for (int i = 0; i < m_; ++i) {
        const int v = Artificial(i);
        ub_[v] = 0.0;
        if (pos_[v] < 0) {
          x_[v] = 0.0;
          state_[v] = State::kLower;
        }
      }
    }

    cost_.assign(num_vars_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp_.cost_[j];
    const LpStatus phase2 = Optimize();
    result.status = phase2;
    result.iterations = iterations_;
    if (phase2 != LpStatus::kOptimal) return result;

    result.values.assign(x_.begin(), x_.begin() + n_);
    double objective = lp_.model_.objective_constant;
    for (int j = 0; j < n_; ++j) {
      objective += lp_.model_.objective[j] * result.values[j];
    }
    result.objective = objective;
    return result;
  }

 private:
  enum class State : uint8_t { kBasic, kLower, kUpper, kFree };

  int Slack(int row) const { return n_ + row; }
  int Artificial(int row) const { return n_ + m_ + row; }

  double& Binv(int row, int col) {
    return binv_[static_cast<size_t>(col) * m_ + row];
  }

  // Calls f(row, coef) for every nonzero of variable v's column.
  template <typename F>
  void ForEachEntry(int v, F&& f) const {
    if (v < n_) {
      for (int k = lp_.col_start_[v]; k < lp_.col_start_[v + 1]; ++k) {
        f(lp_.row_index_[k], lp_.coef_[k]);
      }
    } else if (v < n_ + m_) {
      f(v - n_, 1.0);
    } else {
      f(v - n_ - m_, artificial_sign_[v - n_ - m_]);
    }
  }

  void InitialBasis() {
    x_.assign(num_vars_, 0.0);
    state_.assign(num_vars_, State::kLower);
    pos_.assign(num_vars_, -1);
    basis_.assign(m_, -1);
    artificial_sign_.assign(m_, 1.0);
    artificial_used_.assign(m_, false);
    num_artificial_ = 0;

    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lb_[j])) {
        x_[j] = lb_[j];
        state_[j] = State::kLower;
      } else if (std::isfinite(ub_[j])) {
        x_[j] = ub_[j];
        state_[j] = State::kUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = State::kFree;
      }
    }
    std::vector<double> residual(lp_.rhs_);
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      ForEachEntry(j, [&](int row, double a) { residual[row] -= a * x_[j]; });
    }

    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int s = Slack(i);
      switch (lp_.sense_[i]) {
        case Sense::kLessEqual:
          lb_[s] = 0.0;
          ub_[s] = kInf;
          break;
        case Sense::kGreaterEqual:
          lb_[s] = -kInf;
          ub_[s] = 0.0;
          break;
        case Sense::kEqual:
          lb_[s] = 0.0;
          ub_[s] = 0.0;
          break;
      }
      const int a = Artificial(i);
      const double r = residual[i];
      if (r >= lb_[s] && r <= ub_[s]) {
        x_[s] = r;
        SetBasic(i, s);
        Binv(i, i) = 1.0;
        lb_[a] = ub_[a] = 0.0;
      } else {
        x_[s] = 0.0;
        state_[s] = lb_[s] == 0.0 ? State::kLower : State::kUpper;
        artificial_sign_[i] = r > 0 ? 1.0 : -1.0;
        artificial_used_[i] = true;
        ++num_artificial_;
        lb_[a] = 0.0;
        ub_[a] = kInf;
        x_[a] = std::abs(r);
        SetBasic(i, a);
        Binv(i, i) = artificial_sign_[i];
      }
    }
  }

  void SetBasic(int position, int v) {
    basis_[position] = v;
    pos_[v] = position;
    state_[v] = State::kBasic;
  }

  void ComputeDuals() {
    duals_.assign(m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      const double* column = &binv_[static_cast<size_t>(k) * m_];
      double sum = 0.0;
      for (int i = 0; i < m_; ++i) sum += cost_[basis_[i]] * column[i];
      duals_[k] = sum;
    }
  }

  // x_B = B^-1 (b - N x_N)
  void RecomputePrimal() {
    std::vector<double> residual(lp_.rhs_);
    for (int v = 0; v < num_vars_; ++v) {
      if (pos_[v] >= 0 || x_[v] == 0.0) continue;
      ForEachEntry(v, [&](int row, double a) { residual[row] -= a * x_[v]; });
    }
    std::vector<double> xb(m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      if (residual[k] == 0.0) continue;
      const double* column = &binv_[static_cast<size_t>(k) * m_];
      for (int i = 0; i < m_; ++i) xb[i] += column[i] * residual[k];
    }
    for (int i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
  }

  double ReducedCost(int v) const {
    double d = cost_[v];
    ForEachEntry(v, [&](int row, double a) { d -= duals_[row] * a; });
    return d;
  }

  bool Attractive(int v, double d) const {
    switch (state_[v]) {
      case State::kLower:
        return d < -opt_.dual_tol;
      case State::kUpper:
        return d > opt_.dual_tol;
      case State::kFree:
        return std::abs(d) > opt_.dual_tol;
      case State::kBasic:
        return false;
    }
    return false;
  }

  // Dantzig pricing, or the lowest-index candidate under Bland's rule.
  int Price(bool bland, double& reduced_cost) const {
    int best = -1;
    double best_score = 0.0;
    for (int v = 0; v < num_vars_; ++v) {
      if (pos_[v] >= 0 || lb_[v] == ub_[v]) continue;
      const double d = ReducedCost(v);
      if (!Attractive(v, d)) continue;
      if (bland) {
        reduced_cost = d;
        return v;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        best = v;
        reduced_cost = d;
      }
    }
    return best;
  }

  void Ftran(int v, std::vector<double>& alpha) {
    alpha.assign(m_, 0.0);
    ForEachEntry(v, [&](int row, double a) {
      const double* column = &binv_[static_cast<size_t>(row) * m_];
      for (int i = 0; i < m_; ++i) alpha[i] += a * column[i];
    });
  }

  // Returns the pivot position, -1 for a bound flip of the entering
  // variable, or -2 when the step is unbounded.
  int RatioTest(int q, double dir, const std::vector<double>& alpha,
                bool bland, double& step) const {
    const double tol = opt_.feasibility_tol;
    const double flip = ub_[q] - lb_[q];

    // Pass 1: largest step with every basic bound relaxed by tol.
    double relaxed = std::isfinite(flip) ? flip : kInf;
    for (int i = 0; i < m_; ++i) {
      if (std::abs(alpha[i]) <= opt_.pivot_tol) continue;
      const int v = basis_[i];
      const double rate = -dir * alpha[i];
      double limit;
      if (rate < 0) {
        if (!std::isfinite(lb_[v])) continue;
        limit = (x_[v] - lb_[v] + tol) / -rate;
      } else {
        if (!std::isfinite(ub_[v])) continue;
        limit = (ub_[v] - x_[v] + tol) / rate;
      }
      relaxed = std::min(relaxed, limit);
    }
    if (!std::isfinite(relaxed)) return -2;
    if (std::isfinite(flip) && flip <= relaxed) {
      step = flip;
      return -1;
    }

    // Pass 2: among rows whose exact limit fits within the relaxed step,
    // take the largest pivot; under Bland's rule take the exact minimum
    // ratio with the lowest variable index.
    int chosen = -1;
    double chosen_limit = kInf;
    double chosen_alpha = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (std::abs(alpha[i]) <= opt_.pivot_tol) continue;
      const int v = basis_[i];
      const double rate = -dir * alpha[i];
      double limit;
      if (rate < 0) {
        if (!std::isfinite(lb_[v])) continue;
        limit = (x_[v] - lb_[v]) / -rate;
      } else {
        if (!std::isfinite(ub_[v])) continue;
        limit = (ub_[v] - x_[v]) / rate;
      }
      limit = std::max(limit, 0.0);
      if (bland) {
        if (chosen < 0 || limit < chosen_limit - 1e-12 ||
            (limit <= chosen_limit + 1e-12 && v < basis_[chosen])) {
          chosen = i;
          chosen_limit = limit;
        }
      } else if (limit <= relaxed) {
        if (std::abs(alpha[i]) > chosen_alpha) {
          chosen = i;
          chosen_limit = limit;
          chosen_alpha = std::abs(alpha[i]);
        }
      }
    }
    if (chosen < 0) return -2;
    step = chosen_limit;
    return chosen;
  }

  void Pivot(int r, double reduced_cost,
             const std::vector<double>& alpha) {
    const double pivot = alpha[r];
    // Row r of B^-1 before the update.
    row_nz_.clear();
    row_vals_.clear();
    for (int k = 0; k < m_; ++k) {
      const double value = Binv(r, k);
      if (value != 0.0) {
        row_nz_.push_back(k);
        row_vals_.push_back(value);
      }
    }
    const double dual_step = reduced_cost / pivot;
    for (size_t t = 0; t < row_nz_.size(); ++t) {
      duals_[row_nz_[t]] += dual_step * row_vals_[t];
    }

    col_nz_.clear();
    for (int i = 0; i < m_; ++i) {
      if (i != r && alpha[i] != 0.0) col_nz_.push_back(i);
    }
    for (size_t t = 0; t < row_nz_.size(); ++t) {
      const int k = row_nz_[t];
      double* column = &binv_[static_cast<size_t>(k) * m_];
      const double scaled = row_vals_[t] / pivot;
      column[r] = scaled;
      for (int i : col_nz_) column[i] -= alpha[i] * scaled;
    }
  }

  // Rebuilds B^-1 from the basis columns by Gauss-Jordan elimination.
  bool Reinvert() {
    const int width = 2 * m_;
    std::vector<double> work(static_cast<size_t>(m_) * width, 0.0);
    for (int i = 0; i < m_; ++i) {
      ForEachEntry(basis_[i], [&](int row, double a) {
        work[static_cast<size_t>(row) * width + i] = a;
      });
      work[static_cast<size_t>(i) * width + m_ + i] = 1.0;
    }
    std::vector<int> nz;
    for (int c = 0; c < m_; ++c) {
      int best = -1;
      double best_abs = 1e-11;
      for (int i = c; i < m_; ++i) {
        const double value = std::abs(work[static_cast<size_t>(i) * width + c]);
        if (value > best_abs) {
          best_abs = value;
          best = i;
        }
      }
      if (best < 0) return false;
      double* prow = &work[static_cast<size_t>(c) * width];
      if (best != c) {
        std::swap_ranges(prow, prow + width,
                         &work[static_cast<size_t>(best) * width]);
      }
      const double inv = 1.0 / prow[c];
      nz.clear();
      for (int k = 0; k < width; ++k) {
        if (prow[k] != 0.0) {
          prow[k] *= inv;
          nz.push_back(k);
        }
      }
      for (int i = 0; i < m_; ++i) {
        if (i == c) continue;
        double* row = &work[static_cast<size_t>(i) * width];
        const double factor = row[c];
        if (factor == 0.0) continue;
        for (int k : nz) row[k] -= factor * prow[k];
      }
    }
    // The eliminated left block is the identity in basis-position order, so
    // the right block is B^-1 with rows indexed by basis position.
    for (int i = 0; i < m_; ++i) {
      for (int k = 0; k < m_; ++k) {
        Binv(i, k) = work[static_cast<size_t>(i) * width + m_ + k];
      }
    }
    return true;
  }

  double MaxPrimalViolation() const {
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int v = basis_[i];
      worst = std::max(worst, lb_[v] - x_[v]);
      worst = std::max(worst, x_[v] - ub_[v]);
    }
    return worst;
  }

  LpStatus Optimize() {
    ComputeDuals();
    int degenerate_streak = 0;
    int since_refresh = 0;
    int reinversions = 0;
    std::vector<double> alpha;
    while (true) {
      if (++iterations_ > iteration_limit_) return LpStatus::kNumericalFailure;
      if (++since_refresh >= 200) {
        RecomputePrimal();
        ComputeDuals();
        since_refresh = 0;
      }
      const bool bland = degenerate_streak > opt_.degenerate_streak_for_bland;
      double reduced_cost = 0.0;
      const int q = Price(bland, reduced_cost);
      if (q < 0) {
        // Confirm optimality from freshly computed primal and dual values.
        RecomputePrimal();
        ComputeDuals();
        since_refresh = 0;
        if (MaxPrimalViolation() > 10 * opt_.feasibility_tol) {
          if (++reinversions > 3 || !Reinvert()) {
            return LpStatus::kNumericalFailure;
          }
          RecomputePrimal();
          ComputeDuals();
          if (MaxPrimalViolation() > 10 * opt_.feasibility_tol) {
            return LpStatus::kNumericalFailure;
          }
          continue;
        }
        double check = 0.0;
        if (Price(false, check) >= 0) continue;
        return LpStatus::kOptimal;
      }

      Ftran(q, alpha);
      const double dir = reduced_cost < 0 ? 1.0 : -1.0;
      double step = 0.0;
      const int r = RatioTest(q, dir, alpha, bland, step);
      if (r == -2) return LpStatus::kUnbounded;

      x_[q] += dir * step;
      if (step != 0.0) {
        for (int i = 0; i < m_; ++i) {
          if (alpha[i] != 0.0) x_[basis_[i]] -= dir * step * alpha[i];
        }
      }
      degenerate_streak = step <= 1e-11 ? degenerate_streak + 1 : 0;

      if (r == -1) {
        if (dir > 0) {
          x_[q] = ub_[q];
          state_[q] = State::kUpper;
        } else {
          x_[q] = lb_[q];
          state_[q] = State::kLower;
        }
        continue;
      }

      const int leaving = basis_[r];
      const double rate = -dir * alpha[r];
      if (rate < 0) {
        x_[leaving] = lb_[leaving];
        state_[leaving] = State::kLower;
      } else {
        x_[leaving] = ub_[leaving];
        state_[leaving] = State::kUpper;
      }
      pos_[leaving] = -1;
      Pivot(r, reduced_cost, alpha);
      SetBasic(r, q);
    }
  }

  const LpRelaxation& lp_;
  const LpOptions& opt_;
  const int m_;
  const int n_;
  const int num_vars_;
  int64_t iteration_limit_ = 0;
  int64_t iterations_ = 0;

  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<double> cost_;
  std::vector<double> x_;
  std::vector<State> state_;
  std::vector<int> pos_;
  std::vector<int> basis_;
  std::vector<double> artificial_sign_;
  std::vector<bool> artificial_used_;
  int num_artificial_ = 0;
  std::vector<double> binv_;
  std::vector<double> duals_;
  std::vector<int> row_nz_;
  std::vector<double> row_vals_;
  std::vector<int> col_nz_;
};

LpSolution LpRelaxation::Solve(std::span<const double> lower,
                               std::span<const double> upper) const {
  SimplexRun run(*this, lower, upper);
  return run.Run();
}

LpSolution LpRelaxation::Solve() const {
  return Solve(model_.lower, model_.upper);
}

LpSolution SolveLp(const IlpModel& model,
                   std::span<const BoundOverride> overrides,
                   const LpOptions& options) {
  std::vector<double> lower = model.lower;
  std::vector<double> upper = model.upper;
  for (const BoundOverride& o : overrides) {
    lower.at(o.column) = o.lower;
    upper.at(o.column) = o.upper;
  }
  LpRelaxation lp(model, options);
  return lp.Solve(lower, upper);
}

}  // namespace wardmip
