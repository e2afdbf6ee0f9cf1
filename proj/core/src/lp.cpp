#include "rsg/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rsg {

namespace {

void check_well_formed(const LinearProgram& lp) {
  const std::size_t n = lp.variable_count();
  if (lp.eq_lhs.size() != lp.eq_rhs.size())
    throw std::invalid_argument("lp: eq_lhs has " + std::to_string(lp.eq_lhs.size()) +
                                " rows but eq_rhs has " + std::to_string(lp.eq_rhs.size()));
  if (lp.le_lhs.size() != lp.le_rhs.size())
    throw std::invalid_argument("lp: le_lhs has " + std::to_string(lp.le_lhs.size()) +
                                " rows but le_rhs has " + std::to_string(lp.le_rhs.size()));
  auto check_rows = [n](const std::vector<std::vector<double>>& rows, const char* what) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != n)
        throw std::invalid_argument("lp: " + std::string(what) + " row " + std::to_string(i) +
                                    " has " + std::to_string(rows[i].size()) +
                                    " coefficients, expected " + std::to_string(n));
      for (double v : rows[i])
        if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite coefficient");
    }
  };
  check_rows(lp.eq_lhs, "eq");
  check_rows(lp.le_lhs, "le");
  for (double v : lp.objective)
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite objective coefficient");
  for (double v : lp.eq_rhs)
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite rhs");
  for (double v : lp.le_rhs)
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite rhs");
}

// Dense tableau over [structural | slack | artificial] columns.
class Tableau {
public:
  Tableau(const LinearProgram& lp, double tol) : tol_(tol), n_(lp.variable_count()) {
    const std::size_t m_eq = lp.eq_lhs.size();
    const std::size_t m_le = lp.le_lhs.size();
    m_ = m_eq + m_le;
    slack_begin_ = n_;
    art_begin_ = n_ + m_le;
    cols_ = art_begin_ + m_;

    rows_.assign(m_, std::vector<double>(cols_, 0.0));
    rhs_.assign(m_, 0.0);
    basis_.assign(m_, 0);

    for (std::size_t i = 0; i < m_eq; ++i) {
      std::copy(lp.eq_lhs[i].begin(), lp.eq_lhs[i].end(), rows_[i].begin());
      rhs_[i] = lp.eq_rhs[i];
    }
    for (std::size_t i = 0; i < m_le; ++i) {
      std::size_t r = m_eq + i;
      std::copy(lp.le_lhs[i].begin(), lp.le_lhs[i].end(), rows_[r].begin());
      rows_[r][slack_begin_ + i] = 1.0;
      rhs_[r] = lp.le_rhs[i];
    }
    // Nonnegative rhs so the artificial basis is feasible.
    for (std::size_t r = 0; r < m_; ++r) {
      if (rhs_[r] < 0.0) {
        for (double& v : rows_[r]) v = -v;
        rhs_[r] = -rhs_[r];
      }
      rows_[r][art_begin_ + r] = 1.0;
      basis_[r] = static_cast<int>(art_begin_ + r);
    }
  }

  // Runs both phases; objective is the structural cost vector.
  LPSolution run(const std::vector<double>& costs) {
    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1(cols_, 0.0);
    for (std::size_t j = art_begin_; j < cols_; ++j) phase1[j] = 1.0;
    load_objective(phase1);
    simplex(/*allow_artificials=*/true);
    if (objective_value() > tol_ * std::max<double>(1.0, rhs_scale()))
      return {LPStatus::Infeasible, {}, 0.0};
    pivot_out_artificials();

    // Phase 2: the real objective over structural columns.
    std::vector<double> full(cols_, 0.0);
    std::copy(costs.begin(), costs.end(), full.begin());
    load_objective(full);
    if (!simplex(/*allow_artificials=*/false)) return {LPStatus::Unbounded, {}, 0.0};

    std::vector<double> x(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] >= 0 && static_cast<std::size_t>(basis_[r]) < n_)
        x[static_cast<std::size_t>(basis_[r])] = rhs_[r];
    double value = 0.0;
    for (std::size_t j = 0; j < n_; ++j) value += costs[j] * x[j];
    return {LPStatus::Optimal, std::move(x), value};
  }

private:
  double rhs_scale() const {
    double s = 0.0;
    for (double v : rhs_) s = std::max(s, std::abs(v));
    return s;
  }

  // Rebuilds reduced costs d_j = c_j - c_B . (B^-1 A_j) from the current rows.
  void load_objective(const std::vector<double>& costs) {
    reduced_.assign(cols_, 0.0);
    value_ = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = costs[j];
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = costs[static_cast<std::size_t>(basis_[r])];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * rows_[r][j];
      value_ += cb * rhs_[r];
    }
  }

  double objective_value() const { return value_; }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / rows_[r][s];
    for (double& v : rows_[r]) v *= inv;
    rhs_[r] *= inv;
    rows_[r][s] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = rows_[i][s];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) rows_[i][j] -= f * rows_[r][j];
      rows_[i][s] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    const double f = reduced_[s];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= f * rows_[r][j];
      reduced_[s] = 0.0;
      value_ += f * rhs_[r];
    }
    basis_[r] = static_cast<int>(s);
  }

  // Bland's rule. Returns false when the objective is unbounded below.
  bool simplex(bool allow_artificials) {
    const std::size_t limit = allow_artificials ? cols_ : art_begin_;
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (reduced_[j] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;

      double min_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        if (rows_[r][enter] <= tol_) continue;
        min_ratio = std::min(min_ratio, rhs_[r] / rows_[r][enter]);
      }
      if (min_ratio == std::numeric_limits<double>::infinity()) return false;
      std::size_t leave = m_;
      for (std::size_t r = 0; r < m_; ++r) {
        if (rows_[r][enter] <= tol_) continue;
        if (rhs_[r] / rows_[r][enter] > min_ratio + tol_) continue;
        if (leave == m_ || basis_[r] < basis_[leave]) leave = r;
      }
      pivot(leave, enter);
    }
  }

  // After phase 1, swap any artificial still basic (at zero) for a real
  // column; rows with no real coefficient are redundant and stay inert.
  void pivot_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (static_cast<std::size_t>(basis_[r]) < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (std::abs(rows_[r][j]) > tol_) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  double tol_;
  std::size_t n_ = 0;          // structural variables
  std::size_t m_ = 0;          // rows
  std::size_t slack_begin_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
  std::vector<double> reduced_;
  double value_ = 0.0;
};

// --- vertex oracle helpers -------------------------------------------------

struct ConstraintRow {
  std::vector<double> a;
  double b = 0.0;
  bool is_eq = false;
};

// Gathers eq rows, le rows, and the x_j >= 0 walls as -x_j <= 0.
std::vector<ConstraintRow> gather_rows(const LinearProgram& lp) {
  const std::size_t n = lp.variable_count();
  std::vector<ConstraintRow> rows;
  rows.reserve(lp.eq_lhs.size() + lp.le_lhs.size() + n);
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i)
    rows.push_back({lp.eq_lhs[i], lp.eq_rhs[i], true});
  for (std::size_t i = 0; i < lp.le_lhs.size(); ++i)
    rows.push_back({lp.le_lhs[i], lp.le_rhs[i], false});
  for (std::size_t j = 0; j < n; ++j) {
    ConstraintRow wall;
    wall.a.assign(n, 0.0);
    wall.a[j] = -1.0;
    rows.push_back(std::move(wall));
  }
  return rows;
}

// Solves the square system given by the selected rows; nullopt if singular.
bool solve_square(const std::vector<ConstraintRow>& rows, const std::vector<std::size_t>& pick,
                  std::vector<double>& out) {
  const std::size_t n = pick.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[pick[i]].a[j];
    a[i][n] = rows[pick[i]].b;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-8) return false;
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i][n] / a[i][i];
  return true;
}

bool point_feasible(const std::vector<ConstraintRow>& rows, const std::vector<double>& x,
                    double tol) {
  for (const auto& row : rows) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += row.a[j] * x[j];
    if (row.is_eq ? std::abs(lhs - row.b) > tol : lhs > row.b + tol) return false;
  }
  return true;
}

// One-dimensional nullspace of the selected rows, or empty when the rank
// leaves more (or less) than one degree of freedom.
std::vector<double> nullspace_direction(const std::vector<ConstraintRow>& rows,
                                        const std::vector<std::size_t>& pick, std::size_t n) {
  std::vector<std::vector<double>> a(pick.size(), std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < pick.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[pick[i]].a[j];

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < a.size(); ++col) {
    std::size_t piv = rank;
    for (std::size_t r = rank + 1; r < a.size(); ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-8) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank) continue;
      const double f = a[r][col] / a[rank][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank + 1 != n) return {};

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (free_col < n && is_pivot[free_col]) ++free_col;

  std::vector<double> d(n, 0.0);
  d[free_col] = 1.0;
  for (std::size_t i = 0; i < rank; ++i)
    d[pivot_col[i]] = -a[i][free_col] / a[i][pivot_col[i]];
  double scale = 0.0;
  for (double v : d) scale = std::max(scale, std::abs(v));
  for (double& v : d) v /= scale;
  return d;
}

bool direction_in_cone(const std::vector<ConstraintRow>& rows, const std::vector<double>& d,
                       double tol) {
  for (const auto& row : rows) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) lhs += row.a[j] * d[j];
    if (row.is_eq ? std::abs(lhs) > tol : lhs > tol) return false;
  }
  return true;
}

// Visits every k-subset of [0, total) in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t total, std::size_t k, Fn&& fn) {
  if (k > total) return;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    fn(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == total - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

} // namespace

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

LPSolution solve_lp(const LinearProgram& lp, double tolerance) {
  check_well_formed(lp);
  if (!(tolerance > 0.0)) throw std::invalid_argument("lp: tolerance must be positive");
  Tableau tableau(lp, tolerance);
  return tableau.run(lp.objective);
}

LPSolution vertex_oracle(const LinearProgram& lp) {
  check_well_formed(lp);
  const std::size_t n = lp.variable_count();
  if (n > 8) throw std::invalid_argument("vertex_oracle: limited to 8 variables, got " +
                                         std::to_string(n));
  if (n == 0) return {LPStatus::Optimal, {}, 0.0};
  const double feas_tol = 1e-7;
  const std::vector<ConstraintRow> rows = gather_rows(lp);

  bool found = false;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  for_each_subset(rows.size(), n, [&](const std::vector<std::size_t>& pick) {
    std::vector<double> x;
    if (!solve_square(rows, pick, x)) return;
    if (!point_feasible(rows, x, feas_tol)) return;
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * x[j];
    if (!found || value < best) {
      found = true;
      best = value;
      best_x = x;
    }
  });
  if (!found) return {LPStatus::Infeasible, {}, 0.0};

  // Recession cone: eq rows pinned to zero, le rows and walls to <= 0.
  std::vector<ConstraintRow> cone = rows;
  for (auto& row : cone) row.b = 0.0;
  bool unbounded = false;
  if (n == 1) {
    std::vector<double> d{1.0};
    if (direction_in_cone(cone, d, feas_tol) && lp.objective[0] < -feas_tol) unbounded = true;
  } else {
    for_each_subset(cone.size(), n - 1, [&](const std::vector<std::size_t>& pick) {
      if (unbounded) return;
      std::vector<double> d = nullspace_direction(cone, pick, n);
      if (d.empty()) return;
      for (int sign : {1, -1}) {
        std::vector<double> cand(n);
        for (std::size_t j = 0; j < n; ++j) cand[j] = sign * d[j];
        if (!direction_in_cone(cone, cand, feas_tol)) continue;
        double slope = 0.0;
        for (std::size_t j = 0; j < n; ++j) slope += lp.objective[j] * cand[j];
        if (slope < -feas_tol) {
          unbounded = true;
          return;
        }
      }
    });
  }
  if (unbounded) return {LPStatus::Unbounded, {}, 0.0};
  return {LPStatus::Optimal, std::move(best_x), best};
}

void write_lp_format(const LinearProgram& lp, std::ostream& out) {
  check_well_formed(lp);
  auto term = [](double coeff, std::size_t var, bool first) {
    std::string s;
    if (coeff < 0.0)
      s += first ? "- " : " - ";
    else if (!first)
      s += " + ";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", std::abs(coeff));
    s += buf;
    s += " x" + std::to_string(var + 1);
    return s;
  };
  auto row_text = [&](const std::vector<double>& a) {
    std::string s;
    bool first = true;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] == 0.0) continue;
      s += term(a[j], j, first);
      first = false;
    }
    if (first) s = "0 x1";
    return s;
  };
  char buf[64];
  out << "Minimize\n obj: " << row_text(lp.objective) << "\n";
  out << "Subject To\n";
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", lp.eq_rhs[i]);
    out << " eq" << (i + 1) << ": " << row_text(lp.eq_lhs[i]) << " = " << buf << "\n";
  }
  for (std::size_t i = 0; i < lp.le_lhs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", lp.le_rhs[i]);
    out << " le" << (i + 1) << ": " << row_text(lp.le_lhs[i]) << " <= " << buf << "\n";
  }
  out << "End\n";
}

} // namespace rsg
