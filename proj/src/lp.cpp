#include "ftap/lp.hpp"

#include <algorithm>
#include <limits>

#include "ftap/errors.hpp"

namespace ftap::lp {

std::string to_string(Status status) {
  switch (status) {
  case Status::Optimal:
    return "optimal";
  case Status::Unbounded:
    return "unbounded";
  case Status::Infeasible:
    return "infeasible";
  }
  return "unknown";
}

VariableBounds Problem::bound(std::size_t j) const {
  return bounds.empty() ? VariableBounds{} : bounds[j];
}

std::size_t Problem::add_variable(Rational objective_coeff, VariableBounds b) {
  if (!bounds.empty() || b.free_below || b.upper) {
    bounds.resize(objective.size());
    bounds.push_back(std::move(b));
  }
  objective.push_back(std::move(objective_coeff));
  for (auto &row : matrix) {
    row.emplace_back(0);
  }
  return objective.size() - 1;
}

void Problem::add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs_value) {
  if (coeffs.size() != objective.size()) {
    throw StructuralError("add_row: coefficient count does not match variable count");
  }
  matrix.push_back(std::move(coeffs));
  relations.push_back(rel);
  rhs.push_back(std::move(rhs_value));
}

void Problem::validate() const {
  if (matrix.size() != rhs.size() || relations.size() != rhs.size()) {
    throw StructuralError("LP: row count mismatch between matrix, relations and rhs");
  }
  for (const auto &row : matrix) {
    if (row.size() != objective.size()) {
      throw StructuralError("LP: matrix column count differs from objective length");
    }
  }
  if (!bounds.empty() && bounds.size() != objective.size()) {
    throw StructuralError("LP: bounds length differs from variable count");
  }
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) {
    throw StructuralError("dot: length mismatch");
  }
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) {
      s += a[i] * b[i];
    }
  }
  return s;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// The problem rewritten as  A x = b, x >= 0, b >= 0  with one column per
/// nonnegative part of each original variable plus slack columns, and one
/// extra row per finite upper bound.
struct StandardForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> cost; // maximize convention
  std::vector<int> row_sign;  // +1 or -1 applied to make b >= 0
  std::vector<bool> has_slack_basis;
  std::vector<std::size_t> slack_col;
  // Original variable j maps to +pos_col[j] and, when free, -neg_col[j].
  std::vector<std::size_t> pos_col;
  std::vector<std::size_t> neg_col;
  // Row index of the upper-bound row for variable j, or kNone.
  std::vector<std::size_t> bound_row;
};

StandardForm standardize(const Problem &p) {
  StandardForm sf;
  const std::size_t n = p.num_variables();
  const std::size_t m = p.num_rows();
  sf.pos_col.assign(n, kNone);
  sf.neg_col.assign(n, kNone);
  sf.bound_row.assign(n, kNone);

  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    sf.pos_col[j] = col++;
    if (p.bound(j).free_below) {
      sf.neg_col[j] = col++;
    }
  }
  std::size_t row_count = m;
  for (std::size_t j = 0; j < n; ++j) {
    if (p.bound(j).upper) {
      sf.bound_row[j] = row_count++;
    }
  }
  sf.rows = row_count;
  sf.slack_col.assign(row_count, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    if (p.relations[i] != Relation::Equal) {
      sf.slack_col[i] = col++;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (sf.bound_row[j] != kNone) {
      sf.slack_col[sf.bound_row[j]] = col++;
    }
  }
  sf.cols = col;

  sf.a.assign(row_count, std::vector<Rational>(col));
  sf.b.assign(row_count, Rational{});
  sf.row_sign.assign(row_count, 1);
  sf.has_slack_basis.assign(row_count, false);
  sf.cost.assign(col, Rational{});

  const bool minimize = p.sense == Sense::Minimize;
  for (std::size_t j = 0; j < n; ++j) {
    Rational c = minimize ? -p.objective[j] : p.objective[j];
    if (sf.neg_col[j] != kNone) {
      sf.cost[sf.neg_col[j]] = -c;
    }
    sf.cost[sf.pos_col[j]] = std::move(c);
  }

  auto fill_var = [&](std::vector<Rational> &row, std::size_t j, const Rational &v) {
    row[sf.pos_col[j]] = v;
    if (sf.neg_col[j] != kNone) {
      row[sf.neg_col[j]] = -v;
    }
  };

  for (std::size_t i = 0; i < m; ++i) {
    auto &row = sf.a[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (!p.matrix[i][j].is_zero()) {
        fill_var(row, j, p.matrix[i][j]);
      }
    }
    if (p.relations[i] == Relation::LessEqual) {
      row[sf.slack_col[i]] = 1;
    } else if (p.relations[i] == Relation::GreaterEqual) {
      row[sf.slack_col[i]] = -1;
    }
    sf.b[i] = p.rhs[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t r = sf.bound_row[j];
    if (r == kNone) {
      continue;
    }
    fill_var(sf.a[r], j, Rational(1));
    sf.a[r][sf.slack_col[r]] = 1;
    sf.b[r] = *p.bound(j).upper;
  }
  for (std::size_t i = 0; i < row_count; ++i) {
    // Negate rows with b < 0, and surplus rows with b = 0 so their slack can
    // start in the basis.
    const std::size_t sc = sf.slack_col[i];
    const bool surplus = sc != kNone && sf.a[i][sc] == Rational(-1);
    if (sf.b[i].sign() < 0 || (sf.b[i].is_zero() && surplus)) {
      sf.row_sign[i] = -1;
      sf.b[i] = -sf.b[i];
      for (auto &v : sf.a[i]) {
        if (!v.is_zero()) {
          v = -v;
        }
      }
    }
    std::size_t s = sf.slack_col[i];
    sf.has_slack_basis[i] = s != kNone && sf.a[i][s] == Rational(1);
  }
  return sf;
}

/// Dense tableau over [structural | artificial | rhs]. The artificial block
/// starts as the identity, so it always holds the current basis inverse.
class Tableau {
public:
  explicit Tableau(const StandardForm &sf)
      : m_(sf.rows), n_(sf.cols), t_(sf.rows, std::vector<Rational>(sf.cols + sf.rows + 1)),
        basis_(sf.rows), reduced_(sf.cols + sf.rows) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        t_[i][j] = sf.a[i][j];
      }
      t_[i][n_ + i] = 1;
      t_[i][rhs_col()] = sf.b[i];
      basis_[i] = sf.has_slack_basis[i] ? sf.slack_col[i] : n_ + i;
    }
  }

  std::size_t rhs_col() const { return n_ + m_; }
  bool is_artificial(std::size_t col) const { return col >= n_; }

  /// Installs cost vector (length n_ + m_) and recomputes reduced costs.
  void set_cost(std::vector<Rational> cost) {
    cost_ = std::move(cost);
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      Rational r = cost_[j];
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational &cb = cost_[basis_[i]];
        if (!cb.is_zero() && !t_[i][j].is_zero()) {
          r -= cb * t_[i][j];
        }
      }
      reduced_[j] = std::move(r);
    }
  }

  /// Bland's rule simplex over structural columns. Returns the entering
  /// column of an unbounded direction, or kNone at optimality.
  std::size_t run() {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < n_; ++j) {
        if (reduced_[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) {
        return kNone;
      }
      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter].sign() <= 0) {
          continue;
        }
        Rational ratio = t_[i][rhs_col()] / t_[i][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == kNone) {
        return enter;
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const std::size_t width = rhs_col() + 1;
    Rational inv = Rational(1) / t_[row][col];
    auto &prow = t_[row];
    std::vector<std::size_t> nz;
    nz.reserve(width);
    for (std::size_t j = 0; j < width; ++j) {
      if (!prow[j].is_zero()) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || t_[i][col].is_zero()) {
        continue;
      }
      Rational f = t_[i][col];
      for (std::size_t j : nz) {
        t_[i][j] -= f * prow[j];
      }
    }
    if (!reduced_[col].is_zero()) {
      Rational f = reduced_[col];
      for (std::size_t j : nz) {
        if (j < n_ + m_) {
          reduced_[j] -= f * prow[j];
        }
      }
    }
    basis_[row] = col;
  }

  /// Replaces basic artificials at level zero by structural columns where
  /// possible. Rows that stay artificial are linearly redundant.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) {
        continue;
      }
      for (std::size_t j = 0; j < n_; ++j) {
        if (!t_[i][j].is_zero()) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Rational objective() const {
    Rational v;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational &cb = cost_[basis_[i]];
      if (!cb.is_zero()) {
        v += cb * t_[i][rhs_col()];
      }
    }
    return v;
  }

  std::vector<Rational> basic_solution() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) {
        x[basis_[i]] = t_[i][rhs_col()];
      }
    }
    return x;
  }

  /// Simplex multipliers c_B B^{-1}, read off the artificial block.
  std::vector<Rational> multipliers() const {
    std::vector<Rational> pi(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      Rational v;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational &cb = cost_[basis_[i]];
        if (!cb.is_zero() && !t_[i][n_ + r].is_zero()) {
          v += cb * t_[i][n_ + r];
        }
      }
      pi[r] = std::move(v);
    }
    return pi;
  }

  std::vector<Rational> direction(std::size_t enter) const {
    std::vector<Rational> d(n_);
    d[enter] = 1;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) {
        d[basis_[i]] = -t_[i][enter];
      }
    }
    return d;
  }

  const std::vector<std::size_t> &basis() const { return basis_; }

private:
  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
};

std::vector<Rational> to_original(const Problem &p, const StandardForm &sf,
                                  const std::vector<Rational> &xs) {
  std::vector<Rational> x(p.num_variables());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = xs[sf.pos_col[j]];
    if (sf.neg_col[j] != kNone) {
      x[j] -= xs[sf.neg_col[j]];
    }
  }
  return x;
}

void split_multipliers(const Problem &p, const StandardForm &sf,
                       const std::vector<Rational> &pi, bool negate,
                       std::vector<Rational> &rows, std::vector<Rational> &bounds) {
  rows.assign(p.num_rows(), Rational{});
  bounds.assign(p.num_variables(), Rational{});
  auto unflip = [&](std::size_t r) {
    Rational v = sf.row_sign[r] < 0 ? -pi[r] : pi[r];
    return negate ? -v : v;
  };
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    rows[i] = unflip(i);
  }
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    if (sf.bound_row[j] != kNone) {
      bounds[j] = unflip(sf.bound_row[j]);
    }
  }
}

struct PhaseOne {
  bool feasible = false;
  FarkasCertificate certificate;
};

PhaseOne run_phase_one(const Problem &p, const StandardForm &sf, Tableau &tab) {
  std::vector<Rational> cost(sf.cols + sf.rows);
  bool any = false;
  for (std::size_t i = 0; i < sf.rows; ++i) {
    if (!sf.has_slack_basis[i]) {
      cost[sf.cols + i] = -1;
      any = true;
    }
  }
  PhaseOne out;
  if (!any) {
    out.feasible = true;
    return out;
  }
  tab.set_cost(cost);
  tab.run(); // bounded above by 0
  if (tab.objective().sign() < 0) {
    split_multipliers(p, sf, tab.multipliers(), false, out.certificate.rows,
                      out.certificate.bounds);
    return out;
  }
  out.feasible = true;
  tab.drive_out_artificials();
  return out;
}

} // namespace

Feasibility feasible(const Problem &problem) {
  problem.validate();
  StandardForm sf = standardize(problem);
  Tableau tab(sf);
  PhaseOne ph = run_phase_one(problem, sf, tab);
  Feasibility out;
  out.feasible = ph.feasible;
  if (ph.feasible) {
    out.witness = to_original(problem, sf, tab.basic_solution());
  } else {
    out.certificate = std::move(ph.certificate);
  }
  return out;
}

Outcome solve(const Problem &problem) {
  problem.validate();
  StandardForm sf = standardize(problem);
  Tableau tab(sf);
  Outcome out;
  PhaseOne ph = run_phase_one(problem, sf, tab);
  if (!ph.feasible) {
    out.status = Status::Infeasible;
    out.dual = std::move(ph.certificate.rows);
    out.bound_dual = std::move(ph.certificate.bounds);
    return out;
  }

  std::vector<Rational> cost(sf.cols + sf.rows);
  std::copy(sf.cost.begin(), sf.cost.end(), cost.begin());
  tab.set_cost(std::move(cost));
  std::size_t unbounded_col = tab.run();
  out.primal = to_original(problem, sf, tab.basic_solution());
  if (unbounded_col != kNone) {
    out.status = Status::Unbounded;
    out.ray = to_original(problem, sf, tab.direction(unbounded_col));
    return out;
  }
  out.status = Status::Optimal;
  Rational value = tab.objective();
  const bool minimize = problem.sense == Sense::Minimize;
  out.objective_value = minimize ? -value : value;
  std::vector<Rational> y;
  std::vector<Rational> w;
  split_multipliers(problem, sf, tab.multipliers(), minimize, y, w);
  out.dual = std::move(y);
  out.bound_dual = std::move(w);
  return out;
}

// ---------------------------------------------------------------------------
// Certificate checks

namespace {

int sense_sign(const Problem &p) { return p.sense == Sense::Maximize ? 1 : -1; }

std::vector<Rational> transpose_times(const Problem &p, std::span<const Rational> y) {
  std::vector<Rational> g(p.num_variables());
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    if (y[i].is_zero()) {
      continue;
    }
    for (std::size_t j = 0; j < p.num_variables(); ++j) {
      if (!p.matrix[i][j].is_zero()) {
        g[j] += p.matrix[i][j] * y[i];
      }
    }
  }
  return g;
}

Rational bound_value(const Problem &p, std::span<const Rational> w) {
  Rational v;
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    auto b = p.bound(j);
    if (b.upper && !w[j].is_zero()) {
      v += *b.upper * w[j];
    }
  }
  return v;
}

} // namespace

bool is_feasible_point(const Problem &p, std::span<const Rational> x) {
  if (x.size() != p.num_variables()) {
    return false;
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    auto b = p.bound(j);
    if (!b.free_below && x[j].sign() < 0) {
      return false;
    }
    if (b.upper && x[j] > *b.upper) {
      return false;
    }
  }
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    Rational lhs = dot(p.matrix[i], x);
    switch (p.relations[i]) {
    case Relation::LessEqual:
      if (lhs > p.rhs[i]) return false;
      break;
    case Relation::Equal:
      if (lhs != p.rhs[i]) return false;
      break;
    case Relation::GreaterEqual:
      if (lhs < p.rhs[i]) return false;
      break;
    }
  }
  return true;
}

bool verify_dual_feasible(const Problem &p, std::span<const Rational> y,
                          std::span<const Rational> w) {
  if (y.size() != p.num_rows() || w.size() != p.num_variables()) {
    return false;
  }
  const int s = sense_sign(p);
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    int sy = s * y[i].sign();
    if (p.relations[i] == Relation::LessEqual && sy < 0) return false;
    if (p.relations[i] == Relation::GreaterEqual && sy > 0) return false;
  }
  auto g = transpose_times(p, y);
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    auto b = p.bound(j);
    if (!b.upper && !w[j].is_zero()) return false;
    if (s * w[j].sign() < 0) return false;
    Rational reduced = p.objective[j] - g[j] - w[j];
    int sr = s * reduced.sign();
    if (b.free_below ? sr != 0 : sr > 0) return false;
  }
  return true;
}

bool verify_farkas(const Problem &p, const FarkasCertificate &cert) {
  const auto &y = cert.rows;
  const auto &w = cert.bounds;
  if (y.size() != p.num_rows() || w.size() != p.num_variables()) {
    return false;
  }
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    if (p.relations[i] == Relation::LessEqual && y[i].sign() < 0) return false;
    if (p.relations[i] == Relation::GreaterEqual && y[i].sign() > 0) return false;
  }
  auto g = transpose_times(p, y);
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    auto b = p.bound(j);
    if (!b.upper && !w[j].is_zero()) return false;
    if (w[j].sign() < 0) return false;
    Rational gj = g[j] + w[j];
    if (b.free_below ? !gj.is_zero() : gj.sign() < 0) return false;
  }
  return (dot(p.rhs, y) + bound_value(p, w)).sign() < 0;
}

bool verify_ray(const Problem &p, std::span<const Rational> d) {
  if (d.size() != p.num_variables()) {
    return false;
  }
  for (std::size_t j = 0; j < d.size(); ++j) {
    auto b = p.bound(j);
    if (!b.free_below && d[j].sign() < 0) return false;
    if (b.upper && d[j].sign() > 0) return false;
  }
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    int s = dot(p.matrix[i], d).sign();
    if (p.relations[i] == Relation::LessEqual && s > 0) return false;
    if (p.relations[i] == Relation::Equal && s != 0) return false;
    if (p.relations[i] == Relation::GreaterEqual && s < 0) return false;
  }
  return sense_sign(p) * dot(p.objective, d).sign() > 0;
}

bool verify_outcome(const Problem &p, const Outcome &o) {
  switch (o.status) {
  case Status::Optimal: {
    if (!o.primal || !o.dual || !o.bound_dual || !o.objective_value) return false;
    if (!is_feasible_point(p, *o.primal)) return false;
    if (!verify_dual_feasible(p, *o.dual, *o.bound_dual)) return false;
    Rational primal_value = dot(p.objective, *o.primal);
    Rational dual_value = dot(p.rhs, *o.dual) + bound_value(p, *o.bound_dual);
    return primal_value == *o.objective_value && dual_value == *o.objective_value;
  }
  case Status::Unbounded:
    return o.primal && o.ray && is_feasible_point(p, *o.primal) && verify_ray(p, *o.ray);
  case Status::Infeasible:
    return o.dual && o.bound_dual &&
           verify_farkas(p, FarkasCertificate{*o.dual, *o.bound_dual});
  }
  return false;
}

} // namespace ftap::lp
