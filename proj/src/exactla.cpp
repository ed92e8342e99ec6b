#include "kstress/exactla.hpp"

#include <algorithm>
#include <string>

#include "kstress/error.hpp"
#include "kstress/parallel.hpp"

namespace kstress {

RatMatrix RatMatrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec RatMatrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec RatMatrix::multiply(const Vec& x) const {
  if (x.size() != cols_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in matrix-vector product");
  Vec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn((*this)(i, j)) != 0) s += (*this)(i, j) * x[j];
    }
    y[i] = s;
  }
  return y;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

namespace {

using IntRow = std::vector<Integer>;

/// Row echelon form of an integer matrix by Bareiss elimination.
struct Echelon {
  std::vector<IntRow> rows;
  std::vector<std::size_t> pivots;  // pivot column of row r
};

std::vector<IntRow> to_integer_rows(const RatMatrix& a, const Vec* extra_column) {
  const std::size_t width = a.cols() + (extra_column ? 1 : 0);
  std::vector<IntRow> rows(a.rows(), IntRow(width));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer den = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) den = lcm(den, Integer(a(i, j).get_den()));
    if (extra_column) den = lcm(den, Integer((*extra_column)[i].get_den()));
    for (std::size_t j = 0; j < a.cols(); ++j) rows[i][j] = a(i, j).get_num() * (den / a(i, j).get_den());
    if (extra_column) {
      const Rational& b = (*extra_column)[i];
      rows[i][a.cols()] = b.get_num() * (den / b.get_den());
    }
  }
  return rows;
}

Echelon bareiss(std::vector<IntRow> m, std::size_t pivot_cols) {
  Echelon e;
  const std::size_t nrows = m.size();
  const std::size_t width = nrows ? m[0].size() : 0;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && m[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(m[p], m[r]);
    const IntRow& pivot_row = m[r];
    const Integer piv = pivot_row[c];
    const long below = static_cast<long>(nrows - r - 1);
    const long work = below * static_cast<long>(width - c);
#pragma omp parallel for schedule(dynamic) if (work > kParallelWorkThreshold)
    for (long ii = 0; ii < below; ++ii) {
      IntRow& row = m[r + 1 + static_cast<std::size_t>(ii)];
      const Integer lead = row[c];
      for (std::size_t j = c + 1; j < width; ++j) {
        Integer v = piv * row[j];
        if (lead != 0) v -= lead * pivot_row[j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        row[j] = std::move(v);
      }
      row[c] = 0;
    }
    prev = piv;
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

/// Solves the echelon system for the pivot variables given values for the others.
void back_substitute(const Echelon& e, Vec& x, const Vec* rhs_column) {
  for (std::size_t ri = e.pivots.size(); ri-- > 0;) {
    const IntRow& row = e.rows[ri];
    const std::size_t pc = e.pivots[ri];
    Rational s = rhs_column ? Rational((*rhs_column)[ri]) : Rational(0);
    for (std::size_t j = pc + 1; j < x.size(); ++j) {
      if (row[j] != 0 && x[j] != 0) s -= Rational(row[j]) * x[j];
    }
    x[pc] = s / Rational(row[pc]);
  }
}

}  // namespace

KernelResult kernel_basis(const RatMatrix& a) {
  const Echelon e = bareiss(to_integer_rows(a, nullptr), a.cols());
  KernelResult out;
  out.rank = e.pivots.size();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec x(a.cols(), Rational(0));
    x[f] = 1;
    back_substitute(e, x, nullptr);
    out.basis.push_back(std::move(x));
  }
  return out;
}

std::size_t rank(const RatMatrix& a) { return bareiss(to_integer_rows(a, nullptr), a.cols()).pivots.size(); }

std::optional<Vec> solve_linear(const RatMatrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::InvalidArgument, "right-hand side length mismatch");
  const Echelon e = bareiss(to_integer_rows(a, &b), a.cols() + 1);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec rhs(e.rows.size());
  for (std::size_t r = 0; r < e.rows.size(); ++r) rhs[r] = Rational(e.rows[r][a.cols()]);
  Vec x(a.cols(), Rational(0));
  back_substitute(e, x, &rhs);
  return x;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vectors, std::size_t length) {
  std::vector<Vec> m = vectors;
  std::vector<Vec> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < length && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < length; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t length) {
  return span_basis(a, length) == span_basis(b, length);
}

// ---------------------------------------------------------------------------

namespace {

/// Tableau state: rows of [A | b], a basis, and the reduced-cost row.
class Tableau {
 public:
  Tableau(std::vector<Vec> rows, std::vector<std::size_t> basis, std::size_t ncols)
      : rows_(std::move(rows)), basis_(std::move(basis)), ncols_(ncols) {}

  /// Maximizes cost . x with columns >= `barred` forbidden from entering.
  /// Returns false if unbounded.
  bool maximize(const Vec& cost, std::size_t barred) {
    reduced_ = Vec(ncols_ + 1, Rational(0));
    for (std::size_t j = 0; j <= ncols_; ++j) {
      Rational s = j < ncols_ ? Rational(-cost[j]) : Rational(0);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (cost[basis_[i]] != 0) s += cost[basis_[i]] * rows_[i][j];
      }
      reduced_[j] = s;
    }
    while (true) {
      std::size_t enter = ncols_;
      for (std::size_t j = 0; j < barred; ++j) {
        if (sgn(reduced_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == ncols_) return true;
      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        Rational ratio = rows_[i][ncols_] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          best = std::move(ratio);
          leave = i;
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows_[r][c];
    for (auto& x : rows_[r]) {
      if (x != 0) x *= inv;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i], r, c);
    }
    if (!reduced_.empty()) eliminate(reduced_, r, c);
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& value() const { return reduced_[ncols_]; }

  Vec solution() const {
    Vec x(ncols_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rows_[i][ncols_];
    return x;
  }

 private:
  void eliminate(Vec& target, std::size_t r, std::size_t c) {
    if (target[c] == 0) return;
    const Rational f = target[c];
    for (std::size_t j = 0; j <= ncols_; ++j) {
      if (rows_[r][j] != 0) target[j] -= f * rows_[r][j];
    }
  }

  std::vector<Vec> rows_;
  std::vector<std::size_t> basis_;
  std::size_t ncols_;
  Vec reduced_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) throw Error(ErrorCode::InvalidArgument, "objective length mismatch");
  std::vector<bool> is_free = lp.free_var;
  is_free.resize(n, false);

  // Structural columns: each variable, plus a negative part for free ones.
  std::vector<std::size_t> neg_col(n, 0);
  std::size_t ncols = n;
  for (std::size_t v = 0; v < n; ++v) {
    if (is_free[v]) neg_col[v] = ncols++;
  }
  const std::size_t structural = ncols;

  struct Row {
    Vec coeffs;
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows;
  for (const auto& con : lp.constraints) {
    if (con.coeffs.size() != n) throw Error(ErrorCode::InvalidArgument, "constraint length mismatch");
    Row row{Vec(structural, Rational(0)), con.rel, con.rhs};
    for (std::size_t v = 0; v < n; ++v) {
      row.coeffs[v] = con.coeffs[v];
      if (is_free[v]) row.coeffs[neg_col[v]] = -con.coeffs[v];
    }
    const bool flip = sgn(row.rhs) < 0 || (sgn(row.rhs) == 0 && row.rel == Relation::GreaterEqual);
    if (flip) {
      for (auto& x : row.coeffs) x = -x;
      row.rhs = -row.rhs;
      if (row.rel == Relation::LessEqual) {
        row.rel = Relation::GreaterEqual;
      } else if (row.rel == Relation::GreaterEqual) {
        row.rel = Relation::LessEqual;
      }
    }
    rows.push_back(std::move(row));
  }

  std::size_t slack_count = 0, art_count = 0;
  for (const auto& row : rows) {
    if (row.rel != Relation::Equal) ++slack_count;
    if (row.rel != Relation::LessEqual) ++art_count;
  }
  const std::size_t first_art = structural + slack_count;
  const std::size_t total = first_art + art_count;

  std::vector<Vec> tab;
  std::vector<std::size_t> basis;
  std::size_t next_slack = structural, next_art = first_art;
  for (const auto& row : rows) {
    Vec t(total + 1, Rational(0));
    std::copy(row.coeffs.begin(), row.coeffs.end(), t.begin());
    t[total] = row.rhs;
    if (row.rel == Relation::LessEqual) {
      t[next_slack] = 1;
      basis.push_back(next_slack++);
    } else {
      if (row.rel == Relation::GreaterEqual) t[next_slack++] = -1;
      t[next_art] = 1;
      basis.push_back(next_art++);
    }
    tab.push_back(std::move(t));
  }

  Tableau tableau(std::move(tab), std::move(basis), total);
  LpResult result;

  if (art_count > 0) {
    Vec phase1(total, Rational(0));
    for (std::size_t j = first_art; j < total; ++j) phase1[j] = -1;
    tableau.maximize(phase1, total);
    if (sgn(tableau.value()) < 0) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tableau.rows().size();) {
      if (tableau.basis()[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t c = 0;
      while (c < first_art && tableau.rows()[i][c] == 0) ++c;
      if (c < first_art) {
        tableau.pivot(i, c);
        ++i;
      } else {
        tableau.drop_row(i);
      }
    }
  }

  Vec cost(total, Rational(0));
  for (std::size_t v = 0; v < n; ++v) {
    cost[v] = lp.objective[v];
    if (is_free[v]) cost[neg_col[v]] = -lp.objective[v];
  }
  if (!tableau.maximize(cost, first_art)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  const Vec raw = tableau.solution();
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t v = 0; v < n; ++v) result.x[v] = is_free[v] ? Rational(raw[v] - raw[neg_col[v]]) : raw[v];
  result.value = dot(lp.objective, result.x);
  return result;
}

std::optional<Vec> strict_feasible(std::span<const Vec> basis, std::span<const std::size_t> strict,
                                   std::span<const std::size_t> weak) {
  const std::size_t length = basis.empty() ? 0 : basis.front().size();
  for (const auto& b : basis) {
    if (b.size() != length) throw Error(ErrorCode::InvalidArgument, "basis vectors of unequal length");
  }
  for (auto i : strict) {
    if (i >= length) throw Error(ErrorCode::InvalidArgument, "strict index out of range");
    if (std::find(weak.begin(), weak.end(), i) != weak.end()) {
      throw Error(ErrorCode::InvalidArgument, "index " + std::to_string(i) + " both strict and weak");
    }
  }
  for (auto j : weak) {
    if (j >= length) throw Error(ErrorCode::InvalidArgument, "weak index out of range");
  }
  if (strict.empty()) return Vec(length, Rational(0));
  if (basis.empty()) return std::nullopt;

  const std::size_t m = basis.size();
  const std::size_t t = m;  // index of the slack-level variable
  LinearProgram lp;
  lp.num_vars = m + 1;
  lp.free_var.assign(m + 1, true);
  lp.free_var[t] = false;
  lp.objective.assign(m + 1, Rational(0));
  lp.objective[t] = 1;
  for (auto i : strict) {
    LinearConstraint c{Vec(m + 1, Rational(0)), Relation::GreaterEqual, 0};
    for (std::size_t j = 0; j < m; ++j) c.coeffs[j] = basis[j][i];
    c.coeffs[t] = -1;
    lp.constraints.push_back(std::move(c));
  }
  for (auto w : weak) {
    LinearConstraint c{Vec(m + 1, Rational(0)), Relation::LessEqual, 0};
    for (std::size_t j = 0; j < m; ++j) c.coeffs[j] = basis[j][w];
    lp.constraints.push_back(std::move(c));
  }
  LinearConstraint cap{Vec(m + 1, Rational(0)), Relation::LessEqual, 1};
  cap.coeffs[t] = 1;
  lp.constraints.push_back(std::move(cap));

  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal || sgn(res.value) <= 0) return std::nullopt;

  Vec x(length, Rational(0));
  for (std::size_t j = 0; j < m; ++j) {
    if (res.x[j] == 0) continue;
    for (std::size_t i = 0; i < length; ++i) x[i] += res.x[j] * basis[j][i];
  }
  return x;
}

}  // namespace kstress
