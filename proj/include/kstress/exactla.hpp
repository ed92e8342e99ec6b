#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kstress/rational.hpp"

namespace kstress {

/// Dense row-major matrix of exact rationals. Zero rows and columns are fine.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec multiply(const Vec& x) const;
  RatMatrix transpose() const;

  bool operator==(const RatMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct KernelResult {
  std::size_t rank = 0;
  /// One vector per free column c, with entry 1 at c and 0 at the other free columns.
  std::vector<Vec> basis;
};

/// Rank and nullspace basis by fraction-free (Bareiss) elimination. The row
/// updates below each pivot run in parallel when OpenMP is enabled.
KernelResult kernel_basis(const RatMatrix& a);

std::size_t rank(const RatMatrix& a);

/// Some exact solution of A x = b (free variables set to zero), or nullopt if
/// the system is inconsistent.
std::optional<Vec> solve_linear(const RatMatrix& a, const Vec& b);

/// Nonzero rows of the reduced row echelon form of the matrix whose rows are `vectors`.
std::vector<Vec> span_basis(const std::vector<Vec>& vectors, std::size_t length);

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t length);

// ---------------------------------------------------------------------------
// Exact linear programming

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  Vec coeffs;
  Relation rel = Relation::LessEqual;
  Rational rhs = 0;
};

/// maximize objective . x subject to the constraints; variables are
/// nonnegative unless flagged free.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> free_var;
  Vec objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  Rational value = 0;
};

/// Two-phase dense tableau simplex with Bland's rule (terminates over Q).
LpResult solve_lp(const LinearProgram& lp);

/// Looks for x = sum_j c_j basis[j] with x_i > 0 on `strict` and x_j <= 0 on
/// `weak`. Solved as: maximize t s.t. x_i >= t (i strict), x_j <= 0 (j weak),
/// t <= 1. The witness is not normalized. An empty `strict` gives the zero vector.
std::optional<Vec> strict_feasible(std::span<const Vec> basis, std::span<const std::size_t> strict,
                                   std::span<const std::size_t> weak);

}  // namespace kstress
