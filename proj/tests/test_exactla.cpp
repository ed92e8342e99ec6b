#include <doctest.h>

#include <random>

#include "kstress/error.hpp"
#include "kstress/exactla.hpp"
#include "kstress/reference.hpp"
#include "oracles.hpp"

using namespace kstress;

namespace {

RatMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int zero_percent) {
  RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (static_cast<int>(rng() % 100) < zero_percent) continue;
      m(i, j) = Rational(static_cast<long>(rng() % 11) - 5, static_cast<unsigned long>(rng() % 4 + 1));
      m(i, j).canonicalize();
    }
  }
  return m;
}

oracle::Mat rows_of(const RatMatrix& m) {
  oracle::Mat out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
  CHECK(format_rational(Rational(4)) == "4");
  for (const char* bad : {"1/0", "", "1/", "/2", "a", "1.5", "1/-2", "--1", "1 /2"}) {
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
  CHECK(primitive_integer({Rational(1, 2), Rational(-3, 4), Rational(0)}) == Vec{2, -3, 0});
}

TEST_CASE("kernel of small matrices") {
  const auto id = kernel_basis(RatMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.basis.empty());

  const auto k = kernel_basis(RatMatrix::from_rows({{1, 1}}, 2));
  CHECK(k.rank == 1);
  REQUIRE(k.basis.size() == 1);
  CHECK(k.basis[0] == Vec{-1, 1});

  const auto zero = kernel_basis(RatMatrix(2, 3));
  CHECK(zero.rank == 0);
  CHECK(zero.basis.size() == 3);

  const auto empty = kernel_basis(RatMatrix(0, 2));
  CHECK(empty.basis.size() == 2);
}

TEST_CASE("kernel basis is a kernel basis (random matrices vs an independent rank)") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = rng() % 7 + 1, cols = rng() % 8 + 1;
    const RatMatrix a = random_matrix(rng, rows, cols, trial % 3 == 0 ? 70 : 30);
    const auto k = kernel_basis(a);
    CHECK(k.rank == oracle::rank(rows_of(a)));
    CHECK(k.rank + k.basis.size() == cols);
    for (const auto& v : k.basis) CHECK(is_zero(a.multiply(v)));
    CHECK(oracle::rank(k.basis) == k.basis.size());
    const auto ref = reference::kernel_basis_serial(a);
    CHECK(ref.rank == k.rank);
    CHECK(ref.basis == k.basis);
  }
}

TEST_CASE("solve_linear") {
  const Vec b{3, Rational(-1, 2), 7};
  CHECK(solve_linear(RatMatrix::identity(3), b) == b);
  CHECK_FALSE(solve_linear(RatMatrix::from_rows({{0, 0}}, 2), Vec{1}).has_value());
  // Projection of e_1 onto span{(1,1,0)}: normal equation 2c = 1.
  const Vec u{1, 1, 0};
  const auto c = solve_linear(RatMatrix::from_rows({{dot(u, u)}}, 1), Vec{dot(u, Vec{1, 0, 0})});
  REQUIRE(c);
  CHECK((*c)[0] == Rational(1, 2));

  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const RatMatrix a = random_matrix(rng, rng() % 5 + 1, rng() % 5 + 1, 30);
    Vec x(a.cols());
    for (auto& e : x) e = static_cast<long>(rng() % 7) - 3;
    const Vec rhs = a.multiply(x);
    const auto sol = solve_linear(a, rhs);
    REQUIRE(sol);
    CHECK(a.multiply(*sol) == rhs);
  }
}

TEST_CASE("span utilities") {
  CHECK(span_basis({{1, 2}, {2, 4}}, 2).size() == 1);
  CHECK(same_span({{1, 0}, {0, 1}}, {{1, 1}, {1, -1}}, 2));
  CHECK_FALSE(same_span({{1, 0}}, {{0, 1}}, 2));
  CHECK(same_span({}, {}, 3));
}

TEST_CASE("linear programs") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5).
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1, 1};
  lp.constraints = {{{1, 2}, Relation::LessEqual, 4}, {{3, 1}, Relation::LessEqual, 6}};
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(14, 5));
  CHECK(r.x == Vec{Rational(8, 5), Rational(6, 5)});

  // Free variable, equality: max -x s.t. x = -3 (free).
  LinearProgram f;
  f.num_vars = 1;
  f.free_var = {true};
  f.objective = {-1};
  f.constraints = {{{1}, Relation::Equal, -3}};
  r = solve_lp(f);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x[0] == -3);

  LinearProgram inf;
  inf.num_vars = 1;
  inf.objective = {1};
  inf.constraints = {{{1}, Relation::GreaterEqual, 2}, {{1}, Relation::LessEqual, 1}};
  CHECK(solve_lp(inf).status == LpStatus::Infeasible);

  LinearProgram unb;
  unb.num_vars = 1;
  unb.objective = {1};
  unb.constraints = {{{1}, Relation::GreaterEqual, 2}};
  CHECK(solve_lp(unb).status == LpStatus::Unbounded);
}

TEST_CASE("strict feasibility: fixed cases") {
  const std::vector<Vec> one{{1, -1}};
  const std::vector<std::size_t> none;
  const std::vector<std::size_t> s0{0}, w1{1};

  const auto z = strict_feasible(one, none, w1);
  REQUIRE(z);
  CHECK(is_zero(*z));

  const auto w = strict_feasible(one, s0, w1);
  REQUIRE(w);
  CHECK(sgn((*w)[0]) > 0);
  CHECK((*w)[0] == -(*w)[1]);

  const std::vector<Vec> same{{1, 1}};
  CHECK_FALSE(strict_feasible(same, s0, w1).has_value());

  const std::vector<std::size_t> both{0};
  CHECK_THROWS_AS(strict_feasible(one, s0, both), Error);
  const std::vector<std::size_t> out_of_range{5};
  CHECK_THROWS_AS(strict_feasible(one, out_of_range, none), Error);
}

TEST_CASE("strict feasibility agrees with vertex enumeration") {
  std::mt19937 rng(2024);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = rng() % 3 + 1, len = rng() % 5 + 2;
    std::vector<Vec> basis(m, Vec(len));
    for (auto& b : basis) {
      for (auto& x : b) x = static_cast<long>(rng() % 7) - 3;
    }
    std::vector<std::size_t> strict, weak;
    for (std::size_t i = 0; i < len; ++i) {
      const auto r = rng() % 3;
      if (r == 0) strict.push_back(i);
      if (r == 1) weak.push_back(i);
    }
    const auto w = strict_feasible(basis, strict, weak);
    const bool expect = oracle::strict_pattern_exists(basis, strict, weak);
    CHECK(w.has_value() == expect);
    if (w) {
      for (auto i : strict) CHECK(sgn((*w)[i]) > 0);
      for (auto j : weak) CHECK(sgn((*w)[j]) <= 0);
      CHECK(oracle::in_span(basis, *w));
    }
    (expect ? feasible : infeasible)++;
  }
  // Both outcomes must be exercised for the comparison to mean anything.
  CHECK(feasible > 10);
  CHECK(infeasible > 10);
}

TEST_CASE("determinism") {
  std::mt19937 rng(3);
  const RatMatrix a = random_matrix(rng, 6, 9, 40);
  CHECK(kernel_basis(a).basis == kernel_basis(a).basis);
}
