#include <doctest.h>

#include <random>

#include "kstress/corpus.hpp"
#include "kstress/error.hpp"
#include "kstress/stress.hpp"
#include "oracles.hpp"

using namespace kstress;

namespace {

Embedding embed(const std::vector<Vec>& pts) {
  Embedding e;
  e.d = static_cast<int>(pts[0].size());
  for (std::size_t i = 0; i < pts.size(); ++i) e.coords[static_cast<Vertex>(i)] = pts[i];
  return e;
}

std::vector<Vec> sf_rows(const std::vector<StressVector>& basis) {
  std::vector<Vec> out;
  for (const auto& s : basis) {
    Vec row;
    for (const auto& [g, c] : s.sf) row.push_back(c);
    out.push_back(row);
  }
  return out;
}

// The affine dependence of free_sum(i, d): sum over sigma of 1, minus (i+1)/(d-i+1)
// times sum over tau, with sigma = vertices 0..i.
LinearForm free_sum_phi(const PolytopeInstance& p, int i) {
  LinearForm phi;
  const int d = p.d();
  for (Vertex v : p.complex.vertices()) phi[v] = v <= i ? Rational(d - i + 1) : Rational(-(i + 1));
  return phi;
}

}  // namespace

TEST_CASE("theta forms") {
  const auto octa = cross_polytope(3);
  const auto t = theta(octa.embedding);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[0] == Vec{1, 0, 0, -1, 0, 0});
  CHECK(t.rows[3] == Vec(6, Rational(1)));
  CHECK(t.form(3).size() == 6);

  const auto single = theta(embed({{0}}));
  CHECK(single.rows == std::vector<Vec>{{0}, {1}});
  CHECK(single.form(0).empty());

  // Translation only adds multiples of the all-ones row.
  Embedding moved = octa.embedding;
  for (auto& [v, x] : moved.coords) x = x + Vec{3, Rational(-1, 2), 7};
  const auto tm = theta(moved);
  CHECK(oracle::same_span(t.rows, tm.rows));
  CHECK(tm.rows[0] == t.rows[0] + 3 * t.rows[3]);
}

TEST_CASE("rigidity matrix sizes and kernels") {
  const Embedding tri = embed({{0, 0}, {1, 0}, {0, 1}});
  const auto r1 = rigidity_matrix(build_complex({{0, 1}, {1, 2}, {0, 2}}), tri, 2);
  CHECK(r1.matrix.rows() == 6);
  CHECK(r1.matrix.cols() == 3);
  CHECK(kernel_basis(r1.matrix).basis.empty());

  const auto octa = cross_polytope(3);
  const auto g = skeleton(octa.complex, 1);
  const auto r2 = rigidity_matrix(g, octa.embedding, 2);
  CHECK(r2.matrix.rows() == 18);
  CHECK(r2.matrix.cols() == 12);
  const auto k2 = kernel_basis(r2.matrix);
  CHECK(k2.rank == 12);
  CHECK(k2.basis.empty());

  const auto r3 = rigidity_matrix(with_face(g, {0, 3}), octa.embedding, 2);
  CHECK(r3.matrix.rows() == 18);
  CHECK(r3.matrix.cols() == 13);
  CHECK(kernel_basis(r3.matrix).basis.size() == 1);

  // Block (F, G) is the altitude vector, zero elsewhere.
  for (std::size_t c = 0; c < r2.col_faces.size(); ++c) {
    for (std::size_t r = 0; r < r2.row_faces.size(); ++r) {
      const Face& f = r2.row_faces[r];
      const Face& gg = r2.col_faces[c];
      Vec block;
      for (int l = 0; l < 3; ++l) block.push_back(r2.matrix(r * 3 + l, c));
      if (is_subset(f, gg)) {
        CHECK(block == altitude_vector(f, face_minus(gg, f)[0], octa.embedding));
      } else {
        CHECK(is_zero(block));
      }
    }
  }

  CHECK_THROWS_AS(rigidity_matrix(g, octa.embedding, 1), Error);
  const Embedding flat = embed({{0, 0}, {1, 1}, {2, 2}});
  CHECK_THROWS_AS(rigidity_matrix(build_complex({{0, 1, 2}}), flat, 3), Error);
}

TEST_CASE("stress bases on simplices, cyclic and free sums") {
  for (int d = 2; d <= 6; ++d) {
    const auto s = simplex(d);
    for (int k = 1; k <= (d + 1) / 2; ++k) CHECK(stress_basis(s.complex, s.embedding, k).empty());
  }
  const auto c74 = cyclic(7, 4);
  CHECK(stress_basis(c74.complex, c74.embedding, 2).size() == 3);

  const auto fs = free_sum(2, 4);
  const auto basis = stress_basis(fs.complex, fs.embedding, 2);
  REQUIRE(basis.size() == 1);
  const auto sq = power_stress(free_sum_phi(fs, 2), 2, fs.complex, fs.embedding);
  CHECK(oracle::same_span(sf_rows(basis), sf_rows({sq})));
}

TEST_CASE("balancing residuals agree with kernel membership") {
  const auto octa = cross_polytope(3);
  const auto g = skeleton(octa.complex, 1);
  StressVector one;
  one.k = 2;
  for (const auto& e : g.faces(1)) one.sf[e] = 0;
  one.sf[{0, 1}] = 1;
  const auto res = balancing_residual(one, g, octa.embedding);
  CHECK_FALSE(is_zero(res.at({0})));
  CHECK_FALSE(is_zero(res.at({1})));
  CHECK(is_zero(res.at({2})));
  CHECK_FALSE(is_balanced(one, g, octa.embedding));

  for (const auto& p : {cyclic(7, 4), free_sum(2, 5), stacked(4, 2, 7), cyclic(8, 6)}) {
    for (int k = 2; k <= (p.d() + 1) / 2; ++k) {
      for (const auto& s : stress_basis(p.complex, p.embedding, k)) CHECK(is_balanced(s, p.complex, p.embedding));
    }
  }

  // Perturbing a stress coordinate breaks balance.
  const auto c = cyclic(7, 4);
  auto s = stress_basis(c.complex, c.embedding, 2)[0];
  s.sf.begin()->second += 1;
  CHECK_FALSE(is_balanced(s, c.complex, c.embedding));
}

TEST_CASE("infinitesimal rigidity") {
  const auto octa = cross_polytope(3);
  const auto r = is_infinitesimally_rigid(skeleton(octa.complex, 1), octa.embedding);
  CHECK(r.rigid);
  CHECK(r.rank == 12);
  CHECK(r.stress_dim == 0);

  const Embedding sq = embed({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto c4 = is_infinitesimally_rigid(build_complex({{0, 1}, {1, 2}, {2, 3}, {0, 3}}), sq);
  CHECK_FALSE(c4.rigid);
  CHECK(c4.rank == 4);
  CHECK(c4.expected_rank == 5);

  for (int d = 2; d <= 6; ++d) {
    const auto s = simplex(d);
    const auto rs = is_infinitesimally_rigid(skeleton(s.complex, 1), s.embedding);
    CHECK(rs.rigid);
    CHECK(rs.stress_dim == 0);
  }

  const Embedding line = embed({{0, 0}, {1, 1}, {2, 2}});
  CHECK_THROWS_AS(is_infinitesimally_rigid(build_complex({{0, 1}, {1, 2}}), line), Error);
}

TEST_CASE("expanding squarefree parts") {
  const auto c = cyclic(6, 4);
  StressVector zero;
  zero.k = 2;
  for (const auto& e : c.complex.faces(1)) zero.sf[e] = 0;
  const auto z = expand_squarefree(zero, c.complex, c.embedding);
  REQUIRE(z.full);
  CHECK(z.full->empty());

  const auto fs = free_sum(2, 4);
  const auto sq = power_stress(free_sum_phi(fs, 2), 2, fs.complex, fs.embedding);
  StressVector sf_only = sq;
  sf_only.full.reset();
  const auto back = expand_squarefree(sf_only, fs.complex, fs.embedding);
  REQUIRE(back.full);
  CHECK(*back.full == *sq.full);
  CHECK(back.full->count(Monomial{0, 0}) == 1);

  for (const auto& s : stress_basis(c.complex, c.embedding, 2)) {
    const auto e = expand_squarefree(s, c.complex, c.embedding);
    REQUIRE(e.full);
    CHECK(verify_stress(*e.full, 2, c.complex, c.embedding));
    CHECK(squarefree_part(*e.full, c.complex, 2) == s.sf);
  }

  const auto c8 = cyclic(8, 6);
  for (const auto& s : stress_basis(c8.complex, c8.embedding, 3)) {
    const auto e = expand_squarefree(s, c8.complex, c8.embedding);
    REQUIRE(e.full);
    CHECK(verify_stress(*e.full, 3, c8.complex, c8.embedding));
  }

  auto bad = stress_basis(c.complex, c.embedding, 2)[0];
  bad.sf.begin()->second += 1;
  CHECK_THROWS_AS(expand_squarefree(bad, c.complex, c.embedding), Error);
}

TEST_CASE("cone lift") {
  const auto octa = cross_polytope(3);
  const auto fig = vertex_figure(octa, 0);
  const auto& delta = fig.quotient.complex;
  const auto cone_complex = cone(fig.apex, delta);

  StressVector zero;
  zero.k = 1;
  zero.full = Polynomial{};
  const auto z = cone_lift(zero, delta, fig.heights, fig.apex);
  CHECK(z.full->empty());

  // The quadrilateral has one affine dependence and no 2-stress; k = 2 is tried on cyclic(9,5).
  const auto deps = stress_basis(delta, fig.quotient.embedding, 1);
  REQUIRE(deps.size() == 1);
  const auto lifted1 = cone_lift(deps[0], delta, fig.heights, fig.apex);
  CHECK(verify_stress(*lifted1.full, 1, cone_complex, fig.cone_embedding));

  const auto c4 = cross_polytope(4);
  const auto fig4 = vertex_figure(c4, 0);
  const auto& d4 = fig4.quotient.complex;
  const auto cone4 = cone(fig4.apex, d4);
  const auto q2 = stress_basis(d4, fig4.quotient.embedding, 2);
  const auto c2 = stress_basis(cone4, fig4.cone_embedding, 2);
  CHECK(q2.size() == c2.size());
  CHECK(q2.empty());

  const auto c85 = cyclic(9, 5);
  const auto fig9 = vertex_figure(c85, 5);
  const auto& link9 = fig9.quotient.complex;
  const auto cone9 = cone(fig9.apex, link9);
  const auto lower = stress_basis(link9, fig9.quotient.embedding, 2);
  const auto upper = stress_basis(cone9, fig9.cone_embedding, 2);
  CHECK(lower.size() == upper.size());
  REQUIRE_FALSE(lower.empty());
  for (const auto& s : lower) {
    const auto full = expand_squarefree(s, link9, fig9.quotient.embedding);
    const auto w = cone_lift(full, link9, fig9.heights, fig9.apex);
    CHECK(verify_stress(*w.full, 2, cone9, fig9.cone_embedding));
    for (const auto& [f, c] : s.sf) {
      Rational prod = 1;
      for (Vertex v : f) prod *= fig9.heights.at(v);
      CHECK(c == prod * w.at(f));
      CHECK(sgn(c) == sgn(w.at(f)));
    }
  }

  auto bad_heights = fig.heights;
  bad_heights.begin()->second = 0;
  CHECK_THROWS_AS(cone_lift(lifted1, delta, bad_heights, fig.apex), Error);
  StressVector no_full = deps[0];
  no_full.full.reset();
  CHECK_THROWS_AS(cone_lift(no_full, delta, fig.heights, fig.apex), Error);
}

TEST_CASE("power stresses") {
  const auto c = cyclic(6, 4);
  const auto deps = stress_basis(c.complex, c.embedding, 1);
  REQUIRE(deps.size() == 1);
  LinearForm phi;
  for (const auto& [f, x] : deps[0].sf) {
    if (x != 0) phi[f[0]] = x;
  }
  const auto p1 = power_stress(phi, 1, c.complex, c.embedding);
  CHECK(*p1.full == from_linear_form(phi));

  // Orient phi positive on {1,3,5} (vertex ids 0, 2, 4).
  if (sgn(phi[0]) < 0) {
    for (auto& [v, x] : phi) x = -x;
  }
  for (Vertex v : {0, 2, 4}) CHECK(sgn(phi[v]) > 0);
  for (Vertex v : {1, 3, 5}) CHECK(sgn(phi[v]) < 0);
  const auto p2 = power_stress(phi, 2, c.complex, c.embedding);
  CHECK(verify_stress(*p2.full, 2, c.complex, c.embedding));
  CHECK(is_balanced(p2, c.complex, c.embedding));
  const Face m{0, 2, 4};
  for (const auto& [g, x] : p2.sf) {
    const int outside = static_cast<int>(face_minus(g, m).size());
    CHECK(sgn(x) * (outside % 2 ? -1 : 1) >= 0);
    CHECK(x == 2 * phi[g[0]] * phi[g[1]]);
  }

  const auto fs = free_sum(2, 4);
  const auto sq = power_stress(free_sum_phi(fs, 2), 2, fs.complex, fs.embedding);
  for (const auto& [g, x] : sq.sf) {
    const int in_tau = static_cast<int>(std::count_if(g.begin(), g.end(), [](Vertex v) { return v > 2; }));
    CHECK(sgn(x) == (in_tau % 2 ? -1 : 1));
  }

  // Not 2-neighborly: the octahedron's dependence e1 + (-e1) on a missing edge.
  const auto octa = cross_polytope(3);
  CHECK_THROWS_AS(power_stress(LinearForm{{0, 1}, {3, 1}, {1, -1}, {4, -1}}, 2, octa.complex, octa.embedding), Error);
  CHECK_THROWS_AS(power_stress(LinearForm{{0, 1}}, 1, octa.complex, octa.embedding), Error);
}

TEST_CASE("stress dimension is affinely invariant") {
  std::mt19937 rng(99);
  for (const auto& p : {cyclic(7, 4), free_sum(2, 4), stacked(4, 3, 7), cross_polytope(4), cyclic(8, 5)}) {
    const int d = p.d();
    RatMatrix a;
    do {
      a = RatMatrix(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          a(i, j) = Rational(static_cast<long>(rng() % 9) - 4, static_cast<unsigned long>(rng() % 3 + 1));
          a(i, j).canonicalize();
        }
      }
    } while (rank(a) < static_cast<std::size_t>(d));
    Vec shift(d);
    for (auto& x : shift) x = static_cast<long>(rng() % 11) - 5;
    Embedding moved = p.embedding;
    for (auto& [v, x] : moved.coords) x = a.multiply(x) + shift;
    for (int k = 1; k <= (d + 1) / 2; ++k) {
      CHECK(stress_basis(p.complex, p.embedding, k).size() == stress_basis(p.complex, moved, k).size());
    }
  }
}
