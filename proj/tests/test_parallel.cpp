#include <doctest.h>

#include <random>

#include "kstress/corpus.hpp"
#include "kstress/detect.hpp"
#include "kstress/parallel.hpp"
#include "kstress/reference.hpp"

using namespace kstress;

namespace {

// Runs f once on one thread and once on all threads.
template <class F>
auto with_threads(int n, F&& f) {
#if defined(_OPENMP)
  const int before = omp_get_max_threads();
  omp_set_num_threads(n);
  auto out = f();
  omp_set_num_threads(before);
  return out;
#else
  (void)n;
  return f();
#endif
}

}  // namespace

TEST_CASE("kernel: Bareiss vs serial Gauss-Jordan on rigidity matrices") {
  for (const auto& p : {cyclic(10, 4), cyclic(10, 6), cross_polytope(5), stacked(5, 3, 7)}) {
    for (int k = 2; k <= p.d() / 2; ++k) {
      const auto m = rigidity_matrix(p.complex, p.embedding, k).matrix;
      const auto par = kernel_basis(m);
      const auto ser = reference::kernel_basis_serial(m);
      CHECK(par.rank == ser.rank);
      CHECK(par.basis == ser.basis);
      const auto one = with_threads(1, [&] { return kernel_basis(m); });
      CHECK(one.basis == par.basis);
    }
  }
}

TEST_CASE("kernel: random dense matrices above the parallel threshold") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    RatMatrix a(60, 90);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (rng() % 3 == 0) a(i, j) = static_cast<long>(rng() % 7) - 3;
      }
    }
    // Force some dependent rows.
    for (std::size_t j = 0; j < a.cols(); ++j) a(59, j) = a(0, j) + a(1, j);
    const auto par = kernel_basis(a);
    const auto ser = reference::kernel_basis_serial(a);
    CHECK(par.rank == ser.rank);
    CHECK(par.basis == ser.basis);
  }
}

TEST_CASE("facets: parallel vs serial scan") {
  for (const auto& p : standard_corpus()) {
    CHECK(brute_force_facets(p.embedding) == reference::brute_force_facets_serial(p.embedding));
  }
}

TEST_CASE("missing-face enumeration: pruned parallel vs exhaustive serial") {
  for (const auto& p : {cyclic(6, 4), cyclic(9, 4), free_sum(2, 5), free_sum(3, 6), cyclic(9, 6), stacked(5, 2, 7)}) {
    const auto skel = skeleton(p.complex, 1);
    const auto basis = stress_basis(p.complex, p.embedding, 2);
    const auto par = enumerate_missing_faces(skel, basis, p.d(), 2);
    CHECK(par == reference::enumerate_missing_faces_serial(skel, basis, p.d(), 2));
    CHECK(par == with_threads(1, [&] { return enumerate_missing_faces(skel, basis, p.d(), 2); }));
  }
}

TEST_CASE("rigidity matrix assembly is thread-count independent") {
  const auto p = cyclic(10, 6);
  const auto a = rigidity_matrix(p.complex, p.embedding, 3).matrix;
  const auto b = with_threads(1, [&] { return rigidity_matrix(p.complex, p.embedding, 3).matrix; });
  CHECK(a == b);
  CHECK(max_threads() >= 1);
}
