#include "kstress/reference.hpp"

#include <algorithm>

#include "kstress/detect.hpp"
#include "kstress/error.hpp"

namespace kstress::reference {

KernelResult kernel_basis_serial(const RatMatrix& a) {
  RatMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  KernelResult out;
  out.rank = pivots.size();
  for (std::size_t c = 0; c < cols; ++c) {
    if (std::binary_search(pivots.begin(), pivots.end(), c)) continue;
    Vec x(cols, Rational(0));
    x[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -m(i, c);
    out.basis.push_back(std::move(x));
  }
  return out;
}

std::vector<Face> brute_force_facets_serial(const Embedding& points) {
  Face ids;
  std::vector<Vec> all;
  for (const auto& [v, x] : points.coords) {
    ids.push_back(v);
    all.push_back(x);
  }
  if (all.empty() || affine_rank(all) != points.d) {
    throw Error(ErrorCode::DegenerateEmbedding, "points do not span the ambient space");
  }
  std::vector<Face> out;
  for (const auto& s : subsets_of_size(ids, points.d)) {
    const auto h = hyperplane_through(points.points(s));
    if (!h) continue;
    int pos = 0, neg = 0, zero = 0;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (std::binary_search(s.begin(), s.end(), ids[j])) continue;
      const int sg = sign(h->eval(all[j]) - h->offset);
      (sg > 0 ? pos : sg < 0 ? neg : zero)++;
    }
    if (pos > 0 && neg > 0) continue;
    if (zero > 0) throw Error(ErrorCode::NotSimplicial, "supporting hyperplane contains more than d points");
    out.push_back(s);
  }
  return out;
}

std::vector<Face> enumerate_missing_faces_serial(const SimplicialComplex& skel, const std::vector<StressVector>& basis,
                                                 int d, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "certificate search needs k >= 2");
  std::vector<Face> certified;
  if (basis.empty() || k - 1 > skel.dim()) return certified;
  for (int size = k + 1; size <= d - k + 1; ++size) {
    for (const auto& m : subsets_of_size(skel.vertices(), size)) {
      const auto ks = subsets_of_size(m, k);
      if (!std::all_of(ks.begin(), ks.end(), [&](const Face& s) { return skel.contains(s); })) continue;
      for (const auto& f : subsets_of_size(m, k - 1)) {
        if (find_certificate(skel, basis, m, f)) {
          certified.push_back(m);
          break;
        }
      }
    }
  }
  std::vector<Face> minimal;
  for (const auto& m : certified) {
    const bool has_smaller = std::any_of(certified.begin(), certified.end(),
                                         [&](const Face& o) { return o.size() < m.size() && is_subset(o, m); });
    if (!has_smaller) minimal.push_back(m);
  }
  return minimal;
}

}  // namespace kstress::reference
