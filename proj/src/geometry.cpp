#include "kstress/geometry.hpp"

#include <algorithm>
#include <string>

#include "kstress/error.hpp"
#include "kstress/parallel.hpp"

namespace kstress {

const Vec& Embedding::at(Vertex v) const {
  auto it = coords.find(v);
  if (it == coords.end()) throw Error(ErrorCode::NotAVertex, "no coordinates for vertex " + std::to_string(v));
  return it->second;
}

std::vector<Vec> Embedding::points(const Face& f) const {
  std::vector<Vec> out;
  out.reserve(f.size());
  for (Vertex v : f) out.push_back(at(v));
  return out;
}

std::string PolytopeInstance::label(Vertex v) const {
  if (v >= 0 && v < static_cast<Vertex>(labels.size())) return labels[v];
  return std::to_string(v);
}

int affine_rank(const std::vector<Vec>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "affine rank of an empty point set");
  if (points.size() == 1) return 0;
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank(RatMatrix::from_rows(diffs, points[0].size())));
}

std::vector<Vec> affine_dependencies(const std::vector<Vec>& points) {
  if (points.empty()) return {};
  const std::size_t d = points[0].size();
  RatMatrix m(d + 1, points.size());
  for (std::size_t v = 0; v < points.size(); ++v) {
    for (std::size_t i = 0; i < d; ++i) m(i, v) = points[v][i];
    m(d, v) = 1;
  }
  return kernel_basis(m).basis;
}

Vec altitude_vector(const Face& f, Vertex v, const Embedding& p) {
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "altitude vector needs a nonempty base face");
  if (std::binary_search(f.begin(), f.end(), v)) throw Error(ErrorCode::InvalidArgument, "apex lies in the base face");
  const Vec& base = p.at(f[0]);
  const Vec tip = p.at(v) - base;
  if (f.size() == 1) return tip;

  std::vector<Vec> dirs;
  for (std::size_t i = 1; i < f.size(); ++i) dirs.push_back(p.at(f[i]) - base);
  const std::size_t m = dirs.size();
  RatMatrix gram(m, m);
  Vec rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) gram(i, j) = dot(dirs[i], dirs[j]);
    rhs[i] = dot(dirs[i], tip);
  }
  if (rank(gram) != m) throw Error(ErrorCode::DegenerateFace, "face points are affinely dependent");
  const Vec coeff = *solve_linear(gram, rhs);
  Vec out = tip;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < out.size(); ++l) out[l] -= coeff[i] * dirs[i][l];
  }
  return out;
}

std::optional<Hyperplane> hyperplane_through(const std::vector<Vec>& points) {
  if (points.empty()) return std::nullopt;
  const std::size_t d = points[0].size();
  RatMatrix m(points.size(), d + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t l = 0; l < d; ++l) m(i, l) = points[i][l];
    m(i, d) = -1;
  }
  const KernelResult ker = kernel_basis(m);
  if (ker.basis.size() != 1) return std::nullopt;
  Vec nv = ker.basis[0];
  const Rational offset = nv[d];
  nv.pop_back();
  if (is_zero(nv)) return std::nullopt;
  return Hyperplane{std::move(nv), offset};
}

namespace {

Hyperplane normalized(Hyperplane h) {
  const Vec prim = primitive_integer(h.normal);
  // Positive scale factor sending normal to its primitive form.
  std::size_t i = 0;
  while (h.normal[i] == 0) ++i;
  const Rational scale = prim[i] / h.normal[i];
  h.offset *= scale;
  h.normal = prim;
  return h;
}

}  // namespace

Hyperplane inward_facet_hyperplane(const PolytopeInstance& p, const Face& facet) {
  auto h = hyperplane_through(p.embedding.points(facet));
  if (!h) throw Error(ErrorCode::DegenerateFace, "facet points are affinely dependent");
  for (Vertex v : p.complex.vertices()) {
    if (std::binary_search(facet.begin(), facet.end(), v)) continue;
    const int s = sign(h->eval(p.embedding.at(v)) - h->offset);
    if (s == 0) continue;
    if (s < 0) {
      for (auto& x : h->normal) x = -x;
      h->offset = -h->offset;
    }
    return normalized(*h);
  }
  throw Error(ErrorCode::DegenerateEmbedding, "all vertices lie on one facet hyperplane");
}

Hyperplane separating_functional(const PolytopeInstance& p, Vertex u) {
  if (!p.complex.has_vertex(u)) throw Error(ErrorCode::NotAVertex, "vertex " + std::to_string(u) + " not in polytope");
  Vec b(p.d(), Rational(0));
  for (const auto& f : p.complex.facets()) {
    if (std::binary_search(f.begin(), f.end(), u)) b = b + inward_facet_hyperplane(p, f).normal;
  }
  b = primitive_integer(b);
  const Rational at_u = dot(b, p.embedding.at(u));
  std::optional<Rational> nearest;
  for (Vertex v : p.complex.vertices()) {
    if (v == u) continue;
    Rational val = dot(b, p.embedding.at(v));
    if (!nearest || val < *nearest) nearest = std::move(val);
  }
  if (!nearest) throw Error(ErrorCode::InvalidInput, "polytope has a single vertex");
  if (*nearest <= at_u) throw Error(ErrorCode::InvalidInput, "facet normals at vertex do not separate it; instance not valid");
  return Hyperplane{std::move(b), (at_u + *nearest) / 2};
}

VertexFigure vertex_figure(const PolytopeInstance& p, Vertex u) {
  const Hyperplane sep = separating_functional(p, u);
  const int d = p.d();
  int pivot = 0;
  while (sep.normal[pivot] == 0) ++pivot;

  const auto sl = star_link(p.complex, {u});
  VertexFigure out;
  out.apex = u;
  out.quotient.complex = sl.link;
  out.quotient.embedding.d = d - 1;
  out.quotient.labels = p.labels;
  out.quotient.meta = {"vertex_figure", {{"apex", u}}};
  out.cone_embedding.d = d;
  out.cone_embedding.coords[u] = Vec(d, Rational(0));

  const Vec& origin = p.embedding.at(u);
  for (Vertex i : sl.link.vertices()) {
    const Vec x = p.embedding.at(i) - origin;
    const Rational a = dot(sep.normal, x);
    if (a == 0) throw Error(ErrorCode::DegenerateQuotient, "link vertex on the separating direction's kernel");
    Vec y;
    for (int l = 0; l < d; ++l) {
      if (l != pivot) y.push_back(x[l]);
    }
    Vec lifted = y;
    lifted.push_back(a);
    out.cone_embedding.coords[i] = std::move(lifted);
    out.quotient.embedding.coords[i] = (1 / a) * y;
    out.heights[i] = a;
  }
  return out;
}

PolytopeInstance quotient(const PolytopeInstance& p, const Face& tau) {
  if (!p.complex.contains(tau)) throw Error(ErrorCode::NotAFace, "quotient by a non-face");
  PolytopeInstance q = p;
  for (Vertex v : tau) q = vertex_figure(q, v).quotient;
  return q;
}

std::optional<SegmentHullMeet> segment_hull_meet(Vertex a, Vertex b, const Face& c, const Embedding& p) {
  if (std::binary_search(c.begin(), c.end(), a) || std::binary_search(c.begin(), c.end(), b)) {
    throw Error(ErrorCode::InvalidArgument, "segment endpoints must lie outside the hull vertex set");
  }
  if (c.empty()) return std::nullopt;
  const std::size_t n = c.size();
  const std::size_t d = static_cast<std::size_t>(p.d);
  const Vec& pa = p.at(a);
  const Vec& pb = p.at(b);

  LinearProgram lp;
  lp.num_vars = n + 1;  // mu_c..., s
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = -1;
  for (std::size_t l = 0; l < d; ++l) {
    LinearConstraint con{Vec(n + 1, Rational(0)), Relation::Equal, pa[l]};
    for (std::size_t j = 0; j < n; ++j) con.coeffs[j] = p.at(c[j])[l];
    con.coeffs[n] = pa[l] - pb[l];
    lp.constraints.push_back(std::move(con));
  }
  LinearConstraint sum{Vec(n + 1, Rational(1)), Relation::Equal, 1};
  sum.coeffs[n] = 0;
  lp.constraints.push_back(std::move(sum));
  LinearConstraint cap{Vec(n + 1, Rational(0)), Relation::LessEqual, 1};
  cap.coeffs[n] = 1;
  lp.constraints.push_back(std::move(cap));

  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;

  SegmentHullMeet out;
  out.segment_param = res.x[n];
  out.point = (1 - out.segment_param) * pa + out.segment_param * pb;

  std::vector<Vertex> support;
  Vec mu;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(res.x[j]) > 0) {
      support.push_back(c[j]);
      mu.push_back(res.x[j]);
    }
  }
  // Caratheodory: remove affine dependencies until the support is independent.
  while (true) {
    std::vector<Vec> pts;
    for (Vertex v : support) pts.push_back(p.at(v));
    const auto deps = affine_dependencies(pts);
    if (deps.empty()) break;
    Vec delta = deps[0];
    if (std::none_of(delta.begin(), delta.end(), [](const Rational& x) { return sgn(x) > 0; })) {
      for (auto& x : delta) x = -x;
    }
    std::optional<Rational> step;
    for (std::size_t j = 0; j < delta.size(); ++j) {
      if (sgn(delta[j]) <= 0) continue;
      Rational r = mu[j] / delta[j];
      if (!step || r < *step) step = std::move(r);
    }
    std::vector<Vertex> next_support;
    Vec next_mu;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      Rational m = mu[j] - *step * delta[j];
      if (sgn(m) > 0) {
        next_support.push_back(support[j]);
        next_mu.push_back(std::move(m));
      }
    }
    support = std::move(next_support);
    mu = std::move(next_mu);
  }
  out.support = support;
  for (std::size_t j = 0; j < support.size(); ++j) out.coeffs[support[j]] = mu[j];
  return out;
}

std::vector<Face> brute_force_facets(const Embedding& points) {
  Face ids;
  std::vector<Vec> all;
  for (const auto& [v, x] : points.coords) {
    ids.push_back(v);
    all.push_back(x);
  }
  const int d = points.d;
  if (all.empty() || affine_rank(all) != d) throw Error(ErrorCode::DegenerateEmbedding, "points do not span the ambient space");

  const std::vector<Face> candidates = subsets_of_size(ids, d);
  // 0: not a facet, 1: facet, 2: supporting hyperplane with extra points.
  std::vector<char> status(candidates.size(), 0);
  const long count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic)
  for (long ci = 0; ci < count; ++ci) {
    const Face& s = candidates[static_cast<std::size_t>(ci)];
    const auto h = hyperplane_through(points.points(s));
    if (!h) continue;
    int pos = 0, neg = 0, zero = 0;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (std::binary_search(s.begin(), s.end(), ids[j])) continue;
      const int sg = sign(h->eval(all[j]) - h->offset);
      (sg > 0 ? pos : sg < 0 ? neg : zero)++;
    }
    if (pos > 0 && neg > 0) continue;
    status[static_cast<std::size_t>(ci)] = zero > 0 ? 2 : 1;
  }
  std::vector<Face> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (status[i] == 2) throw Error(ErrorCode::NotSimplicial, "supporting hyperplane contains more than d points");
    if (status[i] == 1) out.push_back(candidates[i]);
  }
  return out;
}

}  // namespace kstress
