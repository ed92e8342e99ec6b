#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kstress/exactla.hpp"
#include "kstress/simplicial.hpp"

namespace kstress {

/// Vertex id -> point in Q^d.
struct Embedding {
  int d = 0;
  std::map<Vertex, Vec> coords;

  const Vec& at(Vertex v) const;
  std::vector<Vec> points(const Face& f) const;
  bool operator==(const Embedding&) const = default;
};

/// { x : normal . x = offset }.
struct Hyperplane {
  Vec normal;
  Rational offset;

  Rational eval(const Vec& x) const { return dot(normal, x); }
};

struct PolytopeMeta {
  std::string family;
  std::map<std::string, long long> params;
  bool operator==(const PolytopeMeta&) const = default;
};

/// A complex claimed to be the boundary of conv(embedding), with labels for I/O.
struct PolytopeInstance {
  SimplicialComplex complex;
  Embedding embedding;
  std::vector<std::string> labels;  // labels[i] names vertex id i when ids are dense
  PolytopeMeta meta;
  bool validated = false;

  int d() const { return embedding.d; }
  std::string label(Vertex v) const;
};

/// Dimension of the affine hull (0 for one point).
int affine_rank(const std::vector<Vec>& points);

/// Affine dependencies of the points: the nullspace of the matrix whose
/// column v is p(v) with a trailing 1.
std::vector<Vec> affine_dependencies(const std::vector<Vec>& points);

/// p(v) minus its orthogonal projection onto Aff(p(F)).
Vec altitude_vector(const Face& f, Vertex v, const Embedding& p);

/// Hyperplane through the d affinely independent points, or nullopt if dependent.
std::optional<Hyperplane> hyperplane_through(const std::vector<Vec>& points);

/// Inward facet normal (coprime integers): normal . x >= offset on the polytope.
Hyperplane inward_facet_hyperplane(const PolytopeInstance& p, const Face& facet);

/// b . p(u) < offset < b . p(v) for every other vertex v.
Hyperplane separating_functional(const PolytopeInstance& p, Vertex u);

struct VertexFigure {
  PolytopeInstance quotient;            // complex lk(u), embedding in Q^{d-1}
  std::map<Vertex, Rational> heights;   // a_i: last coordinate after the change of coordinates
  Embedding cone_embedding;             // u at the origin, link vertex i at (v_i, a_i)
  Vertex apex = 0;
};

VertexFigure vertex_figure(const PolytopeInstance& p, Vertex u);

/// Iterated vertex figures over the vertices of `tau` (in increasing order).
PolytopeInstance quotient(const PolytopeInstance& p, const Face& tau);

struct SegmentHullMeet {
  Vec point;
  Rational segment_param;  // point = (1 - s) p(a) + s p(b)
  Face support;            // affinely independent C'
  std::map<Vertex, Rational> coeffs;
};

/// Intersection of [p(a), p(b)] with conv(p(C)) closest to p(a), reduced to an
/// affinely independent support.
std::optional<SegmentHullMeet> segment_hull_meet(Vertex a, Vertex b, const Face& c, const Embedding& p);

/// Every d-subset whose hyperplane has all other points strictly on one side.
/// Throws NotSimplicial when a supporting hyperplane holds more than d points.
std::vector<Face> brute_force_facets(const Embedding& points);

}  // namespace kstress
