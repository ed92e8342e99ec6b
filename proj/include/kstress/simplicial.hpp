#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace kstress {

using Vertex = int;

/// A face is a strictly increasing list of vertex ids.
using Face = std::vector<Vertex>;

Face make_face(std::vector<Vertex> vs);
bool is_subset(const Face& small, const Face& big);
Face face_union(const Face& a, const Face& b);
Face face_minus(const Face& a, const Face& b);
Face face_intersection(const Face& a, const Face& b);

/// All subsets of `s` of the given cardinality, in lexicographic order.
std::vector<Face> subsets_of_size(const Face& s, int size);

/// Abstract simplicial complex stored by its facets; every subset of a facet is
/// a face. Immutable after construction.
class SimplicialComplex {
 public:
  /// Builds the downward closure of `facets`, dropping dominated sets.
  /// The input must be nonempty; {{}} yields the complex {∅}.
  static SimplicialComplex from_facets(std::vector<Face> facets);

  const std::vector<Face>& facets() const { return facets_; }
  const Face& vertices() const { return vertices_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int dim() const { return dim_; }

  bool contains(const Face& f) const;
  bool has_vertex(Vertex v) const;

  /// Position of `v` in the sorted vertex list; throws NotAFace if absent.
  int index_of(Vertex v) const;

  /// All faces of dimension `i` (cardinality i + 1), lexicographically sorted.
  std::vector<Face> faces(int i) const;

  /// f_{-1}, f_0, ..., f_{dim}.
  std::vector<long long> f_vector() const;

  bool operator==(const SimplicialComplex& other) const { return facets_ == other.facets_; }

 private:
  std::vector<Face> facets_;
  Face vertices_;
  int dim_ = -1;
};

SimplicialComplex build_complex(std::vector<Face> facets);

/// Faces of dimension <= i. Requires -1 <= i <= dim(K).
SimplicialComplex skeleton(const SimplicialComplex& k, int i);

struct StarLink {
  SimplicialComplex star;
  SimplicialComplex link;
};

StarLink star_link(const SimplicialComplex& k, const Face& f);

/// Missing faces of cardinality <= max_card, sorted by size then lexicographically.
std::vector<Face> missing_faces(const SimplicialComplex& k, int max_card);

struct FGVector {
  int d = 0;
  std::vector<long long> f;  // f[0] = f_{-1}, ..., f[d] = f_{d-1}
  std::vector<long long> g;  // g_0 .. g_{ceil(d/2)}

  long long f_at(int i) const;  // f_i for -1 <= i <= d-1
  long long g_at(int i) const;  // zero outside 0..ceil(d/2)
};

FGVector fg_vector(const SimplicialComplex& k, int d);

/// Join of complexes on disjoint vertex sets.
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);

/// Cone with apex `v`.
SimplicialComplex cone(Vertex v, const SimplicialComplex& a);

/// The complex obtained by adding one extra face whose proper subsets are all faces.
SimplicialComplex with_face(const SimplicialComplex& k, const Face& extra);

long long binomial(int n, int r);

}  // namespace kstress
