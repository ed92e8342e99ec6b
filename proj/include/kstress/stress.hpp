#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "kstress/exactla.hpp"
#include "kstress/geometry.hpp"
#include "kstress/polynomial.hpp"
#include "kstress/simplicial.hpp"

namespace kstress {

/// Rows theta_1..theta_{d+1} of the matrix whose column v is p(v) with a 1 appended.
struct ThetaForms {
  int d = 0;
  Face vertices;           // column order
  std::vector<Vec> rows;   // d + 1 rows of length |vertices|

  LinearForm form(int i) const;  // 0-based: form(d) is the all-ones form
};

ThetaForms theta(const Embedding& p);

/// Squarefree part of an affine k-stress, keyed by every (k-1)-face of the
/// carrier complex (zeros included). `full` is the whole polynomial when known.
struct StressVector {
  int k = 0;
  std::map<Face, Rational> sf;
  std::optional<Polynomial> full;

  Rational at(const Face& g) const;
  bool is_zero() const;
};

/// R_k(K, p): d rows per (k-2)-face, one column per (k-1)-face.
struct RigidityMatrix {
  int d = 0;
  int k = 0;
  RatMatrix matrix;
  std::vector<Face> row_faces;
  std::vector<Face> col_faces;
};

RigidityMatrix rigidity_matrix(const SimplicialComplex& complex, const Embedding& p, int k);

/// Basis of Stress_k(K, p). For k = 1 this is the space of affine dependencies
/// of the vertices; for k >= 2 it is the kernel of R_k.
std::vector<StressVector> stress_basis(const SimplicialComplex& complex, const Embedding& p, int k);

/// sum_{G > F} lambda_G pi_{F,G} for every (k-2)-face F.
std::map<Face, Vec> balancing_residual(const StressVector& lambda, const SimplicialComplex& complex, const Embedding& p);

bool is_balanced(const StressVector& lambda, const SimplicialComplex& complex, const Embedding& p);

struct RigidityReport {
  bool rigid = false;
  std::size_t rank = 0;
  std::size_t expected_rank = 0;  // d f_0 - C(d+1, 2)
  std::size_t stress_dim = 0;     // f_1 - rank
};

RigidityReport is_infinitesimally_rigid(const SimplicialComplex& graph, const Embedding& p);

/// True iff `poly` is homogeneous of degree k, supported on faces, and killed by
/// every theta derivation.
bool verify_stress(const Polynomial& poly, int k, const SimplicialComplex& complex, const Embedding& p);

/// The unique affine k-stress polynomial with the given squarefree part.
/// Throws ExpansionFailure if no such polynomial exists or it is not unique.
StressVector expand_squarefree(const StressVector& lambda, const SimplicialComplex& complex, const Embedding& p);

/// Lifts a stress on (Delta, p') to the cone apex * Delta. Requires
/// `lambda.full` and a nonzero height for every vertex of Delta.
StressVector cone_lift(const StressVector& lambda, const SimplicialComplex& delta, const std::map<Vertex, Rational>& heights,
                       Vertex apex);

/// phi^k for an affine dependence phi whose k-subsets of support are faces.
StressVector power_stress(const LinearForm& phi, int k, const SimplicialComplex& complex, const Embedding& p);

/// The squarefree coefficients of `poly` on the (k-1)-faces of `complex`.
std::map<Face, Rational> squarefree_part(const Polynomial& poly, const SimplicialComplex& complex, int k);

}  // namespace kstress
