#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kstress/geometry.hpp"
#include "kstress/simplicial.hpp"
#include "kstress/stress.hpp"

namespace kstress {

/// Exact sign (-1, 0, +1) of every squarefree coordinate.
using SignVector = std::map<Face, int>;

SignVector sign_vector(const StressVector& lambda);

/// (M, F, lambda) together with the signs of lambda on the faces F + u.
struct Certificate {
  Face m;
  Face f;
  StressVector lambda;
  SignVector pattern;
};

/// Restricts the sign vector of lambda to the (k-1)-faces F + u of `complex`.
SignVector pattern_at(const StressVector& lambda, const SimplicialComplex& complex, const Face& f);

/// True iff lambda is a stress on (complex, p) with lambda_{F+v} <= 0 for every
/// face F + v, v outside M, and at least one of these strictly negative.
/// Throws InvalidCertificate for a malformed triple.
bool certificate_check(const Certificate& c, const SimplicialComplex& complex, const Embedding& p);

/// Searches the span of `basis` for lambda > 0 on F + v (v in M \ F) and
/// lambda <= 0 on F + u (u outside M), over the faces of `skel`.
std::optional<Certificate> find_certificate(const SimplicialComplex& skel, const std::vector<StressVector>& basis,
                                            const Face& m, const Face& f);

/// Certificate for a missing face M built inside st(M \ G) + G, where
/// G = {x_0..x_{k-1}} and F = G \ x_0 for the sorted elements x_i of M: a stress
/// positive on G and <= 0 on every F + u with u outside M, extended by zero to
/// the (k-1)-faces of P. nullopt if that local search fails.
std::optional<Certificate> quotient_route_certificate(const PolytopeInstance& p, const Face& m, int k);

/// F + { u in M \ F : lambda_{F+u} > 0 }.
Face positive_closure(const Certificate& c);

/// A 2-stress on G(P) + ab with lambda_ab = 1 and lambda_e <= 0 on the edges at a
/// (and at b when d = 3). Unique kernel element for d = 3; for d >= 4 it is
/// assembled from stars along separating paths.
StressVector missing_edge_stress(const PolytopeInstance& p, Vertex a, Vertex b);

/// Same sign requirements, but found directly by the strict-feasibility LP
/// over Stress_2(G(P) + ab); nullopt if the LP is infeasible.
std::optional<StressVector> missing_edge_stress_lp(const PolytopeInstance& p, Vertex a, Vertex b);

/// Sign changes of lambda around v in the cyclic order of lk(v) (d = 3), zeros skipped.
int sign_changes(const StressVector& lambda, const PolytopeInstance& p, Vertex v);

bool is_k_neighborly(const SimplicialComplex& complex, int k);

/// phi^k for an affine dependence phi positive on M, packaged as a certificate
/// at the lexicographically first (k-1)-subset of M.
Certificate neighborly_certificate(const PolytopeInstance& p, const Face& m, int k);

/// Span of { d lambda / d x_v } over a Stress_2 basis of a 2-neighborly polytope.
std::vector<StressVector> recover_stress1_from_stress2(const PolytopeInstance& p);

/// Minimal certified candidate sets M with k+1 <= |M| <= d-k+1. Candidates are
/// scanned by size, then lexicographically; searches within a size run in parallel.
std::vector<Face> enumerate_missing_faces(const SimplicialComplex& skel, const std::vector<StressVector>& basis, int d, int k);

}  // namespace kstress
