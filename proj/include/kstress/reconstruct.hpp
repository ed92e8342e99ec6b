#pragma once

#include <optional>
#include <vector>

#include "kstress/simplicial.hpp"
#include "kstress/stress.hpp"

namespace kstress {

/// Everything that differs between two complexes: facets and missing faces.
struct ComplexDiff {
  std::vector<Face> facets_only_first;
  std::vector<Face> facets_only_second;
  std::vector<Face> missing_only_first;
  std::vector<Face> missing_only_second;

  bool empty() const;
};

ComplexDiff compare(const SimplicialComplex& a, const SimplicialComplex& b);

/// Missing faces of size <= k read off the (k-1)-skeleton, plus the certified
/// ones of size k+1 .. d-k+1; returns every vertex set of size <= d-k+1 that
/// contains none of them.
SimplicialComplex reconstruct_skeleton(const SimplicialComplex& skel, const std::vector<StressVector>& basis, int d, int k);

/// All vertex sets of size <= d avoiding `missing`, checked to be a closed
/// pseudomanifold with facets of size d. Throws CompletionFailure otherwise.
SimplicialComplex complete_prime(const SimplicialComplex& skel_dk, const std::vector<Face>& missing, int d);

enum class Completion { Full, SkeletonOnly };

struct ReconstructionReport {
  int d = 0;
  int k = 0;
  int num_vertices = 0;
  std::size_t stress_dim = 0;
  std::vector<Face> missing;      // sorted by size, then lexicographically
  SimplicialComplex skeleton;     // the recovered (d-k)-skeleton
  Completion completion = Completion::SkeletonOnly;
  std::optional<SimplicialComplex> complex;  // set when completion == Full
  bool neighborly_or_k2 = false;  // certificate existence is guaranteed
  std::optional<ComplexDiff> diff;
};

/// The whole pipeline. `assume_prime` asks for completion; without it (or when
/// `truth` shows the polytope is not prime) the report stops at the skeleton.
ReconstructionReport reconstruct(const SimplicialComplex& skel, const std::vector<StressVector>& basis, int d, int k,
                                 bool assume_prime, const SimplicialComplex* truth = nullptr);

}  // namespace kstress
