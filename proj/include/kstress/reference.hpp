#pragma once

// Straightforward single-threaded versions of the parallel kernels. Used by the
// tests as cross-checks and by the benchmark as the baseline.

#include <vector>

#include "kstress/exactla.hpp"
#include "kstress/geometry.hpp"
#include "kstress/stress.hpp"

namespace kstress::reference {

/// Gauss-Jordan over Q, no fraction-free tricks, no threads.
KernelResult kernel_basis_serial(const RatMatrix& a);

/// Facets by checking every d-subset in sequence.
std::vector<Face> brute_force_facets_serial(const Embedding& points);

/// Tries every admissible candidate of every size (no pruning by smaller
/// certified sets), then keeps the inclusion-minimal certified ones.
std::vector<Face> enumerate_missing_faces_serial(const SimplicialComplex& skel, const std::vector<StressVector>& basis,
                                                 int d, int k);

}  // namespace kstress::reference
