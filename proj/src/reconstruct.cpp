#include "kstress/reconstruct.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "kstress/detect.hpp"
#include "kstress/error.hpp"

namespace kstress {

bool ComplexDiff::empty() const {
  return facets_only_first.empty() && facets_only_second.empty() && missing_only_first.empty() &&
         missing_only_second.empty();
}

namespace {

void set_differences(const std::vector<Face>& a, const std::vector<Face>& b, std::vector<Face>& only_a,
                     std::vector<Face>& only_b) {
  std::set<Face> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(only_a));
  std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(only_b));
}

bool avoids(const Face& s, const std::vector<Face>& missing) {
  return std::none_of(missing.begin(), missing.end(), [&](const Face& m) { return is_subset(m, s); });
}

// Maximal vertex sets of size <= max_size containing no member of `missing`.
std::vector<Face> maximal_avoiding_sets(const Face& vertices, const std::vector<Face>& missing, int max_size) {
  std::vector<Face> maximal;
  std::vector<Face> level;
  for (Vertex v : vertices) {
    if (avoids({v}, missing)) level.push_back({v});
  }
  for (int size = 1; !level.empty(); ++size) {
    std::vector<Face> next;
    for (const auto& s : level) {
      bool extended = false;
      for (Vertex v : vertices) {
        if (std::binary_search(s.begin(), s.end(), v)) continue;
        Face t = face_union(s, {v});
        if (!avoids(t, missing)) continue;
        extended = true;
        if (v > s.back() && size < max_size) next.push_back(std::move(t));
      }
      if (!extended || size == max_size) maximal.push_back(s);
    }
    level = std::move(next);
  }
  return maximal;
}

}  // namespace

ComplexDiff compare(const SimplicialComplex& a, const SimplicialComplex& b) {
  ComplexDiff d;
  set_differences(a.facets(), b.facets(), d.facets_only_first, d.facets_only_second);
  const int card = std::max(a.dim(), b.dim()) + 2;
  set_differences(missing_faces(a, card), missing_faces(b, card), d.missing_only_first, d.missing_only_second);
  return d;
}

SimplicialComplex reconstruct_skeleton(const SimplicialComplex& skel, const std::vector<StressVector>& basis, int d, int k) {
  if (k < 1 || d < 2 * k) throw Error(ErrorCode::ReconstructionFailure, "need k >= 1 and d >= 2k");
  if (skel.dim() != k - 1) {
    throw Error(ErrorCode::ReconstructionFailure,
                "expected a " + std::to_string(k - 1) + "-skeleton, got dimension " + std::to_string(skel.dim()));
  }
  for (const auto& s : basis) {
    if (s.k != k) throw Error(ErrorCode::ReconstructionFailure, "stress degree does not match k");
    for (const auto& [g, x] : s.sf) {
      if (!skel.contains(g)) throw Error(ErrorCode::ReconstructionFailure, "stress coordinate outside the skeleton");
    }
  }
  std::vector<Face> missing = missing_faces(skel, k);
  if (k >= 2) {
    const auto found = enumerate_missing_faces(skel, basis, d, k);
    missing.insert(missing.end(), found.begin(), found.end());
  }
  return build_complex(maximal_avoiding_sets(skel.vertices(), missing, d - k + 1));
}

SimplicialComplex complete_prime(const SimplicialComplex& skel_dk, const std::vector<Face>& missing, int d) {
  const auto facets = maximal_avoiding_sets(skel_dk.vertices(), missing, d);
  for (const auto& f : facets) {
    if (static_cast<int>(f.size()) != d) {
      throw Error(ErrorCode::CompletionFailure, "maximal face of size " + std::to_string(f.size()) + ", expected " +
                                                    std::to_string(d));
    }
  }
  // Ridges in exactly two facets, dual graph connected.
  std::map<Face, std::vector<std::size_t>> ridges;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (auto& r : subsets_of_size(facets[i], d - 1)) ridges[std::move(r)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> adj(facets.size());
  for (const auto& [r, owners] : ridges) {
    if (owners.size() != 2) {
      throw Error(ErrorCode::CompletionFailure,
                  "a ridge lies in " + std::to_string(owners.size()) + " facets instead of 2");
    }
    adj[owners[0]].push_back(owners[1]);
    adj[owners[1]].push_back(owners[0]);
  }
  std::vector<char> seen(facets.size(), 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j : adj[i]) {
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        queue.push_back(j);
      }
    }
  }
  if (reached != facets.size()) throw Error(ErrorCode::CompletionFailure, "dual graph is disconnected");
  return build_complex(facets);
}

ReconstructionReport reconstruct(const SimplicialComplex& skel, const std::vector<StressVector>& basis, int d, int k,
                                 bool assume_prime, const SimplicialComplex* truth) {
  ReconstructionReport r;
  r.d = d;
  r.k = k;
  r.num_vertices = skel.num_vertices();
  r.stress_dim = basis.size();
  r.skeleton = reconstruct_skeleton(skel, basis, d, k);
  r.missing = missing_faces(r.skeleton, d - k + 1);
  r.neighborly_or_k2 = k == 2 || is_k_neighborly(skel, k);

  bool prime = assume_prime;
  // Completion needs every missing face of the truth to be visible in the skeleton.
  if (truth) prime = missing_faces(*truth, d).size() == missing_faces(*truth, d - k + 1).size();
  if (prime) {
    r.complex = complete_prime(r.skeleton, r.missing, d);
    r.completion = Completion::Full;
  }
  if (truth) r.diff = compare(r.complex ? *r.complex : r.skeleton, r.complex ? *truth : skeleton(*truth, d - k));
  return r;
}

}  // namespace kstress
