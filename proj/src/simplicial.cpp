#include "kstress/simplicial.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "kstress/error.hpp"

namespace kstress {

Face make_face(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool is_subset(const Face& small, const Face& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Face face_union(const Face& a, const Face& b) {
  Face r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Face face_minus(const Face& a, const Face& b) {
  Face r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Face face_intersection(const Face& a, const Face& b) {
  Face r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

std::vector<Face> subsets_of_size(const Face& s, int size) {
  std::vector<Face> out;
  const int n = static_cast<int>(s.size());
  if (size < 0 || size > n) return out;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    Face f(size);
    for (int i = 0; i < size; ++i) f[i] = s[idx[i]];
    out.push_back(std::move(f));
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

SimplicialComplex SimplicialComplex::from_facets(std::vector<Face> facets) {
  if (facets.empty()) throw Error(ErrorCode::InvalidComplex, "no facets given");
  for (auto& f : facets) {
    for (Vertex v : f) {
      if (v < 0) throw Error(ErrorCode::InvalidComplex, "negative vertex id " + std::to_string(v));
    }
    f = make_face(std::move(f));
  }
  std::sort(facets.begin(), facets.end(), [](const Face& a, const Face& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  std::vector<Face> kept;
  for (auto& f : facets) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Face& g) { return is_subset(f, g); });
    if (!dominated) kept.push_back(std::move(f));
  }
  std::sort(kept.begin(), kept.end());

  SimplicialComplex k;
  std::set<Vertex> vs;
  for (const auto& f : kept) {
    vs.insert(f.begin(), f.end());
    k.dim_ = std::max(k.dim_, static_cast<int>(f.size()) - 1);
  }
  k.vertices_.assign(vs.begin(), vs.end());
  k.facets_ = std::move(kept);
  return k;
}

bool SimplicialComplex::contains(const Face& f) const {
  return std::any_of(facets_.begin(), facets_.end(), [&](const Face& g) { return is_subset(f, g); });
}

bool SimplicialComplex::has_vertex(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

int SimplicialComplex::index_of(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) throw Error(ErrorCode::NotAFace, "vertex " + std::to_string(v) + " not in complex");
  return static_cast<int>(it - vertices_.begin());
}

std::vector<Face> SimplicialComplex::faces(int i) const {
  std::set<Face> out;
  for (const auto& f : facets_) {
    for (auto& s : subsets_of_size(f, i + 1)) out.insert(std::move(s));
  }
  return {out.begin(), out.end()};
}

std::vector<long long> SimplicialComplex::f_vector() const {
  std::vector<long long> f;
  for (int i = -1; i <= dim_; ++i) f.push_back(static_cast<long long>(faces(i).size()));
  return f;
}

SimplicialComplex build_complex(std::vector<Face> facets) { return SimplicialComplex::from_facets(std::move(facets)); }

SimplicialComplex skeleton(const SimplicialComplex& k, int i) {
  if (i < -1 || i > k.dim()) {
    throw Error(ErrorCode::InvalidArgument, "skeleton index " + std::to_string(i) + " outside [-1, dim]");
  }
  if (i == k.dim()) return k;
  std::vector<Face> facets;
  for (const auto& f : k.facets()) {
    if (static_cast<int>(f.size()) <= i + 1) {
      facets.push_back(f);
    } else {
      for (auto& s : subsets_of_size(f, i + 1)) facets.push_back(std::move(s));
    }
  }
  return SimplicialComplex::from_facets(std::move(facets));
}

StarLink star_link(const SimplicialComplex& k, const Face& f) {
  if (!k.contains(f)) throw Error(ErrorCode::NotAFace, "star/link of a non-face");
  std::vector<Face> star, link;
  for (const auto& g : k.facets()) {
    if (is_subset(f, g)) {
      star.push_back(g);
      link.push_back(face_minus(g, f));
    }
  }
  return {SimplicialComplex::from_facets(std::move(star)), SimplicialComplex::from_facets(std::move(link))};
}

std::vector<Face> missing_faces(const SimplicialComplex& k, int max_card) {
  std::vector<Face> out;
  const int n = k.num_vertices();
  std::vector<Face> prev = k.faces(0);
  for (int s = 2; s <= std::min(max_card, n); ++s) {
    std::vector<Face> next;
    for (const auto& f : prev) {
      for (Vertex v : k.vertices()) {
        if (v <= f.back()) continue;
        Face m = f;
        m.push_back(v);
        if (k.contains(m)) {
          next.push_back(std::move(m));
          continue;
        }
        bool all_faces = true;
        for (std::size_t drop = 0; drop + 1 < m.size() && all_faces; ++drop) {
          Face sub = m;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          all_faces = k.contains(sub);
        }
        if (all_faces) out.push_back(std::move(m));
      }
    }
    prev = std::move(next);
  }
  return out;
}

long long binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  long long b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

long long FGVector::f_at(int i) const {
  if (i < -1 || i > d - 1) return 0;
  return f[i + 1];
}

long long FGVector::g_at(int i) const {
  if (i < 0 || i >= static_cast<int>(g.size())) return 0;
  return g[i];
}

FGVector fg_vector(const SimplicialComplex& k, int d) {
  if (k.dim() != d - 1) {
    throw Error(ErrorCode::InvalidArgument,
                "complex of dimension " + std::to_string(k.dim()) + " is not a boundary of a " + std::to_string(d) + "-polytope");
  }
  FGVector out;
  out.d = d;
  out.f = k.f_vector();
  const int top = (d + 1) / 2;
  out.g.assign(top + 1, 0);
  out.g[0] = 1;
  for (int i = 1; i <= top; ++i) {
    long long s = 0;
    for (int j = 0; j <= i; ++j) {
      const long long term = binomial(d - j + 1, i - j) * out.f_at(j - 1);
      s += ((i - j) % 2 == 0) ? term : -term;
    }
    out.g[i] = s;
  }
  return out;
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (!face_intersection(a.vertices(), b.vertices()).empty()) {
    throw Error(ErrorCode::InvalidArgument, "join of complexes with overlapping vertex sets");
  }
  std::vector<Face> facets;
  for (const auto& f : a.facets()) {
    for (const auto& g : b.facets()) facets.push_back(face_union(f, g));
  }
  return SimplicialComplex::from_facets(std::move(facets));
}

SimplicialComplex cone(Vertex v, const SimplicialComplex& a) {
  return join(SimplicialComplex::from_facets({{v}}), a);
}

SimplicialComplex with_face(const SimplicialComplex& k, const Face& extra) {
  const Face e = make_face(extra);
  for (std::size_t drop = 0; drop < e.size(); ++drop) {
    Face sub = e;
    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
    if (!k.contains(sub)) throw Error(ErrorCode::InvalidArgument, "added face has a proper subset outside the complex");
  }
  std::vector<Face> facets = k.facets();
  facets.push_back(e);
  return SimplicialComplex::from_facets(std::move(facets));
}

}  // namespace kstress
