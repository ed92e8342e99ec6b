#include "kstress/detect.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <set>
#include <string>

#include "kstress/error.hpp"

namespace kstress {

SignVector sign_vector(const StressVector& lambda) {
  SignVector s;
  for (const auto& [g, x] : lambda.sf) s[g] = sign(x);
  return s;
}

SignVector pattern_at(const StressVector& lambda, const SimplicialComplex& complex, const Face& f) {
  SignVector s;
  for (Vertex u : complex.vertices()) {
    if (std::binary_search(f.begin(), f.end(), u)) continue;
    Face g = face_union(f, {u});
    if (complex.contains(g)) s[g] = sign(lambda.at(g));
  }
  return s;
}

bool certificate_check(const Certificate& c, const SimplicialComplex& complex, const Embedding& p) {
  const int k = c.lambda.k;
  if (k < 2) throw Error(ErrorCode::InvalidCertificate, "certificates need k >= 2");
  if (static_cast<int>(c.f.size()) != k - 1) throw Error(ErrorCode::InvalidCertificate, "|F| must be k - 1");
  if (!is_subset(c.f, c.m)) throw Error(ErrorCode::InvalidCertificate, "F is not a subset of M");
  if (static_cast<int>(c.m.size()) < k) throw Error(ErrorCode::InvalidCertificate, "|M| must be at least k");
  if (!complex.contains(c.f)) throw Error(ErrorCode::InvalidCertificate, "F is not a face");
  for (const auto& [g, x] : c.lambda.sf) {
    if (x != 0 && (static_cast<int>(g.size()) != k || !complex.contains(g))) {
      throw Error(ErrorCode::InvalidCertificate, "lambda is not supported on the complex");
    }
  }

  if (!is_balanced(c.lambda, complex, p)) return false;
  bool strict = false;
  for (Vertex u : complex.vertices()) {
    if (std::binary_search(c.m.begin(), c.m.end(), u)) continue;
    const Face g = face_union(c.f, {u});
    if (!complex.contains(g)) continue;
    const int s = sign(c.lambda.at(g));
    if (s > 0) return false;
    if (s < 0) strict = true;
  }
  return strict;
}

std::optional<Certificate> find_certificate(const SimplicialComplex& skel, const std::vector<StressVector>& basis,
                                            const Face& m, const Face& f) {
  if (basis.empty()) return std::nullopt;
  const int k = basis.front().k;
  if (static_cast<int>(f.size()) != k - 1 || !is_subset(f, m) || !skel.contains(f)) {
    throw Error(ErrorCode::InvalidArgument, "F must be a (k-1)-subset of M and a face");
  }
  std::vector<Face> coords;
  std::map<Face, std::size_t> index;
  for (const auto& [g, x] : basis.front().sf) {
    index[g] = coords.size();
    coords.push_back(g);
  }
  std::vector<Vec> vecs;
  for (const auto& b : basis) {
    Vec v(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) v[i] = b.at(coords[i]);
    vecs.push_back(std::move(v));
  }

  std::vector<std::size_t> strict, weak;
  for (Vertex u : skel.vertices()) {
    if (std::binary_search(f.begin(), f.end(), u)) continue;
    auto it = index.find(face_union(f, {u}));
    if (it == index.end()) continue;
    (std::binary_search(m.begin(), m.end(), u) ? strict : weak).push_back(it->second);
  }
  const auto witness = strict_feasible(vecs, strict, weak);
  if (!witness) return std::nullopt;

  Certificate c;
  c.m = m;
  c.f = f;
  c.lambda.k = k;
  for (std::size_t i = 0; i < coords.size(); ++i) c.lambda.sf[coords[i]] = (*witness)[i];
  c.pattern = pattern_at(c.lambda, skel, f);
  return c;
}

std::optional<Certificate> quotient_route_certificate(const PolytopeInstance& p, const Face& m, int k) {
  if (k < 2 || static_cast<int>(m.size()) < k + 1) throw Error(ErrorCode::InvalidArgument, "need k >= 2 and |M| > k");
  if (p.complex.contains(m)) throw Error(ErrorCode::InvalidArgument, "M is a face");
  const Face g(m.begin(), m.begin() + k);
  const Face f(m.begin() + 1, m.begin() + k);
  const Face rest(m.begin() + k, m.end());
  const SimplicialComplex star = star_link(p.complex, rest).star;
  const SimplicialComplex local = with_face(skeleton(star, std::min(k - 1, star.dim())), g);

  const auto basis = stress_basis(local, p.embedding, k);
  if (basis.empty()) return std::nullopt;
  std::vector<Face> coords = local.faces(k - 1);
  std::vector<Vec> vecs;
  for (const auto& b : basis) {
    Vec v;
    for (const auto& c : coords) v.push_back(b.at(c));
    vecs.push_back(std::move(v));
  }
  std::vector<std::size_t> strict, weak;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == g) {
      strict.push_back(i);
    } else if (is_subset(f, coords[i])) {
      const Face u = face_minus(coords[i], f);
      if (!std::binary_search(m.begin(), m.end(), u[0])) weak.push_back(i);
    }
  }
  const auto witness = strict_feasible(vecs, strict, weak);
  if (!witness) return std::nullopt;

  Certificate c;
  c.m = m;
  c.f = f;
  c.lambda.k = k;
  for (const auto& face : p.complex.faces(k - 1)) c.lambda.sf[face] = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) c.lambda.sf[coords[i]] = (*witness)[i];
  c.pattern = pattern_at(c.lambda, p.complex, f);
  return c;
}

Face positive_closure(const Certificate& c) {
  Face out = c.f;
  for (Vertex u : face_minus(c.m, c.f)) {
    if (sign(c.lambda.at(face_union(c.f, {u}))) > 0) out = face_union(out, {u});
  }
  return out;
}

namespace {

void require_missing_edge(const PolytopeInstance& p, Vertex a, Vertex b) {
  if (a == b || !p.complex.has_vertex(a) || !p.complex.has_vertex(b)) {
    throw Error(ErrorCode::InvalidArgument, "a and b must be distinct vertices");
  }
  if (p.d() < 3) throw Error(ErrorCode::InvalidArgument, "missing-edge stresses need d >= 3");
  if (p.complex.contains(make_face({a, b}))) throw Error(ErrorCode::NotMissing, "ab is an edge of the polytope");
}

StressVector normalized_at(const StressVector& s, const Face& e) {
  StressVector out = s;
  const Rational scale = 1 / s.at(e);
  for (auto& [g, x] : out.sf) x *= scale;
  out.full.reset();
  return out;
}

std::map<Vertex, std::vector<Vertex>> adjacency(const SimplicialComplex& complex) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (Vertex v : complex.vertices()) adj[v];
  for (const auto& e : complex.faces(1)) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& [v, ns] : adj) std::sort(ns.begin(), ns.end());
  return adj;
}

StressVector constructive_missing_edge_stress(const PolytopeInstance& p, Vertex a, Vertex b,
                                              const SimplicialComplex& graph_plus_ab) {
  const int d = p.d();
  const Face link_a = star_link(p.complex, {a}).link.vertices();
  const auto adj = adjacency(p.complex);
  auto blocked = [&](Vertex v) { return v == a || std::binary_search(link_a.begin(), link_a.end(), v); };

  // Breadth-first search from b in G(P) with lk(a) and a removed.
  std::map<Vertex, int> dist;
  std::map<Vertex, Vertex> parent;
  std::deque<Vertex> queue{b};
  dist[b] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : adj.at(v)) {
      if (blocked(w) || dist.count(w)) continue;
      dist[w] = dist[v] + 1;
      parent[w] = v;
      queue.push_back(w);
    }
  }

  // C: link vertices reaching b through the explored component; each gets the
  // closest (then smallest) explored neighbour as the start of its path.
  Face c_set;
  std::map<Vertex, Vertex> attach;
  for (Vertex c : link_a) {
    std::optional<Vertex> best;
    for (Vertex w : adj.at(c)) {
      if (!dist.count(w)) continue;
      if (!best || dist[w] < dist[*best]) best = w;
    }
    if (best) {
      c_set.push_back(c);
      attach[c] = *best;
    }
  }

  const auto meet = segment_hull_meet(a, b, c_set, p.embedding);
  if (!meet) throw Error(ErrorCode::RigidityFailure, "separator hull misses the segment [a, b]");

  // Extend the Caratheodory support to d points with {p(c) - p(a)} independent.
  const Vec& pa = p.embedding.at(a);
  Face chosen = meet->support;
  std::vector<Vec> dirs;
  for (Vertex c : chosen) dirs.push_back(p.embedding.at(c) - pa);
  if (rank(RatMatrix::from_rows(dirs, d)) != dirs.size()) {
    throw Error(ErrorCode::RigidityFailure, "a lies in the affine hull of the support");
  }
  for (Vertex c : c_set) {
    if (static_cast<int>(chosen.size()) == d) break;
    if (std::binary_search(chosen.begin(), chosen.end(), c)) continue;
    dirs.push_back(p.embedding.at(c) - pa);
    if (rank(RatMatrix::from_rows(dirs, d)) == dirs.size()) {
      chosen = face_union(chosen, {c});
    } else {
      dirs.pop_back();
    }
  }
  if (static_cast<int>(chosen.size()) != d) throw Error(ErrorCode::RigidityFailure, "separator spans too little");

  // K: stars of the path vertices (excluding each c itself).
  std::set<Vertex> path_vertices;
  for (Vertex c : chosen) {
    for (Vertex v = attach.at(c);; v = parent.at(v)) {
      path_vertices.insert(v);
      if (v == b) break;
    }
  }
  std::set<Face> edges;
  for (const auto& facet : p.complex.facets()) {
    const bool in_star = std::any_of(path_vertices.begin(), path_vertices.end(),
                                     [&](Vertex v) { return std::binary_search(facet.begin(), facet.end(), v); });
    if (!in_star) continue;
    for (auto& e : subsets_of_size(facet, 2)) edges.insert(std::move(e));
  }
  for (Vertex c : chosen) edges.insert(make_face({a, c}));
  const Face ab = make_face({a, b});
  edges.insert(ab);
  const SimplicialComplex g_prime = build_complex({edges.begin(), edges.end()});

  for (const auto& s : stress_basis(g_prime, p.embedding, 2)) {
    if (s.at(ab) == 0) continue;
    StressVector out;
    out.k = 2;
    for (const auto& e : graph_plus_ab.faces(1)) out.sf[e] = s.at(e);
    return normalized_at(out, ab);
  }
  throw Error(ErrorCode::RigidityFailure, "no stress on the glued framework uses ab");
}

}  // namespace

StressVector missing_edge_stress(const PolytopeInstance& p, Vertex a, Vertex b) {
  require_missing_edge(p, a, b);
  const Face ab = make_face({a, b});
  const SimplicialComplex aug = with_face(skeleton(p.complex, 1), ab);
  if (p.d() > 3) return constructive_missing_edge_stress(p, a, b, aug);

  const auto basis = stress_basis(aug, p.embedding, 2);
  if (basis.size() != 1 || basis[0].at(ab) == 0) {
    throw Error(ErrorCode::RigidityFailure, "expected a one-dimensional stress space using ab, got dimension " +
                                                std::to_string(basis.size()));
  }
  return normalized_at(basis[0], ab);
}

std::optional<StressVector> missing_edge_stress_lp(const PolytopeInstance& p, Vertex a, Vertex b) {
  require_missing_edge(p, a, b);
  const Face ab = make_face({a, b});
  const SimplicialComplex aug = with_face(skeleton(p.complex, 1), ab);
  const auto basis = stress_basis(aug, p.embedding, 2);
  const std::vector<Face> edges = aug.faces(1);
  std::vector<Vec> vecs;
  for (const auto& s : basis) {
    Vec v;
    for (const auto& e : edges) v.push_back(s.at(e));
    vecs.push_back(std::move(v));
  }
  std::vector<std::size_t> strict, weak;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] == ab) {
      strict.push_back(i);
    } else if (std::binary_search(edges[i].begin(), edges[i].end(), a)) {
      weak.push_back(i);
    }
  }
  const auto witness = strict_feasible(vecs, strict, weak);
  if (!witness) return std::nullopt;
  StressVector out;
  out.k = 2;
  for (std::size_t i = 0; i < edges.size(); ++i) out.sf[edges[i]] = (*witness)[i];
  return normalized_at(out, ab);
}

int sign_changes(const StressVector& lambda, const PolytopeInstance& p, Vertex v) {
  if (p.d() != 3) throw Error(ErrorCode::InvalidInput, "sign changes are counted on 3-polytopes");
  const SimplicialComplex link = star_link(p.complex, {v}).link;
  const auto adj = adjacency(link);
  for (const auto& [u, ns] : adj) {
    if (ns.size() != 2) throw Error(ErrorCode::InvalidInput, "link is not a cycle");
  }
  std::vector<Vertex> order;
  Vertex prev = -1, cur = link.vertices().front();
  do {
    order.push_back(cur);
    const auto& ns = adj.at(cur);
    const Vertex next = (prev == -1) ? ns[0] : (ns[0] == prev ? ns[1] : ns[0]);
    prev = cur;
    cur = next;
  } while (cur != order.front() && order.size() <= adj.size());
  if (order.size() != adj.size()) throw Error(ErrorCode::InvalidInput, "link is not a single cycle");

  std::vector<int> signs;
  for (Vertex u : order) {
    const int s = sign(lambda.at(make_face({u, v})));
    if (s != 0) signs.push_back(s);
  }
  int changes = 0;
  for (std::size_t i = 0; i < signs.size() && signs.size() > 1; ++i) {
    if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
  }
  return changes;
}

bool is_k_neighborly(const SimplicialComplex& complex, int k) {
  for (const auto& s : subsets_of_size(complex.vertices(), k)) {
    if (!complex.contains(s)) return false;
  }
  return true;
}

Certificate neighborly_certificate(const PolytopeInstance& p, const Face& m, int k) {
  const int d = p.d();
  if (k < 2 || d < 2 * k) throw Error(ErrorCode::InvalidArgument, "need k >= 2 and d >= 2k");
  if (!is_k_neighborly(p.complex, k)) throw Error(ErrorCode::NotNeighborlyEnough, "polytope is not k-neighborly");
  const Face& vs = p.complex.vertices();
  bool missing = m.size() >= 2 && is_subset(m, vs) && !p.complex.contains(m);
  for (const auto& sub : missing ? subsets_of_size(m, static_cast<int>(m.size()) - 1) : std::vector<Face>{}) {
    if (!p.complex.contains(sub)) missing = false;
  }
  if (!missing) throw Error(ErrorCode::InvalidArgument, "M is not a missing face");
  if (m.size() == vs.size()) throw Error(ErrorCode::InvalidArgument, "M is the whole vertex set");

  // Weights a_v >= 0 with sum_M a_v p(v) = sum_rest a_v p(v), both sums of weights 1,
  // maximizing min_{v in M} a_v.
  const std::size_t n = vs.size();
  LinearProgram lp;
  lp.num_vars = n + 1;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;
  auto in_m = [&](Vertex v) { return std::binary_search(m.begin(), m.end(), v); };
  for (int l = 0; l < d; ++l) {
    LinearConstraint con{Vec(n + 1, Rational(0)), Relation::Equal, 0};
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = p.embedding.at(vs[j])[l];
      con.coeffs[j] = in_m(vs[j]) ? x : Rational(-x);
    }
    lp.constraints.push_back(std::move(con));
  }
  LinearConstraint sum_m{Vec(n + 1, Rational(0)), Relation::Equal, 1};
  LinearConstraint sum_rest{Vec(n + 1, Rational(0)), Relation::Equal, 1};
  for (std::size_t j = 0; j < n; ++j) (in_m(vs[j]) ? sum_m : sum_rest).coeffs[j] = 1;
  lp.constraints.push_back(std::move(sum_m));
  lp.constraints.push_back(std::move(sum_rest));
  for (std::size_t j = 0; j < n; ++j) {
    if (!in_m(vs[j])) continue;
    LinearConstraint floor{Vec(n + 1, Rational(0)), Relation::GreaterEqual, 0};
    floor.coeffs[j] = 1;
    floor.coeffs[n] = -1;
    lp.constraints.push_back(std::move(floor));
  }
  LinearConstraint cap{Vec(n + 1, Rational(0)), Relation::LessEqual, 1};
  cap.coeffs[n] = 1;
  lp.constraints.push_back(std::move(cap));

  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal || sgn(res.value) <= 0) {
    throw Error(ErrorCode::InvalidInput, "relative interior of conv(M) misses conv(V \\ M)");
  }
  LinearForm phi;
  for (std::size_t j = 0; j < n; ++j) {
    if (res.x[j] != 0) phi[vs[j]] = in_m(vs[j]) ? res.x[j] : Rational(-res.x[j]);
  }

  Certificate c;
  c.m = m;
  c.f = subsets_of_size(m, k - 1).front();
  c.lambda = power_stress(phi, k, p.complex, p.embedding);
  c.pattern = pattern_at(c.lambda, p.complex, c.f);
  return c;
}

std::vector<StressVector> recover_stress1_from_stress2(const PolytopeInstance& p) {
  if (!is_k_neighborly(p.complex, 2)) throw Error(ErrorCode::NotNeighborlyEnough, "polytope is not 2-neighborly");
  const Face& vs = p.complex.vertices();
  std::vector<Vec> forms;
  for (const auto& s : stress_basis(p.complex, p.embedding, 2)) {
    const StressVector full = expand_squarefree(s, p.complex, p.embedding);
    for (Vertex v : vs) {
      const Polynomial dv = derivative(*full.full, v);
      Vec row(vs.size(), Rational(0));
      for (const auto& [mono, c] : dv) row[p.complex.index_of(mono.front())] = c;
      forms.push_back(std::move(row));
    }
  }
  std::vector<StressVector> out;
  for (const auto& row : span_basis(forms, vs.size())) {
    StressVector s;
    s.k = 1;
    LinearForm l;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      s.sf[{vs[j]}] = row[j];
      if (row[j] != 0) l[vs[j]] = row[j];
    }
    s.full = from_linear_form(l);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Face> enumerate_missing_faces(const SimplicialComplex& skel, const std::vector<StressVector>& basis, int d, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "certificate search needs k >= 2");
  std::vector<Face> found;
  if (basis.empty() || k - 1 > skel.dim()) return found;

  // Sets of the current size all of whose k-subsets are faces and that contain
  // no certified set.
  std::vector<Face> admissible = skel.faces(k - 1);
  for (int size = k + 1; size <= d - k + 1; ++size) {
    std::vector<Face> candidates;
    for (const auto& base : admissible) {
      for (Vertex v : skel.vertices()) {
        if (v <= base.back()) continue;
        Face m = base;
        m.push_back(v);
        bool ok = true;
        for (const auto& sub : subsets_of_size(base, k - 1)) {
          if (!skel.contains(face_union(sub, {v}))) {
            ok = false;
            break;
          }
        }
        if (ok) {
          ok = std::none_of(found.begin(), found.end(), [&](const Face& f) { return is_subset(f, m); });
        }
        if (ok) candidates.push_back(std::move(m));
      }
    }

    std::vector<char> certified(candidates.size(), 0);
    std::vector<std::exception_ptr> errors(candidates.size());
    const long count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic)
    for (long ci = 0; ci < count; ++ci) {
      const std::size_t i = static_cast<std::size_t>(ci);
      try {
        for (const auto& f : subsets_of_size(candidates[i], k - 1)) {
          if (find_certificate(skel, basis, candidates[i], f)) {
            certified[i] = 1;
            break;
          }
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    admissible.clear();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      (certified[i] ? found : admissible).push_back(candidates[i]);
    }
  }
  std::sort(found.begin(), found.end(), [](const Face& x, const Face& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return found;
}

}  // namespace kstress
