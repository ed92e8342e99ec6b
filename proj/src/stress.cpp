#include "kstress/stress.hpp"

#include <algorithm>
#include <exception>
#include <string>

#include "kstress/error.hpp"

namespace kstress {

LinearForm ThetaForms::form(int i) const {
  LinearForm l;
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    if (rows[i][j] != 0) l[vertices[j]] = rows[i][j];
  }
  return l;
}

ThetaForms theta(const Embedding& p) {
  ThetaForms t;
  t.d = p.d;
  for (const auto& [v, x] : p.coords) t.vertices.push_back(v);
  t.rows.assign(p.d + 1, Vec(t.vertices.size(), Rational(0)));
  std::size_t j = 0;
  for (const auto& [v, x] : p.coords) {
    for (int i = 0; i < p.d; ++i) t.rows[i][j] = x[i];
    t.rows[p.d][j] = 1;
    ++j;
  }
  return t;
}

Rational StressVector::at(const Face& g) const {
  auto it = sf.find(g);
  return it == sf.end() ? Rational(0) : it->second;
}

bool StressVector::is_zero() const {
  return std::all_of(sf.begin(), sf.end(), [](const auto& kv) { return kv.second == 0; });
}

RigidityMatrix rigidity_matrix(const SimplicialComplex& complex, const Embedding& p, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "rigidity matrices are defined for k >= 2");
  RigidityMatrix r;
  r.d = p.d;
  r.k = k;
  r.row_faces = complex.faces(k - 2);
  r.col_faces = k - 1 <= complex.dim() ? complex.faces(k - 1) : std::vector<Face>{};
  std::map<Face, std::size_t> row_index;
  for (std::size_t i = 0; i < r.row_faces.size(); ++i) row_index[r.row_faces[i]] = i;

  const std::size_t d = static_cast<std::size_t>(p.d);
  r.matrix = RatMatrix(d * r.row_faces.size(), r.col_faces.size());
  std::vector<std::vector<Vec>> blocks(r.col_faces.size());
  std::vector<std::exception_ptr> errors(r.col_faces.size());
  const long ncols = static_cast<long>(r.col_faces.size());
#pragma omp parallel for schedule(dynamic)
  for (long cj = 0; cj < ncols; ++cj) {
    const std::size_t c = static_cast<std::size_t>(cj);
    try {
      const Face& g = r.col_faces[c];
      for (std::size_t drop = 0; drop < g.size(); ++drop) {
        Face f = g;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
        Vec alt = altitude_vector(f, g[drop], p);
        if (kstress::is_zero(alt)) throw Error(ErrorCode::DegenerateFace, "face points are affinely dependent");
        blocks[c].push_back(std::move(alt));
      }
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t c = 0; c < r.col_faces.size(); ++c) {
    const Face& g = r.col_faces[c];
    for (std::size_t drop = 0; drop < g.size(); ++drop) {
      Face f = g;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
      const std::size_t base = row_index.at(f) * d;
      for (std::size_t l = 0; l < d; ++l) r.matrix(base + l, c) = blocks[c][drop][l];
    }
  }
  return r;
}

std::vector<StressVector> stress_basis(const SimplicialComplex& complex, const Embedding& p, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "stress degree must be positive");
  std::vector<StressVector> out;
  if (k == 1) {
    const Face& vs = complex.vertices();
    for (const auto& dep : affine_dependencies(p.points(vs))) {
      StressVector s;
      s.k = 1;
      LinearForm l;
      for (std::size_t j = 0; j < vs.size(); ++j) {
        s.sf[{vs[j]}] = dep[j];
        if (dep[j] != 0) l[vs[j]] = dep[j];
      }
      s.full = from_linear_form(l);
      out.push_back(std::move(s));
    }
    return out;
  }
  const RigidityMatrix r = rigidity_matrix(complex, p, k);
  for (const auto& x : kernel_basis(r.matrix).basis) {
    StressVector s;
    s.k = k;
    for (std::size_t j = 0; j < r.col_faces.size(); ++j) s.sf[r.col_faces[j]] = x[j];
    out.push_back(std::move(s));
  }
  return out;
}

std::map<Face, Vec> balancing_residual(const StressVector& lambda, const SimplicialComplex& complex, const Embedding& p) {
  std::map<Face, Vec> out;
  if (lambda.k < 2) throw Error(ErrorCode::InvalidArgument, "balancing is defined for k >= 2");
  for (const auto& f : complex.faces(lambda.k - 2)) {
    Vec acc(p.d, Rational(0));
    for (Vertex v : complex.vertices()) {
      if (std::binary_search(f.begin(), f.end(), v)) continue;
      Face g = face_union(f, {v});
      const Rational w = lambda.at(g);
      if (w == 0 || !complex.contains(g)) continue;
      acc = acc + w * altitude_vector(f, v, p);
    }
    out.emplace(f, std::move(acc));
  }
  return out;
}

bool is_balanced(const StressVector& lambda, const SimplicialComplex& complex, const Embedding& p) {
  for (const auto& [f, r] : balancing_residual(lambda, complex, p)) {
    if (!is_zero(r)) return false;
  }
  return true;
}

RigidityReport is_infinitesimally_rigid(const SimplicialComplex& graph, const Embedding& p) {
  const int d = p.d;
  if (affine_rank(p.points(graph.vertices())) != d) {
    throw Error(ErrorCode::DegenerateEmbedding, "framework does not affinely span the ambient space");
  }
  RigidityReport rep;
  const RigidityMatrix r = rigidity_matrix(graph, p, 2);
  rep.rank = rank(r.matrix);
  const long long expected = static_cast<long long>(d) * graph.num_vertices() - binomial(d + 1, 2);
  rep.expected_rank = static_cast<std::size_t>(std::max(0LL, expected));
  rep.rigid = static_cast<long long>(rep.rank) == expected;
  rep.stress_dim = r.col_faces.size() - rep.rank;
  return rep;
}

bool verify_stress(const Polynomial& poly, int k, const SimplicialComplex& complex, const Embedding& p) {
  for (const auto& [m, c] : poly) {
    if (static_cast<int>(m.size()) != k || !complex.contains(support(m))) return false;
  }
  const ThetaForms t = theta(p);
  for (int i = 0; i <= p.d; ++i) {
    if (!directional_derivative(poly, t.form(i)).empty()) return false;
  }
  return true;
}

std::map<Face, Rational> squarefree_part(const Polynomial& poly, const SimplicialComplex& complex, int k) {
  std::map<Face, Rational> sf;
  if (k - 1 > complex.dim()) return sf;
  for (const auto& g : complex.faces(k - 1)) {
    auto it = poly.find(g);
    sf[g] = it == poly.end() ? Rational(0) : it->second;
  }
  return sf;
}

StressVector expand_squarefree(const StressVector& lambda, const SimplicialComplex& complex, const Embedding& p) {
  const int k = lambda.k;
  StressVector out = lambda;
  Polynomial known;
  for (const auto& [g, c] : lambda.sf) {
    if (static_cast<int>(g.size()) != k || !complex.contains(g)) {
      if (c != 0) throw Error(ErrorCode::ExpansionFailure, "squarefree coefficient on a non-face");
      continue;
    }
    add_term(known, g, c);
  }
  if (k == 1) {
    if (!verify_stress(known, 1, complex, p)) throw Error(ErrorCode::ExpansionFailure, "not an affine dependence");
    out.full = known;
    return out;
  }

  std::vector<Monomial> unknowns;
  for (auto& m : face_monomials(complex, k)) {
    if (!is_squarefree(m)) unknowns.push_back(std::move(m));
  }
  std::map<Monomial, std::size_t> unknown_index;
  for (std::size_t j = 0; j < unknowns.size(); ++j) unknown_index[unknowns[j]] = j;

  const ThetaForms t = theta(p);
  std::map<Vertex, std::size_t> col_of;
  for (std::size_t j = 0; j < t.vertices.size(); ++j) col_of[t.vertices[j]] = j;

  // Row (i, nu): coefficient of nu in d_{theta_i} lambda.
  std::map<std::pair<int, Monomial>, std::size_t> row_index;
  std::vector<std::map<std::size_t, Rational>> rows;
  Vec rhs;
  auto row_for = [&](int i, const Monomial& nu) -> std::size_t {
    auto [it, inserted] = row_index.try_emplace({i, nu}, rows.size());
    if (inserted) {
      rows.emplace_back();
      rhs.emplace_back(0);
    }
    return it->second;
  };
  auto contributions = [&](const Monomial& mu, auto&& emit) {
    for (Vertex v : support(mu)) {
      Monomial nu = mu;
      nu.erase(std::find(nu.begin(), nu.end(), v));
      const Rational e = exponent(mu, v);
      for (int i = 0; i <= p.d; ++i) {
        const Rational& th = t.rows[i][col_of.at(v)];
        if (th != 0) emit(row_for(i, nu), th * e);
      }
    }
  };
  for (const auto& mu : unknowns) {
    const std::size_t j = unknown_index.at(mu);
    contributions(mu, [&](std::size_t r, const Rational& w) { rows[r][j] += w; });
  }
  for (const auto& [mu, c] : known) {
    contributions(mu, [&](std::size_t r, const Rational& w) { rhs[r] -= w * c; });
  }

  RatMatrix a(rows.size(), unknowns.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [j, w] : rows[r]) a(r, j) = w;
  }
  if (rank(a) != unknowns.size()) throw Error(ErrorCode::ExpansionFailure, "non-squarefree part is not unique");
  const auto sol = solve_linear(a, rhs);
  if (!sol) throw Error(ErrorCode::ExpansionFailure, "squarefree part is not balanced");

  Polynomial full = known;
  for (std::size_t j = 0; j < unknowns.size(); ++j) add_term(full, unknowns[j], (*sol)[j]);
  if (!verify_stress(full, k, complex, p)) throw Error(ErrorCode::ExpansionFailure, "expanded polynomial is not a stress");
  out.full = std::move(full);
  return out;
}

StressVector cone_lift(const StressVector& lambda, const SimplicialComplex& delta, const std::map<Vertex, Rational>& heights,
                       Vertex apex) {
  if (!lambda.full) throw Error(ErrorCode::InvalidArgument, "cone lift needs the full stress polynomial");
  for (Vertex v : delta.vertices()) {
    auto it = heights.find(v);
    if (it == heights.end() || it->second == 0) {
      throw Error(ErrorCode::InvalidArgument, "missing or zero height at vertex " + std::to_string(v));
    }
  }
  const int k = lambda.k;

  Polynomial level;  // omega_0(x) = omega'(x_i / a_i)
  for (const auto& [m, c] : *lambda.full) {
    Rational w = c;
    for (Vertex v : m) w /= heights.at(v);
    add_term(level, m, w);
  }
  LinearForm ones;
  for (Vertex v : delta.vertices()) ones[v] = 1;

  Polynomial omega;
  for (int j = 0; j <= k; ++j) {
    for (const auto& [m, c] : level) {
      Monomial lifted = m;
      lifted.insert(lifted.end(), static_cast<std::size_t>(j), apex);
      std::sort(lifted.begin(), lifted.end());
      add_term(omega, lifted, c);
    }
    if (j < k) level = scaled(directional_derivative(level, ones), Rational(-1, j + 1));
  }

  const SimplicialComplex gamma = cone(apex, delta);
  StressVector out;
  out.k = k;
  out.sf = squarefree_part(omega, gamma, k);
  out.full = std::move(omega);
  return out;
}

StressVector power_stress(const LinearForm& phi, int k, const SimplicialComplex& complex, const Embedding& p) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "stress degree must be positive");
  Face supp;
  for (const auto& [v, c] : phi) {
    if (c != 0) supp.push_back(v);
  }
  for (int i = 0; i <= p.d; ++i) {
    Rational s = 0;
    for (const auto& [v, c] : phi) s += c * (i < p.d ? p.at(v)[i] : Rational(1));
    if (s != 0) throw Error(ErrorCode::InvalidArgument, "linear form is not an affine dependence");
  }
  const int size = std::min<int>(k, static_cast<int>(supp.size()));
  for (const auto& s : subsets_of_size(supp, size)) {
    if (!complex.contains(s)) throw Error(ErrorCode::NotNeighborlyEnough, "power of the dependence leaves the complex");
  }
  Polynomial lambda = power(from_linear_form(phi), k);
  StressVector out;
  out.k = k;
  out.sf = squarefree_part(lambda, complex, k);
  out.full = std::move(lambda);
  return out;
}

}  // namespace kstress
