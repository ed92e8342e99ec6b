#include "kstress/polynomial.hpp"

#include <algorithm>
#include <set>

namespace kstress {

Face support(const Monomial& m) {
  Face f = m;
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

bool is_squarefree(const Monomial& m) { return std::adjacent_find(m.begin(), m.end()) == m.end(); }

int exponent(const Monomial& m, Vertex v) { return static_cast<int>(std::count(m.begin(), m.end(), v)); }

void add_term(Polynomial& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      add_term(out, m, ca * cb);
    }
  }
  return out;
}

Polynomial power(const Polynomial& a, int k) {
  Polynomial out{{Monomial{}, Rational(1)}};
  for (int i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

Polynomial scaled(const Polynomial& a, const Rational& s) {
  Polynomial out;
  if (s == 0) return out;
  for (const auto& [m, c] : a) out.emplace(m, c * s);
  return out;
}

Polynomial sum(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b) add_term(out, m, c);
  return out;
}

Polynomial from_linear_form(const LinearForm& l) {
  Polynomial out;
  for (const auto& [v, c] : l) add_term(out, {v}, c);
  return out;
}

Polynomial derivative(const Polynomial& p, Vertex v) {
  Polynomial out;
  for (const auto& [m, c] : p) {
    auto it = std::find(m.begin(), m.end(), v);
    if (it == m.end()) continue;
    const int e = exponent(m, v);
    Monomial reduced = m;
    reduced.erase(reduced.begin() + (it - m.begin()));
    add_term(out, reduced, c * e);
  }
  return out;
}

Polynomial directional_derivative(const Polynomial& p, const LinearForm& l) {
  Polynomial out;
  for (const auto& [v, coeff] : l) {
    if (coeff == 0) continue;
    for (const auto& [m, c] : derivative(p, v)) add_term(out, m, c * coeff);
  }
  return out;
}

namespace {

void compositions(const Face& s, std::size_t pos, int remaining, Monomial& cur, std::set<Monomial>& out) {
  if (pos + 1 == s.size()) {
    Monomial m = cur;
    m.insert(m.end(), static_cast<std::size_t>(remaining), s[pos]);
    std::sort(m.begin(), m.end());
    out.insert(std::move(m));
    return;
  }
  const int slots_left = static_cast<int>(s.size() - pos - 1);
  for (int e = 1; e <= remaining - slots_left; ++e) {
    cur.insert(cur.end(), static_cast<std::size_t>(e), s[pos]);
    compositions(s, pos + 1, remaining - e, cur, out);
    cur.resize(cur.size() - static_cast<std::size_t>(e));
  }
}

}  // namespace

std::vector<Monomial> face_monomials(const SimplicialComplex& complex, int degree) {
  std::set<Monomial> out;
  if (degree == 0) return {Monomial{}};
  for (int size = 1; size <= degree && size - 1 <= complex.dim(); ++size) {
    for (const auto& f : complex.faces(size - 1)) {
      Monomial cur;
      compositions(f, 0, degree, cur, out);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace kstress
