#pragma once

#include <map>
#include <vector>

#include "kstress/rational.hpp"
#include "kstress/simplicial.hpp"

namespace kstress {

/// A monomial as the sorted multiset of its variables: x1^2 x3 is {1, 1, 3}.
using Monomial = std::vector<Vertex>;

/// Sparse polynomial; zero coefficients are never stored.
using Polynomial = std::map<Monomial, Rational>;

/// Linear form sum_v coeff_v x_v.
using LinearForm = std::map<Vertex, Rational>;

Face support(const Monomial& m);
bool is_squarefree(const Monomial& m);
int exponent(const Monomial& m, Vertex v);

void add_term(Polynomial& p, const Monomial& m, const Rational& c);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
Polynomial power(const Polynomial& a, int k);
Polynomial scaled(const Polynomial& a, const Rational& s);
Polynomial sum(const Polynomial& a, const Polynomial& b);
Polynomial from_linear_form(const LinearForm& l);

/// Partial derivative with respect to x_v.
Polynomial derivative(const Polynomial& p, Vertex v);

/// sum_v l_v * d/dx_v.
Polynomial directional_derivative(const Polynomial& p, const LinearForm& l);

/// All monomials of total degree k whose support is a face of `k_complex`.
std::vector<Monomial> face_monomials(const SimplicialComplex& complex, int degree);

}  // namespace kstress
