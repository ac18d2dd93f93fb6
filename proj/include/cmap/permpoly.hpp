#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmap/gf.hpp"

namespace cmap {

// Polynomial over GF(q), coefficients ascending, trailing zeros trimmed.
// The zero polynomial has an empty coefficient vector.
struct Poly {
  std::uint32_t q = 0;
  std::vector<Elem> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// A function GF(q) -> GF(q) as its value table, v[c] = f(c).
struct ValueTable {
  std::uint32_t q = 0;
  std::vector<Elem> v;
};

Poly make_poly(const Field& f, std::vector<Elem> coeffs);  // validates + trims

Elem eval(const Field& f, const Poly& p, Elem c);
ValueTable to_table(const Field& f, const Poly& p);

// Unique interpolating polynomial of degree < q (Lagrange); exact inverse of
// to_table on reduced polynomials.
Poly interpolate(const Field& f, const ValueTable& t);

// Reduce modulo x^q - x: the canonical degree-< q representative of the same
// function.
Poly reduce(const Field& f, const Poly& p);

bool is_permutation(const ValueTable& t);
std::vector<Elem> value_set(const ValueTable& t);  // sorted, deduplicated
std::size_t value_set_size(const ValueTable& t);

// Table of c -> t(c) + c.
ValueTable add_identity(const Field& f, const ValueTable& t);

// L(t) = max over affine a*x+b of #{c : t(c) = a*c + b}.  O(q^2); refuses
// q > 4096.
int linearity(const Field& f, const ValueTable& t);

// "c0,c1,...,cd" ascending -> Poly.
Poly parse_poly(const Field& f, std::string_view s);
std::string poly_string(const Poly& p);  // same comma form

}  // namespace cmap
