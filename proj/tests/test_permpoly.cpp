#include <algorithm>
#include <vector>

#include "cmap/gf.hpp"
#include "cmap/permpoly.hpp"
#include "cmap/rng.hpp"
#include "doctest.h"

using namespace cmap;

namespace {

ValueTable random_function(const Field& f, SplitMix64& rng) {
  ValueTable t{f.q(), std::vector<Elem>(f.q())};
  for (auto& v : t.v) v = static_cast<Elem>(rng.bounded(f.q()));
  return t;
}

Poly random_poly(const Field& f, SplitMix64& rng, int degree) {
  std::vector<Elem> c(degree + 1);
  for (auto& v : c) v = static_cast<Elem>(rng.bounded(f.q()));
  return make_poly(f, std::move(c));
}

}  // namespace

TEST_SUITE("permpoly") {

TEST_CASE("evaluation, tables, and the worked quartics") {
  Field f7(7, 1);
  ValueTable t = to_table(f7, parse_poly(f7, "1,6,3,6,1"));
  CHECK(t.v == std::vector<Elem>{1, 3, 5, 2, 6, 4, 0});

  Field f8 = Field::parse("8:1,1,0,1");
  ValueTable t8 = to_table(f8, parse_poly(f8, "2,5,5,0,2"));
  CHECK(t8.v == std::vector<Elem>{2, 0, 6, 4, 7, 5, 3, 1});

  // Horner agrees with a direct power sum.
  Field f9 = Field::parse("9");
  SplitMix64 rng(3);
  for (int iter = 0; iter < 50; ++iter) {
    Poly p = random_poly(f9, rng, 1 + static_cast<int>(rng.bounded(12)));
    Elem c = static_cast<Elem>(rng.bounded(9));
    Elem want = 0;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
      want = f9.add(want, f9.mul(p.coeffs[i], f9.pow(c, i)));
    CHECK(eval(f9, p, c) == want);
  }
}

TEST_CASE("reduction mod x^q - x preserves the function") {
  for (const char* spec : {"7", "9", "8:1,1,0,1"}) {
    Field f = Field::parse(spec);
    SplitMix64 rng(17);
    for (int iter = 0; iter < 40; ++iter) {
      Poly p = random_poly(f, rng, 1 + static_cast<int>(rng.bounded(3 * f.q())));
      Poly r = reduce(f, p);
      CHECK(r.degree() < static_cast<int>(f.q()));
      CHECK(to_table(f, r).v == to_table(f, p).v);
    }
    // x^q reduces to x.
    std::vector<Elem> xq(f.q() + 1, 0);
    xq[f.q()] = 1;
    CHECK(reduce(f, make_poly(f, xq)).coeffs == std::vector<Elem>{0, 1});
  }
}

TEST_CASE("interpolation round-trips") {
  for (const char* spec : {"7", "9", "8:1,1,0,1", "25"}) {
    Field f = Field::parse(spec);
    SplitMix64 rng(23);
    for (int iter = 0; iter < 50; ++iter) {
      ValueTable t = random_function(f, rng);
      Poly p = interpolate(f, t);
      CHECK(p.degree() < static_cast<int>(f.q()));
      CHECK(to_table(f, p).v == t.v);
    }
    for (int iter = 0; iter < 25; ++iter) {
      Poly p = random_poly(f, rng, static_cast<int>(rng.bounded(f.q())));
      CHECK(interpolate(f, to_table(f, p)).coeffs == p.coeffs);
    }
  }
  // The GF(8) worked table interpolates back to its quartic.
  Field f8 = Field::parse("8:1,1,0,1");
  ValueTable t{8, {2, 0, 6, 4, 7, 5, 3, 1}};
  CHECK(interpolate(f8, t).coeffs == std::vector<Elem>{2, 5, 5, 0, 2});
}

TEST_CASE("permutation predicates and value sets") {
  Field f(7, 1);
  ValueTable x5 = to_table(f, parse_poly(f, "0,0,0,0,0,1"));
  CHECK(x5.v == std::vector<Elem>{0, 1, 4, 5, 2, 3, 6});
  CHECK(is_permutation(x5));
  ValueTable x2 = to_table(f, parse_poly(f, "0,0,1"));
  CHECK(!is_permutation(x2));
  CHECK(!is_permutation(ValueTable{7, {0, 1, 2, 3, 4, 5, 9}}));
  ValueTable F = add_identity(f, x5);
  CHECK(value_set(F) == std::vector<Elem>{0, 1, 2, 5, 6});
  CHECK(value_set_size(F) == 5);
  CHECK(value_set_size(x5) == 7);
}

TEST_CASE("linearity") {
  Field f7(7, 1);
  CHECK(linearity(f7, to_table(f7, parse_poly(f7, "3,4"))) == 7);  // affine
  ValueTable x5 = to_table(f7, parse_poly(f7, "0,0,0,0,0,1"));
  CHECK(linearity(f7, x5) == 3);

  Field f8 = Field::parse("8:1,1,0,1");
  ValueTable t8{8, {2, 0, 6, 4, 7, 5, 3, 1}};
  CHECK(linearity(f8, t8) == 4);

  // Invariant under affine substitutions: L(a t(cx+d) + b) = L(t).
  Field f9 = Field::parse("9");
  SplitMix64 rng(31);
  for (int iter = 0; iter < 30; ++iter) {
    ValueTable t = random_function(f9, rng);
    int base = linearity(f9, t);
    Elem a = 1 + static_cast<Elem>(rng.bounded(8));
    Elem b = static_cast<Elem>(rng.bounded(9));
    Elem c = 1 + static_cast<Elem>(rng.bounded(8));
    Elem d = static_cast<Elem>(rng.bounded(9));
    ValueTable u{9, std::vector<Elem>(9)};
    for (Elem x = 0; x < 9; ++x)
      u.v[x] = f9.add(f9.mul(a, t.v[f9.add(f9.mul(c, x), d)]), b);
    CHECK(linearity(f9, u) == base);
  }

  CHECK_THROWS_AS(linearity(Field::parse("2^13"),
                            ValueTable{1u << 13, std::vector<Elem>(1u << 13)}),
                  CapExceeded);
}

TEST_CASE("parsing and printing") {
  Field f(7, 1);
  CHECK(poly_string(parse_poly(f, "0,0,1")) == "0,0,1");
  CHECK(poly_string(parse_poly(f, "3,4,0,0")) == "3,4");  // trailing trim
  CHECK(poly_string(parse_poly(f, "0")) == "0");
  CHECK_THROWS_AS(parse_poly(f, "1,7"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(f, "1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(f, "x"), std::invalid_argument);
}

}  // TEST_SUITE("permpoly")
