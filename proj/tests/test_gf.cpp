#include <set>
#include <vector>

#include "cmap/gf.hpp"
#include "cmap/kernels.hpp"
#include "doctest.h"

using namespace cmap;

TEST_SUITE("gf") {

TEST_CASE("prime field matches integer arithmetic mod p") {
  Field f(7, 1);
  CHECK(f.q() == 7u);
  CHECK(f.p() == 7u);
  CHECK(f.r() == 1u);
  CHECK(f.kind() == FieldKind::Prime);
  for (Elem a = 0; a < 7; ++a) {
    for (Elem b = 0; b < 7; ++b) {
      CHECK(f.add(a, b) == (a + b) % 7);
      CHECK(f.mul(a, b) == (a * b) % 7);
      CHECK(f.sub(a, b) == (a + 7 - b) % 7);
    }
    CHECK(f.add(a, f.neg(a)) == 0u);
    if (a) CHECK(f.mul(a, f.inv_pow(a)) == 1u);
  }
  CHECK(f.inv_pow(0) == 0u);
  CHECK(f.pow(3, 6) == 1u);
  CHECK(f.pow(0, 0) == 1u);
  CHECK(f.pow(0, 5) == 0u);
  for (Elem a = 1; a < 7; ++a) CHECK(f.pow(a, 5) == f.inv_pow(a));
}

TEST_CASE("GF(8) with the classic modulus") {
  Field f = Field::parse("8:1,1,0,1");
  CHECK(f.q() == 8u);
  CHECK(f.kind() == FieldKind::CharTwo);
  CHECK(f.spec_string() == "2^3:1,1,0,1");
  CHECK(f.generator() == 2u);
  // g = x (index 2): g^3 = g + 1, g^{-1} = g^2 + 1, g^{-3} = g^2 + g.
  CHECK(f.pow(2, 3) == 3u);
  CHECK(f.inv_pow(2) == 5u);
  CHECK(f.mul(2, 5) == 1u);
  CHECK(f.inv_pow(f.pow(2, 3)) == 6u);
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) CHECK(f.add(a, b) == (a ^ b));
  int tr0 = 0;
  for (Elem a = 0; a < 8; ++a) {
    Elem t = f.abs_trace(a);
    CHECK(t <= 1u);
    tr0 += t == 0;
  }
  CHECK(tr0 == 4);
  CHECK_THROWS_AS(f.quad_char(3), std::domain_error);
}

TEST_CASE("GF(9) default modulus is x^2+1") {
  Field f = Field::parse("9");
  CHECK(f.spec_string() == "3^2:1,0,1");
  CHECK(f.kind() == FieldKind::OddExtension);
  // g = x (index 3) satisfies g^2 = -1 = 2.
  CHECK(f.mul(3, 3) == 2u);
  int squares = 0;
  for (Elem a = 1; a < 9; ++a) {
    squares += f.quad_char(a) == 1;
    for (Elem b = 1; b < 9; ++b)
      CHECK(f.quad_char(f.mul(a, b)) == f.quad_char(a) * f.quad_char(b));
  }
  CHECK(squares == 4);
  CHECK(f.quad_char(0) == 0);
  CHECK(f.to_string(4, true) == "g+1");
  CHECK(f.to_string(6, true) == "2g");
  CHECK(f.to_string(2, true) == "2");
  CHECK(f.to_string(6, false) == "6");
  int trace_hits[3] = {0, 0, 0};
  for (Elem a = 0; a < 9; ++a) {
    Elem t = f.abs_trace(a);
    REQUIRE(t < 3u);
    ++trace_hits[t];
  }
  CHECK(trace_hits[0] == 3);
  CHECK(trace_hits[1] == 3);
  CHECK(trace_hits[2] == 3);
}

TEST_CASE("parse grammar and validation") {
  CHECK(Field::parse("3^2").q() == 9u);
  CHECK(Field::parse("27").spec_string() == Field(3, 3).spec_string());
  CHECK(Field::parse("2^16").q() == 65536u);
  CHECK_THROWS_AS(Field::parse("6"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse("12"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse("2"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse("4^2"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Field::parse("9:2,0,1"), std::invalid_argument);  // reducible
  CHECK_THROWS_AS(Field::parse("9:1,0,2"), std::invalid_argument);  // not monic
  CHECK_THROWS_AS(Field::parse("9:1,1"), std::invalid_argument);  // wrong degree
  CHECK_THROWS_AS(Field::parse("9:1,4,1"), std::invalid_argument);  // digit >= p
  CHECK_THROWS_AS(Field::parse("2^17"), CapExceeded);
  // The worked GF(8) modulus differs from the default one.
  CHECK(Field::parse("8").spec_string() == "2^3:1,0,1,1");
}

TEST_CASE("small-field tables match the scalar operations") {
  for (std::uint32_t q : {3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    Field f = Field::parse(std::to_string(q));
    const kernels::SmallField* sf = f.small();
    REQUIRE(sf != nullptr);
    CHECK(sf->q == q);
    CHECK(sf->char2 == (f.p() == 2));
    for (Elem a = 0; a < q; ++a) {
      CHECK(sf->inv[a] == f.inv_pow(a));
      for (Elem b = 0; b < q; ++b) {
        CHECK(sf->add[a][b] == f.add(a, b));
        CHECK(sf->sub[a][b] == f.sub(a, b));
        CHECK(sf->mul[a][b] == f.mul(a, b));
        CHECK(sf->step[a][b] == f.inv_pow(f.add(b, a)));
      }
    }
  }
  CHECK(Field(17, 1).small() == nullptr);
  CHECK(Field::parse("25").small() == nullptr);
}

TEST_CASE("larger extensions: trace and multiplicative structure") {
  for (const char* spec : {"16", "25", "343"}) {
    Field f = Field::parse(spec);
    Elem g = f.generator();
    CHECK(f.pow(g, f.q() - 1) == 1u);
    // Primitive: g^{(q-1)/ell} != 1 for every prime ell | q-1.
    for (std::uint32_t ell = 2; ell < f.q(); ++ell)
      if ((f.q() - 1) % ell == 0 && ell > 1) {
        bool prime = true;
        for (std::uint32_t d = 2; d * d <= ell; ++d) prime = prime && ell % d;
        if (prime) CHECK(f.pow(g, (f.q() - 1) / ell) != 1u);
      }
    std::vector<int> hits(f.p(), 0);
    for (Elem a = 0; a < f.q(); ++a) {
      Elem t = f.abs_trace(a);
      REQUIRE(t < f.p());
      ++hits[t];
      CHECK(f.abs_trace(f.pow(a, f.p())) == t);  // Frobenius-invariant
      CHECK(f.add(a, f.neg(a)) == 0u);
      if (a) CHECK(f.mul(a, f.inv_pow(a)) == 1u);
    }
    for (std::uint32_t v = 0; v < f.p(); ++v)
      CHECK(hits[v] == static_cast<int>(f.q() / f.p()));
    // Trace is additive.
    for (Elem a = 0; a < std::min<Elem>(f.q(), 40); ++a)
      for (Elem b = 0; b < std::min<Elem>(f.q(), 40); ++b)
        CHECK(f.abs_trace(f.add(a, b)) ==
              (f.abs_trace(a) + f.abs_trace(b)) % f.p());
  }
}

TEST_CASE("the largest supported field is usable") {
  Field f = Field::parse("2^16");
  Elem g = f.generator();
  CHECK(f.mul(g, f.inv_pow(g)) == 1u);
  CHECK(f.pow(g, f.q() - 1) == 1u);
  CHECK(f.pow(g, (f.q() - 1) / 257) != 1u);  // 257 | 2^16 - 1
  CHECK(f.add(12345, 54321) == (12345u ^ 54321u));
}

}  // TEST_SUITE("gf")
