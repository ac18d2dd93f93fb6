#include <algorithm>
#include <set>
#include <vector>

#include "cmap/analysis.hpp"
#include "cmap/carlitz.hpp"
#include "cmap/gf.hpp"
#include "cmap/permpoly.hpp"
#include "cmap/rng.hpp"
#include "doctest.h"

using namespace cmap;

namespace {

ValueTable random_perm(const Field& f, SplitMix64& rng) {
  ValueTable t{f.q(), std::vector<Elem>(f.q())};
  for (Elem i = 0; i < f.q(); ++i) t.v[i] = i;
  for (std::uint32_t i = f.q(); i-- > 1;)
    std::swap(t.v[i], t.v[rng.bounded(i + 1)]);
  return t;
}

bool table_complete(const Field& f, const ValueTable& t) {
  return is_permutation(t) && is_permutation(add_identity(f, t));
}

void check_same_thm1(const Thm1Report& a, const Thm1Report& b) {
  CHECK(a.q == b.q);
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    CHECK(a.levels[i].reps == b.levels[i].reps);
    CHECK(a.levels[i].distinct_tables == b.levels[i].distinct_tables);
    CHECK(a.levels[i].complete == b.levels[i].complete);
    CHECK(a.levels[i].below_bound == b.levels[i].below_bound);
    CHECK(a.levels[i].min_complete_linearity ==
          b.levels[i].min_complete_linearity);
  }
  CHECK(a.violations == b.violations);
  CHECK(a.affine_exceptions == b.affine_exceptions);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    CHECK(a.witnesses[i].n == b.witnesses[i].n);
    CHECK(a.witnesses[i].coeffs == b.witnesses[i].coeffs);
  }
}

void check_same_search(const SearchReport& a, const SearchReport& b) {
  CHECK(a.reps_scanned == b.reps_scanned);
  CHECK(a.complete_hits == b.complete_hits);
  CHECK(a.qualifying_tables == b.qualifying_tables);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    CHECK(a.witnesses[i].rep.c == b.witnesses[i].rep.c);
    CHECK(a.witnesses[i].linearity == b.witnesses[i].linearity);
    CHECK(a.witnesses[i].rank == b.witnesses[i].rank);
    CHECK(a.witnesses[i].cert == b.witnesses[i].cert);
  }
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("completeness reports") {
  Field f7(7, 1);
  ValueTable t7{7, {1, 3, 5, 2, 6, 4, 0}};
  CompletenessReport r = is_complete(f7, t7, /*with_rank=*/true);
  CHECK(r.is_perm);
  CHECK(r.is_complete);
  CHECK(r.linearity == 4);
  CHECK(r.v_f_plus_x == 7);
  REQUIRE(r.crk.has_value());
  CHECK(!r.crk->exceeded);
  CHECK(r.crk->rank == 3);

  // Identity: complete in odd characteristic, not in characteristic 2.
  ValueTable id7{7, {0, 1, 2, 3, 4, 5, 6}};
  CHECK(is_complete(f7, id7).is_complete);
  Field f4 = Field::parse("4");
  ValueTable id4{4, {0, 1, 2, 3}};
  CompletenessReport r4 = is_complete(f4, id4, true);
  CHECK(r4.is_perm);
  CHECK(!r4.is_complete);
  CHECK(r4.v_f_plus_x == 1);
  CHECK(r4.crk->rank == 0);

  // Rank request deeper than floor(q/2) on a rank-3 table, capped at 2.
  CompletenessReport shallow = is_complete(f7, t7, true, 2);
  CHECK(shallow.crk->exceeded);
  CHECK(shallow.crk->rank == 2);

  // Non-permutation: no rank.
  CompletenessReport np = is_complete(f7, ValueTable{7, {0, 0, 1, 2, 3, 4, 5}},
                                      true);
  CHECK(!np.is_perm);
  CHECK(!np.crk.has_value());
}

TEST_CASE("completeness, linearity, and value set are shift/tail invariant") {
  for (const char* spec : {"5", "7", "8:1,1,0,1", "9"}) {
    Field f = Field::parse(spec);
    SplitMix64 rng(71);
    for (int iter = 0; iter < 60; ++iter) {
      ValueTable t = random_perm(f, rng);
      Elem s = static_cast<Elem>(rng.bounded(f.q()));
      Elem v = static_cast<Elem>(rng.bounded(f.q()));
      ValueTable u{f.q(), std::vector<Elem>(f.q())};
      for (Elem x = 0; x < f.q(); ++x) u.v[x] = f.sub(t.v[f.add(x, s)], v);
      CHECK(table_complete(f, t) == table_complete(f, u));
      CHECK(linearity(f, t) == linearity(f, u));
      CHECK(value_set_size(add_identity(f, t)) ==
            value_set_size(add_identity(f, u)));
    }
  }
}

TEST_CASE("monomial family") {
  Field f9 = Field::parse("9");
  MannReport m = mann_sweep(f9);
  CHECK(m.agree);
  CHECK(m.complete_a == std::vector<Elem>{4, 5, 7, 8});
  for (Elem a : m.complete_a) CHECK(f9.pow(a, 4) != 1u);

  for (const char* spec : {"25", "27", "4", "49"}) {
    Field f = Field::parse(spec);
    CHECK(mann_sweep(f).agree);
  }
  // GF(4): a x^2 is never complete (a^3 = 1 for every nonzero a).
  CHECK(mann_sweep(Field::parse("4")).complete_a.empty());
  CHECK_THROWS_AS(mann_check(f9, 0), std::invalid_argument);
}

TEST_CASE("low-rank exhaustion: structure and degenerate q = 3") {
  Field f3(3, 1);
  Thm1Report r3 = theorem1_verify(f3);
  CHECK(r3.ok());
  CHECK(r3.violations == 0);
  CHECK(r3.affine_exceptions == 1);  // the identity map, complete with L = 3
  REQUIRE(r3.levels.size() == 1);    // rank bound floor(3/2) = 1: level 0 only
  CHECK(r3.levels[0].reps == 2);
  CHECK(r3.levels[0].distinct_tables == 2);
  REQUIRE(r3.witnesses.size() == 1);
  CHECK(r3.witnesses[0].coeffs == std::vector<Elem>{1});

  Field f7(7, 1);
  Thm1Report r7 = theorem1_verify(f7);
  CHECK(r7.ok());
  CHECK(r7.affine_exceptions == 0);
  REQUIRE(r7.levels.size() == 3);
  CHECK(r7.levels[0].reps == 6);
  CHECK(r7.levels[1].reps == 6);
  CHECK(r7.levels[2].reps == 36);
  CHECK(r7.levels[0].distinct_tables == 6);
  CHECK(r7.levels[1].distinct_tables == 6);
  // No complete map of rank < 3 over GF(7) beats the linearity bound.
  for (const auto& lvl : r7.levels)
    if (lvl.n >= 1 && lvl.min_complete_linearity >= 0)
      CHECK(lvl.min_complete_linearity >= r7.lin_bound);

  CHECK_THROWS_AS(theorem1_verify(Field::parse("16")), CapExceeded);
}

TEST_CASE("low-rank exhaustion is jobs-invariant") {
  for (const char* spec : {"5", "8:1,1,0,1", "9"}) {
    Field f = Field::parse(spec);
    check_same_thm1(theorem1_verify(f, 1), theorem1_verify(f, 3));
  }
}

TEST_CASE("censuses") {
  Field f7(7, 1);
  CensusResult odd_n = discriminant_census(f7, 1, 1, /*n_even=*/false);
  CHECK(odd_n.count == 2);
  CHECK(odd_n.expected == 2);
  CensusResult even_n = discriminant_census(f7, 1, 1, /*n_even=*/true);
  CHECK(even_n.count == 3);
  CHECK(even_n.expected == 3);

  for (const char* spec : {"3", "5", "7", "9", "11"}) {
    CensusSweep s = discriminant_census_sweep(Field::parse(spec));
    CHECK(s.ok());
    CHECK(s.cases == 2ull * (Field::parse(spec).q() - 1) *
                         (Field::parse(spec).q() - 1));
  }
  for (const char* spec : {"4", "8:1,1,0,1", "16"}) {
    Field f = Field::parse(spec);
    CensusSweep s = trace_census_sweep(f);
    CHECK(s.ok());
    for (const auto& row : s.rows) CHECK(row.expected == f.q() / 2 - 1);
  }
  CHECK_THROWS_AS(discriminant_census(Field::parse("8"), 1, 1, false),
                  std::domain_error);
  CHECK_THROWS_AS(trace_census(f7, 1, 1), std::domain_error);
  CHECK_THROWS_AS(discriminant_census(f7, 0, 1, false), std::invalid_argument);
}

TEST_CASE("value-set bounds") {
  Field f7(7, 1);
  NormalizedRep one = make_normalized(f7, {1});
  BoundsReport b = theorem2_bounds(f7, one);
  CHECK(b.n == 1);
  CHECK(b.lower == 3);
  CHECK(b.upper == 5);
  CHECK(b.actual == 5);
  CHECK(b.agreements >= 6);
  CHECK(b.preconditions);
  CHECK(b.ok);

  // Degenerate convergent: alpha_n = 0 fails the preconditions.
  Field f5(5, 1);
  BoundsReport deg = theorem2_bounds(f5, make_normalized(f5, {1, 2, 2}));
  CHECK(!deg.preconditions);
  CHECK(!deg.ok);

  for (const char* spec : {"5", "7", "8:1,1,0,1", "9"}) {
    BoundsSweep s = bounds_sweep_exhaustive(Field::parse(spec), 3);
    CHECK(s.ok());
    CHECK(s.cases > 0);
  }
  BoundsSweep s5 = bounds_sweep_exhaustive(f5, 3);
  CHECK(s5.skipped > 0);  // the {1,2,2}-style degenerate chains

  for (const char* spec : {"7", "11", "13", "16"}) {
    BoundsSweep s = bounds_sweep_random(Field::parse(spec), 2000, 9);
    CHECK(s.ok());
    CHECK(s.cases + s.skipped == 2000);
  }

  CHECK_THROWS_AS(theorem2_bounds(f7, final_convergent(f7, one),
                                  ValueTable{7, std::vector<Elem>(7)}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem2_bounds(f7, final_convergent(f7, one),
                                  ValueTable{7, std::vector<Elem>(7)}, 7),
                  std::invalid_argument);
}

TEST_CASE("exact value-set sizes for n = 1") {
  Field f7(7, 1);
  CHECK(prop1_predict(f7, 1) == 5);
  CHECK(prop1_actual(f7, 1) == 5);
  CHECK(prop1_predict(f7, 3) == 3);
  CHECK(prop1_actual(f7, 3) == 3);
  for (const char* spec : {"3", "5", "7", "9", "25", "27", "4", "8:1,1,0,1",
                           "16"}) {
    PropSweep s = prop1_sweep(Field::parse(spec));
    CHECK(s.prop == 1);
    CHECK(s.ok());
    CHECK(s.cases == Field::parse(spec).q() - 1);
  }
  CHECK_THROWS_AS(prop1_predict(f7, 0), std::invalid_argument);
}

TEST_CASE("exact value-set sizes for n = 2") {
  Field f7(7, 1);
  CHECK(prop2_predict(f7, 1, 1) == 5);
  CHECK(prop2_actual(f7, 1, 1) == 5);
  CHECK(prop2_predict(f7, 6, 1) == 3);  // c_0 = -1 special case
  CHECK(prop2_actual(f7, 6, 1) == 3);
  Field f4 = Field::parse("4");
  CHECK(prop2_predict(f4, 1, 1) == 1);  // c_0 = 1 special case, q even
  CHECK(prop2_actual(f4, 1, 1) == 1);

  // Hypothesis violations: 4c_0 + 1 = 0 at c_0 = 5, c_0 + 4 = 0 at c_0 = 3.
  CHECK_THROWS_AS(prop2_predict(f7, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(prop2_predict(f7, 3, 1), std::invalid_argument);
  PropSweep s7 = prop2_sweep(f7);
  CHECK(s7.ok());
  CHECK(s7.hypothesis_skips == 12);
  CHECK(s7.cases == 24);
  // Every skipped pair still carries its brute-force value.
  for (const auto& row : s7.rows)
    if (!row.predicted) CHECK(row.actual == prop2_actual(f7, row.c0, row.c1));

  // In characteristic 3 the two hypotheses coincide at c_0 = -1.
  Field f9 = Field::parse("9");
  PropSweep s9 = prop2_sweep(f9);
  CHECK(s9.ok());
  CHECK(s9.hypothesis_skips == 8);
  CHECK(s9.cases == 56);

  for (const char* spec : {"5", "11", "13", "4", "8:1,1,0,1", "16"}) {
    CHECK(prop2_sweep(Field::parse(spec)).ok());
  }
}

TEST_CASE("extremal search, exhaustive") {
  Field f7(7, 1);
  SearchReport rep = search_complete(f7, 3, linearity_bound(7), {});
  CHECK(rep.exhaustive);
  CHECK(rep.reps_scanned == 216);
  CHECK(rep.found());
  REQUIRE(!rep.witnesses.empty());
  for (const auto& w : rep.witnesses) {
    CHECK(w.rank == 3);
    CHECK(w.cert == RankCert::Bfs);
    CHECK(w.linearity < linearity_bound(7));
    ValueTable t = rep_table(f7, w.rep);
    CHECK(table_complete(f7, t));
    CHECK(linearity(f7, t) == w.linearity);
  }
  // Witness reps arrive in lexicographic scan order.
  for (std::size_t i = 1; i < rep.witnesses.size(); ++i)
    CHECK(rep.witnesses[i - 1].rep.c < rep.witnesses[i].rep.c);

  // A cap of 2 is unsatisfiable: every map agrees with some affine map twice.
  SearchReport none = search_complete(Field::parse("5"), 1, 2, {});
  CHECK(!none.found());
  CHECK(none.qualifying_tables == 0);

  SearchOptions j3;
  j3.jobs = 3;
  check_same_search(rep, search_complete(f7, 3, linearity_bound(7), j3));

  CHECK_THROWS_AS(search_complete(Field::parse("16"), 4, 8, {}), CapExceeded);
  CHECK_THROWS_AS(search_complete(f7, 0, 4, {}), std::invalid_argument);
}

TEST_CASE("extremal search, sampled") {
  Field f9 = Field::parse("9");
  SearchOptions opt;
  opt.sample = 400;
  opt.seed = 7;
  SearchReport rep = search_complete(f9, 4, linearity_bound(9), opt);
  CHECK(!rep.exhaustive);
  CHECK(rep.reps_scanned == 400);
  for (const auto& w : rep.witnesses) {
    CHECK(w.cert == RankCert::Bfs);  // q <= 16 still certifies by search
    CHECK(w.rank <= 4);
    CHECK(table_complete(f9, rep_table(f9, w.rep)));
  }
  SearchOptions opt4 = opt;
  opt4.jobs = 4;
  check_same_search(rep, search_complete(f9, 4, linearity_bound(9), opt4));

  // Beyond the kernel range the searcher cannot certify: theorem or bound.
  // This sample size is known to land one complete table under the cap, so
  // the witness checks below are not vacuous.
  Field f17 = Field::parse("17");
  SearchOptions big;
  big.sample = 200000;
  big.seed = 1;
  SearchReport r17 = search_complete(f17, rank_bound(17), linearity_bound(17),
                                     big);
  CHECK(r17.reps_scanned == 200000);
  CHECK(r17.found());
  REQUIRE(!r17.witnesses.empty());
  for (const auto& w : r17.witnesses) {
    CHECK((w.cert == RankCert::Theorem || w.cert == RankCert::UpperBound));
    ValueTable t = rep_table(f17, w.rep);
    CHECK(table_complete(f17, t));
    CHECK(linearity(f17, t) == w.linearity);
    CHECK(w.linearity < linearity_bound(17));
    if (w.cert == RankCert::Theorem) CHECK(w.rank == rank_bound(17));
  }
  // Qualifying at the rank floor with room under the linearity bound makes
  // the strongest certificate available out there.
  CHECK(r17.witnesses.front().cert == RankCert::Theorem);
  SearchOptions big4 = big;
  big4.jobs = 4;
  check_same_search(r17, search_complete(f17, rank_bound(17),
                                         linearity_bound(17), big4));

  // An unlucky sample is an honest miss, not an error.
  Field f25 = Field::parse("25");
  SearchOptions miss;
  miss.sample = 400;
  miss.seed = 3;
  SearchReport r25 = search_complete(f25, rank_bound(25), linearity_bound(25),
                                     miss);
  CHECK(r25.reps_scanned == 400);
  CHECK(!r25.found());
  CHECK(r25.witnesses.empty());
  SearchOptions miss4 = miss;
  miss4.jobs = 4;
  check_same_search(r25, search_complete(f25, rank_bound(25),
                                         linearity_bound(25), miss4));
}

TEST_CASE("cert names are stable strings") {
  CHECK(std::string(rank_cert_name(RankCert::Bfs)) == "bfs");
  CHECK(std::string(rank_cert_name(RankCert::Theorem)) == "theorem");
  CHECK(std::string(rank_cert_name(RankCert::UpperBound)) == "upper-bound");
}

}  // TEST_SUITE("analysis")
