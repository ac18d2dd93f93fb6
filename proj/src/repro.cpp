#include "cmap/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "cmap/analysis.hpp"
#include "cmap/carlitz.hpp"
#include "cmap/gf.hpp"
#include "cmap/permpoly.hpp"
#include "cmap/rng.hpp"

namespace cmap::repro {
namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok) { pass = pass && ok; }
};

// Shared worked example: table of `poly` over f is complete, has the given
// exact rank, linearity <= lin_cap, and equals the chain table of `chain`.
void worked_example(Outcome& out, const Field& f, const std::vector<Elem>& poly,
                    const std::vector<Elem>& chain, int rank, int lin_cap) {
  ValueTable t = to_table(f, make_poly(f, poly));
  CompletenessReport rep = is_complete(f, t, /*with_rank=*/true, rank);
  out.require(rep.is_complete);
  out.require(!rep.crk->exceeded && rep.crk->rank == rank);
  out.require(rep.linearity <= lin_cap);
  ValueTable via_rep = rep_table(f, make_normalized(f, chain));
  std::size_t match = 0;
  for (Elem c = 0; c < f.q(); ++c) match += via_rep.v[c] == t.v[c];
  out.require(match == f.q());
  out.detail << "GF(" << f.q() << "): complete=" << rep.is_complete
             << " crk=" << rep.crk->rank << " L=" << rep.linearity
             << " rep matches " << match << "/" << f.q() << " points";
}

Outcome c1() {
  Outcome out;
  Field f = Field::parse("8:1,1,0,1");
  Elem g = f.generator();                       // gamma, root of the modulus
  Elem gi = f.inv_pow(g);                       // gamma^{-1}
  Elem gm3 = f.inv_pow(f.mul(g, f.mul(g, g)));  // gamma^{-3}
  worked_example(out, f, {g, gi, gi, 0, g}, {g, 1, gm3, 1}, 4, 4);
  return out;
}

Outcome c2() {
  Outcome out;
  Field f(7, 1);
  worked_example(out, f, {1, 6, 3, 6, 1}, {1, 3, 3}, 3, 4);
  return out;
}

Outcome c3() {
  Outcome out;
  std::uint64_t tables = 0, violations = 0;
  for (std::uint32_t q : {3, 4, 5, 7, 8, 9, 11, 13}) {
    Field f = Field::parse(std::to_string(q));
    Thm1Report rep = theorem1_verify(f, /*jobs=*/1);  // single-threaded budget
    violations += rep.violations;
    for (const auto& lvl : rep.levels) tables += lvl.distinct_tables;
    out.require(rep.ok());
    if (q == 3) {
      out.require(rep.affine_exceptions == 1);
      out.detail << "q=3 affine exceptions=" << rep.affine_exceptions << "; ";
    }
  }
  out.detail << "8 fields, " << tables << " distinct low-rank tables, "
             << violations << " violations";
  return out;
}

Outcome c4() {
  Outcome out;
  std::uint64_t cases = 0;
  for (std::uint32_t q :
       {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 4, 8, 16}) {
    PropSweep s = prop1_sweep(Field::parse(std::to_string(q)));
    cases += s.cases;
    out.require(s.ok());
  }
  out.detail << "16 fields, " << cases << " cases, predicted == brute force";
  return out;
}

Outcome c5() {
  Outcome out;
  std::uint64_t cases = 0, skips = 0, special = 0;
  for (std::uint32_t q : {5, 7, 9, 11, 13, 4, 8, 16}) {
    Field f = Field::parse(std::to_string(q));
    PropSweep s = prop2_sweep(f);
    cases += s.cases;
    skips += s.hypothesis_skips;
    out.require(s.ok());
    Elem sp = f.p() == 2 ? Elem(1) : f.neg(1);  // the special-cased c_0
    for (const auto& row : s.rows)
      if (row.c0 == sp && row.predicted) {
        ++special;
        out.require(*row.predicted == static_cast<int>(row.actual));
      }
  }
  out.require(special > 0);
  out.detail << "8 fields, " << cases << " admissible pairs (" << skips
             << " hypothesis skips), " << special << " special-case rows";
  return out;
}

Outcome c6() {
  Outcome out;
  std::uint64_t cases = 0, skipped = 0, violations = 0;
  for (std::uint32_t q : {3, 4, 5, 7, 8, 9}) {
    BoundsSweep s = bounds_sweep_exhaustive(Field::parse(std::to_string(q)), 3);
    cases += s.cases;
    skipped += s.skipped;
    violations += s.violations;
    out.require(s.ok());
  }
  std::uint64_t rcases = 0;
  for (std::uint32_t q : {3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    BoundsSweep s =
        bounds_sweep_random(Field::parse(std::to_string(q)), 10000, 1);
    rcases += s.cases;
    violations += s.violations;
    out.require(s.ok());
  }
  out.detail << cases << " exhaustive (" << skipped << " degenerate skipped) + "
             << rcases << " random cases, " << violations << " violations";
  return out;
}

Outcome c7() {
  Outcome out;
  std::uint64_t cases = 0;
  for (std::uint32_t q : {3, 5, 7, 9, 11, 13}) {
    CensusSweep s = discriminant_census_sweep(Field::parse(std::to_string(q)));
    cases += s.cases;
    out.require(s.ok());
  }
  for (std::uint32_t q : {4, 8, 16}) {
    CensusSweep s = trace_census_sweep(Field::parse(std::to_string(q)));
    cases += s.cases;
    out.require(s.ok());
  }
  out.detail << cases << " census cases, counts == closed form";
  return out;
}

Outcome c8() {
  Outcome out;
  Field f9(3, 2);
  MannReport m9 = mann_sweep(f9);
  std::vector<Elem> expect;
  for (Elem a = 1; a < 9; ++a)
    if (f9.pow(a, 4) != 1) expect.push_back(a);
  out.require(m9.agree && m9.complete_a == expect &&
              m9.complete_a.size() == 4);
  out.detail << "GF(9): " << m9.complete_a.size() << " complete a";
  for (std::uint32_t q : {25, 27}) {
    MannReport m = mann_sweep(Field::parse(std::to_string(q)));
    out.require(m.agree);
    out.detail << "; GF(" << q << "): " << m.complete_a.size()
               << " complete a, criterion agrees";
  }
  return out;
}

Outcome c9(int jobs) {
  Outcome out;
  for (std::uint32_t q : {7, 8, 9, 11, 13}) {
    Field f = Field::parse(std::to_string(q));
    SearchOptions opt;
    opt.jobs = jobs;
    SearchReport rep =
        search_complete(f, rank_bound(q), linearity_bound(q), opt);
    bool witness = false;
    for (const auto& w : rep.witnesses)
      witness = witness || (w.rank == rank_bound(q) &&
                            w.cert == RankCert::Bfs &&
                            w.linearity < linearity_bound(q));
    out.require(rep.found() && witness);
    out.detail << "q=" << q << ": " << rep.qualifying_tables << " tables; ";
  }
  out.detail << "each with a rank-floor(q/2) witness";
  return out;
}

Outcome c10() {
  Outcome out;
  std::uint64_t cases = 0, bad = 0;
  auto check = [&](const Field& f, const NormalizedRep& rep) {
    ++cases;
    if (!det_identity_check(f, rep) || !agreement_check(f, rep)) ++bad;
  };
  for (std::uint32_t q : {3, 4, 5, 7, 8}) {
    Field f = Field::parse(std::to_string(q));
    std::vector<Elem> c;
    auto rec = [&](auto&& self) -> void {
      if (c.size() == 3) return;
      for (Elem v = 1; v < q; ++v) {
        c.push_back(v);
        check(f, NormalizedRep{c});
        self(self);
        c.pop_back();
      }
    };
    rec(rec);
  }
  for (std::uint32_t q : {3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    Field f = Field::parse(std::to_string(q));
    SplitMix64 rng(1);
    int n_max = std::min<int>(8, q - 1);
    for (int i = 0; i < 1000; ++i) {
      std::vector<Elem> c(1 + rng.bounded(n_max));
      for (auto& v : c) v = 1 + static_cast<Elem>(rng.bounded(q - 1));
      check(f, NormalizedRep{std::move(c)});
    }
  }
  out.require(bad == 0);
  std::uint64_t rt = 0, rt_bad = 0;
  for (std::uint32_t q : {7, 8, 9, 25}) {
    Field f = Field::parse(std::to_string(q));
    SplitMix64 rng(1);
    for (int i = 0; i < 250; ++i) {
      ValueTable t{f.q(), std::vector<Elem>(f.q())};
      for (auto& v : t.v) v = static_cast<Elem>(rng.bounded(f.q()));
      ++rt;
      if (to_table(f, interpolate(f, t)).v != t.v) ++rt_bad;
    }
  }
  out.require(rt_bad == 0);
  out.detail << cases << " rep identities (" << bad << " failures), " << rt
             << " interpolation round-trips (" << rt_bad << " failures)";
  return out;
}

}  // namespace

CriterionResult run_criterion(int id, int jobs) {
  static const char* kNames[kNumCriteria] = {
      "example-gf8",     "example-gf7",       "lower-bound-exhaustive",
      "value-set-n1",    "value-set-n2",      "value-set-envelope",
      "proof-censuses",  "monomial-family",   "extremal-search",
      "machinery-invariants"};
  static const double kBudgets[kNumCriteria] = {1, 1, 600, 10, 30,
                                                60, 10, 5,  1800, 60};
  if (id < 1 || id > kNumCriteria)
    throw std::invalid_argument("criterion id out of range");
  CriterionResult res;
  res.id = id;
  res.name = kNames[id - 1];
  res.budget_seconds = kBudgets[id - 1];
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  switch (id) {
    case 1: out = c1(); break;
    case 2: out = c2(); break;
    case 3: out = c3(); break;
    case 4: out = c4(); break;
    case 5: out = c5(); break;
    case 6: out = c6(); break;
    case 7: out = c7(); break;
    case 8: out = c8(); break;
    case 9: out = c9(jobs); break;
    case 10: out = c10(); break;
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  res.detail = out.detail.str();
  res.pass = out.pass && res.seconds < res.budget_seconds;
  return res;
}

std::vector<CriterionResult> run_all(int jobs) {
  std::vector<CriterionResult> all;
  for (int id = 1; id <= kNumCriteria; ++id)
    all.push_back(run_criterion(id, jobs));
  return all;
}

}  // namespace cmap::repro
