#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmap/carlitz.hpp"
#include "cmap/gf.hpp"
#include "cmap/permpoly.hpp"

namespace cmap {

// The two sides of the rank/linearity dichotomy for complete mappings.
inline int linearity_bound(std::uint32_t q) {
  return static_cast<int>((q + 5) / 2);
}
inline int rank_bound(std::uint32_t q) { return static_cast<int>(q / 2); }

struct CompletenessReport {
  bool is_perm = false;
  bool is_complete = false;  // t and t + x both permutations
  int linearity = 0;
  std::size_t v_f_plus_x = 0;
  std::optional<RankResult> crk;  // filled when with_rank
};
CompletenessReport is_complete(const Field& f, const ValueTable& t,
                               bool with_rank = false, int max_n = -1,
                               std::uint64_t node_budget =
                                   RankSearcher::kDefaultNodeBudget);

// ---- monomial family a x^p --------------------------------------------------

// Brute-force: is a x^p a complete mapping?
bool mann_check(const Field& f, Elem a);
// Closed-form criterion: a^{(q-1)/(p-1)} != (-1)^r.
bool mann_criterion(const Field& f, Elem a);

struct MannReport {
  std::vector<Elem> complete_a;   // brute force, ascending
  std::vector<Elem> criterion_a;  // predicted, ascending
  bool agree = false;
};
MannReport mann_sweep(const Field& f);

// ---- exhaustive lower-bound verification ------------------------------------

struct Thm1Violation {
  int n = 0;
  std::vector<Elem> coeffs;  // normalized chain (n >= 1) or {a_0} scale (n = 0)
  int linearity = 0;
};

struct Thm1Level {
  int n = 0;
  std::uint64_t reps = 0;             // chains of this length: (q-1)^max(n,1)
  std::uint64_t distinct_tables = 0;  // tables first reached at this level
  std::uint64_t complete = 0;
  std::uint64_t below_bound = 0;  // complete with L < linearity_bound
  int min_complete_linearity = -1;  // -1: no complete table at this level
};

// Sweeps every table of rank < rank_bound(q): all normalized chains with
// 1 <= n < rank_bound plus the n = 0 scale maps a_0 x, deduplicated by table
// across levels.  Shift and tail preserve completeness, linearity and
// |V_{t+x}| (tested invariances), so this covers all low-rank maps.  Checked
// claim: no complete table below the linearity bound at n >= 1; n = 0
// exceptions (possible only at q = 3, where every scale map is complete with
// L = q) are reported separately, not as violations.
struct Thm1Report {
  std::uint32_t q = 0;
  int lin_bound = 0;
  int rk_bound = 0;
  std::vector<Thm1Level> levels;  // n = 0 first
  std::uint64_t violations = 0;
  std::uint64_t affine_exceptions = 0;
  std::vector<Thm1Violation> witnesses;  // violations then affine exceptions
  bool ok() const { return violations == 0; }
};
Thm1Report theorem1_verify(const Field& f, int jobs = 1);

// ---- pole-count censuses from the lower-bound proof -------------------------

struct CensusResult {
  std::uint64_t count = 0;
  std::uint64_t expected = 0;
  bool ok() const { return count == expected; }
};

// Odd q: count of u in GF(q) with u^2 + 4 (-1)^n c_0 alpha_n^{-2} a nonzero
// square; expected (q - 2 - eta((-1)^{n-1} c_0)) / 2, independent of alpha_n.
CensusResult discriminant_census(const Field& f, Elem c0, Elem alpha_n,
                                 bool n_even);

// Even q: count of u != 0 with Tr(c_0^{q/2} (alpha_n u)^{-1}) = 0; expected
// q/2 - 1, independent of both parameters.
CensusResult trace_census(const Field& f, Elem c0, Elem alpha_n);

struct CensusSweep {
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
  struct Row {
    Elem c0, alpha;
    int n_even;  // -1 for the trace census (no parity parameter)
    std::uint64_t count, expected;
  };
  std::vector<Row> rows;
  bool ok() const { return mismatches == 0; }
};
CensusSweep discriminant_census_sweep(const Field& f);  // all c0, alpha, parity
CensusSweep trace_census_sweep(const Field& f);         // all c0, alpha

// ---- value-set bounds for F = chain + x -------------------------------------

struct BoundsReport {
  int n = 0;
  int lower = 0;  // ceil((q - n) / 2)
  int upper = 0;  // min(n + floor((q + 1) / 2), q)
  std::size_t actual = 0;
  int agreements = 0;      // points where F matches the rational model + x
  bool preconditions = false;
  bool ok = false;         // preconditions held and lower <= actual <= upper
};

// conv = final convergent pair of a length-n chain, F its table + identity.
// Preconditions: alpha_n != 0, nonzero determinant, and F agrees with
// (alpha_{n-1} c + beta_{n-1}) / (alpha_n c + beta_n) + c at >= q - n points.
BoundsReport theorem2_bounds(const Field& f, const Convergent& conv,
                             const ValueTable& F, int n);
// Convenience: build conv and F from the rep itself.
BoundsReport theorem2_bounds(const Field& f, const NormalizedRep& rep);

struct BoundsSweep {
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::uint64_t skipped = 0;  // alpha_n = 0: rational model degenerates
  std::vector<std::vector<Elem>> violating_reps;
  bool ok() const { return violations == 0; }
};
BoundsSweep bounds_sweep_exhaustive(const Field& f, int n_max);
BoundsSweep bounds_sweep_random(const Field& f, std::uint64_t trials,
                                std::uint64_t seed);

// ---- exact |V_F| for chains of length 1 and 2 -------------------------------

// F(x) = (c_0 x)^{q-2} + x.
// Odd q: (q + 1 + eta(c_0) - eta(-c_0)) / 2; even q: q/2.
int prop1_predict(const Field& f, Elem c0);

// F(x) = ((c_0 x)^{q-2} + c_1)^{q-2} + x.  The size depends on c_0 only.
// Odd q, c_0 != -1: (q + 2 - eta(4c_0+1) - eta(c_0^2+4c_0) + eta(-c_0)) / 2;
// c_0 = -1: (q - eta(-3)) / 2.  Even q, c_0 != 1: q/2 + Tr(c_0) + Tr(1/c_0);
// c_0 = 1: q/2 + Tr(1) - 1.  Hypotheses (odd q): 4c_0 + 1 != 0, c_0 + 4 != 0;
// violations throw std::invalid_argument (brute force remains available).
int prop2_predict(const Field& f, Elem c0, Elem c1);

// Brute-force |V_F| companions — always the authority.
std::size_t prop1_actual(const Field& f, Elem c0);
std::size_t prop2_actual(const Field& f, Elem c0, Elem c1);

struct PropSweep {
  int prop = 0;
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t hypothesis_skips = 0;  // prop 2 odd q only
  struct Row {
    Elem c0, c1;                   // c1 = 0 in the prop-1 sweep
    std::optional<int> predicted;  // empty: hypothesis violated
    std::size_t actual;
  };
  std::vector<Row> rows;
  bool ok() const { return mismatches == 0; }
};
PropSweep prop1_sweep(const Field& f);  // all c0 != 0
PropSweep prop2_sweep(const Field& f);  // all pairs c0, c1 != 0

// ---- extremal search --------------------------------------------------------

enum class RankCert : std::uint8_t {
  Bfs,         // exact level search
  Theorem,     // complete and L below bound force rank = rank_bound
  UpperBound,  // only rank <= n known (q > 16 sampling)
};
const char* rank_cert_name(RankCert c);

struct SearchWitness {
  NormalizedRep rep;  // first rep reaching this table in scan order
  int linearity = 0;
  int rank = 0;
  RankCert cert = RankCert::Bfs;
};

struct SearchOptions {
  std::uint64_t sample = 0;  // 0: exhaustive over length-n chains
  std::uint64_t seed = 1;
  std::size_t max_witnesses = 8;
  int jobs = 1;
  std::uint64_t node_budget = RankSearcher::kDefaultNodeBudget;
};

// Scans normalized chains of length exactly n (tails add nothing: they shift
// F by a constant, preserving completeness and linearity) for complete maps
// with L < linearity_cap.  Witness tables are distinct; reps are reported in
// lexicographic scan order, capped at max_witnesses.
struct SearchReport {
  std::uint32_t q = 0;
  int n = 0;
  int linearity_cap = 0;
  bool exhaustive = true;
  std::uint64_t reps_scanned = 0;
  std::uint64_t complete_hits = 0;      // scan hits before table dedup
  std::uint64_t qualifying_tables = 0;  // distinct, complete, L < cap
  std::vector<SearchWitness> witnesses;
  bool found() const { return qualifying_tables > 0; }
};
SearchReport search_complete(const Field& f, int n, int linearity_cap,
                             const SearchOptions& opt = {});

}  // namespace cmap
