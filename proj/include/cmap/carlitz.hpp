#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmap/gf.hpp"
#include "cmap/permpoly.hpp"

namespace cmap {

// Continued-inversion representation of length n >= 0:
//   P(x) = (...((a_0 x + a_1)^{q-2} + a_2)^{q-2} ... + a_n)^{q-2} + a_{n+1}
// with a_0 != 0 and a_i != 0 for 2 <= i <= n (a_1 and a_{n+1} are free).
// n = 0 is the affine map a_0 x + a_1.
struct CarlitzRep {
  std::vector<Elem> a;  // size n + 2
  int n() const { return static_cast<int>(a.size()) - 2; }
};

// Shift/tail-free form of length n >= 1: all coefficients nonzero, the chain
// starts at c_0 x and ends with an inversion:
//   N(x) = (...((c_0 x)^{q-2} + c_1)^{q-2} ... + c_{n-1})^{q-2}
struct NormalizedRep {
  std::vector<Elem> c;  // size n, all nonzero
  int n() const { return static_cast<int>(c.size()); }
};

CarlitzRep make_rep(const Field& f, std::vector<Elem> a);
NormalizedRep make_normalized(const Field& f, std::vector<Elem> c);

Elem eval_rep(const Field& f, const CarlitzRep& rep, Elem c);
Elem eval_rep(const Field& f, const NormalizedRep& rep, Elem c);
ValueTable rep_table(const Field& f, const CarlitzRep& rep);
ValueTable rep_table(const Field& f, const NormalizedRep& rep);

// rep(c) = norm(c + shift) + tail for all c, with shift = a_1 / a_0 and
// tail = a_{n+1}.  Requires n >= 1; the identity is checked exhaustively.
struct Normalized {
  NormalizedRep rep;
  Elem shift;
  Elem tail;
};
Normalized normalize(const Field& f, const CarlitzRep& rep);

// alpha_k, beta_k of the convergent fractions of a normalized rep:
//   alpha_0 = 0, alpha_1 = c_0,  alpha_{k+1} = c_k alpha_k + alpha_{k-1}
//   beta_0  = 1, beta_1  = 0,    beta_{k+1}  = c_k beta_k  + beta_{k-1}
// (k + 1 <= n), so R(x) = (alpha_{n-1} x + beta_{n-1}) / (alpha_n x + beta_n)
// agrees with the rep away from its poles.
struct Convergents {
  std::vector<Elem> alpha;  // size n + 1
  std::vector<Elem> beta;
};
Convergents convergents(const Field& f, const NormalizedRep& rep);

// Final pair (alpha_{n-1}, beta_{n-1}, alpha_n, beta_n) defining R and the
// last pole.
struct Convergent {
  Elem alpha_prev = 0, beta_prev = 0;
  Elem alpha_n = 0, beta_n = 0;
};
Convergent final_convergent(const Field& f, const NormalizedRep& rep);

// Point of GF(q) union {infinity}.
struct ExtElem {
  bool infinite = false;
  Elem v = 0;
};

// Poles x_i = -beta_i / alpha_i, i = 1..n, in chain order, repeats kept.
// x_1 is always 0; x_i is infinite iff alpha_i = 0.
struct PoleSet {
  std::vector<ExtElem> x;
  bool contains_infinity() const;
  std::vector<Elem> finite_sorted() const;  // deduplicated
};
PoleSet poles(const Field& f, const NormalizedRep& rep);

// alpha_n beta_{n-1} - alpha_{n-1} beta_n = (-1)^{n-1} c_0.
bool det_identity_check(const Field& f, const NormalizedRep& rep);

// rep(c) == (alpha_{n-1} c + beta_{n-1}) / (alpha_n c + beta_n) for every c
// outside the pole set.
bool agreement_check(const Field& f, const NormalizedRep& rep);

// "n; a_0,a_1,...,a_{n+1}" (full) or "n; c_0,...,c_{n-1}" (normalized) —
// distinguished by the list length.
using AnyRep = std::variant<CarlitzRep, NormalizedRep>;
AnyRep parse_rep(const Field& f, std::string_view s);
std::string rep_string(const CarlitzRep& rep);
std::string rep_string(const NormalizedRep& rep);

struct RankResult {
  bool exceeded = false;  // true: rank > max_n, value below is max_n
  int rank = 0;
  std::uint64_t nodes = 0;  // tables materialized by the search so far
};

// Rank search for q <= 16: BFS over normalized-chain tables by level, exact
// nibble-packed dedup, shared across queries.  rank(t) is the least level at
// which any of the q^2 variants t(x+s) - v appears, i.e. the least n with a
// length-n continued-inversion rep of t.
class RankSearcher {
 public:
  explicit RankSearcher(const Field& f,
                        std::uint64_t node_budget = kDefaultNodeBudget);

  RankResult rank(const ValueTable& t, int max_n);

  // Sorted packed tables first reached at level n; builds levels on demand.
  const std::vector<std::uint64_t>& level_tables(int n);

  static constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;
  static constexpr int kMaxLevel = 32;

 private:
  void ensure_level(int n);
  bool level_contains(int n, std::uint64_t key) const;

  const Field& f_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  // levels_[n] = sorted packed tables first reached at level n (level 0 =
  // the q-1 scale maps a x; level n+1 = inv(T + c), c != 0, T at level n).
  std::vector<std::vector<std::uint64_t>> levels_;
  std::vector<std::uint64_t> seen_;  // union of levels_, sorted
};

// One-shot convenience over a fresh searcher.
RankResult carlitz_rank(const Field& f, const ValueTable& t, int max_n,
                        std::uint64_t node_budget =
                            RankSearcher::kDefaultNodeBudget);

}  // namespace cmap
