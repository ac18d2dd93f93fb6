#include "cmap/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <optional>

#include "cmap/kernels.hpp"
#include "cmap/parallel.hpp"
#include "cmap/rng.hpp"

namespace cmap {
namespace {

// Small integer constant as a prime-subfield element.
Elem from_int(const Field& f, std::uint32_t k) { return k % f.p(); }

bool table_complete(const Field& f, const ValueTable& t) {
  return is_permutation(t) && is_permutation(add_identity(f, t));
}

int linearity_small(const kernels::SmallField& sf, const std::uint8_t* t) {
  int best = 0;
  for (unsigned a = 0; a < sf.q; ++a) {
    const std::uint8_t* mr = sf.mul[a];
    int cnt[16] = {0};
    int row = 0;
    for (unsigned c = 0; c < sf.q; ++c) {
      int n = ++cnt[sf.sub[t[c]][mr[c]]];
      row = std::max(row, n);
    }
    best = std::max(best, row);
  }
  return best;
}

bool complete_small(const kernels::SmallField& sf, const std::uint8_t* t) {
  // Chain tables are permutations by construction; only t + x needs checking.
  return std::popcount(kernels::ops().plus_identity_mask(sf, t)) == sf.q;
}

// Depth-first walk over normalized chains of length exactly `depth_target`
// with first coefficient c0, in lexicographic coefficient order.
// leaf(coeffs, table) is called for every chain.
template <typename Leaf>
void walk_chains(const kernels::SmallField& sf, Elem c0, int depth_target,
                 Leaf&& leaf) {
  const auto& k = kernels::ops();
  const unsigned q = sf.q;
  kernels::Table stack[RankSearcher::kMaxLevel + 1];
  Elem coeffs[RankSearcher::kMaxLevel + 1];
  coeffs[0] = c0;
  for (unsigned x = 0; x < 16; ++x)
    stack[0][x] = x < q ? sf.inv[sf.mul[c0][x]] : 0;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == depth_target) {
      leaf(coeffs, stack[depth - 1]);
      return;
    }
    for (unsigned c = 1; c < q; ++c) {
      coeffs[depth] = c;
      k.compose(stack[depth].data(), stack[depth - 1].data(), sf.step[c]);
      self(self, depth + 1);
    }
  };
  rec(rec, 1);
}

// Lexicographically first chain of length n whose table packs to `key`.
std::optional<std::vector<Elem>> recover_chain(const Field& f, int n,
                                               std::uint64_t key) {
  const auto& sf = *f.small();
  const auto& k = kernels::ops();
  std::optional<std::vector<Elem>> found;
  for (Elem c0 = 1; c0 < f.q() && !found; ++c0)
    walk_chains(sf, c0, n, [&](const Elem* coeffs, const kernels::Table& t) {
      if (!found && k.pack(t.data(), sf.q) == key)
        found = std::vector<Elem>(coeffs, coeffs + n);
    });
  return found;
}

}  // namespace

const char* rank_cert_name(RankCert c) {
  switch (c) {
    case RankCert::Bfs:
      return "bfs";
    case RankCert::Theorem:
      return "theorem";
    case RankCert::UpperBound:
      return "upper-bound";
  }
  return "?";
}

CompletenessReport is_complete(const Field& f, const ValueTable& t,
                               bool with_rank, int max_n,
                               std::uint64_t node_budget) {
  CompletenessReport rep;
  rep.is_perm = is_permutation(t);
  ValueTable F = add_identity(f, t);
  rep.is_complete = rep.is_perm && is_permutation(F);
  rep.linearity = linearity(f, t);
  rep.v_f_plus_x = value_set_size(F);
  if (with_rank && rep.is_perm) {
    if (max_n < 0) max_n = rank_bound(f.q());
    rep.crk = carlitz_rank(f, t, max_n, node_budget);
  }
  return rep;
}

// ---- monomial family --------------------------------------------------------

bool mann_check(const Field& f, Elem a) {
  if (a == 0 || a >= f.q()) throw std::invalid_argument("a must be nonzero");
  ValueTable t{f.q(), std::vector<Elem>(f.q())};
  for (Elem c = 0; c < f.q(); ++c) t.v[c] = f.mul(a, f.pow(c, f.p()));
  return table_complete(f, t);
}

bool mann_criterion(const Field& f, Elem a) {
  if (a == 0 || a >= f.q()) throw std::invalid_argument("a must be nonzero");
  Elem lhs = f.pow(a, (f.q() - 1) / (f.p() - 1));
  Elem rhs = (f.r() % 2 == 1) ? f.neg(1) : 1;
  return lhs != rhs;
}

MannReport mann_sweep(const Field& f) {
  MannReport rep;
  for (Elem a = 1; a < f.q(); ++a) {
    if (mann_check(f, a)) rep.complete_a.push_back(a);
    if (mann_criterion(f, a)) rep.criterion_a.push_back(a);
  }
  rep.agree = rep.complete_a == rep.criterion_a;
  return rep;
}

// ---- exhaustive lower-bound verification ------------------------------------

Thm1Report theorem1_verify(const Field& f, int jobs) {
  if (f.q() > 13)
    throw CapExceeded("exhaustive verification capped at q <= 13");
  const auto& sf = *f.small();
  const auto& k = kernels::ops();
  const unsigned q = sf.q;

  Thm1Report rep;
  rep.q = q;
  rep.lin_bound = linearity_bound(q);
  rep.rk_bound = rank_bound(q);

  RankSearcher searcher(f);
  std::vector<Thm1Violation> affine_witnesses;
  for (int n = 0; n < rep.rk_bound; ++n) {
    const auto& keys = searcher.level_tables(n);
    Thm1Level lvl;
    lvl.n = n;
    lvl.reps = 1;
    for (int i = 0; i < std::max(n, 1); ++i) lvl.reps *= q - 1;
    lvl.distinct_tables = keys.size();

    struct Slice {
      std::uint64_t complete = 0, below = 0;
      int min_lin = -1;
      std::vector<std::uint64_t> bad;  // packed below-bound tables
    };
    std::size_t n_slices = std::max(1, jobs);
    std::vector<Slice> slices(n_slices);
    run_chunks(n_slices, jobs, [&](std::size_t si) {
      Slice& out = slices[si];
      std::size_t lo = keys.size() * si / n_slices;
      std::size_t hi = keys.size() * (si + 1) / n_slices;
      kernels::Table t{};
      for (std::size_t i = lo; i < hi; ++i) {
        kernels::unpack(keys[i], 16, t.data());
        if (std::popcount(k.plus_identity_mask(sf, t.data())) != int(q))
          continue;
        ++out.complete;
        int lin = linearity_small(sf, t.data());
        if (out.min_lin < 0 || lin < out.min_lin) out.min_lin = lin;
        if (lin < rep.lin_bound) {
          ++out.below;
          out.bad.push_back(keys[i]);
        }
      }
    });
    for (const Slice& s : slices) {
      lvl.complete += s.complete;
      lvl.below_bound += s.below;
      if (s.min_lin >= 0 &&
          (lvl.min_complete_linearity < 0 || s.min_lin < lvl.min_complete_linearity))
        lvl.min_complete_linearity = s.min_lin;
      for (std::uint64_t key : s.bad) {
        Thm1Violation v;
        v.n = n;
        kernels::Table t{};
        kernels::unpack(key, 16, t.data());
        v.linearity = linearity_small(sf, t.data());
        if (n == 0) {
          v.coeffs = {t[1]};  // table is a_0 x, so a_0 = t(1)
        } else if (auto chain = recover_chain(f, n, key)) {
          v.coeffs = *chain;
        }
        if (n == 0)
          affine_witnesses.push_back(std::move(v));
        else
          rep.witnesses.push_back(std::move(v));
      }
    }
    if (n == 0)
      rep.affine_exceptions = lvl.below_bound;
    else
      rep.violations += lvl.below_bound;
    rep.levels.push_back(lvl);
  }
  rep.witnesses.insert(rep.witnesses.end(), affine_witnesses.begin(),
                       affine_witnesses.end());
  return rep;
}

// ---- censuses ---------------------------------------------------------------

CensusResult discriminant_census(const Field& f, Elem c0, Elem alpha_n,
                                 bool n_even) {
  if (f.p() == 2)
    throw std::domain_error("discriminant census requires odd q");
  if (c0 == 0 || alpha_n == 0)
    throw std::invalid_argument("c_0 and alpha_n must be nonzero");
  const std::uint32_t q = f.q();
  // A = 4 (-1)^n c_0 / alpha_n^2.
  Elem sgn = n_even ? 1 : f.neg(1);
  Elem A = f.mul(from_int(f, 4),
                 f.mul(sgn, f.mul(c0, f.inv_pow(f.mul(alpha_n, alpha_n)))));
  CensusResult res;
  for (Elem u = 0; u < q; ++u) {
    Elem d = f.add(f.mul(u, u), A);
    if (d != 0 && f.quad_char(d) == 1) ++res.count;
  }
  Elem sgn_prev = n_even ? f.neg(1) : Elem(1);  // (-1)^{n-1}
  res.expected = (q - 2 - f.quad_char(f.mul(sgn_prev, c0))) / 2;
  return res;
}

CensusResult trace_census(const Field& f, Elem c0, Elem alpha_n) {
  if (f.p() != 2) throw std::domain_error("trace census requires even q");
  if (c0 == 0 || alpha_n == 0)
    throw std::invalid_argument("c_0 and alpha_n must be nonzero");
  const std::uint32_t q = f.q();
  Elem num = f.pow(c0, q / 2);
  CensusResult res;
  for (Elem u = 1; u < q; ++u)
    if (f.abs_trace(f.mul(num, f.inv_pow(f.mul(alpha_n, u)))) == 0)
      ++res.count;
  res.expected = q / 2 - 1;
  return res;
}

CensusSweep discriminant_census_sweep(const Field& f) {
  CensusSweep sweep;
  for (int parity = 0; parity <= 1; ++parity)
    for (Elem c0 = 1; c0 < f.q(); ++c0)
      for (Elem a = 1; a < f.q(); ++a) {
        CensusResult r = discriminant_census(f, c0, a, parity == 0);
        ++sweep.cases;
        if (!r.ok()) ++sweep.mismatches;
        sweep.rows.push_back({c0, a, parity == 0 ? 1 : 0, r.count, r.expected});
      }
  return sweep;
}

CensusSweep trace_census_sweep(const Field& f) {
  CensusSweep sweep;
  for (Elem c0 = 1; c0 < f.q(); ++c0)
    for (Elem a = 1; a < f.q(); ++a) {
      CensusResult r = trace_census(f, c0, a);
      ++sweep.cases;
      if (!r.ok()) ++sweep.mismatches;
      sweep.rows.push_back({c0, a, -1, r.count, r.expected});
    }
  return sweep;
}

// ---- value-set bounds -------------------------------------------------------

BoundsReport theorem2_bounds(const Field& f, const Convergent& conv,
                             const ValueTable& F, int n) {
  const std::uint32_t q = f.q();
  if (n < 1 || n >= static_cast<int>(q))
    throw std::invalid_argument("n must be in [1, q)");
  if (F.q != q || F.v.size() != q)
    throw std::invalid_argument("value table does not match field size");
  BoundsReport rep;
  rep.n = n;
  rep.lower = (static_cast<int>(q) - n + 1) / 2;
  rep.upper = std::min<int>(n + (q + 1) / 2, q);
  rep.actual = value_set_size(F);
  Elem det = f.sub(f.mul(conv.alpha_n, conv.beta_prev),
                   f.mul(conv.alpha_prev, conv.beta_n));
  for (Elem c = 0; c < q; ++c) {
    Elem den = f.add(f.mul(conv.alpha_n, c), conv.beta_n);
    if (den == 0) continue;
    Elem r = f.mul(f.add(f.mul(conv.alpha_prev, c), conv.beta_prev),
                   f.inv_pow(den));
    if (F.v[c] == f.add(r, c)) ++rep.agreements;
  }
  rep.preconditions = conv.alpha_n != 0 && det != 0 &&
                      rep.agreements >= static_cast<int>(q) - n;
  rep.ok = rep.preconditions &&
           rep.lower <= static_cast<int>(rep.actual) &&
           static_cast<int>(rep.actual) <= rep.upper;
  return rep;
}

BoundsReport theorem2_bounds(const Field& f, const NormalizedRep& rep) {
  ValueTable F = add_identity(f, rep_table(f, rep));
  return theorem2_bounds(f, final_convergent(f, rep), F, rep.n());
}

namespace {

// Generic (scalar) enumeration of normalized chains, every length 1..n_max.
template <typename Visit>
void enumerate_chains(const Field& f, int n_max, Visit&& visit) {
  std::vector<Elem> c;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(c.size()) == n_max) return;
    for (Elem v = 1; v < f.q(); ++v) {
      c.push_back(v);
      visit(c);
      self(self);
      c.pop_back();
    }
  };
  rec(rec);
}

void bounds_case(const Field& f, const NormalizedRep& rep, BoundsSweep& sweep) {
  BoundsReport br = theorem2_bounds(f, rep);
  if (!br.preconditions) {
    ++sweep.skipped;
    return;
  }
  ++sweep.cases;
  if (!br.ok) {
    ++sweep.violations;
    sweep.violating_reps.push_back(rep.c);
  }
}

}  // namespace

BoundsSweep bounds_sweep_exhaustive(const Field& f, int n_max) {
  BoundsSweep sweep;
  int depth = std::min<int>(n_max, f.q() - 1);
  enumerate_chains(f, depth, [&](const std::vector<Elem>& c) {
    bounds_case(f, NormalizedRep{c}, sweep);
  });
  return sweep;
}

BoundsSweep bounds_sweep_random(const Field& f, std::uint64_t trials,
                                std::uint64_t seed) {
  BoundsSweep sweep;
  int n_max = std::min<int>(8, f.q() - 1);
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < trials; ++i) {
    int n = 1 + static_cast<int>(rng.bounded(n_max));
    std::vector<Elem> c(n);
    for (auto& v : c) v = 1 + static_cast<Elem>(rng.bounded(f.q() - 1));
    bounds_case(f, NormalizedRep{std::move(c)}, sweep);
  }
  return sweep;
}

// ---- exact |V_F| for n = 1, 2 -----------------------------------------------

int prop1_predict(const Field& f, Elem c0) {
  if (c0 == 0 || c0 >= f.q()) throw std::invalid_argument("c_0 must be nonzero");
  const std::uint32_t q = f.q();
  if (f.p() == 2) return q / 2;
  return (static_cast<int>(q) + 1 + f.quad_char(c0) - f.quad_char(f.neg(c0))) / 2;
}

std::size_t prop1_actual(const Field& f, Elem c0) {
  if (c0 == 0 || c0 >= f.q()) throw std::invalid_argument("c_0 must be nonzero");
  ValueTable F{f.q(), std::vector<Elem>(f.q())};
  for (Elem c = 0; c < f.q(); ++c)
    F.v[c] = f.add(f.inv_pow(f.mul(c0, c)), c);
  return value_set_size(F);
}

int prop2_predict(const Field& f, Elem c0, Elem c1) {
  if (c0 == 0 || c0 >= f.q() || c1 == 0 || c1 >= f.q())
    throw std::invalid_argument("c_0 and c_1 must be nonzero");
  const int q = static_cast<int>(f.q());
  if (f.p() == 2) {
    if (c0 == 1) return q / 2 + static_cast<int>(f.abs_trace(1)) - 1;
    return q / 2 + static_cast<int>(f.abs_trace(c0)) +
           static_cast<int>(f.abs_trace(f.inv_pow(c0)));
  }
  Elem four = from_int(f, 4);
  if (f.add(f.mul(four, c0), 1) == 0)
    throw std::invalid_argument("hypothesis violated: 4c_0 + 1 = 0");
  if (f.add(c0, four) == 0)
    throw std::invalid_argument("hypothesis violated: c_0 + 4 = 0");
  if (c0 == f.neg(1))
    return (q - f.quad_char(f.neg(from_int(f, 3)))) / 2;
  int e1 = f.quad_char(f.add(f.mul(four, c0), 1));
  int e2 = f.quad_char(f.add(f.mul(c0, c0), f.mul(four, c0)));
  int e3 = f.quad_char(f.neg(c0));
  return (q + 2 - e1 - e2 + e3) / 2;
}

std::size_t prop2_actual(const Field& f, Elem c0, Elem c1) {
  if (c0 == 0 || c0 >= f.q() || c1 == 0 || c1 >= f.q())
    throw std::invalid_argument("c_0 and c_1 must be nonzero");
  ValueTable F{f.q(), std::vector<Elem>(f.q())};
  for (Elem c = 0; c < f.q(); ++c)
    F.v[c] = f.add(f.inv_pow(f.add(f.inv_pow(f.mul(c0, c)), c1)), c);
  return value_set_size(F);
}

PropSweep prop1_sweep(const Field& f) {
  PropSweep sweep;
  sweep.prop = 1;
  for (Elem c0 = 1; c0 < f.q(); ++c0) {
    int predicted = prop1_predict(f, c0);
    std::size_t actual = prop1_actual(f, c0);
    ++sweep.cases;
    if (predicted != static_cast<int>(actual)) ++sweep.mismatches;
    sweep.rows.push_back({c0, 0, predicted, actual});
  }
  return sweep;
}

PropSweep prop2_sweep(const Field& f) {
  PropSweep sweep;
  sweep.prop = 2;
  for (Elem c0 = 1; c0 < f.q(); ++c0)
    for (Elem c1 = 1; c1 < f.q(); ++c1) {
      std::optional<int> predicted;
      try {
        predicted = prop2_predict(f, c0, c1);
      } catch (const std::invalid_argument&) {
        ++sweep.hypothesis_skips;
      }
      std::size_t actual = prop2_actual(f, c0, c1);
      if (predicted) {
        ++sweep.cases;
        if (*predicted != static_cast<int>(actual)) ++sweep.mismatches;
      }
      sweep.rows.push_back({c0, c1, predicted, actual});
    }
  return sweep;
}

// ---- extremal search --------------------------------------------------------

namespace {

struct ScanHit {
  std::uint64_t order;  // scan position for deterministic merge
  std::vector<Elem> coeffs;
  int lin = 0;
};

SearchReport search_exhaustive(const Field& f, int n, int cap,
                               const SearchOptions& opt) {
  const auto& sf = *f.small();
  const auto& k = kernels::ops();
  const unsigned q = sf.q;
  double leaves = std::pow(double(q - 1), n);
  if (leaves > 5e8) throw CapExceeded("exhaustive search space too large");

  SearchReport rep;
  rep.q = q;
  rep.n = n;
  rep.linearity_cap = cap;
  rep.exhaustive = true;

  struct Chunk {
    std::uint64_t scanned = 0, complete = 0;
    std::vector<std::pair<std::uint64_t, ScanHit>> hits;  // key -> hit
  };
  std::vector<Chunk> chunks(q - 1);
  run_chunks(q - 1, opt.jobs, [&](std::size_t ci) {
    Chunk& out = chunks[ci];
    Elem c0 = static_cast<Elem>(ci + 1);
    walk_chains(sf, c0, n, [&](const Elem* coeffs, const kernels::Table& t) {
      ++out.scanned;
      if (!complete_small(sf, t.data())) return;
      ++out.complete;
      int lin = linearity_small(sf, t.data());
      if (lin >= cap) return;
      ScanHit hit;
      hit.order = out.scanned;
      hit.coeffs.assign(coeffs, coeffs + n);
      hit.lin = lin;
      out.hits.emplace_back(k.pack(t.data(), q), std::move(hit));
    });
  });

  std::vector<std::uint64_t> seen;
  RankSearcher searcher(f, opt.node_budget);
  for (const Chunk& ch : chunks) {
    rep.reps_scanned += ch.scanned;
    rep.complete_hits += ch.complete;
    for (const auto& [key, hit] : ch.hits) {
      if (std::binary_search(seen.begin(), seen.end(), key)) continue;
      seen.insert(std::upper_bound(seen.begin(), seen.end(), key), key);
      ++rep.qualifying_tables;
      if (rep.witnesses.size() >= opt.max_witnesses) continue;
      SearchWitness w;
      w.rep = NormalizedRep{hit.coeffs};
      w.linearity = hit.lin;
      w.rank = searcher.rank(rep_table(f, w.rep), n).rank;
      w.cert = RankCert::Bfs;
      rep.witnesses.push_back(std::move(w));
    }
  }
  return rep;
}

SearchReport search_sampled(const Field& f, int n, int cap,
                            const SearchOptions& opt) {
  const std::uint32_t q = f.q();
  SearchReport rep;
  rep.q = q;
  rep.n = n;
  rep.linearity_cap = cap;
  rep.exhaustive = false;

  const std::uint64_t total = opt.sample;
  std::size_t n_chunks = std::max(1, opt.jobs);
  struct Chunk {
    std::uint64_t complete = 0;
    std::vector<ScanHit> hits;
  };
  std::vector<Chunk> chunks(n_chunks);
  run_chunks(n_chunks, opt.jobs, [&](std::size_t ci) {
    Chunk& out = chunks[ci];
    std::uint64_t lo = total * ci / n_chunks;
    std::uint64_t hi = total * (ci + 1) / n_chunks;
    for (std::uint64_t i = lo; i < hi; ++i) {
      // Per-sample stream: independent of the chunking.
      SplitMix64 rng(opt.seed + 0x9E3779B97F4A7C15ull * (i + 1));
      std::vector<Elem> c(n);
      for (auto& v : c) v = 1 + static_cast<Elem>(rng.bounded(q - 1));
      NormalizedRep r{std::move(c)};
      ValueTable t = rep_table(f, r);
      if (!table_complete(f, t)) continue;
      ++out.complete;
      int lin = linearity(f, t);
      if (lin >= cap) continue;
      ScanHit hit;
      hit.order = i;
      hit.coeffs = r.c;
      hit.lin = lin;
      out.hits.push_back(std::move(hit));
    }
  });

  rep.reps_scanned = total;
  std::map<std::vector<Elem>, bool> seen_tables;
  std::optional<RankSearcher> searcher;
  if (f.small()) searcher.emplace(f, opt.node_budget);
  for (const Chunk& ch : chunks) {
    rep.complete_hits += ch.complete;
    for (const ScanHit& hit : ch.hits) {
      NormalizedRep r{hit.coeffs};
      ValueTable t = rep_table(f, r);
      auto [it, fresh] = seen_tables.emplace(
          std::vector<Elem>(t.v.begin(), t.v.end()), true);
      if (!fresh) continue;
      ++rep.qualifying_tables;
      if (rep.witnesses.size() >= opt.max_witnesses) continue;
      SearchWitness w;
      w.rep = r;
      w.linearity = hit.lin;
      if (searcher) {
        w.rank = searcher->rank(t, n).rank;
        w.cert = RankCert::Bfs;
      } else if (hit.lin < linearity_bound(q) && n == rank_bound(q)) {
        // Complete and below the linearity bound forces rank >= floor(q/2);
        // the chain itself gives rank <= n.
        w.rank = n;
        w.cert = RankCert::Theorem;
      } else {
        w.rank = n;
        w.cert = RankCert::UpperBound;
      }
      rep.witnesses.push_back(std::move(w));
    }
  }
  return rep;
}

}  // namespace

SearchReport search_complete(const Field& f, int n, int linearity_cap,
                             const SearchOptions& opt) {
  if (n < 1 || n > RankSearcher::kMaxLevel)
    throw std::invalid_argument("n out of range");
  if (linearity_cap < 1)
    throw std::invalid_argument("linearity cap must be positive");
  if (opt.sample == 0) {
    if (f.q() > 13)
      throw CapExceeded("exhaustive search capped at q <= 13; use sampling");
    return search_exhaustive(f, n, linearity_cap, opt);
  }
  return search_sampled(f, n, linearity_cap, opt);
}

}  // namespace cmap
