#include "cmap/carlitz.hpp"

#include <algorithm>
#include <charconv>

#include "cmap/kernels.hpp"

namespace cmap {
namespace {

std::vector<Elem> parse_elem_list(const Field& f, std::string_view s,
                                  const char* what) {
  std::vector<Elem> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    auto piece = s.substr(
        pos, comma == std::string_view::npos ? s.size() - pos : comma - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || v >= f.q())
      throw std::invalid_argument(std::string("bad ") + what + ": '" +
                                  std::string(piece) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

CarlitzRep make_rep(const Field& f, std::vector<Elem> a) {
  if (a.size() < 2)
    throw std::invalid_argument("rep needs at least (a_0, a_1)");
  for (Elem e : a)
    if (e >= f.q()) throw std::invalid_argument("rep coefficient out of range");
  if (a[0] == 0) throw std::invalid_argument("a_0 must be nonzero");
  // Strict form: a_1 and a_{n+1} are free, the interior constants are not.
  for (std::size_t i = 2; i + 1 < a.size(); ++i)
    if (a[i] == 0)
      throw std::invalid_argument("interior rep coefficients must be nonzero");
  return CarlitzRep{std::move(a)};
}

NormalizedRep make_normalized(const Field& f, std::vector<Elem> c) {
  if (c.empty()) throw std::invalid_argument("normalized rep needs n >= 1");
  for (Elem e : c)
    if (e == 0 || e >= f.q())
      throw std::invalid_argument("normalized coefficients must be nonzero");
  return NormalizedRep{std::move(c)};
}

Elem eval_rep(const Field& f, const CarlitzRep& rep, Elem c) {
  Elem y = f.add(f.mul(rep.a[0], c), rep.a[1]);
  for (std::size_t i = 2; i < rep.a.size(); ++i)
    y = f.add(f.inv_pow(y), rep.a[i]);
  return y;
}

Elem eval_rep(const Field& f, const NormalizedRep& rep, Elem c) {
  Elem y = f.mul(rep.c[0], c);
  for (std::size_t i = 1; i < rep.c.size(); ++i)
    y = f.add(f.inv_pow(y), rep.c[i]);
  return f.inv_pow(y);
}

ValueTable rep_table(const Field& f, const CarlitzRep& rep) {
  ValueTable t{f.q(), std::vector<Elem>(f.q())};
  for (Elem c = 0; c < f.q(); ++c) t.v[c] = eval_rep(f, rep, c);
  return t;
}

ValueTable rep_table(const Field& f, const NormalizedRep& rep) {
  ValueTable t{f.q(), std::vector<Elem>(f.q())};
  for (Elem c = 0; c < f.q(); ++c) t.v[c] = eval_rep(f, rep, c);
  return t;
}

Normalized normalize(const Field& f, const CarlitzRep& rep) {
  if (rep.n() < 1)
    throw std::invalid_argument("normalization requires n >= 1");
  std::vector<Elem> c(rep.n());
  c[0] = rep.a[0];
  for (int i = 1; i < rep.n(); ++i) c[i] = rep.a[i + 1];
  Normalized out{NormalizedRep{std::move(c)},
                 f.mul(f.inv_pow(rep.a[0]), rep.a[1]), rep.a.back()};
  for (Elem x = 0; x < f.q(); ++x) {
    Elem direct = eval_rep(f, rep, x);
    Elem via = f.add(eval_rep(f, out.rep, f.add(x, out.shift)), out.tail);
    if (direct != via)
      throw std::logic_error("normalization identity failed");
  }
  return out;
}

Convergents convergents(const Field& f, const NormalizedRep& rep) {
  const int n = rep.n();
  Convergents cv;
  cv.alpha.resize(n + 1);
  cv.beta.resize(n + 1);
  cv.alpha[0] = 0;
  cv.beta[0] = 1;
  cv.alpha[1] = rep.c[0];
  cv.beta[1] = 0;
  for (int k = 2; k <= n; ++k) {
    cv.alpha[k] = f.add(f.mul(rep.c[k - 1], cv.alpha[k - 1]), cv.alpha[k - 2]);
    cv.beta[k] = f.add(f.mul(rep.c[k - 1], cv.beta[k - 1]), cv.beta[k - 2]);
  }
  return cv;
}

Convergent final_convergent(const Field& f, const NormalizedRep& rep) {
  Convergents cv = convergents(f, rep);
  const int n = rep.n();
  return Convergent{cv.alpha[n - 1], cv.beta[n - 1], cv.alpha[n], cv.beta[n]};
}

bool PoleSet::contains_infinity() const {
  return std::any_of(x.begin(), x.end(),
                     [](const ExtElem& e) { return e.infinite; });
}

std::vector<Elem> PoleSet::finite_sorted() const {
  std::vector<Elem> out;
  for (const auto& e : x)
    if (!e.infinite) out.push_back(e.v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PoleSet poles(const Field& f, const NormalizedRep& rep) {
  Convergents cv = convergents(f, rep);
  PoleSet ps;
  for (int i = 1; i <= rep.n(); ++i) {
    if (cv.alpha[i] == 0)
      ps.x.push_back(ExtElem{true, 0});
    else
      ps.x.push_back(
          ExtElem{false, f.neg(f.mul(cv.beta[i], f.inv_pow(cv.alpha[i])))});
  }
  return ps;
}

bool det_identity_check(const Field& f, const NormalizedRep& rep) {
  Convergent cv = final_convergent(f, rep);
  Elem det = f.sub(f.mul(cv.alpha_n, cv.beta_prev),
                   f.mul(cv.alpha_prev, cv.beta_n));
  Elem want = (rep.n() % 2 == 1) ? rep.c[0] : f.neg(rep.c[0]);
  return det == want;
}

bool agreement_check(const Field& f, const NormalizedRep& rep) {
  Convergent cv = final_convergent(f, rep);
  auto finite_poles = poles(f, rep).finite_sorted();
  for (Elem c = 0; c < f.q(); ++c) {
    if (std::binary_search(finite_poles.begin(), finite_poles.end(), c))
      continue;
    Elem den = f.add(f.mul(cv.alpha_n, c), cv.beta_n);
    Elem num = f.add(f.mul(cv.alpha_prev, c), cv.beta_prev);
    if (eval_rep(f, rep, c) != f.mul(num, f.inv_pow(den))) return false;
  }
  return true;
}

AnyRep parse_rep(const Field& f, std::string_view s) {
  auto semi = s.find(';');
  if (semi == std::string_view::npos)
    throw std::invalid_argument("rep format is 'n; c_0,c_1,...'");
  std::uint32_t n = 0;
  {
    auto head = s.substr(0, semi);
    while (!head.empty() && head.front() == ' ') head.remove_prefix(1);
    while (!head.empty() && head.back() == ' ') head.remove_suffix(1);
    auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), n);
    if (ec != std::errc() || ptr != head.data() + head.size())
      throw std::invalid_argument("bad inversion count in rep");
  }
  auto body = s.substr(semi + 1);
  while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
  auto list = parse_elem_list(f, body, "rep coefficient");
  if (list.size() == n + 2) return make_rep(f, std::move(list));
  if (n >= 1 && list.size() == n) return make_normalized(f, std::move(list));
  throw std::invalid_argument(
      "rep list must have n+2 entries (full) or n entries (normalized)");
}

std::string rep_string(const CarlitzRep& rep) {
  std::string out = std::to_string(rep.n()) + "; ";
  for (std::size_t i = 0; i < rep.a.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(rep.a[i]);
  }
  return out;
}

std::string rep_string(const NormalizedRep& rep) {
  std::string out = std::to_string(rep.n()) + "; ";
  for (std::size_t i = 0; i < rep.c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(rep.c[i]);
  }
  return out;
}

// ---- rank search ------------------------------------------------------------

RankSearcher::RankSearcher(const Field& f, std::uint64_t node_budget)
    : f_(f), budget_(node_budget) {
  if (!f.small()) throw CapExceeded("rank search refuses q > 16");
}

void RankSearcher::ensure_level(int n) {
  const auto& sf = *f_.small();
  const auto& k = kernels::ops();
  const unsigned q = sf.q;
  while (levels_.size() <= static_cast<std::size_t>(n)) {
    std::size_t lvl = levels_.size();
    std::vector<std::uint64_t> fresh;
    if (lvl == 0) {
      // Scale maps a x, a != 0.
      nodes_ += q - 1;
      fresh.reserve(q - 1);
      for (unsigned a = 1; a < q; ++a)
        fresh.push_back(k.pack(sf.mul[a], q));
      std::sort(fresh.begin(), fresh.end());
    } else if (lvl == 1) {
      // The first chain step is a bare inversion: inv(a x).
      nodes_ += q - 1;
      std::vector<std::uint64_t> cand;
      cand.reserve(q - 1);
      kernels::Table t{};
      for (unsigned a = 1; a < q; ++a) {
        for (unsigned x = 0; x < q; ++x) t[x] = sf.inv[sf.mul[a][x]];
        cand.push_back(k.pack(t.data(), q));
      }
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      for (std::uint64_t key : cand)
        if (!std::binary_search(seen_.begin(), seen_.end(), key))
          fresh.push_back(key);
    } else {
      // Later steps append a nonzero constant before inverting.
      const auto& frontier = levels_[lvl - 1];
      std::uint64_t children = std::uint64_t(frontier.size()) * (q - 1);
      if (nodes_ + children > budget_)
        throw CapExceeded("rank search node budget exceeded");
      nodes_ += children;
      std::vector<std::uint64_t> cand;
      cand.reserve(children);
      kernels::Table parent{};
      kernels::Table batch[16];
      for (std::uint64_t key : frontier) {
        kernels::unpack(key, 16, parent.data());
        k.compose_batch(batch[0].data(), parent.data(), sf.step[1], q - 1);
        for (unsigned c = 0; c + 1 < q; ++c)
          cand.push_back(k.pack(batch[c].data(), q));
      }
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      fresh.reserve(cand.size());
      for (std::uint64_t key : cand)
        if (!std::binary_search(seen_.begin(), seen_.end(), key))
          fresh.push_back(key);
    }
    std::vector<std::uint64_t> merged;
    merged.reserve(seen_.size() + fresh.size());
    std::merge(seen_.begin(), seen_.end(), fresh.begin(), fresh.end(),
               std::back_inserter(merged));
    seen_ = std::move(merged);
    levels_.push_back(std::move(fresh));
  }
}

bool RankSearcher::level_contains(int n, std::uint64_t key) const {
  const auto& lvl = levels_[n];
  return std::binary_search(lvl.begin(), lvl.end(), key);
}

const std::vector<std::uint64_t>& RankSearcher::level_tables(int n) {
  if (n < 0 || n > kMaxLevel)
    throw std::invalid_argument("level out of range");
  ensure_level(n);
  return levels_[n];
}

RankResult RankSearcher::rank(const ValueTable& t, int max_n) {
  const auto& sf = *f_.small();
  const auto& k = kernels::ops();
  const unsigned q = sf.q;
  if (t.q != f_.q() || t.v.size() != f_.q())
    throw std::invalid_argument("value table does not match field size");
  if (!is_permutation(t))
    throw std::invalid_argument("rank is defined for permutation tables only");
  if (max_n < 0 || max_n > kMaxLevel)
    throw std::invalid_argument("max_n out of range");

  kernels::Table base{};
  for (unsigned x = 0; x < q; ++x) base[x] = static_cast<std::uint8_t>(t.v[x]);

  // All shift/tail variants x -> t(x + s) - v; the least level holding any of
  // them is the least chain length over all full reps of t.
  std::vector<std::uint64_t> variants;
  variants.reserve(std::size_t(q) * q);
  kernels::Table shifted{}, w{};
  for (unsigned s = 0; s < q; ++s) {
    for (unsigned x = 0; x < q; ++x) shifted[x] = base[sf.add[x][s]];
    for (unsigned v = 0; v < q; ++v) {
      for (unsigned x = 0; x < q; ++x) w[x] = sf.sub[shifted[x]][v];
      variants.push_back(k.pack(w.data(), q));
    }
  }
  std::sort(variants.begin(), variants.end());
  variants.erase(std::unique(variants.begin(), variants.end()),
                 variants.end());

  for (int lvl = 0; lvl <= max_n; ++lvl) {
    ensure_level(lvl);
    for (std::uint64_t key : variants)
      if (level_contains(lvl, key)) return RankResult{false, lvl, nodes_};
  }
  return RankResult{true, max_n, nodes_};
}

RankResult carlitz_rank(const Field& f, const ValueTable& t, int max_n,
                        std::uint64_t node_budget) {
  RankSearcher searcher(f, node_budget);
  return searcher.rank(t, max_n);
}

}  // namespace cmap
