#include "cmap/permpoly.hpp"

#include <algorithm>
#include <charconv>

namespace cmap {
namespace {

constexpr std::uint32_t kLinearityMaxQ = 4096;

void check_table(const Field& f, const ValueTable& t) {
  if (t.q != f.q() || t.v.size() != f.q())
    throw std::invalid_argument("value table does not match field size");
  for (Elem e : t.v)
    if (e >= f.q()) throw std::invalid_argument("table entry out of range");
}

void trim(std::vector<Elem>& coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

}  // namespace

Poly make_poly(const Field& f, std::vector<Elem> coeffs) {
  for (Elem c : coeffs)
    if (c >= f.q()) throw std::invalid_argument("coefficient out of range");
  trim(coeffs);
  return Poly{f.q(), std::move(coeffs)};
}

Elem eval(const Field& f, const Poly& p, Elem c) {
  Elem acc = 0;
  for (std::size_t i = p.coeffs.size(); i-- > 0;)
    acc = f.add(f.mul(acc, c), p.coeffs[i]);
  return acc;
}

ValueTable to_table(const Field& f, const Poly& p) {
  ValueTable t{f.q(), std::vector<Elem>(f.q())};
  for (Elem c = 0; c < f.q(); ++c) t.v[c] = eval(f, p, c);
  return t;
}

Poly interpolate(const Field& f, const ValueTable& t) {
  check_table(f, t);
  const std::uint32_t q = f.q();
  // f(x) = sum_c (-t[c]) * (x^q - x)/(x - c); the basis denominator
  // prod_{d != c} (c - d) is -1 for every c, and
  // (x^q - x)/(x - c) = x^{q-1} + c x^{q-2} + ... + c^{q-2} x + (c^{q-1} - 1).
  std::vector<Elem> coeffs(q, 0);
  for (Elem c = 0; c < q; ++c) {
    Elem w = f.neg(t.v[c]);
    if (!w) continue;
    Elem pw = 1;  // c^j
    for (std::uint32_t j = 0; j + 1 < q; ++j) {
      coeffs[q - 1 - j] = f.add(coeffs[q - 1 - j], f.mul(w, pw));
      pw = f.mul(pw, c);
    }
    coeffs[0] = f.add(coeffs[0], f.mul(w, f.sub(pw, 1)));  // pw = c^{q-1}
  }
  trim(coeffs);
  return Poly{q, std::move(coeffs)};
}

Poly reduce(const Field& f, const Poly& p) {
  const std::uint32_t q = f.q();
  std::vector<Elem> out(q, 0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (!p.coeffs[i]) continue;
    // x^q = x, so exponents i >= 1 fold to 1 + (i-1) mod (q-1).
    std::size_t j = i == 0 ? 0 : 1 + (i - 1) % (q - 1);
    out[j] = f.add(out[j], p.coeffs[i]);
  }
  trim(out);
  return Poly{q, std::move(out)};
}

bool is_permutation(const ValueTable& t) {
  std::vector<bool> seen(t.q, false);
  for (Elem e : t.v) {
    if (e >= t.q || seen[e]) return false;
    seen[e] = true;
  }
  return t.v.size() == t.q;
}

std::vector<Elem> value_set(const ValueTable& t) {
  std::vector<Elem> vals(t.v.begin(), t.v.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

std::size_t value_set_size(const ValueTable& t) {
  std::vector<bool> seen(t.q, false);
  std::size_t n = 0;
  for (Elem e : t.v)
    if (!seen[e]) {
      seen[e] = true;
      ++n;
    }
  return n;
}

ValueTable add_identity(const Field& f, const ValueTable& t) {
  check_table(f, t);
  ValueTable out{t.q, std::vector<Elem>(t.q)};
  for (Elem c = 0; c < t.q; ++c) out.v[c] = f.add(t.v[c], c);
  return out;
}

int linearity(const Field& f, const ValueTable& t) {
  check_table(f, t);
  const std::uint32_t q = f.q();
  if (q > kLinearityMaxQ)
    throw CapExceeded("exhaustive linearity capped at q <= 4096");
  std::vector<std::uint32_t> count(q);
  std::uint32_t best = 0;
  for (Elem a = 0; a < q; ++a) {
    std::fill(count.begin(), count.end(), 0);
    std::uint32_t row = 0;
    for (Elem c = 0; c < q; ++c) {
      std::uint32_t n = ++count[f.sub(t.v[c], f.mul(a, c))];
      row = std::max(row, n);
    }
    best = std::max(best, row);
  }
  return static_cast<int>(best);
}

Poly parse_poly(const Field& f, std::string_view s) {
  std::vector<Elem> coeffs;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    auto piece =
        s.substr(pos, comma == std::string_view::npos ? s.size() - pos
                                                      : comma - pos);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || ptr != piece.data() + piece.size())
      throw std::invalid_argument("bad coefficient: '" + std::string(piece) + "'");
    coeffs.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return make_poly(f, std::move(coeffs));
}

std::string poly_string(const Poly& p) {
  if (p.coeffs.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p.coeffs[i]);
  }
  return out;
}

}  // namespace cmap
