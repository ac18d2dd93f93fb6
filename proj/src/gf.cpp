#include "cmap/gf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>

#include "cmap/kernels.hpp"

namespace cmap {
namespace {

constexpr std::uint32_t kMaxQ = 1u << 16;
constexpr std::uint32_t kAddTableMax = 256;  // full q*q add table below this

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over GF(p): coefficient vectors, ascending, untrimmed.
using Pp = std::vector<std::uint32_t>;

int pdeg(const Pp& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

// a mod m, m monic of degree >= 1.
Pp pmod(Pp a, const Pp& m, std::uint32_t p) {
  int dm = pdeg(m);
  for (int i = pdeg(a); i >= dm; --i) {
    std::uint32_t c = a[i];
    if (!c) continue;
    for (int j = 0; j <= dm; ++j) {
      std::uint32_t sub = (c * m[j]) % p;
      std::uint32_t pos = i - dm + j;
      a[pos] = (a[pos] + p - sub) % p;
    }
  }
  a.resize(dm);
  return a;
}

Pp pmul(const Pp& a, const Pp& b, std::uint32_t p) {
  Pp out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return out;
}

bool is_irreducible(const Pp& m, std::uint32_t p) {
  int r = pdeg(m);
  if (r < 1) return false;
  if (r == 1) return true;
  if (m[0] == 0) return false;  // divisible by x
  // Trial division by every monic divisor of degree 1..r/2.
  for (int d = 1; 2 * d <= r; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      Pp div(d + 1, 0);
      std::uint64_t t = k;
      for (int i = 0; i < d; ++i) {
        div[i] = t % p;
        t /= p;
      }
      div[d] = 1;
      if (pdeg(pmod(m, div, p)) < 0) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> index_digits(std::uint32_t a, std::uint32_t p,
                                        std::uint32_t r) {
  std::vector<std::uint32_t> d(r, 0);
  for (std::uint32_t i = 0; i < r && a; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

std::uint32_t digits_index(const Pp& d, std::uint32_t p, std::uint32_t r) {
  std::uint32_t a = 0;
  for (std::uint32_t i = r; i-- > 0;) a = a * p + (i < d.size() ? d[i] : 0);
  return a;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> fs;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

std::uint64_t parse_uint(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("bad ") + what + ": '" +
                                std::string(s) + "'");
  return v;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (r < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= p;
    if (q > kMaxQ) throw CapExceeded("field size exceeds 2^16");
  }
  if (q < 3) throw std::invalid_argument("field size must be at least 3");
  p_ = p;
  r_ = r;
  q_ = static_cast<std::uint32_t>(q);
  kind_ = (p == 2) ? FieldKind::CharTwo
                   : (r == 1 ? FieldKind::Prime : FieldKind::OddExtension);

  if (modulus.empty()) {
    if (r == 1) {
      modulus = {0, 1};  // reduction never used for prime fields
    } else {
      // Smallest (c_0, ..., c_{r-1}) with c_0 most significant.
      std::uint64_t count = q;  // p^r tuples
      for (std::uint64_t k = 0; k < count; ++k) {
        Pp m(r + 1, 0);
        std::uint64_t t = k;
        for (std::uint32_t i = r; i-- > 0;) {
          m[i] = t % p;
          t /= p;
        }
        m[r] = 1;
        if (is_irreducible(m, p)) {
          modulus.assign(m.begin(), m.end());
          break;
        }
      }
    }
  } else {
    if (modulus.size() != r + 1)
      throw std::invalid_argument("modulus must have degree exactly r");
    for (auto c : modulus)
      if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    if (modulus.back() != 1)
      throw std::invalid_argument("modulus must be monic");
    if (r >= 2 && !is_irreducible(Pp(modulus.begin(), modulus.end()), p))
      throw std::invalid_argument("modulus is reducible");
  }
  modulus_ = std::move(modulus);

  Pp mod(modulus_.begin(), modulus_.end());
  auto base_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (r_ == 1) return (a * b) % p_;
    Pp prod = pmul(index_digits(a, p_, r_), index_digits(b, p_, r_), p_);
    return digits_index(pmod(std::move(prod), mod, p_), p_, r_);
  };
  auto base_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t acc = 1;
    while (e) {
      if (e & 1) acc = base_mul(acc, a);
      a = base_mul(a, a);
      e >>= 1;
    }
    return acc;
  };

  // Primitive element: smallest index whose order is exactly q - 1.
  auto factors = prime_factors(q_ - 1);
  gen_ = 0;
  for (std::uint32_t g = 2; g < q_; ++g) {
    bool primitive = true;
    for (auto ell : factors) {
      if (base_pow(g, (q_ - 1) / ell) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen_ = g;
      break;
    }
  }
  if (!gen_) throw std::logic_error("no primitive element found");

  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = static_cast<std::uint16_t>(x);
    exp_[i + (q_ - 1)] = static_cast<std::uint16_t>(x);
    log_[x] = static_cast<std::uint16_t>(i);
    x = base_mul(x, gen_);
  }
  if (x != 1) throw std::logic_error("generator order mismatch");

  if (q_ <= kAddTableMax && kind_ == FieldKind::OddExtension) {
    add_.assign(std::size_t(q_) * q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) {
        auto da = index_digits(a, p_, r_), db = index_digits(b, p_, r_);
        for (std::uint32_t i = 0; i < r_; ++i) da[i] = (da[i] + db[i]) % p_;
        add_[std::size_t(a) * q_ + b] =
            static_cast<std::uint16_t>(digits_index(da, p_, r_));
      }
  }

  inv_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a)
    inv_[a] = static_cast<std::uint16_t>(
        exp_[(std::uint64_t(log_[a]) * (q_ - 2)) % (q_ - 1)]);

  if (q_ <= 16) small_ = std::make_shared<kernels::SmallField>(
      kernels::SmallField::build(*this));
}

Elem Field::add(Elem a, Elem b) const {
  check(a);
  check(b);
  switch (kind_) {
    case FieldKind::Prime:
      return (a + b) % p_;
    case FieldKind::CharTwo:
      return a ^ b;
    case FieldKind::OddExtension: {
      if (!add_.empty()) return add_[std::size_t(a) * q_ + b];
      Elem res = 0, place = 1;
      while (a || b) {
        res += ((a % p_ + b % p_) % p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
      }
      return res;
    }
  }
  return 0;  // unreachable
}

Elem Field::neg(Elem a) const {
  check(a);
  switch (kind_) {
    case FieldKind::Prime:
      return (p_ - a) % p_;
    case FieldKind::CharTwo:
      return a;
    case FieldKind::OddExtension: {
      Elem res = 0, place = 1;
      while (a) {
        Elem d = a % p_;
        res += (d ? p_ - d : 0) * place;
        a /= p_;
        place *= p_;
      }
      return res;
    }
  }
  return 0;  // unreachable
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  check(a);
  check(b);
  if (!a || !b) return 0;
  return exp_[std::uint32_t(log_[a]) + log_[b]];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  check(a);
  if (!a) return e == 0 ? 1 : 0;
  std::uint64_t em = e % (q_ - 1);
  return exp_[(std::uint64_t(log_[a]) * em) % (q_ - 1)];
}

Elem Field::inv_pow(Elem a) const {
  check(a);
  return inv_[a];
}

int Field::quad_char(Elem a) const {
  if (kind_ == FieldKind::CharTwo)
    throw std::domain_error("quadratic character undefined in characteristic 2");
  check(a);
  if (!a) return 0;
  return (log_[a] & 1) ? -1 : 1;
}

Elem Field::abs_trace(Elem a) const {
  check(a);
  Elem acc = a;
  Elem t = a;
  for (std::uint32_t i = 1; i < r_; ++i) {
    t = pow(t, p_);
    acc = add(acc, t);
  }
  return acc;
}

std::vector<Elem> Field::enumerate() const {
  std::vector<Elem> all(q_);
  for (std::uint32_t i = 0; i < q_; ++i) all[i] = i;
  return all;
}

std::string Field::to_string(Elem a, bool symbolic) const {
  check(a);
  if (!symbolic || r_ == 1 || a < p_) return std::to_string(a);
  std::string out;
  auto d = index_digits(a, p_, r_);
  for (int i = static_cast<int>(r_) - 1; i >= 0; --i) {
    if (!d[i]) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]);
      out += i == 1 ? "g" : "g^" + std::to_string(i);
    }
  }
  return out;
}

std::string Field::spec_string() const {
  if (r_ == 1) return std::to_string(p_);
  std::string out = std::to_string(p_) + "^" + std::to_string(r_) + ":";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(modulus_[i]);
  }
  return out;
}

Field Field::parse(std::string_view spec) {
  std::string_view base = spec, mod_part;
  if (auto colon = spec.find(':'); colon != std::string_view::npos) {
    base = spec.substr(0, colon);
    mod_part = spec.substr(colon + 1);
  }
  std::uint32_t p = 0, r = 0;
  if (auto caret = base.find('^'); caret != std::string_view::npos) {
    p = static_cast<std::uint32_t>(parse_uint(base.substr(0, caret), "characteristic"));
    r = static_cast<std::uint32_t>(parse_uint(base.substr(caret + 1), "extension degree"));
  } else {
    // Bare prime power: factor it.
    std::uint64_t n = parse_uint(base, "field size");
    if (n < 3 || n > kMaxQ)
      throw std::invalid_argument("field size out of supported range");
    std::uint32_t f = 0;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
      if (n % d == 0) {
        f = d;
        break;
      }
    if (!f) {
      p = static_cast<std::uint32_t>(n);
      r = 1;
    } else {
      p = f;
      r = 0;
      while (n % p == 0) {
        n /= p;
        ++r;
      }
      if (n != 1)
        throw std::invalid_argument("field size is not a prime power");
    }
  }
  std::vector<std::uint32_t> modulus;
  if (!mod_part.empty()) {
    std::size_t pos = 0;
    while (pos <= mod_part.size()) {
      auto comma = mod_part.find(',', pos);
      auto piece = mod_part.substr(
          pos, comma == std::string_view::npos ? mod_part.size() - pos
                                               : comma - pos);
      modulus.push_back(
          static_cast<std::uint32_t>(parse_uint(piece, "modulus coefficient")));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return Field(p, r, std::move(modulus));
}

}  // namespace cmap
