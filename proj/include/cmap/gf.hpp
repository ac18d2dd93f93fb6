#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmap {

// Element of GF(p^r), encoded as its index in [0, q): the base-p digits of the
// index are the coefficients of the element in the polynomial basis 1, g, ...,
// g^{r-1}, low digit first.  For prime fields this is the usual residue.
using Elem = std::uint32_t;

// Thrown when a request exceeds a documented size/budget cap (as opposed to a
// malformed argument, which is std::invalid_argument).
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace kernels {
struct SmallField;
}

enum class FieldKind : std::uint8_t { Prime, CharTwo, OddExtension };

// GF(p^r), 3 <= q = p^r <= 2^16.  Multiplication runs on log/exp tables over a
// fixed primitive element; inversion is the total map c -> c^{q-2} (0 -> 0).
class Field {
 public:
  // modulus = coefficients c_0..c_r of a monic irreducible of degree r over
  // GF(p), ascending.  Empty -> smallest irreducible in the lexicographic
  // order that compares (c_0, ..., c_{r-1}) with c_0 most significant.
  Field(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus = {});

  // "p" | "p^r" | "q" (prime power, auto-factored) with optional ":c0,c1,...,cr".
  static Field parse(std::string_view spec);

  std::uint32_t p() const { return p_; }
  std::uint32_t r() const { return r_; }
  std::uint32_t q() const { return q_; }
  FieldKind kind() const { return kind_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }  // fixed primitive element

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;  // pow(0,0) = 1
  Elem inv_pow(Elem a) const;               // a^{q-2}; total, 0 -> 0

  // Quadratic character: 0 -> 0, squares -> +1, non-squares -> -1.
  // Defined for odd q only; throws std::domain_error for even q.
  int quad_char(Elem a) const;

  // Absolute trace to GF(p); the result is a prime-subfield index (< p).
  Elem abs_trace(Elem a) const;

  std::vector<Elem> enumerate() const;  // 0, 1, ..., q-1

  // "5" or, symbolic, "g^2+g+1" (prime fields always print the index).
  std::string to_string(Elem a, bool symbolic = false) const;
  std::string spec_string() const;  // canonical "p^r:c0,...,cr"

  // Byte-table context for the q <= 16 kernels; nullptr for larger fields.
  const kernels::SmallField* small() const { return small_.get(); }

 private:
  void check(Elem a) const {
    if (a >= q_) throw std::invalid_argument("element index out of range");
  }

  std::uint32_t p_, r_, q_;
  FieldKind kind_;
  std::vector<std::uint32_t> modulus_;
  Elem gen_;
  std::vector<std::uint16_t> exp_;  // exp_[i] = gen^i, i in [0, q-1)
  std::vector<std::uint16_t> log_;  // inverse of exp_ on [1, q); log_[0] unused
  std::vector<std::uint16_t> inv_;  // inv_[a] = a^{q-2}
  std::vector<std::uint16_t> add_;  // full q*q table when q <= 256, else empty
  std::shared_ptr<const kernels::SmallField> small_;
};

}  // namespace cmap
