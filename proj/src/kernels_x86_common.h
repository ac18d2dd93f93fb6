// SSE bodies shared by the SIMD tiers.  Include after a whole-TU
// `#pragma GCC target(...)` so everything here picks up that tier's encoding.
// Not installed; internal to the two SIMD translation units.
#pragma once

#include <emmintrin.h>
#include <tmmintrin.h>

#include "cmap/kernels.hpp"

namespace cmap::kernels::x86 {

// tail_ff[q]: 0x00 in lanes < q, 0xFF above — ORing in 0xFF makes PSHUFB emit
// zero for the padding lanes.
inline __m128i tail_ff(unsigned q) {
  alignas(16) static const std::uint8_t masks[17][16] = {
#define ROW(Q)                                                              \
  {(0 >= Q) * 0xFF,  (1 >= Q) * 0xFF,  (2 >= Q) * 0xFF,  (3 >= Q) * 0xFF,  \
   (4 >= Q) * 0xFF,  (5 >= Q) * 0xFF,  (6 >= Q) * 0xFF,  (7 >= Q) * 0xFF,  \
   (8 >= Q) * 0xFF,  (9 >= Q) * 0xFF,  (10 >= Q) * 0xFF, (11 >= Q) * 0xFF, \
   (12 >= Q) * 0xFF, (13 >= Q) * 0xFF, (14 >= Q) * 0xFF, (15 >= Q) * 0xFF}
      ROW(0),  ROW(1),  ROW(2),  ROW(3),  ROW(4),  ROW(5),
      ROW(6),  ROW(7),  ROW(8),  ROW(9),  ROW(10), ROW(11),
      ROW(12), ROW(13), ROW(14), ROW(15), ROW(16),
#undef ROW
  };
  return _mm_load_si128(reinterpret_cast<const __m128i*>(masks[q]));
}

inline __m128i iota16() {
  return _mm_setr_epi8(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15);
}

inline void compose16(std::uint8_t* dst, const std::uint8_t* src,
                      const std::uint8_t* lut) {
  __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src));
  __m128i l = _mm_loadu_si128(reinterpret_cast<const __m128i*>(lut));
  _mm_storeu_si128(reinterpret_cast<__m128i*>(dst), _mm_shuffle_epi8(l, s));
}

// OR of 1 << v over the 16 lanes of v (0xFF lanes contribute nothing).
inline std::uint32_t bit_or_reduce(__m128i v) {
  const __m128i lo_bits = _mm_setr_epi8(1, 2, 4, 8, 16, 32, 64, -128, 0, 0, 0,
                                        0, 0, 0, 0, 0);
  const __m128i hi_bits = _mm_setr_epi8(0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 4, 8,
                                        16, 32, 64, -128);
  __m128i lo = _mm_shuffle_epi8(lo_bits, v);
  __m128i hi = _mm_shuffle_epi8(hi_bits, v);
  lo = _mm_or_si128(lo, _mm_srli_si128(lo, 8));
  hi = _mm_or_si128(hi, _mm_srli_si128(hi, 8));
  lo = _mm_or_si128(lo, _mm_srli_si128(lo, 4));
  hi = _mm_or_si128(hi, _mm_srli_si128(hi, 4));
  lo = _mm_or_si128(lo, _mm_srli_si128(lo, 2));
  hi = _mm_or_si128(hi, _mm_srli_si128(hi, 2));
  lo = _mm_or_si128(lo, _mm_srli_si128(lo, 1));
  hi = _mm_or_si128(hi, _mm_srli_si128(hi, 1));
  return (_mm_cvtsi128_si32(lo) & 0xFF) |
         ((_mm_cvtsi128_si32(hi) & 0xFF) << 8);
}

inline std::uint32_t value_mask16(const std::uint8_t* t, unsigned q) {
  __m128i v = _mm_loadu_si128(reinterpret_cast<const __m128i*>(t));
  return bit_or_reduce(_mm_or_si128(v, tail_ff(q)));
}

inline std::uint32_t plus_identity_mask16(const SmallField& f,
                                          const std::uint8_t* t) {
  __m128i v = _mm_loadu_si128(reinterpret_cast<const __m128i*>(t));
  __m128i sum;
  if (f.char2) {
    sum = _mm_xor_si128(v, iota16());
  } else if (f.prime) {
    // Lanes < q carry t[i] + i < 2p; one conditional subtract reduces mod p.
    sum = _mm_add_epi8(v, iota16());
    __m128i ge = _mm_cmpgt_epi8(sum, _mm_set1_epi8(static_cast<char>(f.p - 1)));
    sum = _mm_sub_epi8(sum, _mm_and_si128(ge, _mm_set1_epi8(static_cast<char>(f.p))));
  } else {
    // Odd extension (GF(9)): table walk.
    std::uint32_t m = 0;
    for (unsigned i = 0; i < f.q; ++i) m |= 1u << f.add[t[i]][i];
    return m;
  }
  return bit_or_reduce(_mm_or_si128(sum, tail_ff(f.q)));
}

inline std::uint64_t pack16(const std::uint8_t* t, unsigned q) {
  __m128i v = _mm_loadu_si128(reinterpret_cast<const __m128i*>(t));
  v = _mm_andnot_si128(tail_ff(q), v);  // zero the padding lanes
  // word k = t[2k] + 16*t[2k+1]: both nibbles of byte k of the key.
  __m128i w = _mm_maddubs_epi16(v, _mm_set1_epi16(0x1001));
  __m128i b = _mm_packus_epi16(w, _mm_setzero_si128());
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(b));
}

}  // namespace cmap::kernels::x86
