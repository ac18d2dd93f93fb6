#if defined(__x86_64__) || defined(__i386__)
#pragma GCC target("avx2")

#include <immintrin.h>

#include "kernels_x86_common.h"

namespace cmap::kernels {
namespace {

void compose(std::uint8_t* dst, const std::uint8_t* src,
             const std::uint8_t* lut) {
  x86::compose16(dst, src, lut);
}

// Two luts per iteration: broadcast src across both 128-bit lanes, shuffle a
// pair of tables at once.
void compose_batch(std::uint8_t* dst, const std::uint8_t* src,
                   const std::uint8_t* luts, unsigned n) {
  __m256i s = _mm256_broadcastsi128_si256(
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(src)));
  unsigned j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256i l =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(luts + 16 * j));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + 16 * j),
                        _mm256_shuffle_epi8(l, s));
  }
  if (j < n) x86::compose16(dst + 16 * j, src, luts + 16 * j);
}

std::uint32_t value_mask(const std::uint8_t* t, unsigned q) {
  return x86::value_mask16(t, q);
}

std::uint32_t plus_identity_mask(const SmallField& f, const std::uint8_t* t) {
  return x86::plus_identity_mask16(f, t);
}

std::uint64_t pack(const std::uint8_t* t, unsigned q) {
  return x86::pack16(t, q);
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{"avx2", compose, compose_batch, value_mask,
                       plus_identity_mask, pack};
  return ops;
}

}  // namespace cmap::kernels

#else

#include "cmap/kernels.hpp"

namespace cmap::kernels {
const Ops& avx2_ops() { return scalar_ops(); }
}  // namespace cmap::kernels

#endif
