#if defined(__x86_64__) || defined(__i386__)
#pragma GCC target("ssse3")

#include "kernels_x86_common.h"

namespace cmap::kernels {
namespace {

void compose(std::uint8_t* dst, const std::uint8_t* src,
             const std::uint8_t* lut) {
  x86::compose16(dst, src, lut);
}

void compose_batch(std::uint8_t* dst, const std::uint8_t* src,
                   const std::uint8_t* luts, unsigned n) {
  __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src));
  for (unsigned j = 0; j < n; ++j) {
    __m128i l =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(luts + 16 * j));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + 16 * j),
                     _mm_shuffle_epi8(l, s));
  }
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

const Ops& ssse3_ops() {
  static const Ops ops{"ssse3", compose, compose_batch, value_mask,
                       plus_identity_mask, pack};
  return ops;
}

}  // namespace cmap::kernels

#else

#include "cmap/kernels.hpp"

namespace cmap::kernels {
const Ops& ssse3_ops() { return scalar_ops(); }
}  // namespace cmap::kernels

#endif
