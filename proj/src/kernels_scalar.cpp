#include "cmap/kernels.hpp"

namespace cmap::kernels {
namespace {

void compose(std::uint8_t* dst, const std::uint8_t* src,
             const std::uint8_t* lut) {
  for (unsigned i = 0; i < 16; ++i) dst[i] = lut[src[i]];
}

void compose_batch(std::uint8_t* dst, const std::uint8_t* src,
                   const std::uint8_t* luts, unsigned n) {
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < 16; ++i) dst[16 * j + i] = luts[16 * j + src[i]];
}

std::uint32_t value_mask(const std::uint8_t* t, unsigned q) {
  std::uint32_t m = 0;
  for (unsigned i = 0; i < q; ++i) m |= 1u << t[i];
  return m;
}

std::uint32_t plus_identity_mask(const SmallField& f, const std::uint8_t* t) {
  std::uint32_t m = 0;
  for (unsigned i = 0; i < f.q; ++i) m |= 1u << f.add[t[i]][i];
  return m;
}

std::uint64_t pack(const std::uint8_t* t, unsigned q) {
  std::uint64_t key = 0;
  for (unsigned i = 0; i < q; ++i)
    key |= static_cast<std::uint64_t>(t[i]) << (4 * i);
  return key;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", compose, compose_batch, value_mask,
                       plus_identity_mask, pack};
  return ops;
}

}  // namespace cmap::kernels
