#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace cmap {
class Field;
}

namespace cmap::kernels {

// All-table byte context for a field with q <= 16.  A value table is 16 bytes
// (entries past q are ignored by every kernel), so one table is one XMM lane
// set and composition through a lookup table is a single PSHUFB.
struct SmallField {
  std::uint8_t q = 0;
  std::uint8_t p = 0;
  bool char2 = false;
  bool prime = false;
  alignas(16) std::uint8_t add[16][16] = {};
  alignas(16) std::uint8_t sub[16][16] = {};  // sub[a][b] = a - b
  alignas(16) std::uint8_t mul[16][16] = {};
  alignas(16) std::uint8_t inv[16] = {};  // x^{q-2}
  // step[c][y] = inv[y + c]: one inner step of a continued-inversion chain.
  alignas(16) std::uint8_t step[16][16] = {};

  static SmallField build(const Field& f);  // requires f.q() <= 16
};

using Table = std::array<std::uint8_t, 16>;

// One kernel tier.  Functions only ever read/write the first 16 bytes of each
// table argument and only the first q lanes are meaningful.
struct Ops {
  const char* name;
  // dst[i] = lut[src[i]] for i < 16; dst may alias neither src nor lut.
  void (*compose)(std::uint8_t* dst, const std::uint8_t* src,
                  const std::uint8_t* lut);
  // Same through n consecutive 16-byte luts: dst[j*16+i] = luts[j*16+src[i]].
  void (*compose_batch)(std::uint8_t* dst, const std::uint8_t* src,
                        const std::uint8_t* luts, unsigned n);
  // OR of 1 << t[i] over i < q.
  std::uint32_t (*value_mask)(const std::uint8_t* t, unsigned q);
  // OR of 1 << (t[i] + i) over i < q, + in the field.
  std::uint32_t (*plus_identity_mask)(const SmallField& f,
                                      const std::uint8_t* t);
  // sum of t[i] << 4i over i < q: lossless nibble pack, the dedup key.
  std::uint64_t (*pack)(const std::uint8_t* t, unsigned q);
};

const Ops& scalar_ops();
const Ops& ssse3_ops();  // valid only if cpu_has_ssse3()
const Ops& avx2_ops();   // valid only if cpu_has_avx2()

bool cpu_has_ssse3();
bool cpu_has_avx2();

// Best tier for this CPU, chosen once.  CMAP_KERNELS=scalar|ssse3|avx2 in the
// environment forces a tier (falling back to the best available at or below).
const Ops& ops();

// Every tier usable on this CPU, scalar first — the equivalence-test set.
std::vector<const Ops*> available_ops();

inline void unpack(std::uint64_t key, unsigned q, std::uint8_t* t) {
  for (unsigned i = 0; i < q; ++i) t[i] = (key >> (4 * i)) & 0xF;
}

inline bool table_is_permutation(const SmallField& f, const std::uint8_t* t) {
  return std::popcount(ops().value_mask(t, f.q)) == f.q;
}

inline bool table_is_complete(const SmallField& f, const std::uint8_t* t) {
  return std::popcount(ops().value_mask(t, f.q)) == f.q &&
         std::popcount(ops().plus_identity_mask(f, t)) == f.q;
}

}  // namespace cmap::kernels
