#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "cmap/gf.hpp"
#include "cmap/kernels.hpp"

namespace cmap::kernels {

bool cpu_has_ssse3() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("ssse3");
#else
  return false;
#endif
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const Ops& pick() {
  const char* force = std::getenv("CMAP_KERNELS");
  if (force) {
    std::string_view want(force);
    if (want == "scalar") return scalar_ops();
    if (want == "ssse3" && cpu_has_ssse3()) return ssse3_ops();
    if (want == "avx2" && cpu_has_avx2()) return avx2_ops();
    // Unknown or unavailable: fall through to the best tier.
  }
  if (cpu_has_avx2()) return avx2_ops();
  if (cpu_has_ssse3()) return ssse3_ops();
  return scalar_ops();
}

}  // namespace

const Ops& ops() {
  static const Ops& chosen = pick();
  return chosen;
}

std::vector<const Ops*> available_ops() {
  std::vector<const Ops*> all{&scalar_ops()};
  if (cpu_has_ssse3()) all.push_back(&ssse3_ops());
  if (cpu_has_avx2()) all.push_back(&avx2_ops());
  return all;
}

SmallField SmallField::build(const Field& f) {
  if (f.q() > 16)
    throw std::invalid_argument("byte-table context requires q <= 16");
  SmallField s;
  s.q = static_cast<std::uint8_t>(f.q());
  s.p = static_cast<std::uint8_t>(f.p());
  s.char2 = f.p() == 2;
  s.prime = f.r() == 1;
  for (Elem a = 0; a < f.q(); ++a) {
    s.inv[a] = static_cast<std::uint8_t>(f.inv_pow(a));
    for (Elem b = 0; b < f.q(); ++b) {
      s.add[a][b] = static_cast<std::uint8_t>(f.add(a, b));
      s.sub[a][b] = static_cast<std::uint8_t>(f.sub(a, b));
      s.mul[a][b] = static_cast<std::uint8_t>(f.mul(a, b));
    }
  }
  for (Elem c = 0; c < f.q(); ++c)
    for (Elem y = 0; y < f.q(); ++y) s.step[c][y] = s.inv[s.add[y][c]];
  return s;
}

}  // namespace cmap::kernels
