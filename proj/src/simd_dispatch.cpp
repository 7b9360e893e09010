#include <atomic>

#include "edgestab/simd.hpp"

namespace edgestab::simd {

namespace {

Level detect() {
#if defined(EDGESTAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Level::Avx2;
#endif
  return Level::Scalar;
}

std::atomic<int>& forced() {
  static std::atomic<int> value{-1};
  return value;
}

}  // namespace

std::string_view to_string(Level level) {
  return level == Level::Avx2 ? "avx2" : "scalar";
}

bool supported(Level level) {
  if (level == Level::Scalar) return true;
  static const Level best = detect();
  return best == Level::Avx2;
}

Level active_level() {
  const int f = forced().load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Level>(f);
  static const Level best = detect();
  return best;
}

void force_level(Level level) {
  forced().store(static_cast<int>(supported(level) ? level : Level::Scalar));
}

void reset_level() { forced().store(-1); }

void horner_many(std::span<const double> coeffs, std::size_t count, Complex s,
                 std::span<double> out_re, std::span<double> out_im) {
#ifdef EDGESTAB_HAVE_AVX2
  if (active_level() == Level::Avx2 && count >= 4)
    return avx2::horner_many(coeffs, count, s, out_re, out_im);
#endif
  scalar::horner_many(coeffs, count, s, out_re, out_im);
}

void horner_points(std::span<const double> coeffs, std::span<const double> z_re,
                   std::span<const double> z_im, std::span<double> out_re,
                   std::span<double> out_im) {
#ifdef EDGESTAB_HAVE_AVX2
  if (active_level() == Level::Avx2)
    return avx2::horner_points(coeffs, z_re, z_im, out_re, out_im);
#endif
  scalar::horner_points(coeffs, z_re, z_im, out_re, out_im);
}

}  // namespace edgestab::simd
