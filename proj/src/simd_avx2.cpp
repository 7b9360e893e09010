#include <immintrin.h>

#include <vector>

#include "edgestab/simd.hpp"

namespace edgestab::simd::avx2 {

void horner_many(std::span<const double> coeffs, std::size_t count, Complex s,
                 std::span<double> out_re, std::span<double> out_im) {
  if (count == 0) return;
  const std::size_t powers = coeffs.size() / count;
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d ar = _mm256_loadu_pd(&coeffs[(powers - 1) * count + i]);
    __m256d ai = _mm256_setzero_pd();
    for (std::size_t l = powers - 1; l-- > 0;) {
      const __m256d c = _mm256_loadu_pd(&coeffs[l * count + i]);
      const __m256d nr = _mm256_fmadd_pd(ar, sr, _mm256_fnmadd_pd(ai, si, c));
      const __m256d ni = _mm256_fmadd_pd(ar, si, _mm256_mul_pd(ai, sr));
      ar = nr;
      ai = ni;
    }
    _mm256_storeu_pd(&out_re[i], ar);
    _mm256_storeu_pd(&out_im[i], ai);
  }
  if (i < count) {
    const std::size_t rest = count - i;
    // tail through the scalar kernel on a compacted copy
    double tail[4 * 64];
    double* buf = tail;
    std::vector<double> heap;
    if (powers * rest > sizeof(tail) / sizeof(double)) {
      heap.resize(powers * rest);
      buf = heap.data();
    }
    for (std::size_t l = 0; l < powers; ++l)
      for (std::size_t r = 0; r < rest; ++r) buf[l * rest + r] = coeffs[l * count + i + r];
    scalar::horner_many(std::span<const double>(buf, powers * rest), rest, s,
                        out_re.subspan(i, rest), out_im.subspan(i, rest));
  }
}

void horner_points(std::span<const double> coeffs, std::span<const double> z_re,
                   std::span<const double> z_im, std::span<double> out_re,
                   std::span<double> out_im) {
  const std::size_t powers = coeffs.size();
  const std::size_t n = z_re.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d sr = _mm256_loadu_pd(&z_re[k]);
    const __m256d si = _mm256_loadu_pd(&z_im[k]);
    __m256d ar = _mm256_set1_pd(coeffs[powers - 1]);
    __m256d ai = _mm256_setzero_pd();
    for (std::size_t l = powers - 1; l-- > 0;) {
      const __m256d c = _mm256_set1_pd(coeffs[l]);
      const __m256d nr = _mm256_fmadd_pd(ar, sr, _mm256_fnmadd_pd(ai, si, c));
      const __m256d ni = _mm256_fmadd_pd(ar, si, _mm256_mul_pd(ai, sr));
      ar = nr;
      ai = ni;
    }
    _mm256_storeu_pd(&out_re[k], ar);
    _mm256_storeu_pd(&out_im[k], ai);
  }
  if (k < n)
    scalar::horner_points(coeffs, z_re.subspan(k), z_im.subspan(k), out_re.subspan(k),
                          out_im.subspan(k));
}

}  // namespace edgestab::simd::avx2
