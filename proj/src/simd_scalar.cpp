#include "edgestab/simd.hpp"

namespace edgestab::simd::scalar {

void horner_many(std::span<const double> coeffs, std::size_t count, Complex s,
                 std::span<double> out_re, std::span<double> out_im) {
  if (count == 0) return;
  const std::size_t powers = coeffs.size() / count;
  const double sr = s.real();
  const double si = s.imag();
  for (std::size_t i = 0; i < count; ++i) {
    double ar = coeffs[(powers - 1) * count + i];
    double ai = 0.0;
    for (std::size_t l = powers - 1; l-- > 0;) {
      const double nr = ar * sr - ai * si + coeffs[l * count + i];
      const double ni = ar * si + ai * sr;
      ar = nr;
      ai = ni;
    }
    out_re[i] = ar;
    out_im[i] = ai;
  }
}

void horner_points(std::span<const double> coeffs, std::span<const double> z_re,
                   std::span<const double> z_im, std::span<double> out_re,
                   std::span<double> out_im) {
  const std::size_t powers = coeffs.size();
  for (std::size_t k = 0; k < z_re.size(); ++k) {
    const double sr = z_re[k];
    const double si = z_im[k];
    double ar = coeffs[powers - 1];
    double ai = 0.0;
    for (std::size_t l = powers - 1; l-- > 0;) {
      const double nr = ar * sr - ai * si + coeffs[l];
      const double ni = ar * si + ai * sr;
      ar = nr;
      ai = ni;
    }
    out_re[k] = ar;
    out_im[k] = ai;
  }
}

}  // namespace edgestab::simd::scalar
