#include "sc_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "polar/sc_decoder.hpp"

namespace polar::detail {

// All inputs are finite and pre-clamped to +-kLlrClamp, so the fast-math
// vector paths never see NaN or infinity.

void f_stage(const double* a, const double* b, double* out, int n) {
  for (int i = 0; i < n; ++i) {
    double aa = std::fabs(a[i]);
    double ab = std::fabs(b[i]);
    double lo = std::min(aa, ab);
    double hi = std::max(aa, ab);
    double x = std::exp(-(hi + lo));
    double y = std::exp(lo - hi);
    double mag = lo + std::log((1.0 + x) / (1.0 + y));
    double sgn = std::copysign(1.0, a[i]) * std::copysign(1.0, b[i]);
    out[i] = std::clamp(sgn * mag, -kLlrClamp, kLlrClamp);
  }
}

void g_stage(const double* a, const double* b, const std::uint8_t* u,
             double* out, int n) {
  for (int i = 0; i < n; ++i) {
    double sgn = 1.0 - 2.0 * u[i];
    out[i] = std::clamp(b[i] + sgn * a[i], -kLlrClamp, kLlrClamp);
  }
}

}  // namespace polar::detail
