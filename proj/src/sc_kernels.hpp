// Internal butterfly stage kernels. Branch-free loops compiled with vector
// math so the whole LLR stage runs through SIMD exp/log. Results agree with
// the scalar f_llr/g_llr to well below the decoder's 1e-9 contract.
#pragma once

#include <cstdint>

namespace polar::detail {

// out[i] = clamp(f(a[i], b[i])), the exact check-node combine.
void f_stage(const double* a, const double* b, double* out, int n);

// out[i] = clamp(b[i] + (1 - 2 u[i]) a[i]).
void g_stage(const double* a, const double* b, const std::uint8_t* u,
             double* out, int n);

}  // namespace polar::detail
