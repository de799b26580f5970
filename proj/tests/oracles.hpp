// Test-only reference implementations, kept independent of the library's
// computation paths: dense-matrix encoding, polynomial long division,
// joint-distribution LLR combines, exhaustive SC enumeration, and a genie
// Monte-Carlo bit-channel error estimator.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "polar/bits.hpp"

namespace oracle {

// Dense G_N = F^{(x)n} built by Kronecker blocks [[G,0],[G,G]].
inline std::vector<polar::BitVec> dense_generator(int n) {
  std::vector<polar::BitVec> g{{1}};
  for (int level = 0; level < n; ++level) {
    const int m = 1 << level;
    std::vector<polar::BitVec> next(2 * m, polar::BitVec(2 * m, 0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        next[i][j] = g[i][j];
        next[i + m][j] = g[i][j];
        next[i + m][j + m] = g[i][j];
      }
    g = std::move(next);
  }
  return g;
}

inline polar::BitVec encode_dense(const polar::BitVec& u) {
  int n = 0;
  while ((1u << n) < u.size()) ++n;
  auto g = dense_generator(n);
  polar::BitVec x(u.size(), 0);
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i])
      for (size_t j = 0; j < u.size(); ++j) x[j] ^= g[i][j];
  return x;
}

// Remainder of message(x) * x^r mod g(x) by explicit long division.
// poly_below holds the coefficients of x^{r-1}..x^0 (leading x^r implicit).
inline polar::BitVec crc_long_division(const polar::BitVec& message, int r,
                                       std::uint64_t poly_below) {
  std::vector<std::uint8_t> g(r + 1);
  g[0] = 1;
  for (int b = 0; b < r; ++b)
    g[1 + b] = static_cast<std::uint8_t>((poly_below >> (r - 1 - b)) & 1);
  std::vector<std::uint8_t> work(message.begin(), message.end());
  work.insert(work.end(), r, 0);
  for (size_t i = 0; i < message.size(); ++i)
    if (work[i])
      for (int j = 0; j <= r; ++j) work[i + j] ^= g[j];
  return polar::BitVec(work.end() - r, work.end());
}

inline long double sigmoid(long double t) {
  return 1.0L / (1.0L + std::exp(-t));
}

// LLR of x0 ^ x1 from the 2-bit joint distribution.
inline double f_joint(double a, double b) {
  long double p0a = sigmoid(a), p0b = sigmoid(b);
  long double num = p0a * p0b + (1.0L - p0a) * (1.0L - p0b);
  long double den = p0a * (1.0L - p0b) + (1.0L - p0a) * p0b;
  return static_cast<double>(std::log(num / den));
}

// LLR of v from evidence b on v and evidence a on (u ^ v).
inline double g_joint(double a, double b, int u) {
  long double pa0 = sigmoid(a), pb0 = sigmoid(b);
  long double num = pb0 * (u ? 1.0L - pa0 : pa0);
  long double den = (1.0L - pb0) * (u ? pa0 : 1.0L - pa0);
  return static_cast<double>(std::log(num / den));
}

// L(u_i | llrs, prefix) with all later bits marginalized uniformly,
// by enumerating every completion. Full info set assumed.
inline double sc_llr_enumerated(const polar::LlrVec& llrs,
                                const polar::BitVec& prefix, int i) {
  const int n_bits = static_cast<int>(llrs.size());
  const int tail = n_bits - i - 1;
  long double num = 0.0L, den = 0.0L;
  polar::BitVec u(n_bits, 0);
  for (int p = 0; p < i; ++p) u[p] = prefix[p];
  for (std::uint64_t mask = 0; mask < (1ull << tail); ++mask) {
    for (int t = 0; t < tail; ++t)
      u[i + 1 + t] = static_cast<std::uint8_t>((mask >> t) & 1);
    for (int bit = 0; bit <= 1; ++bit) {
      u[i] = static_cast<std::uint8_t>(bit);
      polar::BitVec x = encode_dense(u);
      long double like = 1.0L;
      for (int j = 0; j < n_bits; ++j)
        like *= x[j] ? 1.0L - sigmoid(llrs[j]) : sigmoid(llrs[j]);
      (bit == 0 ? num : den) += like;
    }
  }
  return static_cast<double>(std::log(num / den));
}

// Genie-aided Monte-Carlo estimate of each bit-channel's decision error
// probability for the all-zero codeword over BI-AWGN. Self-contained
// natural-order SC recursion in the tanh domain.
inline std::vector<double> mc_bit_channel_error(int n, double sigma,
                                                std::uint64_t trials,
                                                std::uint64_t seed) {
  const int block = 1 << n;
  std::vector<std::uint64_t> errors(block, 0);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, sigma);

  // With the all-zero truth every partial sum is zero, so the right child
  // sees a + b and the left child the tanh combine.
  struct Rec {
    std::vector<std::uint64_t>* errors;
    void operator()(std::vector<double>& llr, int base) {
      const int m = static_cast<int>(llr.size());
      if (m == 1) {
        if (llr[0] < 0.0) (*errors)[base] += 1;
        return;
      }
      std::vector<double> half(m / 2);
      for (int i = 0; i < m / 2; ++i)
        half[i] = 2.0 * std::atanh(std::tanh(llr[i] / 2.0) *
                                   std::tanh(llr[i + m / 2] / 2.0));
      (*this)(half, base);
      for (int i = 0; i < m / 2; ++i) half[i] = llr[i] + llr[i + m / 2];
      (*this)(half, base + m / 2);
    }
  } rec{&errors};

  std::vector<double> llr(block);
  const double scale = 2.0 / (sigma * sigma);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (int i = 0; i < block; ++i) llr[i] = scale * (1.0 + noise(gen));
    rec(llr, 0);
  }
  std::vector<double> p(block);
  for (int i = 0; i < block; ++i)
    p[i] = static_cast<double>(errors[i]) / trials;
  return p;
}

}  // namespace oracle
