#pragma once

#include "polar/bits.hpp"
#include "polar/rng.hpp"

namespace polar {

// BI-AWGN channel with BPSK mapping 0 -> +1, 1 -> -1.
// SNR convention is Eb/N0 over the information rate:
//   sigma^2 = 1 / (2 * rate * 10^(ebn0_db / 10)).
struct ChannelParams {
  double ebn0_db = 0.0;
  double rate = 0.5;
  double sigma = 1.0;

  static ChannelParams from_ebn0(double ebn0_db, double rate);
};

double ebn0_db_to_sigma(double ebn0_db, double rate);

// y_i = (1 - 2 x_i) + n_i, n_i iid Gaussian(0, sigma^2) drawn from rng.
RealVec transmit(const BitVec& x, const ChannelParams& params, FrameRng& rng);

// L_i = 2 y_i / sigma^2.
LlrVec channel_llr(const RealVec& y, const ChannelParams& params);

}  // namespace polar
