#include "polar/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace polar {

double ebn0_db_to_sigma(double ebn0_db, double rate) {
  if (!std::isfinite(ebn0_db))
    throw std::invalid_argument("channel: Eb/N0 must be finite");
  if (!(rate > 0.0 && rate <= 1.0))
    throw std::invalid_argument("channel: rate must be in (0, 1]");
  return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

ChannelParams ChannelParams::from_ebn0(double ebn0_db, double rate) {
  ChannelParams p;
  p.ebn0_db = ebn0_db;
  p.rate = rate;
  p.sigma = ebn0_db_to_sigma(ebn0_db, rate);
  return p;
}

RealVec transmit(const BitVec& x, const ChannelParams& params, FrameRng& rng) {
  RealVec y(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) throw std::invalid_argument("transmit: bits must be 0 or 1");
    y[i] = (1.0 - 2.0 * x[i]) + params.sigma * rng.next_gaussian();
  }
  return y;
}

LlrVec channel_llr(const RealVec& y, const ChannelParams& params) {
  if (!(params.sigma > 0.0))
    throw std::invalid_argument("channel_llr: sigma must be positive");
  const double scale = 2.0 / (params.sigma * params.sigma);
  LlrVec llr(y.size());
  for (size_t i = 0; i < y.size(); ++i) llr[i] = scale * y[i];
  return llr;
}

}  // namespace polar
