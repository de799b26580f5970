#include "polar/rng.hpp"

#include <cmath>

namespace polar {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t frame,
                          std::uint64_t salt) {
  std::uint64_t s = mix64(master + kGolden);
  s = mix64(s ^ (frame + kGolden));
  s = mix64(s ^ (salt + kGolden));
  return s;
}

}  // namespace

FrameRng::FrameRng(std::uint64_t master_seed, std::uint64_t frame_index,
                   std::uint64_t salt)
    : master_seed_(master_seed),
      frame_index_(frame_index),
      salt_(salt),
      gen_(derive_seed(master_seed, frame_index, salt)) {}

std::uint64_t FrameRng::next_u64() { return gen_(); }

double FrameRng::next_unit() {
  // 53-bit mantissa, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double FrameRng::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  double u1 = next_unit();
  double u2 = next_unit();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * M_PI * u2;
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_gaussian_ = true;
  return radius * std::cos(angle);
}

int FrameRng::next_bit() {
  if (bits_left_ == 0) {
    bit_buffer_ = next_u64();
    bits_left_ = 64;
  }
  int bit = static_cast<int>(bit_buffer_ & 1);
  bit_buffer_ >>= 1;
  --bits_left_;
  return bit;
}

FrameRng FrameRng::fork(std::uint64_t salt) const {
  return FrameRng(master_seed_, frame_index_,
                  mix64(salt_ + kGolden) ^ (salt + 1));
}

}  // namespace polar
