#pragma once

#include <cstdint>
#include <random>

namespace polar {

// Reproducible per-frame random stream: the triple (master_seed, frame_index,
// salt) fully determines the sequence, so frame i can be re-simulated in
// isolation and distinct frames are statistically independent.
//
// fork() derives an independent substream from the stream's identity, not
// from its current state, so forked consumers (e.g. one per decoding pass)
// see the same draws no matter how much of the parent was consumed.
class FrameRng {
 public:
  explicit FrameRng(std::uint64_t master_seed, std::uint64_t frame_index = 0,
                    std::uint64_t salt = 0);

  std::uint64_t next_u64();
  double next_unit();      // uniform on (0, 1]
  double next_gaussian();  // standard normal (Box-Muller)
  int next_bit();

  FrameRng fork(std::uint64_t salt) const;

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t frame_index() const { return frame_index_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t frame_index_;
  std::uint64_t salt_;
  std::mt19937_64 gen_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
  std::uint64_t bit_buffer_ = 0;
  int bits_left_ = 0;
};

}  // namespace polar
