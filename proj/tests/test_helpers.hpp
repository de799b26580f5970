#pragma once

#include <numeric>

#include "polar/channel.hpp"
#include "polar/code_spec.hpp"
#include "polar/crc.hpp"
#include "polar/encode.hpp"
#include "polar/rng.hpp"

namespace testutil {

// Spec with every position unfrozen.
inline polar::CodeSpec full_info_spec(int n) {
  polar::CodeSpec spec;
  spec.n = n;
  spec.N = 1 << n;
  spec.K = spec.N;
  spec.r = 0;
  spec.info_set.resize(spec.N);
  std::iota(spec.info_set.begin(), spec.info_set.end(), 0);
  spec.validate();
  return spec;
}

inline polar::CodeSpec spec_with_info(int n, std::vector<int> info, int r = 0) {
  polar::CodeSpec spec;
  spec.n = n;
  spec.N = 1 << n;
  spec.K = static_cast<int>(info.size()) - r;
  spec.r = r;
  spec.info_set = std::move(info);
  spec.validate();
  return spec;
}

inline polar::BitVec random_bits(polar::FrameRng& rng, int len) {
  polar::BitVec bits(len);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_bit());
  return bits;
}

// Transmitted frame plus its channel LLRs.
struct TestFrame {
  polar::BitVec payload;
  polar::BitVec u;
  polar::LlrVec llrs;
};

inline TestFrame make_test_frame(const polar::CodeSpec& spec,
                                 const polar::CrcSpec& crc,
                                 const polar::ChannelParams& params,
                                 polar::FrameRng& rng) {
  TestFrame f;
  polar::BitVec msg = random_bits(rng, spec.K);
  f.payload = crc_append(crc, msg);
  f.u = insert_payload(spec, f.payload);
  polar::BitVec x = encode(spec, f.u);
  polar::RealVec y = transmit(x, params, rng);
  f.llrs = channel_llr(y, params);
  return f;
}

}  // namespace testutil
