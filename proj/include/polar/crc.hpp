#pragma once

#include <cstdint>

#include "polar/bits.hpp"

namespace polar {

// r-bit CRC with generator g(x) = x^r + (bits of `poly`). `poly` holds the
// coefficients of x^{r-1}..x^0; the leading x^r term is implicit.
// The default is g(x) = x^16 + x^15 + x^2 + 1, i.e. r=16, poly=0x8005.
//
// Conventions: pure bit-level MSB-first processing, zero initial register,
// no reflection, no final xor. The appended bits are the remainder of
// message(x) * x^r mod g(x).
struct CrcSpec {
  int r = 16;
  std::uint64_t poly = 0x8005;

  void validate() const;
};

std::uint64_t crc_remainder(const CrcSpec& spec, const BitVec& message);

// message followed by the r remainder bits, MSB first.
BitVec crc_append(const CrcSpec& spec, const BitVec& message);

// codeword = message | crc; pass iff the recomputed remainder over the
// leading bits equals the trailing r bits.
bool crc_check(const CrcSpec& spec, const BitVec& codeword);

}  // namespace polar
