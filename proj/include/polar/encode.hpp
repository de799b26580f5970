#pragma once

#include "polar/bits.hpp"
#include "polar/code_spec.hpp"

namespace polar {

// x = u * G_N over GF(2) with G_N = F^{(x)n} in natural index order (no
// bit-reversal permutation). In-place butterfly, O(N log N).
// u must have length N and zeros at all frozen positions.
BitVec encode(const CodeSpec& spec, const BitVec& u);

// Scatters a K+r payload into the info-set positions; zeros elsewhere.
BitVec insert_payload(const CodeSpec& spec, const BitVec& payload);

// Gathers the info-set positions back out of a length-N vector.
BitVec extract_payload(const CodeSpec& spec, const BitVec& u);

}  // namespace polar
