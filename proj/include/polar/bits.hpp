#pragma once

#include <cstdint>
#include <vector>

namespace polar {

// Bit vectors hold one bit per byte; every element must be 0 or 1.
using BitVec = std::vector<std::uint8_t>;

using RealVec = std::vector<double>;
using LlrVec = RealVec;

}  // namespace polar
