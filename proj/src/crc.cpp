#include "polar/crc.hpp"

#include <stdexcept>

namespace polar {

void CrcSpec::validate() const {
  if (r < 1 || r > 64)
    throw std::invalid_argument("CrcSpec: need 1 <= r <= 64");
  if (r < 64 && poly >= (1ull << r))
    throw std::invalid_argument("CrcSpec: poly has coefficients above x^{r-1}");
}

std::uint64_t crc_remainder(const CrcSpec& spec, const BitVec& message) {
  spec.validate();
  if (message.empty())
    throw std::invalid_argument("crc_remainder: empty message");
  const std::uint64_t top = 1ull << (spec.r - 1);
  const std::uint64_t mask = (spec.r == 64) ? ~0ull : (1ull << spec.r) - 1;
  std::uint64_t reg = 0;
  for (std::uint8_t bit : message) {
    if (bit > 1) throw std::invalid_argument("crc_remainder: bits must be 0 or 1");
    std::uint64_t feedback = ((reg & top) ? 1u : 0u) ^ bit;
    reg = (reg << 1) & mask;
    if (feedback) reg ^= spec.poly;
  }
  return reg;
}

BitVec crc_append(const CrcSpec& spec, const BitVec& message) {
  std::uint64_t rem = crc_remainder(spec, message);
  BitVec out = message;
  out.reserve(message.size() + spec.r);
  for (int b = spec.r - 1; b >= 0; --b)
    out.push_back(static_cast<std::uint8_t>((rem >> b) & 1));
  return out;
}

bool crc_check(const CrcSpec& spec, const BitVec& codeword) {
  spec.validate();
  if (static_cast<int>(codeword.size()) < spec.r + 1)
    throw std::invalid_argument("crc_check: codeword shorter than r+1");
  BitVec message(codeword.begin(), codeword.end() - spec.r);
  std::uint64_t rem = crc_remainder(spec, message);
  for (int b = 0; b < spec.r; ++b) {
    std::uint8_t expect = static_cast<std::uint8_t>((rem >> (spec.r - 1 - b)) & 1);
    if (codeword[message.size() + b] != expect) return false;
  }
  return true;
}

}  // namespace polar
