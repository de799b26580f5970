#include "polar/encode.hpp"

#include <stdexcept>

namespace polar {

BitVec encode(const CodeSpec& spec, const BitVec& u) {
  if (static_cast<int>(u.size()) != spec.N)
    throw std::invalid_argument("encode: input must have length N");
  auto frozen = spec.frozen_mask();
  for (int i = 0; i < spec.N; ++i) {
    if (u[i] > 1) throw std::invalid_argument("encode: bits must be 0 or 1");
    if (frozen[i] && u[i] != spec.frozen_value)
      throw std::invalid_argument("encode: nonzero frozen position");
  }
  BitVec x = u;
  for (int h = 1; h < spec.N; h <<= 1)
    for (int i = 0; i < spec.N; i += 2 * h)
      for (int j = i; j < i + h; ++j) x[j] ^= x[j + h];
  return x;
}

BitVec insert_payload(const CodeSpec& spec, const BitVec& payload) {
  if (static_cast<int>(payload.size()) != spec.payload_len())
    throw std::invalid_argument("insert_payload: payload must have length K+r");
  BitVec u(spec.N, 0);
  for (size_t j = 0; j < spec.info_set.size(); ++j)
    u[spec.info_set[j]] = payload[j];
  return u;
}

BitVec extract_payload(const CodeSpec& spec, const BitVec& u) {
  if (static_cast<int>(u.size()) != spec.N)
    throw std::invalid_argument("extract_payload: input must have length N");
  BitVec payload(spec.info_set.size());
  for (size_t j = 0; j < spec.info_set.size(); ++j)
    payload[j] = u[spec.info_set[j]];
  return payload;
}

}  // namespace polar
