#pragma once

#include <cstdint>

namespace polar {

struct BinomialCi {
  double lo = 0.0;
  double hi = 1.0;
};

// Exact (Clopper-Pearson) two-sided binomial confidence interval.
BinomialCi clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                           double confidence = 0.95);

}  // namespace polar
