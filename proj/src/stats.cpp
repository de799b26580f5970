#include "polar/stats.hpp"

#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace polar {

BinomialCi clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                           double confidence) {
  if (trials == 0 || successes > trials)
    throw std::invalid_argument("clopper_pearson: need successes <= trials, trials > 0");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("clopper_pearson: confidence must be in (0, 1)");
  const double tail = (1.0 - confidence) / 2.0;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  BinomialCi ci;
  ci.lo = (successes == 0) ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, tail);
  ci.hi = (successes == trials)
              ? 1.0
              : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - tail);
  return ci;
}

}  // namespace polar
