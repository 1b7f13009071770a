#include "pdjc/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pdjc/errors.hpp"

namespace pdjc {

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("ln_gamma: argument must be finite and > 0, got " + std::to_string(x));
  }
  return std::lgamma(x);
}

double log_bessel_i(double nu, double x) {
  if (!(nu > -1.0) || !std::isfinite(nu)) {
    throw DomainError("bessel_i: order must be > -1, got " + std::to_string(nu));
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_i: argument must be finite and >= 0, got " + std::to_string(x));
  }
  if (x == 0.0) {
    if (nu == 0.0) return 0.0;
    return nu > 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  }

  const double log_half_x = std::log(0.5 * x);
  const double quarter_x_sq = 0.25 * x * x;
  constexpr double kRelStop = 1e-16;

  // Running log-sum-exp: sum = exp(scale) * acc.
  double scale = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (int k = 0;; ++k) {
    const double log_term = (2.0 * k + nu) * log_half_x - std::lgamma(k + 1.0) -
                            std::lgamma(k + nu + 1.0);
    if (log_term > scale) {
      acc = acc * std::exp(scale - log_term) + 1.0;
      scale = log_term;
    } else {
      acc += std::exp(log_term - scale);
    }
    // Terms increase while (x/2)^2 > (k+1)(k+nu+1); stop only on the decreasing side.
    const bool decreasing = quarter_x_sq < (k + 1.0) * (k + nu + 1.0);
    if (decreasing && log_term - scale < std::log(kRelStop * acc)) break;
  }
  return scale + std::log(acc);
}

double bessel_i(double nu, double x) { return std::exp(log_bessel_i(nu, x)); }

}  // namespace pdjc
