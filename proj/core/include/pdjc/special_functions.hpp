#pragma once

namespace pdjc {

// ln Γ(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

// Modified Bessel function of the first kind, I_nu(x), for nu > -1 and x >= 0.
//
// Evaluated from the ascending series
//   I_nu(x) = sum_k (x/2)^(2k+nu) / (k! Gamma(k+nu+1))
// with every term formed in log-space, so the result is finite whenever
// I_nu(x) itself is representable. Summation stops once the terms are past
// their peak and a term drops below 1e-16 of the partial sum.
double bessel_i(double nu, double x);

// ln I_nu(x) from the same series; usable where I_nu(x) itself overflows.
// Returns -inf for I_nu(0) = 0 (nu > 0) and +inf for -1 < nu < 0 at x = 0.
double log_bessel_i(double nu, double x);

}  // namespace pdjc
