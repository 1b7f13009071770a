#include "pdjc/algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pdjc/errors.hpp"
#include "pdjc/special_functions.hpp"

namespace pdjc {

namespace {

template <class Scalar>
Scalar coefficient(Ladder direction, int n, Scalar lambda) {
  const Scalar m2 = static_cast<Scalar>(n - (n % 2));  // 2m
  const bool even = n % 2 == 0;
  using std::sqrt;
  if (direction == Ladder::lower) {
    return even ? sqrt(m2) : sqrt(m2 + 2 * lambda + 1);
  }
  return even ? sqrt(m2 + 2 * lambda + 1) : sqrt(m2 + 2);
}

void check_level(int n) {
  if (n < 0) throw DomainError("Fock level must be >= 0, got " + std::to_string(n));
}

}  // namespace

DeformationParam::DeformationParam(double lambda) : lambda_(lambda) {
  if (!(lambda > -0.5) || !std::isfinite(lambda)) {
    throw DomainError("deformation parameter must be finite and > -1/2, got " +
                      std::to_string(lambda));
  }
}

double ladder_coefficient(Ladder direction, int n, DeformationParam lambda) {
  check_level(n);
  return coefficient<double>(direction, n, lambda.value());
}

double number_operator_eigenvalue(int n, DeformationParam lambda) {
  check_level(n);
  return n % 2 == 0 ? static_cast<double>(n) : n + 2.0 * lambda.value();
}

FockLadder::FockLadder(DeformationParam lambda, int n_trunc) : lambda_(lambda), n_trunc_(n_trunc) {
  if (n_trunc < 1) throw DomainError("n_trunc must be >= 1, got " + std::to_string(n_trunc));
}

template <class Scalar>
FockLadder::Matrix<Scalar> FockLadder::lowering() const {
  Matrix<Scalar> a = Matrix<Scalar>::Zero(dim(), dim());
  const auto lam = static_cast<Scalar>(lambda_.value());
  for (int n = 1; n <= n_trunc_; ++n) a(n - 1, n) = coefficient<Scalar>(Ladder::lower, n, lam);
  return a;
}

template <class Scalar>
FockLadder::Matrix<Scalar> FockLadder::raising() const {
  Matrix<Scalar> ad = Matrix<Scalar>::Zero(dim(), dim());
  const auto lam = static_cast<Scalar>(lambda_.value());
  for (int n = 0; n < n_trunc_; ++n) ad(n + 1, n) = coefficient<Scalar>(Ladder::raise, n, lam);
  return ad;
}

template <class Scalar>
FockLadder::Matrix<Scalar> FockLadder::parity() const {
  Vector<Scalar> d(dim());
  for (int n = 0; n <= n_trunc_; ++n) d(n) = n % 2 == 0 ? Scalar(1) : Scalar(-1);
  return d.asDiagonal();
}

template <class Scalar>
FockLadder::Matrix<Scalar> FockLadder::number() const {
  return Vector<Scalar>::LinSpaced(dim(), Scalar(0), static_cast<Scalar>(n_trunc_)).asDiagonal();
}

template <class Scalar>
FockLadder::Vector<Scalar> FockLadder::pair_number_diagonal() const {
  Vector<Scalar> d(dim());
  const auto lam = static_cast<Scalar>(lambda_.value());
  for (int n = 0; n <= n_trunc_; ++n) {
    d(n) = n % 2 == 0 ? static_cast<Scalar>(n) : static_cast<Scalar>(n) + 2 * lam;
  }
  return d;
}

template FockLadder::Matrix<double> FockLadder::lowering<double>() const;
template FockLadder::Matrix<double> FockLadder::raising<double>() const;
template FockLadder::Matrix<double> FockLadder::parity<double>() const;
template FockLadder::Matrix<double> FockLadder::number<double>() const;
template FockLadder::Vector<double> FockLadder::pair_number_diagonal<double>() const;
template FockLadder::Matrix<long double> FockLadder::lowering<long double>() const;
template FockLadder::Matrix<long double> FockLadder::raising<long double>() const;
template FockLadder::Matrix<long double> FockLadder::parity<long double>() const;
template FockLadder::Matrix<long double> FockLadder::number<long double>() const;
template FockLadder::Vector<long double> FockLadder::pair_number_diagonal<long double>() const;

Complex CatStateParams::w() const { return std::polar(std::sqrt(modulus_sq), phase); }

double FieldState::retained_norm() const {
  double s = 0.0;
  for (const auto& c : amplitudes) s += std::norm(c);
  return s;
}

FieldState wcs_build(const CatStateParams& params, DeformationParam lambda, double tail_tol,
                     int even_level_cap) {
  if (!(params.modulus_sq >= 0.0) || !std::isfinite(params.modulus_sq)) {
    throw DomainError("cat state |w|^2 must be finite and >= 0");
  }
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) {
    throw DomainError("tail_tol must lie in (0, 1e-6], got " + std::to_string(tail_tol));
  }
  FieldState state{lambda, {}, 0.0};
  const double x = params.modulus_sq;
  if (x == 0.0) {
    state.amplitudes = {Complex(1.0, 0.0)};
    return state;
  }

  // |c_2n|^2 = (x/2)^(2n + nu) / (n! Gamma(n + lambda + 1/2) I_nu(x)),  nu = lambda - 1/2.
  const double lam = lambda.value();
  const double nu = lam - 0.5;
  const double log_half_x = std::log(0.5 * x);
  const double log_norm = log_bessel_i(nu, x);
  auto log_prob = [&](int n) {
    return (2.0 * n + nu) * log_half_x - ln_gamma(n + 1.0) - ln_gamma(n + lam + 0.5) - log_norm;
  };

  // Past the peak, p_{n+1}/p_n = (x/2)^2 / ((n+1)(n+lambda+1/2)) = r_n is
  // decreasing, so the tail beyond N is bounded by p_{N+1} / (1 - r_{N+1}).
  std::vector<double> log_p;
  for (int n = 0;; ++n) {
    if (n > even_level_cap) {
      throw TruncationError("wcs_build: cutoff exceeds the even-level cap of " +
                            std::to_string(even_level_cap) + " (|w|^2 too large)");
    }
    log_p.push_back(log_prob(n));
    const double ratio_next = 0.25 * x * x / ((n + 2.0) * (n + lam + 1.5));
    if (ratio_next >= 1.0) continue;
    const double p_next = std::exp(log_prob(n + 1));
    const double tail_bound = p_next / (1.0 - ratio_next);
    const double boundary = x * x * std::exp(log_p.back());
    if (tail_bound < tail_tol && boundary < tail_tol) break;
  }

  const int n_max = static_cast<int>(log_p.size()) - 1;
  state.amplitudes.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    state.amplitudes[n] = std::polar(std::exp(0.5 * log_p[n]), 2.0 * n * params.phase);
  }
  // Tail mass from the exact remaining terms until they vanish in double.
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double p = std::exp(log_prob(n));
    tail += p;
    if (p < 1e-30 * (tail + std::numeric_limits<double>::min()) || p == 0.0) break;
  }
  state.tail_mass = tail;
  return state;
}

Eigen::VectorXcd to_fock_vector(const FieldState& state, int n_trunc) {
  if (2 * state.n_even_max() > n_trunc) {
    throw TruncationError("field populates Fock level " + std::to_string(2 * state.n_even_max()) +
                          " beyond n_trunc = " + std::to_string(n_trunc));
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_trunc + 1);
  for (int n = 0; n <= state.n_even_max(); ++n) v(2 * n) = state.amplitudes[n];
  return v;
}

double wcs_eigenstate_residual(const FieldState& state, const CatStateParams& params,
                               const FockLadder& ladder) {
  const int required = 2 * state.n_even_max() + 2;
  if (ladder.n_trunc() < required) {
    throw TruncationError("wcs_eigenstate_residual: n_trunc = " + std::to_string(ladder.n_trunc()) +
                          " < required " + std::to_string(required));
  }
  const Eigen::VectorXcd psi = to_fock_vector(state, ladder.n_trunc());
  const Eigen::MatrixXd a = ladder.lowering();
  const Complex w = params.w();
  const Eigen::VectorXcd residual = a * (a * psi) - (w * w) * psi;
  return residual.norm();
}

}  // namespace pdjc
