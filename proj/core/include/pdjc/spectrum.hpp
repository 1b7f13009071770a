#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pdjc/algebra.hpp"

namespace pdjc {

/// Physical constants of the deformed JC Hamiltonian.
struct ModelParams {
  double omega = 1.0;   // field frequency
  double omega0 = 1.0;  // atomic transition frequency
  double g = 0.0;       // coupling
  DeformationParam lambda{0.0};

  ModelParams() = default;
  ModelParams(double omega, double omega0, double g, DeformationParam lambda);

  // omega0 = omega - delta.
  static ModelParams from_detuning(double omega, double delta, double g, DeformationParam lambda);

  // Delta = omega - omega0.
  double detuning() const noexcept { return omega - omega0; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Omega_{n,lambda} = sqrt(Delta^2 + 4 g^2 (2n + 2 lambda + 1)).
double rabi_frequency(int n, const ModelParams& params);

// Coupling inside block n: g sqrt(2n + 2 lambda + 1).
double block_coupling(int n, const ModelParams& params);

// Restriction of the Hamiltonian to span{|2n,+>, |2n+1,->}.
Eigen::Matrix2d block_hamiltonian(int n, const ModelParams& params);

struct DressedPair {
  int n = 0;
  double rabi = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  // Unit vectors in the {|2n,+>, |2n+1,->} basis, first nonzero entry positive.
  Eigen::Vector2d v_plus;
  Eigen::Vector2d v_minus;

  // max_pm || H v_pm - e_pm v_pm ||
  double residual(const Eigen::Matrix2d& block) const;
};

// Dressed eigenpair of block n. Eigenvalues are (2n + lambda + 1) omega +- Omega/2.
// The vectors are built from the mixing coefficients
//   c1 = (Delta - Omega) / d,   c2 = 2 g sqrt(2n + 2 lambda + 1) / d
// and assigned to the eigenvalue they actually satisfy: (c1, c2) and (c2, -c1)
// are exact only at Delta = 0, where (c1, c2) belongs to e_minus; in general
// v_plus ~ (-c1, c2) and v_minus ~ (c2, c1).
DressedPair dressed_pair(int n, const ModelParams& params);

struct DetuningRange {
  double begin = 0.0;
  double end = 0.0;
  double step = 1.0;

  // begin + k*step for k = 0, 1, ... while <= end (with a 1e-9 step slack).
  std::vector<double> values() const;
};

struct SpectrumRow {
  int n = 0;
  double delta = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
};

// Eigenvalues of each block n in n_list across the detuning range, with
// omega fixed and omega0 = omega - delta. Rows are ordered n-major.
std::vector<SpectrumRow> spectrum_scan(std::span<const int> n_list, double omega, double g,
                                       DeformationParam lambda, const DetuningRange& range);

// Every eigenvalue of the Hamiltonian truncated to Fock levels 0..n_trunc,
// from the 2x2 closed forms of both invariant families plus the uncoupled
// singletons (|0,->, and the top level when its partner is cut off). Sorted.
std::vector<double> truncated_spectrum(const ModelParams& params, int n_trunc);

}  // namespace pdjc
