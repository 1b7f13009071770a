#pragma once

#include "pdjc/algebra.hpp"
#include "pdjc/dynamics.hpp"

namespace pdjc {

// <sigma_z> = sum_n |c_plus[n]|^2 - |c_minus[n]|^2.
double atomic_inversion(const JointState& state);

// Closed form of the inversion for an initially excited atom:
//   sum_n |c_{2n}(0)|^2 [ (Delta/Omega_n)^2 + 4 g^2 (2n+2lambda+1)/Omega_n^2 cos(Omega_n t) ].
double atomic_inversion_closed_form(const FieldState& field, const ModelParams& params, double t);

// |<initial|state>|^2. Throws DimensionMismatch if the block counts differ.
double fidelity(const JointState& initial, const JointState& state);

struct EntanglementReport {
  double g_plus = 0.0;
  double g_minus = 0.0;
  double entropy = 0.0;
};

// -p ln p - q ln q with 0 ln 0 = 0.
double binary_entropy(double p, double q);

// Eigenvalues of the (diagonal) reduced atomic density matrix and its
// von Neumann entropy.
EntanglementReport entanglement(const JointState& state);

// <(a^dag a)^k>; a^dag a is diagonal on both sectors.
double field_moment(const JointState& state, int k);

struct StatisticsReport {
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  double mandel_q = 0.0;
};

// Mandel Q built on a^dag a. Throws UndefinedStatistics if <a^dag a> = 0.
StatisticsReport mandel_q(const JointState& state);

struct WhaMoments {
  Complex m_a;      // <a>
  Complex m_a2;     // <a^2>
  double m_n = 0;   // <a^dag a>
  double m_aad = 0; // <a a^dag>
  double m_comm = 0;// <1 + 2 lambda R>
};

WhaMoments wha_moments(const JointState& state);

struct SqueezingReport {
  double sigma_xx = 0.0;
  double sigma_pp = 0.0;
  double bound = 0.0;  // |<1 + 2 lambda R>| / 2
  double s_x = 0.0;
  double s_p = 0.0;
  bool uncertainty_ok = false;
};

// Quadratures x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).
SqueezingReport squeezing(const JointState& state);
SqueezingReport squeezing(const WhaMoments& moments);

}  // namespace pdjc
