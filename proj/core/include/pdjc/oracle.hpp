#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdjc/dynamics.hpp"
#include "pdjc/spectrum.hpp"

namespace pdjc::oracle {

using RealMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

/// Hamiltonian-like operator on Fock(0..n_trunc) x {+,-}.
///
/// Basis ordering: |n>|+> for n = 0..n_trunc, then |n>|-> for n = 0..n_trunc.
/// The RWA Hamiltonian is real symmetric, so it is stored as such, in
/// extended precision.
struct FullOperator {
  int n_trunc = 0;
  RealMatrix entries;

  int dim() const noexcept { return 2 * (n_trunc + 1); }
  long double max_asymmetry() const;
};

inline int plus_index(int fock, int /*n_trunc*/) { return fock; }
inline int minus_index(int fock, int n_trunc) { return n_trunc + 1 + fock; }

// H = omega (a^dag a + 1/2 + lambda R) + (omega0/2) sigma_3 + g (a^dag sigma_- + a sigma_+).
FullOperator build_hamiltonian(const ModelParams& params, int n_trunc);

// Free part H0 = omega (a^dag a + 1/2 + lambda R) + (omega0/2) sigma_3 (diagonal).
FullOperator build_h0(const ModelParams& params, int n_trunc);

// a^dag a + 1/2 + lambda R + sigma_3/2, commutes with build_hamiltonian away
// from the top level.
FullOperator conserved_charge(DeformationParam lambda, int n_trunc);

/// exp(-iHt) via one Hermitian eigendecomposition, then rotated into the
/// interaction picture with exp(+i H0 t).
class NumericPropagator {
public:
  NumericPropagator(const FullOperator& h, const FullOperator& h0);

  int dim() const noexcept { return static_cast<int>(eigenvalues_.size()); }
  const RealVector& eigenvalues() const noexcept { return eigenvalues_; }

  Eigen::VectorXcd schrodinger(const Eigen::VectorXcd& psi0, double t) const;
  Eigen::VectorXcd interaction(const Eigen::VectorXcd& psi0, double t) const;

private:
  RealVector eigenvalues_;
  RealMatrix eigenvectors_;
  RealVector h0_diagonal_;
};

// One-shot form of NumericPropagator::interaction.
Eigen::VectorXcd evolve_numeric(const Eigen::VectorXcd& psi0, const FullOperator& h,
                                const FullOperator& h0, double t);

// Embeds a JointState; throws TruncationError if a populated level exceeds n_trunc.
Eigen::VectorXcd to_full_vector(const JointState& state, int n_trunc);

// Reads the tracked amplitudes (|2n,+>, |2n+1,->, n < blocks) out of a full
// vector. Levels beyond n_trunc come back as 0.
JointState from_full_vector(const Eigen::VectorXcd& psi, const JointState& like, double t);

// Population outside the tracked sector {|2n,+>, |2n+1,->}.
double complementary_population(const Eigen::VectorXcd& psi, int n_trunc);

struct OracleRun {
  int n_trunc = 0;
  std::vector<double> grid;
  std::vector<Eigen::VectorXcd> states;  // interaction picture
};

OracleRun run(const JointState& initial, std::span<const double> grid, int n_trunc);
OracleRun run(const JointState& initial, std::span<const double> grid,
              const FullOperator& h, const FullOperator& h0);

struct Deviation {
  double max_abs = 0.0;
  double time = 0.0;       // where the maximum occurred
  int block = -1;          // n of the offending amplitude, -1 if none
  char sector = ' ';       // '+' (|2n,+>) or '-' (|2n+1,->)
  double leakage_max = 0.0;// max complementary_population over the run

  std::string describe() const;
};

// Max |closed form - oracle| over grid points and tracked amplitudes.
// Amplitudes the oracle cannot represent (level > n_trunc) count in full.
// Throws DimensionMismatch if the grids differ.
Deviation compare(const JointTrajectory& trajectory, const OracleRun& run);

}  // namespace pdjc::oracle
