#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace pdjc {

using Complex = std::complex<double>;

/// Wigner parameter of the parity-deformed oscillator, restricted to lambda > -1/2.
class DeformationParam {
public:
  explicit DeformationParam(double lambda);

  double value() const noexcept { return lambda_; }

  friend bool operator==(const DeformationParam&, const DeformationParam&) = default;

private:
  double lambda_;
};

enum class Ladder { lower, raise };

// Matrix element of the deformed ladder operators between adjacent Fock levels:
//   lower: <n-1| a |n>,   raise: <n+1| a^dag |n>.
// The lowering coefficient of the vacuum is 0.
double ladder_coefficient(Ladder direction, int n, DeformationParam lambda);

// Eigenvalue of a^dag a on |n>: n for even n, n + 2 lambda for odd n.
double number_operator_eigenvalue(int n, DeformationParam lambda);

/// Wigner-Heisenberg algebra on the truncated Fock space {|0>, ..., |n_trunc>}.
///
/// The matrices are dense (n_trunc + 1) square matrices. Only adjacent-level
/// elements of the ladder matrices are nonzero; the parity and number
/// matrices are diagonal.
class FockLadder {
public:
  template <class Scalar>
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  template <class Scalar>
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  FockLadder(DeformationParam lambda, int n_trunc);

  DeformationParam lambda() const noexcept { return lambda_; }
  int n_trunc() const noexcept { return n_trunc_; }
  int dim() const noexcept { return n_trunc_ + 1; }

  template <class Scalar = double>
  Matrix<Scalar> lowering() const;
  template <class Scalar = double>
  Matrix<Scalar> raising() const;
  // diag((-1)^n)
  template <class Scalar = double>
  Matrix<Scalar> parity() const;
  // diag(n)
  template <class Scalar = double>
  Matrix<Scalar> number() const;
  // Exact eigenvalues of a^dag a, i.e. number_operator_eigenvalue on each level.
  template <class Scalar = double>
  Vector<Scalar> pair_number_diagonal() const;

private:
  DeformationParam lambda_;
  int n_trunc_;
};

/// Parameters of a Wigner cat state, w = sqrt(modulus_sq) * exp(i phase).
struct CatStateParams {
  double modulus_sq = 0.0;
  double phase = 0.0;

  Complex w() const;
};

/// Field amplitudes c_{2n}(0) on the even Fock levels 2n, n = 0..size()-1.
struct FieldState {
  DeformationParam lambda{0.0};
  std::vector<Complex> amplitudes;
  // Probability discarded by the truncation.
  double tail_mass = 0.0;

  int n_even_max() const noexcept { return static_cast<int>(amplitudes.size()) - 1; }
  // Sum of |c_{2n}|^2 over the retained levels.
  double retained_norm() const;
};

inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr int kDefaultEvenLevelCap = 20000;

// Wigner cat state |w>_{lambda,+}, the even-sector eigenstate of a^2 with
// eigenvalue w^2. All factors are evaluated in log-space.
//
// The cutoff n_even_max is the smallest N for which both the discarded
// probability sum_{n>N} |c_{2n}|^2 and the boundary residual
// |w|^4 |c_{2N}|^2 fall below tail_tol. Throws TruncationError if N would
// exceed `even_level_cap`.
FieldState wcs_build(const CatStateParams& params, DeformationParam lambda,
                     double tail_tol = kDefaultTailTol,
                     int even_level_cap = kDefaultEvenLevelCap);

// || a^2 |state> - w^2 |state> || evaluated with the truncated ladder matrices.
// Requires ladder.n_trunc() >= 2 * n_even_max + 2 (TruncationError otherwise).
double wcs_eigenstate_residual(const FieldState& state, const CatStateParams& params,
                               const FockLadder& ladder);

// Embeds the even-sector amplitudes into a dense Fock vector of size ladder.dim().
Eigen::VectorXcd to_fock_vector(const FieldState& state, int n_trunc);

}  // namespace pdjc
