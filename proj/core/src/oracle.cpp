#include "pdjc/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <string>

#include <Eigen/Eigenvalues>

#include "pdjc/errors.hpp"

namespace pdjc::oracle {

namespace {

using ComplexL = std::complex<long double>;

// Diagonal of omega (a^dag a + 1/2 + lambda R) on Fock levels 0..n_trunc.
RealVector field_diagonal(const ModelParams& params, int n_trunc) {
  const FockLadder ladder(params.lambda, n_trunc);
  const RealVector pair_number = ladder.pair_number_diagonal<long double>();
  const long double w = params.omega;
  const long double lam = params.lambda.value();
  RealVector d(n_trunc + 1);
  for (int n = 0; n <= n_trunc; ++n) {
    d(n) = w * (pair_number(n) + 0.5L + lam * (n % 2 == 0 ? 1.0L : -1.0L));
  }
  return d;
}

void check_trunc(int n_trunc) {
  if (n_trunc < 1) throw DomainError("n_trunc must be >= 1, got " + std::to_string(n_trunc));
}

}  // namespace

long double FullOperator::max_asymmetry() const {
  return (entries - entries.transpose()).cwiseAbs().maxCoeff();
}

FullOperator build_h0(const ModelParams& params, int n_trunc) {
  check_trunc(n_trunc);
  const int levels = n_trunc + 1;
  const RealVector field = field_diagonal(params, n_trunc);
  const long double half_w0 = 0.5L * static_cast<long double>(params.omega0);
  FullOperator h0{n_trunc, RealMatrix::Zero(2 * levels, 2 * levels)};
  for (int n = 0; n < levels; ++n) {
    h0.entries(plus_index(n, n_trunc), plus_index(n, n_trunc)) = field(n) + half_w0;
    h0.entries(minus_index(n, n_trunc), minus_index(n, n_trunc)) = field(n) - half_w0;
  }
  return h0;
}

FullOperator build_hamiltonian(const ModelParams& params, int n_trunc) {
  FullOperator h = build_h0(params, n_trunc);
  const FockLadder ladder(params.lambda, n_trunc);
  const RealMatrix a = ladder.lowering<long double>();
  const RealMatrix ad = ladder.raising<long double>();
  const long double g = params.g;
  const int levels = n_trunc + 1;
  // g a^dag sigma_- : |m,-><n,+|,  g a sigma_+ : |m,+><n,-|
  h.entries.block(levels, 0, levels, levels) += g * ad;
  h.entries.block(0, levels, levels, levels) += g * a;
  return h;
}

FullOperator conserved_charge(DeformationParam lambda, int n_trunc) {
  check_trunc(n_trunc);
  const int levels = n_trunc + 1;
  const long double lam = lambda.value();
  FullOperator c{n_trunc, RealMatrix::Zero(2 * levels, 2 * levels)};
  // a^dag a + 1/2 + lambda R equals n + lambda + 1/2 on every level.
  for (int n = 0; n < levels; ++n) {
    c.entries(plus_index(n, n_trunc), plus_index(n, n_trunc)) = n + lam + 1.0L;
    c.entries(minus_index(n, n_trunc), minus_index(n, n_trunc)) = n + lam;
  }
  return c;
}

NumericPropagator::NumericPropagator(const FullOperator& h, const FullOperator& h0) {
  if (h.dim() != h0.dim() || h.entries.rows() != h.dim() || h0.entries.rows() != h0.dim()) {
    throw DimensionMismatch("H and H0 must have the same dimension");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.entries);
  if (solver.info() != Eigen::Success) {
    throw OracleError("Hermitian eigendecomposition failed (is H symmetric?)");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  h0_diagonal_ = h0.entries.diagonal();
}

Eigen::VectorXcd NumericPropagator::schrodinger(const Eigen::VectorXcd& psi0, double t) const {
  if (psi0.size() != dim()) throw DimensionMismatch("state vector has the wrong dimension");
  const RealVector re = psi0.real().cast<long double>();
  const RealVector im = psi0.imag().cast<long double>();
  const RealVector cr = eigenvectors_.transpose() * re;
  const RealVector ci = eigenvectors_.transpose() * im;
  RealVector rot_r(dim()), rot_i(dim());
  const long double tl = t;
  for (int k = 0; k < dim(); ++k) {
    // exp(-i E t) (cr + i ci)
    const long double c = std::cos(eigenvalues_(k) * tl);
    const long double s = std::sin(eigenvalues_(k) * tl);
    rot_r(k) = c * cr(k) + s * ci(k);
    rot_i(k) = c * ci(k) - s * cr(k);
  }
  const RealVector out_r = eigenvectors_ * rot_r;
  const RealVector out_i = eigenvectors_ * rot_i;
  Eigen::VectorXcd out(dim());
  for (int k = 0; k < dim(); ++k) {
    out(k) = {static_cast<double>(out_r(k)), static_cast<double>(out_i(k))};
  }
  return out;
}

Eigen::VectorXcd NumericPropagator::interaction(const Eigen::VectorXcd& psi0, double t) const {
  Eigen::VectorXcd out = schrodinger(psi0, t);
  const long double tl = t;
  for (int k = 0; k < dim(); ++k) {
    // exp(+i H0 t), with H0 t formed in extended precision.
    const ComplexL v = std::polar(1.0L, h0_diagonal_(k) * tl) * ComplexL(out(k).real(), out(k).imag());
    out(k) = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  return out;
}

Eigen::VectorXcd evolve_numeric(const Eigen::VectorXcd& psi0, const FullOperator& h,
                                const FullOperator& h0, double t) {
  return NumericPropagator(h, h0).interaction(psi0, t);
}

Eigen::VectorXcd to_full_vector(const JointState& state, int n_trunc) {
  check_trunc(n_trunc);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * (n_trunc + 1));
  for (int n = 0; n < state.blocks(); ++n) {
    for (auto [fock, amp, minus] : {std::tuple{2 * n, state.c_plus[n], false},
                                    std::tuple{2 * n + 1, state.c_minus[n], true}}) {
      if (fock > n_trunc) {
        if (amp != Complex{}) {
          throw TruncationError("amplitude on Fock level " + std::to_string(fock) +
                                " exceeds n_trunc = " + std::to_string(n_trunc));
        }
        continue;
      }
      psi(minus ? minus_index(fock, n_trunc) : plus_index(fock, n_trunc)) = amp;
    }
  }
  return psi;
}

JointState from_full_vector(const Eigen::VectorXcd& psi, const JointState& like, double t) {
  const int n_trunc = static_cast<int>(psi.size()) / 2 - 1;
  JointState out = like;
  out.time = t;
  for (int n = 0; n < like.blocks(); ++n) {
    out.c_plus[n] = 2 * n <= n_trunc ? psi(plus_index(2 * n, n_trunc)) : Complex{};
    out.c_minus[n] = 2 * n + 1 <= n_trunc ? psi(minus_index(2 * n + 1, n_trunc)) : Complex{};
  }
  return out;
}

double complementary_population(const Eigen::VectorXcd& psi, int n_trunc) {
  double s = 0.0;
  for (int k = 0; k <= n_trunc; ++k) {
    if (k % 2 == 1) s += std::norm(psi(plus_index(k, n_trunc)));
    if (k % 2 == 0) s += std::norm(psi(minus_index(k, n_trunc)));
  }
  return s;
}

OracleRun run(const JointState& initial, std::span<const double> grid, const FullOperator& h,
              const FullOperator& h0) {
  if (initial.time != 0.0) {
    throw std::invalid_argument("oracle::run: initial state must be at t = 0");
  }
  const NumericPropagator prop(h, h0);
  const Eigen::VectorXcd psi0 = to_full_vector(initial, h.n_trunc);
  OracleRun out;
  out.n_trunc = h.n_trunc;
  out.grid.assign(grid.begin(), grid.end());
  out.states.reserve(grid.size());
  for (double t : grid) out.states.push_back(prop.interaction(psi0, t));
  return out;
}

OracleRun run(const JointState& initial, std::span<const double> grid, int n_trunc) {
  return run(initial, grid, build_hamiltonian(initial.params, n_trunc),
             build_h0(initial.params, n_trunc));
}

std::string Deviation::describe() const {
  std::ostringstream os;
  os.precision(3);
  os << "max |closed form - oracle| = " << max_abs;
  if (block >= 0) {
    os << " at t = " << time << ", " << (sector == '+' ? "|2n,+>" : "|2n+1,->") << " n = " << block;
  }
  os << "; leakage = " << leakage_max;
  return os.str();
}

Deviation compare(const JointTrajectory& trajectory, const OracleRun& run) {
  if (trajectory.grid != run.grid || trajectory.states.size() != run.states.size()) {
    throw DimensionMismatch("compare: closed-form and oracle grids differ");
  }
  Deviation dev;
  for (std::size_t i = 0; i < run.grid.size(); ++i) {
    const JointState& closed = trajectory.states[i];
    const JointState numeric = from_full_vector(run.states[i], closed, run.grid[i]);
    for (int n = 0; n < closed.blocks(); ++n) {
      const double dp = std::abs(closed.c_plus[n] - numeric.c_plus[n]);
      const double dm = std::abs(closed.c_minus[n] - numeric.c_minus[n]);
      if (dp > dev.max_abs) dev = {dp, run.grid[i], n, '+', dev.leakage_max};
      if (dm > dev.max_abs) dev = {dm, run.grid[i], n, '-', dev.leakage_max};
    }
    dev.leakage_max = std::max(dev.leakage_max, complementary_population(run.states[i], run.n_trunc));
  }
  return dev;
}

}  // namespace pdjc::oracle
