#include "pdjc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pdjc/errors.hpp"

namespace pdjc {

namespace {

void check_block(int n) {
  if (n < 0) throw DomainError("block index must be >= 0, got " + std::to_string(n));
}

// Eigenvalues of [[a, v], [v, b]] as center +- half gap.
std::pair<double, double> symmetric_pair(double a, double b, double v) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * std::hypot(a - b, 2.0 * v);
  return {center + half, center - half};
}

Eigen::Vector2d canonical_sign(Eigen::Vector2d v) {
  const double lead = v(0) != 0.0 ? v(0) : v(1);
  return lead < 0.0 ? Eigen::Vector2d(-v) : v;
}

}  // namespace

ModelParams::ModelParams(double omega_, double omega0_, double g_, DeformationParam lambda_)
    : omega(omega_), omega0(omega0_), g(g_), lambda(lambda_) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be finite and > 0");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be finite and > 0");
  if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("g must be finite and >= 0");
}

ModelParams ModelParams::from_detuning(double omega, double delta, double g,
                                       DeformationParam lambda) {
  return ModelParams(omega, omega - delta, g, lambda);
}

double block_coupling(int n, const ModelParams& params) {
  check_block(n);
  return params.g * std::sqrt(2.0 * n + 2.0 * params.lambda.value() + 1.0);
}

double rabi_frequency(int n, const ModelParams& params) {
  const double delta = params.detuning();
  const double v = block_coupling(n, params);
  return std::sqrt(delta * delta + 4.0 * v * v);
}

Eigen::Matrix2d block_hamiltonian(int n, const ModelParams& params) {
  check_block(n);
  const double lam = params.lambda.value();
  const double v = block_coupling(n, params);
  Eigen::Matrix2d h;
  h << params.omega * (2.0 * n + lam + 0.5) + 0.5 * params.omega0, v,
      v, params.omega * (2.0 * n + lam + 1.5) - 0.5 * params.omega0;
  return h;
}

double DressedPair::residual(const Eigen::Matrix2d& block) const {
  return std::max((block * v_plus - e_plus * v_plus).norm(),
                  (block * v_minus - e_minus * v_minus).norm());
}

DressedPair dressed_pair(int n, const ModelParams& params) {
  check_block(n);
  DressedPair pair;
  pair.n = n;
  pair.rabi = rabi_frequency(n, params);
  const double center = (2.0 * n + params.lambda.value() + 1.0) * params.omega;
  pair.e_plus = center + 0.5 * pair.rabi;
  pair.e_minus = center - 0.5 * pair.rabi;

  const double delta = params.detuning();
  const double v = block_coupling(n, params);
  // Delta - Omega without cancellation for Delta > 0.
  const double diff = delta > 0.0 ? -4.0 * v * v / (delta + pair.rabi) : delta - pair.rabi;
  const double d = std::hypot(diff, 2.0 * v);

  // Candidates: (c1, c2), (c2, -c1) and the same two with the relative sign
  // flipped. Only the flipped pair is an eigenbasis once Delta != 0.
  std::vector<Eigen::Vector2d> candidates;
  if (d == 0.0) {
    // g = 0 and Delta >= 0: the block is already diagonal.
    candidates = {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)};
  } else {
    const double c1 = diff / d;
    const double c2 = 2.0 * v / d;
    candidates = {Eigen::Vector2d(c1, c2), Eigen::Vector2d(c2, -c1), Eigen::Vector2d(-c1, c2),
                  Eigen::Vector2d(c2, c1)};
  }

  const Eigen::Matrix2d h = block_hamiltonian(n, params);
  auto best_for = [&](double e) {
    const Eigen::Vector2d* best = &candidates.front();
    double best_res = std::numeric_limits<double>::infinity();
    for (const auto& u : candidates) {
      const double r = (h * u - e * u).norm();
      if (r < best_res) best_res = r, best = &u;
    }
    return canonical_sign(*best);
  };
  pair.v_plus = best_for(pair.e_plus);
  pair.v_minus = best_for(pair.e_minus);
  if (d == 0.0 && pair.v_plus == pair.v_minus) {
    // Degenerate (g = 0, Delta = 0): keep the basis orthogonal.
    pair.v_minus = Eigen::Vector2d(0.0, 1.0);
  }
  return pair;
}

std::vector<double> DetuningRange::values() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("detuning step must be > 0");
  std::vector<double> out;
  if (!(begin <= end)) return out;
  const auto count = static_cast<long long>(std::floor((end - begin) / step + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) out.push_back(begin + static_cast<double>(k) * step);
  return out;
}

std::vector<SpectrumRow> spectrum_scan(std::span<const int> n_list, double omega, double g,
                                       DeformationParam lambda, const DetuningRange& range) {
  const std::vector<double> deltas = range.values();
  std::vector<SpectrumRow> rows;
  rows.reserve(n_list.size() * deltas.size());
  for (int n : n_list) {
    for (double delta : deltas) {
      const auto pair = dressed_pair(n, ModelParams::from_detuning(omega, delta, g, lambda));
      rows.push_back({n, delta, pair.e_plus, pair.e_minus});
    }
  }
  return rows;
}

std::vector<double> truncated_spectrum(const ModelParams& params, int n_trunc) {
  if (n_trunc < 1) throw DomainError("n_trunc must be >= 1");
  const double w = params.omega;
  const double w0 = params.omega0;
  const double lam = params.lambda.value();
  // Diagonal of the free Hamiltonian on |k,+> and |k,->.
  auto plus = [&](int k) { return w * (k + lam + 0.5) + 0.5 * w0; };
  auto minus = [&](int k) { return w * (k + lam + 0.5) - 0.5 * w0; };

  std::vector<double> values;
  values.reserve(2 * (n_trunc + 1));
  values.push_back(minus(0));
  // |k,+> couples to |k+1,-> with the raising coefficient of level k.
  for (int k = 0; k <= n_trunc; ++k) {
    if (k + 1 > n_trunc) {
      values.push_back(plus(k));
      break;
    }
    const double v = params.g * ladder_coefficient(Ladder::raise, k, params.lambda);
    const auto [hi, lo] = symmetric_pair(plus(k), minus(k + 1), v);
    values.push_back(hi);
    values.push_back(lo);
  }
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace pdjc
