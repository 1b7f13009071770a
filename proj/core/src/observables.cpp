#include "pdjc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pdjc/errors.hpp"

namespace pdjc {

namespace {

// Eigenvalue of a a^dag on |k>, the square of the raising coefficient.
double anti_normal_eigenvalue(int k, double lambda) {
  return k % 2 == 0 ? k + 2.0 * lambda + 1.0 : k + 1.0;
}

// The two atomic sectors as dense Fock vectors: |2n,+> lives on even levels
// of the first, |2n+1,-> on odd levels of the second.
struct SectorVectors {
  std::vector<Complex> plus;
  std::vector<Complex> minus;
};

SectorVectors sector_vectors(const JointState& state) {
  const int levels = 2 * state.blocks() + 2;
  SectorVectors v{std::vector<Complex>(levels), std::vector<Complex>(levels)};
  for (int n = 0; n < state.blocks(); ++n) {
    v.plus[2 * n] = state.c_plus[n];
    v.minus[2 * n + 1] = state.c_minus[n];
  }
  return v;
}

}  // namespace

double atomic_inversion(const JointState& state) {
  double s = 0.0;
  for (int n = 0; n < state.blocks(); ++n) {
    s += std::norm(state.c_plus[n]) - std::norm(state.c_minus[n]);
  }
  return s;
}

double atomic_inversion_closed_form(const FieldState& field, const ModelParams& params, double t) {
  const double delta = params.detuning();
  double s = 0.0;
  for (int n = 0; n <= field.n_even_max(); ++n) {
    const double p = std::norm(field.amplitudes[n]);
    const double rabi = rabi_frequency(n, params);
    if (rabi == 0.0) {
      s += p;
      continue;
    }
    const double lam = params.lambda.value();
    const double ratio = params.g / rabi;
    s += p * ((delta / rabi) * (delta / rabi) +
              (8.0 * n + 8.0 * lam + 4.0) * ratio * ratio * std::cos(rabi * t));
  }
  return s;
}

double fidelity(const JointState& initial, const JointState& state) {
  if (initial.blocks() != state.blocks() || initial.c_minus.size() != state.c_minus.size()) {
    throw DimensionMismatch("fidelity: states have " + std::to_string(initial.blocks()) + " and " +
                            std::to_string(state.blocks()) + " blocks");
  }
  Complex overlap{};
  for (int n = 0; n < state.blocks(); ++n) {
    overlap += std::conj(initial.c_plus[n]) * state.c_plus[n] +
               std::conj(initial.c_minus[n]) * state.c_minus[n];
  }
  return std::norm(overlap);
}

double binary_entropy(double p, double q) {
  auto h = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  // Rounding can push the sum an ulp outside [0, ln 2].
  return std::clamp(h(p) + h(q), 0.0, std::numbers::ln2);
}

EntanglementReport entanglement(const JointState& state) {
  EntanglementReport r;
  for (int n = 0; n < state.blocks(); ++n) {
    r.g_plus += std::norm(state.c_plus[n]);
    r.g_minus += std::norm(state.c_minus[n]);
  }
  r.entropy = binary_entropy(r.g_plus, r.g_minus);
  return r;
}

double field_moment(const JointState& state, int k) {
  if (k < 1) throw DomainError("field_moment: order must be >= 1, got " + std::to_string(k));
  const DeformationParam lam = state.params.lambda;
  double s = 0.0;
  for (int n = 0; n < state.blocks(); ++n) {
    s += std::pow(number_operator_eigenvalue(2 * n, lam), k) * std::norm(state.c_plus[n]) +
         std::pow(number_operator_eigenvalue(2 * n + 1, lam), k) * std::norm(state.c_minus[n]);
  }
  return s;
}

StatisticsReport mandel_q(const JointState& state) {
  StatisticsReport r;
  r.mean_n = field_moment(state, 1);
  r.mean_n2 = field_moment(state, 2);
  if (!(r.mean_n > 0.0)) {
    throw UndefinedStatistics("Mandel Q undefined: <a^dag a> = 0");
  }
  r.mandel_q = (r.mean_n2 - r.mean_n * r.mean_n) / r.mean_n - 1.0;
  return r;
}

WhaMoments wha_moments(const JointState& state) {
  const DeformationParam lam = state.params.lambda;
  const double l = lam.value();
  const SectorVectors sectors = sector_vectors(state);

  WhaMoments m;
  for (const auto* f : {&sectors.plus, &sectors.minus}) {
    const auto& v = *f;
    const int levels = static_cast<int>(v.size());
    for (int k = 0; k < levels; ++k) {
      const double pk = std::norm(v[k]);
      m.m_n += number_operator_eigenvalue(k, lam) * pk;
      m.m_aad += anti_normal_eigenvalue(k, l) * pk;
      m.m_comm += (1.0 + 2.0 * l * (k % 2 == 0 ? 1.0 : -1.0)) * pk;
      if (k + 1 < levels) {
        m.m_a += std::conj(v[k]) * ladder_coefficient(Ladder::lower, k + 1, lam) * v[k + 1];
      }
      if (k + 2 < levels) {
        m.m_a2 += std::conj(v[k]) * ladder_coefficient(Ladder::lower, k + 1, lam) *
                  ladder_coefficient(Ladder::lower, k + 2, lam) * v[k + 2];
      }
    }
  }
  return m;
}

SqueezingReport squeezing(const WhaMoments& m) {
  SqueezingReport r;
  // x = (a + a^dag)/sqrt2 and p = (a - a^dag)/(i sqrt2) with <a> = 0:
  //   <x^2> = (<a a^dag> + <a^dag a>)/2 + Re<a^2>,  <p^2> = ... - Re<a^2>.
  const double symmetric = 0.5 * (m.m_n + m.m_aad);
  const double mean_x = std::sqrt(2.0) * m.m_a.real();
  const double mean_p = std::sqrt(2.0) * m.m_a.imag();
  r.sigma_xx = symmetric + m.m_a2.real() - mean_x * mean_x;
  r.sigma_pp = symmetric - m.m_a2.real() - mean_p * mean_p;
  r.bound = 0.5 * std::abs(m.m_comm);
  r.s_x = (r.sigma_xx - r.bound) / r.bound;
  r.s_p = (r.sigma_pp - r.bound) / r.bound;
  r.uncertainty_ok = r.sigma_xx * r.sigma_pp >= r.bound * r.bound * (1.0 - 1e-10);
  return r;
}

SqueezingReport squeezing(const JointState& state) { return squeezing(wha_moments(state)); }

}  // namespace pdjc
