#include "pdjc/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pdjc/errors.hpp"
#include "pdjc/parallel.hpp"

namespace pdjc {

namespace {

constexpr Complex kI{0.0, 1.0};

// Frame phase exp(-i Delta t / 2); its conjugate applies to the |2n+1,-> amplitude.
Complex frame_phase(double delta, double t) { return std::polar(1.0, -0.5 * delta * t); }

}  // namespace

double JointState::norm_sq() const {
  double s = 0.0;
  for (const auto& c : c_plus) s += std::norm(c);
  for (const auto& c : c_minus) s += std::norm(c);
  return s;
}

JointState excited_initial_state(const FieldState& field, const ModelParams& params) {
  if (!(field.lambda == params.lambda)) {
    throw std::invalid_argument("field state and model use different deformation parameters");
  }
  JointState s;
  s.time = 0.0;
  s.c_plus = field.amplitudes;
  s.c_minus.assign(field.amplitudes.size(), Complex{});
  s.params = params;
  s.tail_mass = field.tail_mass;
  return s;
}

JointState evolve_general(const JointState& state, double t) {
  if (state.c_plus.size() != state.c_minus.size()) {
    throw DimensionMismatch("c_plus and c_minus must have the same number of blocks");
  }
  const ModelParams& p = state.params;
  const double delta = p.detuning();
  const double tau = t - state.time;
  const Complex undo = std::conj(frame_phase(delta, state.time));
  const Complex redo = frame_phase(delta, t);

  JointState out = state;
  out.time = t;
  for (int n = 0; n < state.blocks(); ++n) {
    const Complex u_plus = state.c_plus[n] * undo;
    const Complex u_minus = state.c_minus[n] * std::conj(undo);

    const double rabi = rabi_frequency(n, p);
    if (rabi == 0.0) {
      out.c_plus[n] = u_plus * redo;
      out.c_minus[n] = u_minus * std::conj(redo);
      continue;
    }
    const double c = std::cos(0.5 * rabi * tau);
    const double s = std::sin(0.5 * rabi * tau);
    const double detune = delta / rabi;
    const double mix = 2.0 * block_coupling(n, p) / rabi;

    out.c_plus[n] = (u_plus * Complex(c, detune * s) - kI * mix * s * u_minus) * redo;
    out.c_minus[n] = (u_minus * Complex(c, -detune * s) - kI * mix * s * u_plus) * std::conj(redo);
  }
  return out;
}

JointState evolve_excited(const FieldState& field, const ModelParams& params, double t) {
  JointState out = excited_initial_state(field, params);
  out.time = t;
  const double delta = params.detuning();
  const Complex phase = frame_phase(delta, t);
  for (int n = 0; n < out.blocks(); ++n) {
    const Complex c0 = field.amplitudes[n];
    const double rabi = rabi_frequency(n, params);
    if (rabi == 0.0) {
      out.c_plus[n] = c0 * phase;
      continue;
    }
    const double c = std::cos(0.5 * rabi * t);
    const double s = std::sin(0.5 * rabi * t);
    out.c_plus[n] = c0 * Complex(c, delta / rabi * s) * phase;
    out.c_minus[n] = -kI * (2.0 * block_coupling(n, params) / rabi) * c0 * s * std::conj(phase);
  }
  return out;
}

JointTrajectory trajectory(const FieldState& field, const ModelParams& params,
                           std::span<const double> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("time grid must be strictly increasing (index " +
                                  std::to_string(i) + ")");
    }
  }
  JointTrajectory traj;
  traj.grid.assign(grid.begin(), grid.end());
  traj.states.resize(grid.size());
  parallel_for(grid.size(),
               [&](std::size_t i) { traj.states[i] = evolve_excited(field, params, grid[i]); });
  return traj;
}

std::vector<double> linear_grid(double begin, double end, int n_points) {
  if (n_points < 0) throw std::invalid_argument("n_points must be >= 0");
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  if (n_points == 1) {
    grid[0] = begin;
    return grid;
  }
  for (int i = 0; i < n_points; ++i) {
    grid[i] = i == n_points - 1 ? end : begin + (end - begin) * i / (n_points - 1);
  }
  return grid;
}

}  // namespace pdjc
