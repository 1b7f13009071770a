#pragma once

#include <span>
#include <vector>

#include "pdjc/algebra.hpp"
#include "pdjc/spectrum.hpp"

namespace pdjc {

/// Interaction-picture state sum_n c_plus[n] |2n,+> + c_minus[n] |2n+1,->.
struct JointState {
  double time = 0.0;
  std::vector<Complex> c_plus;
  std::vector<Complex> c_minus;
  ModelParams params;
  double tail_mass = 0.0;

  int blocks() const noexcept { return static_cast<int>(c_plus.size()); }
  double norm_sq() const;
};

struct JointTrajectory {
  std::vector<double> grid;
  std::vector<JointState> states;
};

// Atom excited, field in `field`, t = 0.
JointState excited_initial_state(const FieldState& field, const ModelParams& params);

// Exact evolution of every 2x2 block from state.time to the absolute time t.
// With state.time = 0 this is the general two-amplitude solution; anchoring on
// state.time makes successive calls compose exactly for any detuning.
JointState evolve_general(const JointState& state, double t);

// Closed-form amplitudes at time t for an initially excited atom.
JointState evolve_excited(const FieldState& field, const ModelParams& params, double t);

// evolve_excited on every grid point. Throws std::invalid_argument unless the
// grid is strictly increasing. Grid points are evaluated independently and in
// parallel (see parallel.hpp).
JointTrajectory trajectory(const FieldState& field, const ModelParams& params,
                           std::span<const double> grid);

// n_points equally spaced values covering [begin, end] inclusive.
std::vector<double> linear_grid(double begin, double end, int n_points);

}  // namespace pdjc
