#pragma once

// Numerical search for Weyl-Heisenberg fiducials.
//
// The objective is the summed squared violation of the quartic conditions,
//
//   f(psi) = sum_{k,l} |Q(k,l) - (delta_k0 + delta_l0)/(d+1)|^2,
//
// which is phase invariant, WH invariant, and exactly zero on fiducials.
// Minimization runs on the unit sphere in C^d = R^(2d): limited-memory
// quasi-Newton directions built from projected gradients only, Armijo
// backtracking, and renormalization as the retraction.

#include "sicforge/core.hpp"

#include <cstdint>
#include <vector>

namespace sicforge {

struct SearchConfig {
  int dim = 2;
  int restarts = 20;
  std::uint64_t seed = 0;
  int max_iters = 3000;        // per restart
  double accept_tol = 1e-18;   // objective value below which a descent counts as a hit
  double step_tol = 1e-15;     // stop when the accepted step is shorter than this
  double certify_tol = 1e-9;   // residual tolerance for the certified flag
  int polish_iters = 500;
  int threads = 1;             // concurrent restarts; results do not depend on it

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct SicCandidate {
  StateVector fiducial;
  double objective_value = 0.0;
  double gram_residual = 0.0;     // recomputed from the fiducial
  double quartic_residual = 0.0;  // recomputed from the fiducial
  int restarts_used = 0;
  int iterations = 0;
  bool certified = false;
};

/// Summary of one restart, in restart-index order.
struct RestartTrace {
  int index = 0;
  double start_objective = 0.0;
  double final_objective = 0.0;
  int iterations = 0;
  bool accepted = false;
};

struct SearchOutcome {
  SicCandidate best;
  std::vector<RestartTrace> restarts;
};

double objective(const ComplexVector& psi);
inline double objective(const StateVector& psi) { return objective(psi.components()); }

/// Real gradient of f in R^(2d), packed as a complex vector (2 df/dpsi*).
ComplexVector ambient_gradient(const ComplexVector& psi);

/// Ambient gradient with its component along psi removed.
ComplexVector objective_gradient(const StateVector& psi);

/// Uniform random point on the unit sphere for restart `index` of `seed`.
StateVector random_start(Dim d, std::uint64_t seed, int index);

/// Residuals are recomputed here, never taken from optimizer state.
SicCandidate make_candidate(const StateVector& psi, double certify_tol, int restarts_used, int iterations);

SearchOutcome search(const SearchConfig& config);

/// High-accuracy refinement from a point near a minimum; returns the best
/// point found with honest residuals.
SicCandidate polish(const StateVector& psi, int max_iters, double certify_tol = 1e-9);

}  // namespace sicforge
