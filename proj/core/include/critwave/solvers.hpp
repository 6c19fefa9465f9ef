#pragma once
/*
 * Time integrators and linear solvers on the radial grid:
 *
 *   - singular elliptic problem   (lambda/r^2) psi - Lap psi = w1
 *   - degenerate parabolic        (V0/r) d_t v - Lap v = F    (implicit Euler)
 *   - damped wave                 d_t^2 w - Lap w + (V0/r) d_t w = F
 *     (leapfrog; the damping term is averaged implicitly between the
 *     half-steps, so V0/r never restricts the step size; the wave part
 *     is CFL-limited, dt <= cfl*h)
 *   - semilinear wave with explicit nonlinearity and blowup detection
 *   - decomposition w = v + d_t U through the auxiliary problems.
 *
 * Dirichlet conditions are imposed at both ends of the grid; the outer
 * boundary must be placed causally out of reach (r_max >= R0 + t_end).
 */

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "critwave/functionals.hpp"
#include "critwave/grid.hpp"

namespace critwave {

struct SolverConfig {
  double dt = 0.0;  // <= 0 selects cfl * h
  double t_end = 10.0;
  double cfl = 0.9;
  int output_stride = 20;
  double blowup_threshold = 1e6;
  double energy_m = 1.5;  // weight exponent recorded in the energy report

  void validate() const;
  // dt actually used on this grid; never exceeds cfl * h.
  double resolve_dt(const RadialGrid& grid) const;
};

struct Outcome {
  enum class Kind { BoundedToHorizon, BlowupDetected, NumericalFailure };

  Kind kind = Kind::BoundedToHorizon;
  double t_star = std::numeric_limits<double>::quiet_NaN();
  std::string reason;

  static Outcome bounded();
  static Outcome blowup(double t);
  static Outcome failure(double t, std::string why);
};

std::string to_string(Outcome::Kind kind);

struct Trajectory {
  std::vector<WaveState> snapshots;  // stride intervals, first = initial state
  EnergyReport energies;
  Outcome outcome;
};

class NumericalError : public std::runtime_error {
 public:
  NumericalError(double t, const std::string& why);
  double time() const { return t_; }

 private:
  double t_;
};

using Forcing = std::function<double(double r, double t)>;

// Tridiagonal solve (Thomas algorithm). sub[0] and sup[n-1] are unused.
std::vector<double> thomas_solve(std::span<const double> sub,
                                 std::span<const double> diag,
                                 std::span<const double> sup,
                                 std::span<const double> rhs);

// (lambda/r^2) psi - psi'' - ((dim-1)/r) psi' = w1, psi = 0 at both ends.
RadialField solve_elliptic(const RadialField& w1, double lambda, int dim);

// max over mu in [-1, m] of lambda_mu = (mu-1)(N-3+mu)/2 + 1. The parabola
// opens upward, so the maximum sits at an endpoint.
double lambda_cap(double m, int dim);

// One implicit-Euler step: (I - dt (r/V0) Lap_h) v+ = v + dt (r/V0) F,
// with F sampled at the end of the step.
RadialField step_parabolic(const RadialField& v, const RadialField& forcing,
                           double dt, const ModelParams& params);

// In-equation time derivative d_t v = (r/V0)(Lap v + F).
RadialField parabolic_velocity(const RadialField& v, const RadialField& forcing,
                               const ModelParams& params);

// One leapfrog step; forcing is sampled at the half step t + dt/2.
WaveState step_wave(const WaveState& s, const RadialField& forcing_mid,
                    double dt, const ModelParams& params);

Trajectory solve_wave(const WaveState& init, const Forcing& forcing,
                      const ModelParams& params, const SolverConfig& config);

// step_wave with F = f(w) taken explicitly at the current step; halts with
// BlowupDetected once sup|w| >= config.blowup_threshold.
Trajectory solve_semilinear(const WaveState& init, const ModelParams& params,
                            const SolverConfig& config);

struct Decomposition {
  RadialField psi1;
  Trajectory v;  // parabolic part; wdot holds the in-equation derivative
  Trajectory u;  // hyperbolic part driven by -d_t v
  // (t, ||w - (v + d_t U)|| / ||w||) per snapshot, against a direct solve.
  std::vector<std::pair<double, double>> reconstruction_error;
};

// Solves the elliptic/parabolic/hyperbolic subproblems with
// lambda = lambda_cap(m, dim) and compares v + d_t U against an
// independent direct solve of the wave problem.
Decomposition decompose_solution(const RadialField& w0, const RadialField& w1,
                                 const Forcing& forcing, double m,
                                 const ModelParams& params,
                                 const SolverConfig& config);

}  // namespace critwave
