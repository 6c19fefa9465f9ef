#pragma once
/*
 * Experiment drivers over the solvers: exponent formulas, the
 * existence/blowup window, the harmonic-weight test functionals, decay
 * slope fits, and the (p, amplitude) blowup scan.
 */

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "critwave/grid.hpp"
#include "critwave/solvers.hpp"

namespace critwave {

// Admissible window of Theorem-type global existence:
// p_lo = 1 + 4/(N-2+min{N,V0}), p_hi = N/(N-2); nonempty iff V0 > N-2.
// critical = 1 + 2/(N-1) is reported when V0 >= N.
struct ExponentWindow {
  int dim;
  double v0;
  double p_lo;
  double p_hi;
  std::optional<double> critical;

  // m(p) = 4/(p-1) - N + 1; the energy weight is m(p)+1.
  double weight_exponent(double p) const;
};

// Positive root of 2 + (d+1)p - (d-1)p^2 = 0.
double strauss_exponent(double d);

// gamma(N,p) = 2 + (N+1)p - (N-1)p^2.
double gamma_quadratic(int dim, double p);

ExponentWindow exponent_window(const ModelParams& params);

// psi(r) = 1 - r^{2-N}: positive harmonic, vanishing on the obstacle.
double harmonic_weight(double r, int dim);

// C^2 non-increasing bridge: 1 on (-inf, 1/2], 0 on [1, inf) (quintic
// smoothstep in between).
double cutoff_eta(double s);
double cutoff_eta_t(double t, double T);

// integral (u1 + (V0/r) u0) psi dx.
double blowup_sign_functional(const RadialField& u0, const RadialField& u1,
                              const ModelParams& params);

// Y(T) = sign functional
//        + int_0^T ( int_{tau/2}^tau int |u|^p psi eta_tau^{2p'} dx dt ) dtau/tau,
// all integrals by trapezoid over the stored snapshots.
double y_functional(const Trajectory& traj, const ModelParams& params, double T);

// Lifespan-bound envelope: T^{-1/(p-1)} for p < N/(N-1);
// T^{N-1-2/(p-1)} log T at p = N/(N-1); T^{N-1-2/(p-1)} beyond.
double lifespan_bound_table(double p, int dim, double T);

// Least-squares slope of log E against log(1+t) over t in [t_a, t_b].
// Requires >= 10 samples in the window, all positive.
double decay_exponent_fit(std::span<const std::pair<double, double>> series,
                          double t_a, double t_b);

struct ScanOutcome {
  double p;
  double amplitude;
  Outcome outcome;
  std::optional<double> decay_slope;  // fitted when bounded to horizon
};

// Fixed scan profile A (r-1) exp(-2 (r-3)^2).
RadialField scan_bump_profile(const RadialGrid& grid, double amplitude);

// Runs solve_semilinear per (p, amplitude) case; a failing case is
// recorded, never aborts the scan. max_threads <= 0 selects the hardware
// count; the CRITWAVE_THREADS environment variable caps it either way.
std::vector<ScanOutcome> blowup_scan(std::span<const double> p_list,
                                     std::span<const double> amplitude_list,
                                     const ModelParams& params,
                                     const SolverConfig& config,
                                     const RadialGrid& grid,
                                     int max_threads = 0);

// sup over snapshot times of
//   [E_{m+1}^Psi(w;t) + delta int_0^t E_m^Psi] /
//   [E_{m+1}^Psi(w;0) + int_0^t int F^2 Psi^{m+1} r dx ds].
double prop31_ratio(const Trajectory& traj, const Forcing& forcing, double m,
                    double delta, const ModelParams& params);

}  // namespace critwave
