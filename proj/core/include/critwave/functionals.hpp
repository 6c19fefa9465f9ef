#pragma once
/*
 * Weighted energy functionals for states (w, d_t w) on the radial grid,
 * the weighted gradient, and numerical checkers for the functional
 * inequalities (Hardy, Gagliardo-Nirenberg, Caffarelli-Kohn-Nirenberg,
 * the Psi-weighted Hardy inequality and the integration-by-parts bound).
 *
 * Conventions: Psi(r,t) = 1 + t + r; all integrals carry the radial
 * volume element sigma_{N-1} r^{N-1} dr.
 */

#include <span>
#include <vector>

#include "critwave/grid.hpp"

namespace critwave {

// Displacement/velocity pair at time t. Both fields share one grid and
// the displacement carries the Dirichlet condition at r_min.
struct WaveState {
  RadialField w;
  RadialField wdot;
  double t = 0.0;

  void validate() const;
};

struct EnergySample {
  double t;
  double e0;        // unweighted energy
  double e_psi_m;   // E_m^Psi
  double e_psi_m1;  // E_{m+1}^Psi
  double e_sharp;   // E#_{m+1}
  double e_star;    // E*_m
  double e_tilde;   // E~_{m+1}
};

struct EnergyReport {
  double m = 1.5;  // weight exponent used for the samples
  std::vector<EnergySample> samples;
};

// E_m^Psi = integral (|w'|^2 + wdot^2) (1+t+r)^m dx, m in [0, N].
double energy_psi(const WaveState& s, double m, int dim);

// integral (|w'|^2 + wdot^2) r^exponent dx.
double energy_x(const WaveState& s, double exponent, int dim);

// E~_{mu+1} = E_{mu+1} - (mu+1)(N-2+mu)/2 * integral w^2 r^{mu-1} dx.
double energy_tilde(const WaveState& s, double mu, int dim);

// E*_mu = integral (2 w wdot + (V0/r) w^2) r^mu dx.
double energy_star(const WaveState& s, double mu, const ModelParams& params);

// E#_{mu+1} = E~_{mu+1} + (V0/2) E*_mu.
double energy_sharp(const WaveState& s, double mu, const ModelParams& params);

// grad_mu w = w' + (N-2+mu)/2 * w/r.
RadialField weighted_gradient(const RadialField& w, double mu, int dim);

struct InequalityCheck {
  double lhs;
  double rhs;
};

// Hardy: ((N-2+beta)/2)^2 integral w^2 r^{beta-2} <= integral |w'|^2 r^beta.
InequalityCheck hardy_check(const RadialField& w, double beta, int dim);

// ||w||_{L^{2N/(N-2)}} / ||w'||_{L^2}; finite for nonzero Dirichlet fields.
double gn_ratio(const RadialField& w, int dim);

struct CknCheck {
  double lhs;
  double rhs;
  double mu_prime;
};

// CKN: integral |w|^q r^{mu'} <= C (integral |w'|^2 r^mu)^{q/2} with
// mu' = mu - 2 + (N-2+mu)/2 (q-2), for mu > 2-N, q in (2, 2N/(N-2)).
CknCheck ckn_check(const RadialField& w, double mu, double q, int dim);

// Psi-weighted Hardy: integral z^2 Psi^{m-1}/r
//   <= min{(N-1)/2, (N-2+m)/2}^{-2} integral |z'|^2 Psi^m.
InequalityCheck psi_hardy_check(const RadialField& z, double m, double t, int dim);

// Integration-by-parts bound with Phi = Phi_beta(.,t), delta in (0,1/2):
//   integral z Lap z / Phi^{1-2delta}
//     <= delta/(1-delta) integral |z'|^2/Phi^{1-2delta}
//        + (1-2delta)/2 integral z^2 Lap Phi / Phi^{2-2delta},
// where Lap Phi_beta = -beta (V0/r) Phi_{beta+1} exactly.
InequalityCheck ibp_check(const RadialField& z, double beta, double delta,
                          double t, const ModelParams& params);

// Right-hand sides of the energy derivative estimates along solutions of
// the inhomogeneous problem; used to test the solver trajectories.
//
// d/dt E~_{mu+1} <= etilde_derivative_bound (inequality)
double etilde_derivative_bound(const WaveState& s, double mu,
                               const RadialField& forcing,
                               const ModelParams& params);
// d/dt E*_mu = estar_derivative_rhs (identity)
double estar_derivative_rhs(const WaveState& s, double mu,
                            const RadialField& forcing,
                            const ModelParams& params);
// d/dt E#_{mu+1} <= esharp_derivative_bound (inequality)
double esharp_derivative_bound(const WaveState& s, double mu,
                               const RadialField& forcing,
                               const ModelParams& params);

EnergySample sample_energies(const WaveState& s, double m,
                             const ModelParams& params);

// (r-1) exp(-sharpness (r-center)^2): the Dirichlet-compatible bump used
// by the randomized inequality suites.
RadialField bump_field(const RadialGrid& grid, double sharpness, double center);

}  // namespace critwave
