#pragma once
/*
 * Kummer confluent hypergeometric function M(a,c;z) and the self-similar
 * profiles built from it:
 *
 *   phi_beta(z)      = e^{-z} M(N-1-beta, N-1; z)
 *   Phi_beta(r,t)    = (1+t)^{-beta} phi_beta( V0 r / (1+t) )
 *
 * Phi_beta solves (V0/r) d_t Phi = Lap Phi on r > 0, t >= 0 and is
 * comparable to the envelope (1 + t + V0 r)^{-beta} for beta < N-1.
 *
 * Evaluation: ascending series with compensated summation for
 * z <= kummer_z_switch; the standard large-argument expansion beyond
 * (both the dominant e^z z^{a-c} branch and the recessive z^{-a} one).
 * When a is a non-positive integer the series truncates exactly and is
 * used for every z.
 */

#include <stdexcept>

namespace critwave {

inline constexpr double kummer_z_switch = 40.0;

struct KummerQuery {
  double a;
  double c;
  double z;  // z >= 0; -c must not be a non-negative integer
};

struct PhiQuery {
  double beta;
  int dim;    // N >= 3
  double v0;  // V0 > 0
  double r;   // |x| >= 0
  double t;   // t >= 0
};

// (d)_0 = 1, (d)_n = d (d+1) ... (d+n-1).
double pochhammer(double d, int n);

// M(a,c;z) for real a, z >= 0, -c not in {0,1,2,...}. May overflow to
// +inf for very large z (the function itself grows like e^z).
double kummer_m(double a, double c, double z);
double kummer_m(const KummerQuery& q);

// e^{-z} M(a,c;z), polynomially bounded for large z; safe where the
// unscaled value would overflow.
double kummer_m_scaled(double a, double c, double z);

// phi_beta(z) = e^{-z} M(dim-1-beta, dim-1; z); positive for beta < dim-1.
double phi_profile(double beta, int dim, double z);

// Phi_beta(r,t) = (1+t)^{-beta} phi_beta(v0 r/(1+t)).
double phi_field(const PhiQuery& q);
double phi_field(double beta, int dim, double v0, double r, double t);

// Two-sided comparison envelope (1 + t + v0 r)^{-beta}.
double phi_envelope(double beta, double v0, double r, double t);

}  // namespace critwave
