#include "critwave/specfun.hpp"

#include <cmath>
#include <limits>

namespace critwave {

namespace {

constexpr double pi = 3.14159265358979323846;

bool is_nonpositive_integer(double x) {
  return std::isfinite(x) && x <= 0.0 && x == std::floor(x);
}

// 1/Gamma(x); zero at the poles x = 0, -1, -2, ...
double inv_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

// Ascending series sum_{n>=0} (a)_n/(c)_n z^n/n! with compensated
// summation. Truncates exactly when a is a non-positive integer.
double kummer_series(double a, double c, double z) {
  double sum = 1.0;
  double comp = 0.0;
  double term = 1.0;
  for (int n = 0; n < 5000; ++n) {
    term *= (a + n) / (c + n) * z / (n + 1);
    if (term == 0.0) break;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    // terms of the e^z-type series peak near n = z; stop only past that
    if (n + 1 > z &&
        std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

// The two asymptotic series are divergent; sum to the smallest term.
double asymptotic_tail(double p, double q, double z) {
  // sum_{n>=0} (p)_n (q)_n / (n! z^n), z may be negative
  double sum = 1.0;
  double term = 1.0;
  double smallest = 1.0;
  for (int n = 0; n < 80; ++n) {
    term *= (p + n) * (q + n) / ((n + 1) * z);
    if (std::abs(term) >= smallest) break;  // divergence onset
    smallest = std::abs(term);
    sum += term;
    if (smallest <= std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
  }
  return sum;
}

// e^{-z} M(a,c;z) for large z via the full expansion: the dominant
// z^{a-c} branch plus the recessive e^{-z} z^{-a} one.
double scaled_asymptotic(double a, double c, double z) {
  const double dominant =
      inv_gamma(a) * std::pow(z, a - c) * asymptotic_tail(c - a, 1.0 - a, z);
  const double recessive = inv_gamma(c - a) * std::cos(pi * a) *
                           std::exp(-z) * std::pow(z, -a) *
                           asymptotic_tail(a, a - c + 1.0, -z);
  return std::tgamma(c) * (dominant + recessive);
}

void check_query(double a, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(z)) {
    throw std::invalid_argument("kummer_m: non-finite argument");
  }
  if (is_nonpositive_integer(c)) {
    throw std::invalid_argument("kummer_m: c must not be a non-positive integer");
  }
  if (z < 0.0) {
    throw std::invalid_argument("kummer_m: negative argument z");
  }
}

}  // namespace

double pochhammer(double d, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer: negative order");
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= d + (k - 1);
  return prod;
}

double kummer_m(double a, double c, double z) {
  check_query(a, c, z);
  if (is_nonpositive_integer(a)) return kummer_series(a, c, z);  // polynomial
  if (z <= kummer_z_switch) return kummer_series(a, c, z);
  return std::exp(z) * scaled_asymptotic(a, c, z);
}

double kummer_m(const KummerQuery& q) { return kummer_m(q.a, q.c, q.z); }

double kummer_m_scaled(double a, double c, double z) {
  check_query(a, c, z);
  if (is_nonpositive_integer(a)) return std::exp(-z) * kummer_series(a, c, z);
  if (z <= kummer_z_switch) return std::exp(-z) * kummer_series(a, c, z);
  return scaled_asymptotic(a, c, z);
}

double phi_profile(double beta, int dim, double z) {
  if (dim < 3) throw std::invalid_argument("phi_profile: dim must be >= 3");
  if (!(z >= 0.0)) throw std::invalid_argument("phi_profile: z must be >= 0");
  if (beta == 0.0) return 1.0;  // M(N-1,N-1;z) = e^z cancels exactly
  const double c = dim - 1.0;
  return kummer_m_scaled(c - beta, c, z);
}

double phi_field(const PhiQuery& q) {
  return phi_field(q.beta, q.dim, q.v0, q.r, q.t);
}

double phi_field(double beta, int dim, double v0, double r, double t) {
  if (!(v0 > 0.0)) throw std::invalid_argument("phi_field: v0 must be positive");
  if (!(r >= 0.0) || !(t >= 0.0)) {
    throw std::invalid_argument("phi_field: r and t must be non-negative");
  }
  const double z = v0 * r / (1.0 + t);
  if (!std::isfinite(z)) throw std::invalid_argument("phi_field: non-finite argument");
  return std::pow(1.0 + t, -beta) * phi_profile(beta, dim, z);
}

double phi_envelope(double beta, double v0, double r, double t) {
  return std::pow(1.0 + t + v0 * r, -beta);
}

}  // namespace critwave
