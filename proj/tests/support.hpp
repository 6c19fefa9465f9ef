#pragma once
/*
 * Shared test apparatus: the seeded bump family and independent oracles
 * (brute-force series summation, refined-grid quadrature). Everything here
 * is deliberately written without reusing the library's evaluation paths.
 */

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "critwave/functionals.hpp"
#include "critwave/grid.hpp"

namespace testsupport {

// Plain long-double summation of sum (a)_n/(c)_n z^n/n! until the partial
// sums stagnate. Independent of the library path (no compensation, no
// asymptotics, extended precision).
inline long double kummer_series_oracle(long double a, long double c,
                                        long double z) {
  long double sum = 1.0L;
  long double term = 1.0L;
  for (int n = 0; n < 20000; ++n) {
    term *= (a + n) / (c + n) * z / (n + 1);
    const long double next = sum + term;
    if (next == sum && n > z) break;
    sum = next;
  }
  return sum;
}

// Deterministic uniform draws; mt19937's output sequence is pinned by the
// standard, so these values are identical across platforms.
class Sampler {
 public:
  explicit Sampler(unsigned seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (rng_() * (1.0 / 4294967296.0));
  }

 private:
  std::mt19937 rng_;
};

struct BumpFamily {
  explicit BumpFamily(const critwave::RadialGrid& grid, unsigned seed,
                      double center_max = 8.0)
      : grid_(grid), sampler_(seed), center_max_(center_max) {}

  critwave::RadialField next() {
    const double a = sampler_.uniform(0.5, 5.0);
    const double b = sampler_.uniform(1.5, center_max_);
    return critwave::bump_field(grid_, a, b);
  }

  critwave::RadialGrid grid_;
  Sampler sampler_;
  double center_max_;
};

// Samples f on the grid and pins the first node to zero; for functions
// whose value at r_min is below roundoff this is the exact Dirichlet
// representative.
inline critwave::RadialField dirichlet_sample(
    const critwave::RadialGrid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) v[static_cast<size_t>(i)] = f(grid.r(i));
  v.front() = 0.0;
  return critwave::RadialField(grid, std::move(v), true);
}

// Trapezoid quadrature of g(r) r^{dim-1} on [1, r_max] with its own node
// count; used as the refined-grid oracle for the energy functionals.
inline double radial_quadrature_oracle(const std::function<double(double)>& g,
                                       double r_max, int dim, int n) {
  const double h = (r_max - 1.0) / (n - 1);
  long double acc = 0.0L;
  for (int i = 0; i < n; ++i) {
    const double r = 1.0 + (r_max - 1.0) * (static_cast<double>(i) / (n - 1));
    const double c = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += c * g(r) * std::pow(r, dim - 1);
  }
  return critwave::sphere_area(dim) * static_cast<double>(acc) * h;
}

inline double rel_diff(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

}  // namespace testsupport
