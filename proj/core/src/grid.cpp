#include "critwave/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace critwave {

namespace {
constexpr double pi = 3.14159265358979323846;
}

Nonlinearity nonlinearity_from_string(const std::string& s) {
  if (s == "signed") return Nonlinearity::Signed;
  if (s == "unsigned") return Nonlinearity::Unsigned;
  if (s == "none") return Nonlinearity::None;
  throw std::invalid_argument("unknown nonlinearity: " + s);
}

std::string to_string(Nonlinearity n) {
  switch (n) {
    case Nonlinearity::Signed: return "signed";
    case Nonlinearity::Unsigned: return "unsigned";
    case Nonlinearity::None: return "none";
  }
  return "none";
}

void ModelParams::validate() const {
  if (dim < 3) throw std::invalid_argument("ModelParams: dim must be >= 3");
  if (!(v0 >= 0.0)) throw std::invalid_argument("ModelParams: v0 must be >= 0");
  if (!(p > 1.0)) throw std::invalid_argument("ModelParams: p must be > 1");
  if (!(r0 >= 1.0)) throw std::invalid_argument("ModelParams: r0 must be >= 1");
}

RadialGrid::RadialGrid(double r_max, int n) : r_min_(1.0), r_max_(r_max), n_(n) {
  if (!(r_max > r_min_)) {
    throw std::invalid_argument("RadialGrid: r_max must exceed 1 (empty domain)");
  }
  if (n < 16) throw std::invalid_argument("RadialGrid: need at least 16 nodes");
  h_ = (r_max_ - r_min_) / (n_ - 1);
}

RadialGrid build_grid(double r_max, int n) { return RadialGrid(r_max, n); }

RadialField::RadialField(RadialGrid grid, std::vector<double> values, bool dirichlet)
    : grid_(grid), v_(std::move(values)), dirichlet_(dirichlet) {
  if (static_cast<int>(v_.size()) != grid_.size()) {
    throw std::invalid_argument("RadialField: value count does not match grid");
  }
  for (double x : v_) {
    if (!std::isfinite(x)) throw std::invalid_argument("RadialField: non-finite value");
  }
  if (dirichlet_ && v_.front() != 0.0) {
    throw std::invalid_argument("RadialField: Dirichlet field must vanish at r_min");
  }
}

RadialField RadialField::zero(const RadialGrid& grid, bool dirichlet) {
  return RadialField(grid, std::vector<double>(grid.size(), 0.0), dirichlet);
}

RadialField RadialField::sample(const RadialGrid& grid,
                                const std::function<double(double)>& f,
                                bool dirichlet) {
  std::vector<double> v(grid.size());
  for (int i = 0; i < grid.size(); ++i) v[static_cast<size_t>(i)] = f(grid.r(i));
  return RadialField(grid, std::move(v), dirichlet);
}

double RadialField::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

RadialField radial_derivative(const RadialField& f) {
  const int n = f.size();
  if (n < 3) throw std::invalid_argument("radial_derivative: need >= 3 nodes");
  const double h = f.grid().spacing();
  std::vector<double> d(static_cast<size_t>(n));
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (int i = 1; i < n - 1; ++i) {
    d[static_cast<size_t>(i)] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  }
  d[static_cast<size_t>(n - 1)] =
      (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return RadialField(f.grid(), std::move(d));
}

RadialField radial_laplacian(const RadialField& f, int dim) {
  const int n = f.size();
  if (n < 4) throw std::invalid_argument("radial_laplacian: need >= 4 nodes");
  const double h = f.grid().spacing();
  const double h2 = h * h;
  std::vector<double> lap(static_cast<size_t>(n));
  // one-sided second-order stencils at the ends
  {
    const double fpp = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    const double fp = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    lap[0] = fpp + (dim - 1) / f.grid().r(0) * fp;
  }
  for (int i = 1; i < n - 1; ++i) {
    const double fpp = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    const double fp = (f[i + 1] - f[i - 1]) / (2.0 * h);
    lap[static_cast<size_t>(i)] = fpp + (dim - 1) / f.grid().r(i) * fp;
  }
  {
    const double fpp =
        (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    const double fp = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    lap[static_cast<size_t>(n - 1)] = fpp + (dim - 1) / f.grid().r(n - 1) * fp;
  }
  return RadialField(f.grid(), std::move(lap));
}

double sphere_area(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere_area: dim must be >= 1");
  return 2.0 * std::pow(pi, dim / 2.0) / std::tgamma(dim / 2.0);
}

double weighted_integral(const RadialField& f,
                         const std::function<double(double)>& weight, int dim) {
  const int n = f.size();
  const double h = f.grid().spacing();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = f.grid().r(i);
    const double w = weight(r);
    if (!std::isfinite(w)) {
      throw std::invalid_argument("weighted_integral: non-finite weight sample");
    }
    const double c = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += c * f[i] * w * std::pow(r, dim - 1);
  }
  return sphere_area(dim) * acc * h;
}

double weighted_integral(const RadialField& f, std::span<const double> node_weights,
                         int dim) {
  const int n = f.size();
  if (static_cast<int>(node_weights.size()) != n) {
    throw std::invalid_argument("weighted_integral: weight count does not match grid");
  }
  const double h = f.grid().spacing();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = node_weights[static_cast<size_t>(i)];
    if (!std::isfinite(w)) {
      throw std::invalid_argument("weighted_integral: non-finite weight sample");
    }
    const double c = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += c * f[i] * w * std::pow(f.grid().r(i), dim - 1);
  }
  return sphere_area(dim) * acc * h;
}

double lp_norm(const RadialField& f, double q, int dim) {
  if (!(q > 0.0)) throw std::invalid_argument("lp_norm: q must be positive");
  std::vector<double> pw(static_cast<size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) {
    pw[static_cast<size_t>(i)] = std::pow(std::abs(f[i]), q);
  }
  const RadialField g(f.grid(), std::move(pw));
  const double integral = weighted_integral(g, [](double) { return 1.0; }, dim);
  return std::pow(integral, 1.0 / q);
}

}  // namespace critwave
