#pragma once
/*
 * Radial discretization of the exterior domain { r >= 1 } in R^N:
 * uniform 1-D mesh, second-order difference operators and weighted
 * quadrature reducing N-dimensional radial integrals to 1-D.
 */

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace critwave {

enum class Nonlinearity { Signed, Unsigned, None };

Nonlinearity nonlinearity_from_string(const std::string& s);
std::string to_string(Nonlinearity n);

// Physical parameters of the damped wave problem. The damping coefficient
// is v0/r on the exterior domain r >= 1; f(u) is |u|^{p-1}u (signed),
// |u|^p (unsigned), or absent.
struct ModelParams {
  int dim = 3;
  double v0 = 1.0;
  double p = 2.0;
  Nonlinearity nonlinearity = Nonlinearity::Signed;
  double r0 = 3.0;  // nominal support radius of the data

  void validate() const;
};

// Uniform mesh on [1, r_max]. Node i sits at 1 + i*(r_max-1)/(n-1); the
// last node is exactly r_max.
class RadialGrid {
 public:
  RadialGrid(double r_max, int n);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  int size() const { return n_; }
  double spacing() const { return h_; }
  double r(int i) const {
    return r_min_ + (r_max_ - r_min_) * (static_cast<double>(i) / (n_ - 1));
  }

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  double r_min_;
  double r_max_;
  int n_;
  double h_;
};

RadialGrid build_grid(double r_max, int n);

// Scalar samples on a RadialGrid. Immutable after construction; a
// Dirichlet-flagged field vanishes at r_min.
class RadialField {
 public:
  RadialField(RadialGrid grid, std::vector<double> values, bool dirichlet = false);

  static RadialField zero(const RadialGrid& grid, bool dirichlet = true);
  static RadialField sample(const RadialGrid& grid,
                            const std::function<double(double)>& f,
                            bool dirichlet = false);

  const RadialGrid& grid() const { return grid_; }
  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
  std::span<const double> values() const { return v_; }
  bool dirichlet() const { return dirichlet_; }

  double max_abs() const;

 private:
  RadialGrid grid_;
  std::vector<double> v_;
  bool dirichlet_;
};

// Second-order first derivative: centered interiorly, one-sided at the ends.
RadialField radial_derivative(const RadialField& f);

// f'' + (dim-1)/r f' by second-order stencils (one-sided at the ends).
RadialField radial_laplacian(const RadialField& f, int dim);

// Surface measure of the unit sphere S^{dim-1}: 2 pi^{dim/2} / Gamma(dim/2).
double sphere_area(int dim);

// sigma_{N-1} * trapezoid( f(r) * weight(r) * r^{N-1} ) over the grid.
double weighted_integral(const RadialField& f,
                         const std::function<double(double)>& weight, int dim);
double weighted_integral(const RadialField& f, std::span<const double> node_weights,
                         int dim);

// ( integral |f|^q dx )^{1/q} with the radial volume element.
double lp_norm(const RadialField& f, double q, int dim);

}  // namespace critwave
