#include "critwave/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "critwave/specfun.hpp"

namespace critwave {

namespace {

// trapezoid of node_value(i, r) * r^{dim-1} over the grid, times the
// sphere area, i.e. the radial volume integral.
template <typename F>
double volume_integral(const RadialGrid& grid, int dim, F&& node_value) {
  const int n = grid.size();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = grid.r(i);
    const double c = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += c * node_value(i, r) * std::pow(r, dim - 1);
  }
  return sphere_area(dim) * acc * grid.spacing();
}

}  // namespace

void WaveState::validate() const {
  if (!(w.grid() == wdot.grid())) {
    throw std::invalid_argument("WaveState: fields must share one grid");
  }
  if (!w.dirichlet()) {
    throw std::invalid_argument("WaveState: displacement must be Dirichlet-flagged");
  }
  if (!(t >= 0.0)) throw std::invalid_argument("WaveState: negative time");
}

double energy_psi(const WaveState& s, double m, int dim) {
  if (!(m >= 0.0 && m <= dim)) {
    throw std::invalid_argument("energy_psi: weight exponent outside [0, N]");
  }
  const RadialField dw = radial_derivative(s.w);
  const double t = s.t;
  return volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return (dw[i] * dw[i] + s.wdot[i] * s.wdot[i]) * std::pow(1.0 + t + r, m);
  });
}

double energy_x(const WaveState& s, double exponent, int dim) {
  const RadialField dw = radial_derivative(s.w);
  return volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return (dw[i] * dw[i] + s.wdot[i] * s.wdot[i]) * std::pow(r, exponent);
  });
}

double energy_tilde(const WaveState& s, double mu, int dim) {
  // mu = 2-N is admissible: the mass-term coefficient carries N-2+mu = 0
  if (!(mu >= 2.0 - dim)) {
    throw std::invalid_argument("energy_tilde: need mu >= 2-N");
  }
  const double coeff = (mu + 1.0) * (dim - 2.0 + mu) / 2.0;
  const double mass = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.w[i] * s.w[i] * std::pow(r, mu - 1.0);
  });
  return energy_x(s, mu + 1.0, dim) - coeff * mass;
}

double energy_star(const WaveState& s, double mu, const ModelParams& params) {
  return volume_integral(s.w.grid(), params.dim, [&](int i, double r) {
    return (2.0 * s.w[i] * s.wdot[i] + params.v0 / r * s.w[i] * s.w[i]) *
           std::pow(r, mu);
  });
}

double energy_sharp(const WaveState& s, double mu, const ModelParams& params) {
  return energy_tilde(s, mu, params.dim) +
         params.v0 / 2.0 * energy_star(s, mu, params);
}

RadialField weighted_gradient(const RadialField& w, double mu, int dim) {
  const RadialField dw = radial_derivative(w);
  std::vector<double> g(static_cast<size_t>(w.size()));
  const double coeff = (dim - 2.0 + mu) / 2.0;
  for (int i = 0; i < w.size(); ++i) {
    g[static_cast<size_t>(i)] = dw[i] + coeff * w[i] / w.grid().r(i);
  }
  return RadialField(w.grid(), std::move(g));
}

InequalityCheck hardy_check(const RadialField& w, double beta, int dim) {
  if (!(dim - 2.0 + beta > 0.0)) {
    throw std::invalid_argument("hardy_check: need N-2+beta > 0");
  }
  if (!w.dirichlet()) {
    throw std::invalid_argument("hardy_check: field must be Dirichlet-flagged");
  }
  const double coeff = (dim - 2.0 + beta) / 2.0;
  const RadialField dw = radial_derivative(w);
  const double lhs = coeff * coeff *
                     volume_integral(w.grid(), dim, [&](int i, double r) {
                       return w[i] * w[i] * std::pow(r, beta - 2.0);
                     });
  const double rhs = volume_integral(w.grid(), dim, [&](int i, double r) {
    return dw[i] * dw[i] * std::pow(r, beta);
  });
  return {lhs, rhs};
}

double gn_ratio(const RadialField& w, int dim) {
  if (!w.dirichlet()) {
    throw std::invalid_argument("gn_ratio: field must be Dirichlet-flagged");
  }
  if (w.max_abs() == 0.0) throw std::invalid_argument("gn_ratio: zero field");
  const double qc = 2.0 * dim / (dim - 2.0);
  const double grad = lp_norm(radial_derivative(w), 2.0, dim);
  return lp_norm(w, qc, dim) / grad;
}

CknCheck ckn_check(const RadialField& w, double mu, double q, int dim) {
  if (!(mu > 2.0 - dim)) throw std::invalid_argument("ckn_check: need mu > 2-N");
  if (!(q > 2.0 && q < 2.0 * dim / (dim - 2.0))) {
    throw std::invalid_argument("ckn_check: q outside (2, 2N/(N-2))");
  }
  const double mu_prime = mu - 2.0 + (dim - 2.0 + mu) / 2.0 * (q - 2.0);
  const double lhs = volume_integral(w.grid(), dim, [&](int i, double r) {
    return std::pow(std::abs(w[i]), q) * std::pow(r, mu_prime);
  });
  const RadialField dw = radial_derivative(w);
  const double grad = volume_integral(w.grid(), dim, [&](int i, double r) {
    return dw[i] * dw[i] * std::pow(r, mu);
  });
  return {lhs, std::pow(grad, q / 2.0), mu_prime};
}

InequalityCheck psi_hardy_check(const RadialField& z, double m, double t, int dim) {
  if (!(m > 2.0 - dim)) throw std::invalid_argument("psi_hardy_check: need m > 2-N");
  const double lhs = volume_integral(z.grid(), dim, [&](int i, double r) {
    return z[i] * z[i] * std::pow(1.0 + t + r, m - 1.0) / r;
  });
  const double cmin = std::min((dim - 1.0) / 2.0, (dim - 2.0 + m) / 2.0);
  const RadialField dz = radial_derivative(z);
  const double grad = volume_integral(z.grid(), dim, [&](int i, double r) {
    return dz[i] * dz[i] * std::pow(1.0 + t + r, m);
  });
  return {lhs, grad / (cmin * cmin)};
}

InequalityCheck ibp_check(const RadialField& z, double beta, double delta,
                          double t, const ModelParams& params) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("ibp_check: delta outside (0, 1/2)");
  }
  if (!(beta < params.dim - 1.0)) {
    throw std::invalid_argument("ibp_check: need beta < N-1 for a positive weight");
  }
  const int dim = params.dim;
  const RadialGrid& grid = z.grid();
  const int n = grid.size();
  std::vector<double> phi(static_cast<size_t>(n));
  std::vector<double> lap_phi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double r = grid.r(i);
    phi[static_cast<size_t>(i)] = phi_field(beta, dim, params.v0, r, t);
    // Lap Phi_beta = (V0/r) d_t Phi_beta = -beta (V0/r) Phi_{beta+1}
    lap_phi[static_cast<size_t>(i)] =
        -beta * params.v0 / r * phi_field(beta + 1.0, dim, params.v0, r, t);
  }
  const RadialField lap_z = radial_laplacian(z, dim);
  const RadialField dz = radial_derivative(z);
  const double lhs = volume_integral(grid, dim, [&](int i, double) {
    return z[i] * lap_z[i] * std::pow(phi[static_cast<size_t>(i)], 2.0 * delta - 1.0);
  });
  const double grad_part = volume_integral(grid, dim, [&](int i, double) {
    return dz[i] * dz[i] * std::pow(phi[static_cast<size_t>(i)], 2.0 * delta - 1.0);
  });
  const double curv_part = volume_integral(grid, dim, [&](int i, double) {
    return z[i] * z[i] * lap_phi[static_cast<size_t>(i)] *
           std::pow(phi[static_cast<size_t>(i)], 2.0 * delta - 2.0);
  });
  const double rhs =
      delta / (1.0 - delta) * grad_part + (1.0 - 2.0 * delta) / 2.0 * curv_part;
  return {lhs, rhs};
}

double etilde_derivative_bound(const WaveState& s, double mu,
                               const RadialField& forcing,
                               const ModelParams& params) {
  const int dim = params.dim;
  const double kinetic = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.wdot[i] * s.wdot[i] * std::pow(r, mu);
  });
  const RadialField gmu = weighted_gradient(s.w, mu, dim);
  const double grad = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return gmu[i] * gmu[i] * std::pow(r, mu);
  });
  const double work = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.wdot[i] * forcing[i] * std::pow(r, mu + 1.0);
  });
  return -2.0 * params.v0 * kinetic + 2.0 * work +
         2.0 * (mu + 1.0) * std::sqrt(kinetic) * std::sqrt(grad);
}

double estar_derivative_rhs(const WaveState& s, double mu,
                            const RadialField& forcing,
                            const ModelParams& params) {
  const int dim = params.dim;
  const double kinetic = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.wdot[i] * s.wdot[i] * std::pow(r, mu);
  });
  const RadialField gmu = weighted_gradient(s.w, mu, dim);
  const double grad = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return gmu[i] * gmu[i] * std::pow(r, mu);
  });
  const double mass = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.w[i] * s.w[i] * std::pow(r, mu - 2.0);
  });
  const double work = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.w[i] * forcing[i] * std::pow(r, mu);
  });
  const double coeff = ((dim - 2.0) * (dim - 2.0) - mu * mu) / 2.0;
  return 2.0 * kinetic - 2.0 * grad - coeff * mass + 2.0 * work;
}

double esharp_derivative_bound(const WaveState& s, double mu,
                               const RadialField& forcing,
                               const ModelParams& params) {
  const int dim = params.dim;
  const double kinetic = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.wdot[i] * s.wdot[i] * std::pow(r, mu);
  });
  const RadialField gmu = weighted_gradient(s.w, mu, dim);
  const double grad = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return gmu[i] * gmu[i] * std::pow(r, mu);
  });
  const double mass = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.w[i] * s.w[i] * std::pow(r, mu - 2.0);
  });
  const double work_dt = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.wdot[i] * forcing[i] * std::pow(r, mu + 1.0);
  });
  const double work_w = volume_integral(s.w.grid(), dim, [&](int i, double r) {
    return s.w[i] * forcing[i] * std::pow(r, mu);
  });
  const double coeff = ((dim - 2.0) * (dim - 2.0) - mu * mu) * params.v0 / 4.0;
  return -(params.v0 - std::abs(mu + 1.0)) * (kinetic + grad) - coeff * mass +
         2.0 * work_dt + params.v0 * work_w;
}

RadialField bump_field(const RadialGrid& grid, double sharpness, double center) {
  return RadialField::sample(
      grid,
      [=](double r) {
        return (r - 1.0) * std::exp(-sharpness * (r - center) * (r - center));
      },
      true);
}

EnergySample sample_energies(const WaveState& s, double m,
                             const ModelParams& params) {
  EnergySample e{};
  e.t = s.t;
  e.e0 = energy_x(s, 0.0, params.dim);
  e.e_psi_m = energy_psi(s, m, params.dim);
  e.e_psi_m1 = energy_psi(s, m + 1.0, params.dim);
  e.e_tilde = energy_tilde(s, m, params.dim);
  e.e_star = energy_star(s, m, params);
  e.e_sharp = e.e_tilde + params.v0 / 2.0 * e.e_star;
  return e;
}

}  // namespace critwave
