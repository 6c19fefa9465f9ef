#include "critwave/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace critwave {

void SolverConfig::validate() const {
  if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be > 0");
  if (!(cfl > 0.0 && cfl < 1.0)) {
    throw std::invalid_argument("SolverConfig: cfl must lie in (0,1)");
  }
  if (output_stride < 1) {
    throw std::invalid_argument("SolverConfig: output_stride must be >= 1");
  }
  if (!(blowup_threshold > 1.0)) {
    throw std::invalid_argument("SolverConfig: blowup_threshold must exceed 1");
  }
}

double SolverConfig::resolve_dt(const RadialGrid& grid) const {
  validate();
  const double cap = cfl * grid.spacing();
  return dt > 0.0 ? std::min(dt, cap) : cap;
}

Outcome Outcome::bounded() { return Outcome{}; }

Outcome Outcome::blowup(double t) {
  Outcome o;
  o.kind = Kind::BlowupDetected;
  o.t_star = t;
  return o;
}

Outcome Outcome::failure(double t, std::string why) {
  Outcome o;
  o.kind = Kind::NumericalFailure;
  o.t_star = t;
  o.reason = std::move(why);
  return o;
}

std::string to_string(Outcome::Kind kind) {
  switch (kind) {
    case Outcome::Kind::BoundedToHorizon: return "bounded_to_horizon";
    case Outcome::Kind::BlowupDetected: return "blowup_detected";
    case Outcome::Kind::NumericalFailure: return "numerical_failure";
  }
  return "numerical_failure";
}

NumericalError::NumericalError(double t, const std::string& why)
    : std::runtime_error(why), t_(t) {}

std::vector<double> thomas_solve(std::span<const double> sub,
                                 std::span<const double> diag,
                                 std::span<const double> sup,
                                 std::span<const double> rhs) {
  const size_t n = diag.size();
  if (sub.size() != n || sup.size() != n || rhs.size() != n || n == 0) {
    throw std::invalid_argument("thomas_solve: inconsistent band sizes");
  }
  std::vector<double> c(n), d(n), x(n);
  double denom = diag[0];
  if (denom == 0.0) throw NumericalError(0.0, "thomas_solve: zero pivot");
  c[0] = sup[0] / denom;
  d[0] = rhs[0] / denom;
  for (size_t i = 1; i < n; ++i) {
    denom = diag[i] - sub[i] * c[i - 1];
    if (denom == 0.0) throw NumericalError(0.0, "thomas_solve: zero pivot");
    c[i] = sup[i] / denom;
    d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
  }
  x[n - 1] = d[n - 1];
  for (size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

RadialField solve_elliptic(const RadialField& w1, double lambda, int dim) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("solve_elliptic: lambda < 0");
  const RadialGrid& grid = w1.grid();
  const int n = grid.size();
  const double h = grid.spacing();
  const size_t m = static_cast<size_t>(n - 2);
  std::vector<double> sub(m), diag(m), sup(m), rhs(m);
  for (size_t k = 0; k < m; ++k) {
    const int i = static_cast<int>(k) + 1;
    const double r = grid.r(i);
    const double adv = (dim - 1) / (2.0 * h * r);
    sub[k] = -1.0 / (h * h) + adv;
    diag[k] = 2.0 / (h * h) + lambda / (r * r);
    sup[k] = -1.0 / (h * h) - adv;
    rhs[k] = w1[i];
  }
  std::vector<double> interior = thomas_solve(sub, diag, sup, rhs);

  // verify the discrete residual; the contract is 1e-10 relative
  double res2 = 0.0, rhs2 = 0.0;
  for (size_t k = 0; k < m; ++k) {
    const double left = k > 0 ? interior[k - 1] : 0.0;
    const double right = k + 1 < m ? interior[k + 1] : 0.0;
    const double ax = sub[k] * left + diag[k] * interior[k] + sup[k] * right;
    res2 += (ax - rhs[k]) * (ax - rhs[k]);
    rhs2 += rhs[k] * rhs[k];
  }
  if (rhs2 > 0.0 && std::sqrt(res2 / rhs2) > 1e-10) {
    throw NumericalError(0.0, "solve_elliptic: residual above tolerance");
  }

  std::vector<double> psi(static_cast<size_t>(n), 0.0);
  for (size_t k = 0; k < m; ++k) psi[k + 1] = interior[k];
  return RadialField(grid, std::move(psi), true);
}

double lambda_cap(double m, int dim) {
  if (!(m >= -1.0)) throw std::invalid_argument("lambda_cap: need m >= -1");
  const auto lambda_mu = [dim](double mu) {
    return (mu - 1.0) * (dim - 3.0 + mu) / 2.0 + 1.0;
  };
  // upward parabola in mu: the maximum over [-1, m] sits at an endpoint
  return std::max(lambda_mu(-1.0), lambda_mu(m));
}

RadialField step_parabolic(const RadialField& v, const RadialField& forcing,
                           double dt, const ModelParams& params) {
  if (!(params.v0 > 0.0)) {
    throw std::invalid_argument("step_parabolic: v0 must be positive");
  }
  if (!v.dirichlet()) {
    throw std::invalid_argument("step_parabolic: field must be Dirichlet-flagged");
  }
  if (!(v.grid() == forcing.grid())) {
    throw std::invalid_argument("step_parabolic: forcing on a different grid");
  }
  const RadialGrid& grid = v.grid();
  const int n = grid.size();
  const double h = grid.spacing();
  const size_t m = static_cast<size_t>(n - 2);
  std::vector<double> sub(m), diag(m), sup(m), rhs(m);
  for (size_t k = 0; k < m; ++k) {
    const int i = static_cast<int>(k) + 1;
    const double r = grid.r(i);
    const double alpha = dt * r / params.v0;
    const double adv = alpha * (params.dim - 1) / (2.0 * h * r);
    sub[k] = -alpha / (h * h) + adv;
    diag[k] = 1.0 + 2.0 * alpha / (h * h);
    sup[k] = -alpha / (h * h) - adv;
    rhs[k] = v[i] + alpha * forcing[i];
  }
  std::vector<double> interior = thomas_solve(sub, diag, sup, rhs);
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  for (size_t k = 0; k < m; ++k) {
    if (!std::isfinite(interior[k])) {
      throw NumericalError(0.0, "step_parabolic: non-finite update");
    }
    out[k + 1] = interior[k];
  }
  return RadialField(grid, std::move(out), true);
}

RadialField parabolic_velocity(const RadialField& v, const RadialField& forcing,
                               const ModelParams& params) {
  if (!(params.v0 > 0.0)) {
    throw std::invalid_argument("parabolic_velocity: v0 must be positive");
  }
  const RadialField lap = radial_laplacian(v, params.dim);
  std::vector<double> dv(static_cast<size_t>(v.size()), 0.0);
  for (int i = 1; i + 1 < v.size(); ++i) {
    dv[static_cast<size_t>(i)] =
        v.grid().r(i) / params.v0 * (lap[i] + forcing[i]);
  }
  return RadialField(v.grid(), std::move(dv));
}

namespace {

// Leapfrog with the damping term treated as the implicit average of the
// two half-step velocities; equivalent to the centered three-level
// scheme with v the centered velocity.
class WaveStepper {
 public:
  WaveStepper(const WaveState& init, const ModelParams& params)
      : grid_(init.w.grid()),
        dim_(params.dim),
        v0_(params.v0),
        n_(grid_.size()),
        t_(init.t),
        w_(init.w.values().begin(), init.w.values().end()),
        v_(init.wdot.values().begin(), init.wdot.values().end()),
        u_(static_cast<size_t>(n_)),
        lap_(static_cast<size_t>(n_)) {}

  void step(std::span<const double> forcing_mid, double dt) {
    laplacian(w_);
    const double h = grid_.spacing();
    (void)h;
    for (int i = 1; i + 1 < n_; ++i) {
      const size_t k = static_cast<size_t>(i);
      const double damp = v0_ / grid_.r(i);
      u_[k] = v_[k] + 0.5 * dt * (lap_[k] + forcing_mid[k] - damp * v_[k]);
      w_[k] += dt * u_[k];
    }
    laplacian(w_);
    for (int i = 1; i + 1 < n_; ++i) {
      const size_t k = static_cast<size_t>(i);
      const double damp = v0_ / grid_.r(i);
      v_[k] = (u_[k] + 0.5 * dt * (lap_[k] + forcing_mid[k])) /
              (1.0 + 0.5 * dt * damp);
    }
    t_ += dt;
  }

  double time() const { return t_; }
  double sup_abs_w() const {
    double m = 0.0;
    for (double x : w_) m = std::max(m, std::abs(x));
    return m;
  }
  bool finite() const {
    for (size_t k = 0; k < w_.size(); ++k) {
      if (!std::isfinite(w_[k]) || !std::isfinite(v_[k])) return false;
    }
    return true;
  }
  const std::vector<double>& w() const { return w_; }
  WaveState state() const {
    return WaveState{RadialField(grid_, w_, true), RadialField(grid_, v_), t_};
  }

 private:
  void laplacian(const std::vector<double>& f) {
    const double h = grid_.spacing();
    const double h2 = h * h;
    lap_.front() = 0.0;
    lap_.back() = 0.0;
    for (int i = 1; i + 1 < n_; ++i) {
      const size_t k = static_cast<size_t>(i);
      const double fpp = (f[k + 1] - 2.0 * f[k] + f[k - 1]) / h2;
      const double fp = (f[k + 1] - f[k - 1]) / (2.0 * h);
      lap_[k] = fpp + (dim_ - 1) / grid_.r(i) * fp;
    }
  }

  RadialGrid grid_;
  int dim_;
  double v0_;
  int n_;
  double t_;
  std::vector<double> w_, v_, u_, lap_;
};

int step_count(double t_end, double dt) {
  return std::max(1, static_cast<int>(std::ceil(t_end / dt - 1e-9)));
}

}  // namespace

WaveState step_wave(const WaveState& s, const RadialField& forcing_mid,
                    double dt, const ModelParams& params) {
  s.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("step_wave: dt must be positive");
  if (!(s.w.grid() == forcing_mid.grid())) {
    throw std::invalid_argument("step_wave: forcing on a different grid");
  }
  WaveStepper stepper(s, params);
  stepper.step(forcing_mid.values(), dt);
  if (!stepper.finite()) {
    throw NumericalError(stepper.time(), "step_wave: non-finite update");
  }
  return stepper.state();
}

Trajectory solve_wave(const WaveState& init, const Forcing& forcing,
                      const ModelParams& params, const SolverConfig& config) {
  init.validate();
  params.validate();
  const RadialGrid& grid = init.w.grid();
  double dt = config.resolve_dt(grid);
  const int steps = step_count(config.t_end, dt);
  dt = config.t_end / steps;  // land exactly on the horizon

  Trajectory traj;
  traj.energies.m = config.energy_m;
  WaveStepper stepper(init, params);
  traj.snapshots.push_back(stepper.state());
  traj.energies.samples.push_back(
      sample_energies(traj.snapshots.back(), config.energy_m, params));

  std::vector<double> fmid(static_cast<size_t>(grid.size()), 0.0);
  for (int k = 0; k < steps; ++k) {
    const double tmid = stepper.time() + 0.5 * dt;
    for (int i = 0; i < grid.size(); ++i) {
      fmid[static_cast<size_t>(i)] = forcing(grid.r(i), tmid);
    }
    stepper.step(fmid, dt);
    if (!stepper.finite()) {
      traj.outcome = Outcome::failure(stepper.time(), "non-finite state");
      return traj;
    }
    if ((k + 1) % config.output_stride == 0 || k + 1 == steps) {
      traj.snapshots.push_back(stepper.state());
      traj.energies.samples.push_back(
          sample_energies(traj.snapshots.back(), config.energy_m, params));
    }
  }
  traj.outcome = Outcome::bounded();
  return traj;
}

Trajectory solve_semilinear(const WaveState& init, const ModelParams& params,
                            const SolverConfig& config) {
  init.validate();
  params.validate();
  if (params.nonlinearity == Nonlinearity::None) {
    throw std::invalid_argument("solve_semilinear: nonlinearity is none");
  }
  const RadialGrid& grid = init.w.grid();
  double dt = config.resolve_dt(grid);
  const int steps = step_count(config.t_end, dt);
  dt = config.t_end / steps;

  Trajectory traj;
  traj.energies.m = config.energy_m;
  WaveStepper stepper(init, params);
  traj.snapshots.push_back(stepper.state());
  traj.energies.samples.push_back(
      sample_energies(traj.snapshots.back(), config.energy_m, params));

  const bool is_signed = params.nonlinearity == Nonlinearity::Signed;
  const double pexp = params.p;
  std::vector<double> fmid(static_cast<size_t>(grid.size()), 0.0);
  for (int k = 0; k < steps; ++k) {
    const std::vector<double>& w = stepper.w();
    for (size_t i = 0; i < w.size(); ++i) {
      const double a = std::abs(w[i]);
      fmid[i] = is_signed ? std::pow(a, pexp - 1.0) * w[i] : std::pow(a, pexp);
    }
    stepper.step(fmid, dt);
    if (!stepper.finite()) {
      traj.outcome = Outcome::failure(stepper.time(), "non-finite state");
      return traj;
    }
    if (stepper.sup_abs_w() >= config.blowup_threshold) {
      traj.snapshots.push_back(stepper.state());
      traj.energies.samples.push_back(
          sample_energies(traj.snapshots.back(), config.energy_m, params));
      traj.outcome = Outcome::blowup(stepper.time());
      return traj;
    }
    if ((k + 1) % config.output_stride == 0 || k + 1 == steps) {
      traj.snapshots.push_back(stepper.state());
      traj.energies.samples.push_back(
          sample_energies(traj.snapshots.back(), config.energy_m, params));
    }
  }
  traj.outcome = Outcome::bounded();
  return traj;
}

namespace {

double l2_norm_nodes(const RadialGrid& grid, int dim,
                     const std::vector<double>& a) {
  double acc = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double c = (i == 0 || i == grid.size() - 1) ? 0.5 : 1.0;
    acc += c * a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)] *
           std::pow(grid.r(i), dim - 1);
  }
  return std::sqrt(sphere_area(dim) * acc * grid.spacing());
}

// Implicit Euler accumulates O(dt) error; a few substeps per wave step
// keep the parabolic part from dominating the reconstruction budget.
constexpr int parabolic_substeps = 4;

}  // namespace

Decomposition decompose_solution(const RadialField& w0, const RadialField& w1,
                                 const Forcing& forcing, double m,
                                 const ModelParams& params,
                                 const SolverConfig& config) {
  params.validate();
  if (!(params.v0 > 0.0)) {
    throw std::invalid_argument("decompose_solution: v0 must be positive");
  }
  if (!(w0.grid() == w1.grid())) {
    throw std::invalid_argument("decompose_solution: fields on different grids");
  }
  const RadialGrid& grid = w0.grid();
  const int n = grid.size();
  const int dim = params.dim;
  const double lambda = lambda_cap(m, dim);

  Decomposition dec{solve_elliptic(w1, lambda, dim),
                    Trajectory{},
                    Trajectory{},
                    {}};
  const RadialField& psi1 = dec.psi1;

  // v(0) = w0 + (lambda/(V0 r)) psi1 ; (U, U_t)(0) = (-psi1, -(lambda/(V0 r)) psi1)
  std::vector<double> chi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    chi[static_cast<size_t>(i)] =
        lambda / (params.v0 * grid.r(i)) * psi1[i];
  }
  std::vector<double> v0v(static_cast<size_t>(n)), u0(static_cast<size_t>(n)),
      ud0(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const size_t k = static_cast<size_t>(i);
    v0v[k] = w0[i] + chi[k];
    u0[k] = -psi1[i];
    ud0[k] = -chi[k];
  }
  RadialField v(grid, std::move(v0v), true);
  WaveState ustate{RadialField(grid, std::move(u0), true),
                   RadialField(grid, std::move(ud0)), 0.0};
  WaveState wstate{w0, w1, 0.0};

  double dt = config.resolve_dt(grid);
  const int steps = step_count(config.t_end, dt);
  dt = config.t_end / steps;

  WaveStepper udrv(ustate, params);
  WaveStepper wdrv(wstate, params);

  const auto forcing_field = [&](double t) {
    return RadialField::sample(grid, [&](double r) { return forcing(r, t); });
  };
  RadialField dv = parabolic_velocity(v, forcing_field(0.0), params);

  dec.v.energies.m = m;
  dec.u.energies.m = m;
  const auto record = [&](double t) {
    const WaveState vs{v, dv, t};
    dec.v.snapshots.push_back(vs);
    dec.v.energies.samples.push_back(sample_energies(vs, m, params));
    dec.u.snapshots.push_back(udrv.state());
    dec.u.energies.samples.push_back(
        sample_energies(dec.u.snapshots.back(), m, params));
    // reconstruction error against the direct solve
    const WaveState ws = wdrv.state();
    const WaveState& us = dec.u.snapshots.back();
    std::vector<double> diff(static_cast<size_t>(n));
    std::vector<double> wvals(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      const size_t k = static_cast<size_t>(i);
      diff[k] = ws.w[i] - (v[i] + us.wdot[i]);
      wvals[k] = ws.w[i];
    }
    const double den = l2_norm_nodes(grid, dim, wvals);
    const double num = l2_norm_nodes(grid, dim, diff);
    dec.reconstruction_error.emplace_back(t, den > 0.0 ? num / den : num);
  };
  record(0.0);

  std::vector<double> fmid_u(static_cast<size_t>(n));
  std::vector<double> fmid_w(static_cast<size_t>(n));
  double t = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double t_new = t + dt;
    const RadialField dv_old = dv;
    const double sub_dt = dt / parabolic_substeps;
    for (int j = 1; j <= parabolic_substeps; ++j) {
      v = step_parabolic(v, forcing_field(t + j * sub_dt), sub_dt, params);
    }
    dv = parabolic_velocity(v, forcing_field(t_new), params);
    for (int i = 0; i < n; ++i) {
      const size_t q = static_cast<size_t>(i);
      fmid_u[q] = -0.5 * (dv_old[i] + dv[i]);
      fmid_w[q] = forcing(grid.r(i), t + 0.5 * dt);
    }
    udrv.step(fmid_u, dt);
    wdrv.step(fmid_w, dt);
    if (!udrv.finite() || !wdrv.finite()) {
      dec.u.outcome = Outcome::failure(t_new, "non-finite state");
      dec.v.outcome = dec.u.outcome;
      return dec;
    }
    t = t_new;
    if ((k + 1) % config.output_stride == 0 || k + 1 == steps) record(t);
  }
  dec.v.outcome = Outcome::bounded();
  dec.u.outcome = Outcome::bounded();
  return dec;
}

}  // namespace critwave
