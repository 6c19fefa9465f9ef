#include "critwave/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace critwave {

double ExponentWindow::weight_exponent(double p) const {
  return 4.0 / (p - 1.0) - dim + 1.0;
}

double strauss_exponent(double d) {
  if (!(d > 1.0)) throw std::invalid_argument("strauss_exponent: need d > 1");
  return (d + 1.0 + std::sqrt(d * d + 10.0 * d - 7.0)) / (2.0 * (d - 1.0));
}

double gamma_quadratic(int dim, double p) {
  return 2.0 + (dim + 1.0) * p - (dim - 1.0) * p * p;
}

ExponentWindow exponent_window(const ModelParams& params) {
  params.validate();
  const int n = params.dim;
  if (!(params.v0 > n - 2.0)) {
    throw std::invalid_argument("exponent_window: empty window (V0 <= N-2)");
  }
  ExponentWindow w{};
  w.dim = n;
  w.v0 = params.v0;
  w.p_lo = 1.0 + 4.0 / (n - 2.0 + std::min<double>(n, params.v0));
  w.p_hi = static_cast<double>(n) / (n - 2.0);
  if (params.v0 >= n) w.critical = 1.0 + 2.0 / (n - 1.0);
  return w;
}

double harmonic_weight(double r, int dim) {
  if (!(r >= 1.0)) throw std::invalid_argument("harmonic_weight: need r >= 1");
  return 1.0 - std::pow(r, 2.0 - dim);
}

double cutoff_eta(double s) {
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  const double u = 2.0 * s - 1.0;  // quintic smoothstep on [1/2, 1]
  return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double cutoff_eta_t(double t, double T) { return cutoff_eta(t / T); }

double blowup_sign_functional(const RadialField& u0, const RadialField& u1,
                              const ModelParams& params) {
  if (!(u0.grid() == u1.grid())) {
    throw std::invalid_argument("blowup_sign_functional: fields on different grids");
  }
  const int dim = params.dim;
  std::vector<double> vals(static_cast<size_t>(u0.size()));
  for (int i = 0; i < u0.size(); ++i) {
    const double r = u0.grid().r(i);
    vals[static_cast<size_t>(i)] = u1[i] + params.v0 / r * u0[i];
  }
  const RadialField f(u0.grid(), std::move(vals));
  return weighted_integral(
      f, [dim](double r) { return harmonic_weight(r, dim); }, dim);
}

namespace {

double interp_series(std::span<const double> ts, std::span<const double> ys,
                     double t) {
  // linear interpolation on an increasing abscissa
  if (t <= ts.front()) return ys.front();
  if (t >= ts.back()) return ys.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const size_t j = static_cast<size_t>(it - ts.begin());
  const double lam = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
  return (1.0 - lam) * ys[j - 1] + lam * ys[j];
}

}  // namespace

double y_functional(const Trajectory& traj, const ModelParams& params, double T) {
  if (traj.snapshots.empty()) {
    throw std::invalid_argument("y_functional: empty trajectory");
  }
  const double horizon = traj.snapshots.back().t;
  if (!(T > 0.0) || T > horizon + 1e-12) {
    throw std::invalid_argument("y_functional: T outside the trajectory horizon");
  }
  const double pp = params.p / (params.p - 1.0);  // Hoelder conjugate
  const int dim = params.dim;

  std::vector<double> ts, svals;
  double max_gap = 0.0;
  for (const WaveState& s : traj.snapshots) {
    if (s.t > T + 1e-12 && ts.size() >= 2) break;
    std::vector<double> up(static_cast<size_t>(s.w.size()));
    for (int i = 0; i < s.w.size(); ++i) {
      up[static_cast<size_t>(i)] = std::pow(std::abs(s.w[i]), params.p);
    }
    const RadialField f(s.w.grid(), std::move(up));
    if (!ts.empty()) max_gap = std::max(max_gap, s.t - ts.back());
    ts.push_back(s.t);
    svals.push_back(weighted_integral(
        f, [dim](double r) { return harmonic_weight(r, dim); }, dim));
  }
  if (ts.size() < 3 || max_gap > T / 4.0) {
    throw std::invalid_argument("y_functional: insufficient snapshot density");
  }

  const auto eta_pow = [pp](double s) { return std::pow(cutoff_eta(s), 2.0 * pp); };

  // g(tau) = int_{tau/2}^tau S(t) eta(t/tau)^{2p'} dt over merged breakpoints
  const auto inner = [&](double tau) {
    const double lo = 0.5 * tau;
    std::vector<double> pts{lo};
    for (double t : ts) {
      if (t > lo && t < tau) pts.push_back(t);
    }
    pts.push_back(tau);
    double acc = 0.0;
    for (size_t j = 0; j + 1 < pts.size(); ++j) {
      const double a = pts[j], b = pts[j + 1];
      const double fa = interp_series(ts, svals, a) * eta_pow(a / tau);
      const double fb = interp_series(ts, svals, b) * eta_pow(b / tau);
      acc += 0.5 * (fa + fb) * (b - a);
    }
    return acc;
  };

  // limit of g(tau)/tau as tau -> 0: S(0) * int_{1/2}^1 eta^{2p'}
  double eta_mass = 0.0;
  const int nq = 400;
  for (int j = 0; j <= nq; ++j) {
    const double s = 0.5 + 0.5 * j / nq;
    eta_mass += ((j == 0 || j == nq) ? 0.5 : 1.0) * eta_pow(s);
  }
  eta_mass *= 0.5 / nq;

  std::vector<double> taus{0.0};
  std::vector<double> integrand{svals.front() * eta_mass};
  for (double t : ts) {
    if (t > 0.0 && t <= T + 1e-12) {
      taus.push_back(std::min(t, T));
      integrand.push_back(inner(taus.back()) / taus.back());
    }
  }
  if (taus.back() < T - 1e-12) {
    taus.push_back(T);
    integrand.push_back(inner(T) / T);
  }
  double outer = 0.0;
  for (size_t j = 0; j + 1 < taus.size(); ++j) {
    outer += 0.5 * (integrand[j] + integrand[j + 1]) * (taus[j + 1] - taus[j]);
  }
  const WaveState& init = traj.snapshots.front();
  return blowup_sign_functional(init.w, init.wdot, params) + outer;
}

double lifespan_bound_table(double p, int dim, double T) {
  if (!(T > 1.0)) throw std::invalid_argument("lifespan_bound_table: need T > 1");
  const double thresh = static_cast<double>(dim) / (dim - 1.0);
  const double expo = dim - 1.0 - 2.0 / (p - 1.0);
  if (std::abs(p - thresh) < 1e-12) return std::pow(T, expo) * std::log(T);
  if (p < thresh) return std::pow(T, -1.0 / (p - 1.0));
  return std::pow(T, expo);
}

double decay_exponent_fit(std::span<const std::pair<double, double>> series,
                          double t_a, double t_b) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& [t, e] : series) {
    if (t < t_a || t > t_b) continue;
    if (!(e > 0.0)) {
      throw std::invalid_argument("decay_exponent_fit: non-positive sample");
    }
    const double x = std::log1p(t);
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 10) {
    throw std::invalid_argument("decay_exponent_fit: fewer than 10 samples in window");
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RadialField scan_bump_profile(const RadialGrid& grid, double amplitude) {
  return RadialField::sample(
      grid,
      [amplitude](double r) {
        return amplitude * (r - 1.0) * std::exp(-2.0 * (r - 3.0) * (r - 3.0));
      },
      true);
}

namespace {

int scan_thread_count(int max_threads, size_t cases) {
  int cap = max_threads > 0 ? max_threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("CRITWAVE_THREADS")) {
    const int e = std::atoi(env);
    if (e >= 1) cap = std::min(cap, e);
  }
  return std::min<int>(cap, static_cast<int>(cases));
}

}  // namespace

std::vector<ScanOutcome> blowup_scan(std::span<const double> p_list,
                                     std::span<const double> amplitude_list,
                                     const ModelParams& params,
                                     const SolverConfig& config,
                                     const RadialGrid& grid, int max_threads) {
  if (p_list.empty() || amplitude_list.empty()) {
    throw std::invalid_argument("blowup_scan: empty case list");
  }
  params.validate();
  config.validate();

  struct Case {
    double p;
    double amplitude;
  };
  std::vector<Case> cases;
  for (double p : p_list) {
    for (double a : amplitude_list) cases.push_back({p, a});
  }
  std::vector<ScanOutcome> results(cases.size());

  const auto run_case = [&](size_t idx) {
    const Case& c = cases[idx];
    ScanOutcome out{c.p, c.amplitude, Outcome::bounded(), std::nullopt};
    try {
      ModelParams mp = params;
      mp.p = c.p;
      SolverConfig sc = config;
      // clamp the reporting weight into energy_psi's admissible range
      const double m_raw = 4.0 / (c.p - 1.0) - params.dim + 1.0;
      sc.energy_m = std::clamp(m_raw, 0.1, params.dim - 1.1);
      const RadialField u0 = scan_bump_profile(grid, c.amplitude);
      const Trajectory traj =
          solve_semilinear(WaveState{u0, u0, 0.0}, mp, sc);
      out.outcome = traj.outcome;
      if (traj.outcome.kind == Outcome::Kind::BoundedToHorizon) {
        std::vector<std::pair<double, double>> series;
        for (const EnergySample& e : traj.energies.samples) {
          series.emplace_back(e.t, e.e_psi_m1);
        }
        const double lo = std::min(20.0, config.t_end / 5.0);
        try {
          out.decay_slope = decay_exponent_fit(series, lo, config.t_end);
        } catch (const std::invalid_argument&) {
          out.decay_slope = std::nullopt;  // zero or too-sparse energies
        }
      }
    } catch (const std::exception& e) {
      out.outcome = Outcome::failure(0.0, e.what());
    }
    results[idx] = std::move(out);
  };

  const int threads = scan_thread_count(max_threads, cases.size());
  if (threads <= 1) {
    for (size_t i = 0; i < cases.size(); ++i) run_case(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= cases.size()) break;
          run_case(i);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return results;
}

double prop31_ratio(const Trajectory& traj, const Forcing& forcing, double m,
                    double delta, const ModelParams& params) {
  if (traj.snapshots.size() < 2) {
    throw std::invalid_argument("prop31_ratio: need at least two snapshots");
  }
  const int dim = params.dim;
  const RadialGrid& grid = traj.snapshots.front().w.grid();

  std::vector<double> ts, em, em1, fq;
  for (const WaveState& s : traj.snapshots) {
    ts.push_back(s.t);
    em.push_back(energy_psi(s, m, dim));
    em1.push_back(energy_psi(s, m + 1.0, dim));
    const RadialField f =
        RadialField::sample(grid, [&](double r) { return forcing(r, s.t); });
    std::vector<double> f2(static_cast<size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) {
      const double r = grid.r(i);
      f2[static_cast<size_t>(i)] =
          f[i] * f[i] * std::pow(1.0 + s.t + r, m + 1.0) * r;
    }
    fq.push_back(weighted_integral(RadialField(grid, std::move(f2)),
                                   [](double) { return 1.0; }, dim));
  }

  double best = 0.0;
  double em_int = 0.0, fq_int = 0.0;
  for (size_t j = 1; j < ts.size(); ++j) {
    const double dt = ts[j] - ts[j - 1];
    em_int += 0.5 * (em[j] + em[j - 1]) * dt;
    fq_int += 0.5 * (fq[j] + fq[j - 1]) * dt;
    const double num = em1[j] + delta * em_int;
    const double den = em1.front() + fq_int;
    if (den > 0.0) best = std::max(best, num / den);
  }
  return best;
}

}  // namespace critwave
