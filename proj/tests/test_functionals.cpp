#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "critwave/functionals.hpp"
#include "critwave/specfun.hpp"
#include "support.hpp"

using namespace critwave;
using testsupport::rel_diff;

namespace {

WaveState zero_state(const RadialGrid& g) {
  return WaveState{RadialField::zero(g, true), RadialField::zero(g, false), 0.0};
}

// the spec's reference field (r-1)e^{-r} with derivative e^{-r}(2-r)
double wref(double r) { return (r - 1.0) * std::exp(-r); }
double wref_prime(double r) { return (2.0 - r) * std::exp(-r); }

}  // namespace

TEST_CASE("energy functionals vanish on the zero state", "[functionals]") {
  const RadialGrid g(30.0, 301);
  const WaveState s = zero_state(g);
  ModelParams params;
  params.dim = 3;
  params.v0 = 2.0;
  CHECK(energy_psi(s, 1.0, 3) == 0.0);
  CHECK(energy_x(s, 2.0, 3) == 0.0);
  CHECK(energy_tilde(s, 1.0, 3) == 0.0);
  CHECK(energy_star(s, 1.0, params) == 0.0);
  CHECK(energy_sharp(s, 1.0, params) == 0.0);
}

TEST_CASE("energy_psi at m=0 and t=0 equals the plain energy", "[functionals]") {
  const RadialGrid g(30.0, 601);
  const RadialField w = RadialField::sample(g, wref, true);
  const RadialField wd = bump_field(g, 2.0, 4.0);
  const WaveState s{w, wd, 0.0};
  CHECK(rel_diff(energy_psi(s, 0.0, 3), energy_x(s, 0.0, 3)) < 1e-14);
  CHECK_THROWS_AS(energy_psi(s, -0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(energy_psi(s, 3.5, 3), std::invalid_argument);
}

TEST_CASE("energy_psi matches a refined-grid oracle", "[functionals]") {
  // the FD-derivative error scales with h^2, so hitting 1e-6 agreement
  // against the exact-derivative quadrature takes a fine base grid
  const RadialGrid g(30.0, 30001);
  const WaveState s{RadialField::sample(g, wref, true),
                    RadialField::zero(g, false), 0.0};
  const double got = energy_psi(s, 1.0, 3);
  const double oracle = testsupport::radial_quadrature_oracle(
      [](double r) {
        const double d = wref_prime(r);
        return d * d * (1.0 + r);
      },
      30.0, 3, 60001);
  CHECK(rel_diff(got, oracle) < 1e-6);
}

TEST_CASE("energy_x matches a refined-grid oracle", "[functionals]") {
  const RadialGrid g(30.0, 30001);
  const WaveState s{RadialField::sample(g, wref, true),
                    RadialField::zero(g, false), 0.0};
  CHECK(rel_diff(energy_x(s, 0.0, 3), energy_psi(s, 0.0, 3)) < 1e-14);
  const double got = energy_x(s, 2.0, 3);
  const double oracle = testsupport::radial_quadrature_oracle(
      [](double r) {
        const double d = wref_prime(r);
        return d * d * r * r;
      },
      30.0, 3, 60001);
  CHECK(rel_diff(got, oracle) < 1e-6);
}

TEST_CASE("energy_tilde coefficient vanishes at mu=-1", "[functionals]") {
  const RadialGrid g(30.0, 601);
  const WaveState s{bump_field(g, 1.0, 3.0), bump_field(g, 2.0, 5.0), 0.0};
  // N=3, mu=-1: the mass term carries the factor (mu+1) = 0
  CHECK(rel_diff(energy_tilde(s, -1.0, 3), energy_x(s, 0.0, 3)) < 1e-14);
  CHECK_THROWS_AS(energy_tilde(s, -1.5, 3), std::invalid_argument);
}

TEST_CASE("energy_tilde/star/sharp against term-by-term quadrature", "[functionals]") {
  const RadialGrid g(30.0, 2001);
  ModelParams params;
  params.dim = 3;
  params.v0 = 4.0;
  const double mu = 1.5;
  const WaveState s{bump_field(g, 1.2, 3.5), bump_field(g, 2.0, 5.0), 0.0};

  // recompute the displayed terms directly
  const RadialField dw = radial_derivative(s.w);
  std::vector<double> e_density(static_cast<size_t>(g.size()));
  std::vector<double> m_density(static_cast<size_t>(g.size()));
  std::vector<double> star_density(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    const double r = g.r(i);
    e_density[static_cast<size_t>(i)] =
        (dw[i] * dw[i] + s.wdot[i] * s.wdot[i]) * std::pow(r, mu + 1.0);
    m_density[static_cast<size_t>(i)] = s.w[i] * s.w[i] * std::pow(r, mu - 1.0);
    star_density[static_cast<size_t>(i)] =
        (2.0 * s.w[i] * s.wdot[i] + params.v0 / r * s.w[i] * s.w[i]) *
        std::pow(r, mu);
  }
  const auto unit = [](double) { return 1.0; };
  const double tilde_oracle =
      weighted_integral(RadialField(g, e_density), unit, 3) -
      (mu + 1.0) * (3.0 - 2.0 + mu) / 2.0 *
          weighted_integral(RadialField(g, m_density), unit, 3);
  const double star_oracle =
      weighted_integral(RadialField(g, star_density), unit, 3);
  CHECK(rel_diff(energy_tilde(s, mu, 3), tilde_oracle) < 1e-12);
  CHECK(rel_diff(energy_star(s, mu, params), star_oracle) < 1e-12);
  CHECK(rel_diff(energy_sharp(s, mu, params),
                 tilde_oracle + params.v0 / 2.0 * star_oracle) < 1e-12);

  // wdot == 0 reduces E* to the single non-negative term
  const WaveState rest{s.w, RadialField::zero(g, false), 0.0};
  CHECK(energy_star(rest, mu, params) >= 0.0);
}

TEST_CASE("weighted_gradient kernel and symbolic oracle", "[functionals]") {
  const RadialGrid g(20.0, 4001);
  CHECK(weighted_gradient(RadialField::zero(g, true), 1.0, 3).max_abs() == 0.0);

  // kernel: w = r^{-(N-2+mu)/2} is annihilated (test-only, no Dirichlet flag)
  const double mu = 1.0;
  const int dim = 3;
  const double expo = (dim - 2.0 + mu) / 2.0;
  const RadialField kernel = RadialField::sample(
      g, [expo](double r) { return std::pow(r, -expo); }, false);
  const RadialField gk = weighted_gradient(kernel, mu, dim);
  CHECK(gk.max_abs() < 5e-5);  // FD error only

  // symbolic oracle for (r-1)e^{-r}
  const RadialField w = RadialField::sample(g, wref, true);
  const RadialField gw = weighted_gradient(w, 1.0, 3);
  double err = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double r = g.r(i);
    const double exact = wref_prime(r) + 1.0 * wref(r) / r;
    err = std::max(err, std::abs(gw[i] - exact));
  }
  CHECK(err < 5e-5);
}

TEST_CASE("hardy_check basics", "[functionals]") {
  const RadialGrid g(30.0, 1001);
  const auto zero = hardy_check(RadialField::zero(g, true), 0.0, 3);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  const auto c = hardy_check(RadialField::sample(g, wref, true), 0.0, 3);
  CHECK(c.lhs > 0.0);
  CHECK(c.lhs < c.rhs);
  CHECK_THROWS_AS(hardy_check(RadialField::zero(g, true), -1.0, 3),
                  std::invalid_argument);
}

TEST_CASE("gn_ratio invariances", "[functionals]") {
  const RadialGrid g(40.0, 2001);
  const RadialField w = bump_field(g, 2.0, 10.0);
  const double base = gn_ratio(w, 3);
  CHECK(std::isfinite(base));
  CHECK(base > 0.0);

  // homogeneity degree zero
  std::vector<double> scaled(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) scaled[static_cast<size_t>(i)] = 17.0 * w[i];
  CHECK(rel_diff(gn_ratio(RadialField(g, scaled, true), 3), base) < 1e-12);

  // dilation r -> lambda r far from the obstacle; boundary effects only
  // perturb at the bump-tail level
  const double lam = 2.0;
  const RadialField wd = testsupport::dirichlet_sample(g, [lam](double r) {
    const double rr = lam * r;
    return std::exp(-2.0 * (rr - 10.0) * (rr - 10.0));
  });
  const RadialField wo = testsupport::dirichlet_sample(
      g, [](double r) { return std::exp(-2.0 * (r - 10.0) * (r - 10.0)); });
  CHECK(rel_diff(gn_ratio(wd, 3), gn_ratio(wo, 3)) < 0.02);

  CHECK_THROWS_AS(gn_ratio(RadialField::zero(g, true), 3), std::invalid_argument);
}

TEST_CASE("ckn_check exponent arithmetic", "[functionals]") {
  const RadialGrid g(30.0, 301);
  // N=3, p=2.2: mu = m + (p-1)/p with m = 4/(p-1) - N + 1 = 4/3
  const double m = 4.0 / 1.2 - 2.0;
  const double mu = m + 1.2 / 2.2;
  const double q = 4.4;
  const auto c = ckn_check(bump_field(g, 2.0, 4.0), mu, q, 3);
  CHECK(rel_diff(mu, 62.0 / 33.0) < 1e-14);
  CHECK(rel_diff(c.mu_prime, 10.0 / 3.0) < 1e-13);
  CHECK(rel_diff(c.mu_prime, m + 2.0) < 1e-13);

  const auto z = ckn_check(RadialField::zero(g, true), mu, q, 3);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);

  // q -> 2+ limit of the exponent formula
  const auto lim = ckn_check(bump_field(g, 2.0, 4.0), mu, 2.0 + 1e-9, 3);
  CHECK(std::abs(lim.mu_prime - (mu - 2.0)) < 1e-6);

  CHECK_THROWS_AS(ckn_check(bump_field(g, 2.0, 4.0), -1.5, 4.4, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(ckn_check(bump_field(g, 2.0, 4.0), mu, 6.5, 3),
                  std::invalid_argument);
}

TEST_CASE("psi_hardy_check branch and basics", "[functionals]") {
  const RadialGrid g(30.0, 1001);
  const auto zero = psi_hardy_check(RadialField::zero(g, true), 1.0, 0.0, 3);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  // at m with (N-2+m)/2 > (N-1)/2 the min picks (N-1)/2
  const RadialField w = bump_field(g, 1.5, 4.0);
  const double m_big = 2.5;  // N=3: (1+2.5)/2 = 1.75 > 1
  const auto c = psi_hardy_check(w, m_big, 0.5, 3);
  const RadialField dw = radial_derivative(w);
  double direct = 0.0;
  {
    std::vector<double> dens(static_cast<size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
      dens[static_cast<size_t>(i)] =
          dw[i] * dw[i] * std::pow(1.5 + g.r(i), m_big);
    }
    direct = weighted_integral(RadialField(g, dens), [](double) { return 1.0; }, 3);
  }
  CHECK(rel_diff(c.rhs, direct / std::pow((3.0 - 1.0) / 2.0, 2.0)) < 1e-12);
  CHECK_THROWS_AS(psi_hardy_check(w, -1.5, 0.0, 3), std::invalid_argument);
}

TEST_CASE("ibp_check reduces cleanly at beta=0", "[functionals]") {
  const RadialGrid g(30.0, 1001);
  ModelParams params;
  params.dim = 3;
  params.v0 = 2.0;
  const auto zero = ibp_check(RadialField::zero(g, true), 1.0, 0.25, 0.5, params);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  // beta=0: Phi == 1, the curvature term vanishes, and
  // lhs = int z Lap z <= 0 <= rhs trivially for Dirichlet bumps
  const RadialField z = bump_field(g, 2.0, 5.0);
  const auto c = ibp_check(z, 0.0, 0.25, 0.5, params);
  CHECK(c.lhs < 0.0);
  CHECK(c.rhs > 0.0);
  const RadialField dz = radial_derivative(z);
  std::vector<double> dens(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) dens[static_cast<size_t>(i)] = dz[i] * dz[i];
  const double grad =
      weighted_integral(RadialField(g, dens), [](double) { return 1.0; }, 3);
  CHECK(rel_diff(c.rhs, 0.25 / 0.75 * grad) < 1e-12);

  CHECK_THROWS_AS(ibp_check(z, 0.0, 0.6, 0.5, params), std::invalid_argument);
  CHECK_THROWS_AS(ibp_check(z, 0.0, 0.0, 0.5, params), std::invalid_argument);
}

TEST_CASE("inequality suite over the seeded bump family", "[functionals]") {
  const RadialGrid g(40.0, 2001);
  ModelParams params;
  params.dim = 3;
  params.v0 = 2.0;
  params.r0 = 8.0;
  testsupport::BumpFamily family(g, 20240601u, params.r0);

  const auto violation = [](const InequalityCheck& c) {
    return std::max(0.0, c.lhs - c.rhs) / std::max(std::abs(c.rhs), 1e-300);
  };
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const RadialField w = family.next();
    worst = std::max(worst, violation(hardy_check(w, 0.0, 3)));
    worst = std::max(worst, violation(hardy_check(w, 0.5, 3)));
    worst = std::max(worst, violation(hardy_check(w, 1.0, 3)));
    worst = std::max(worst, violation(psi_hardy_check(w, 0.5, 1.0, 3)));
    worst = std::max(worst, violation(psi_hardy_check(w, 1.5, 0.0, 3)));
    worst = std::max(worst, violation(ibp_check(w, 1.0, 0.25, 1.0, params)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("weighted gradient norm relations", "[functionals]") {
  // (1/2)|w'|^2_mu <= |grad_mu w|^2_mu + ((N-2+mu)/2)^2 |w|^2_{mu-2} <= 5|w'|^2_mu
  const RadialGrid g(40.0, 1501);
  const int dim = 3;
  testsupport::BumpFamily family(g, 99u, 8.0);
  for (double mu : {-0.5, 0.5, 1.0, 2.0}) {
    for (int k = 0; k < 40; ++k) {
      const RadialField w = family.next();
      const RadialField dw = radial_derivative(w);
      const RadialField gm = weighted_gradient(w, mu, dim);
      const auto unit = [](double) { return 1.0; };
      std::vector<double> a(static_cast<size_t>(g.size())),
          b(static_cast<size_t>(g.size())), c(static_cast<size_t>(g.size()));
      for (int i = 0; i < g.size(); ++i) {
        const double r = g.r(i);
        a[static_cast<size_t>(i)] = dw[i] * dw[i] * std::pow(r, mu);
        b[static_cast<size_t>(i)] = gm[i] * gm[i] * std::pow(r, mu);
        c[static_cast<size_t>(i)] = w[i] * w[i] * std::pow(r, mu - 2.0);
      }
      const double grad = weighted_integral(RadialField(g, a), unit, dim);
      const double mid =
          weighted_integral(RadialField(g, b), unit, dim) +
          std::pow((dim - 2.0 + mu) / 2.0, 2.0) *
              weighted_integral(RadialField(g, c), unit, dim);
      INFO("mu=" << mu << " k=" << k);
      CHECK(0.5 * grad <= mid * (1.0 + 1e-9));
      CHECK(mid <= 5.0 * grad * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("sharp and plain weighted energies are equivalent", "[functionals]") {
  // fitted min/max of E#/E over a state family, stable under refinement
  ModelParams params;
  params.dim = 3;
  params.v0 = 4.0;
  const double mu_max = std::sqrt(std::pow(params.dim - 2.0, 2.0) + 1.0 +
                                  params.v0 * params.v0);
  for (double mu : {0.5, 1.5, 3.0}) {
    REQUIRE(mu < mu_max);
    REQUIRE(mu > 3.0 - params.dim);
    double fit_lo = 0.0, fit_hi = 0.0;
    for (int level = 0; level < 2; ++level) {
      const int n = level == 0 ? 1001 : 2001;
      const RadialGrid g(40.0, n);
      testsupport::BumpFamily family(g, 4242u, 8.0);
      double lo = 1e300, hi = 0.0;
      for (int k = 0; k < 60; ++k) {
        const RadialField w = family.next();
        const RadialField wd = family.next();
        const WaveState s{w, wd, 0.0};
        const double ratio =
            energy_sharp(s, mu, params) / energy_x(s, mu + 1.0, params.dim);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      if (level == 0) {
        fit_lo = lo;
        fit_hi = hi;
      } else {
        INFO("mu=" << mu);
        CHECK(lo > 0.0);
        CHECK(std::abs(lo - fit_lo) <= 0.1 * fit_lo);
        CHECK(std::abs(hi - fit_hi) <= 0.1 * fit_hi);
      }
    }
    CHECK(fit_lo > 0.0);
  }
}

TEST_CASE("ratio suites are stable under one refinement", "[functionals]") {
  ModelParams params;
  params.dim = 3;
  params.v0 = 2.0;
  double gn_hi[2] = {0.0, 0.0};
  double ckn_hi[2] = {0.0, 0.0};
  for (int level = 0; level < 2; ++level) {
    const RadialGrid g(40.0, level == 0 ? 1001 : 2001);
    testsupport::BumpFamily family(g, 31337u, 8.0);
    for (int k = 0; k < 60; ++k) {
      const RadialField w = family.next();
      gn_hi[level] = std::max(gn_hi[level], gn_ratio(w, 3));
      const auto c = ckn_check(w, 1.0, 3.0, 3);
      if (c.rhs > 0.0) ckn_hi[level] = std::max(ckn_hi[level], c.lhs / c.rhs);
    }
  }
  CHECK(std::abs(gn_hi[1] - gn_hi[0]) <= 0.1 * gn_hi[0]);
  CHECK(std::abs(ckn_hi[1] - ckn_hi[0]) <= 0.1 * ckn_hi[0]);
}

TEST_CASE("sample_energies mirrors its components", "[functionals]") {
  const RadialGrid g(30.0, 601);
  ModelParams params;
  params.dim = 3;
  params.v0 = 3.0;
  const WaveState s{bump_field(g, 1.0, 4.0), bump_field(g, 2.0, 3.0), 1.5};
  const EnergySample e = sample_energies(s, 1.5, params);
  CHECK(e.t == 1.5);
  CHECK(rel_diff(e.e0, energy_x(s, 0.0, 3)) < 1e-14);
  CHECK(rel_diff(e.e_psi_m, energy_psi(s, 1.5, 3)) < 1e-14);
  CHECK(rel_diff(e.e_psi_m1, energy_psi(s, 2.5, 3)) < 1e-14);
  CHECK(rel_diff(e.e_sharp, energy_sharp(s, 1.5, params)) < 1e-14);
  CHECK(e.e0 >= 0.0);
  CHECK(e.e_psi_m >= 0.0);
  CHECK(e.e_psi_m1 >= 0.0);
}
