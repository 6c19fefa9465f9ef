#include "critwave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "critwave/config.hpp"
#include "critwave/csv.hpp"
#include "critwave/experiments.hpp"
#include "critwave/specfun.hpp"
#include "critwave/version.hpp"

namespace critwave::cli {

namespace {

namespace fs = std::filesystem;

std::string format_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

const std::vector<std::string> kCommonKeys = {
    "dim", "v0", "p", "nonlinearity", "r0", "seed"};

const std::vector<std::string> kGridKeys = {"r_max", "n"};

const std::vector<std::string> kSolverKeys = {
    "dt", "cfl", "t_end", "output_stride", "blowup_threshold", "energy_m"};

std::vector<std::string> keys_for(const std::string& sub) {
  std::vector<std::string> keys = kCommonKeys;
  const auto add = [&](const std::vector<std::string>& more) {
    keys.insert(keys.end(), more.begin(), more.end());
  };
  if (sub == "kummer-table") {
    add({"a", "c", "z"});
  } else if (sub == "verify-inequalities") {
    add(kGridKeys);
    add({"bumps", "beta_list", "m_list", "delta", "t", "ckn_q"});
  } else if (sub == "simulate" || sub == "decay-fit") {
    add(kGridKeys);
    add(kSolverKeys);
    add({"amplitude", "fit_lo", "fit_hi"});
  } else if (sub == "decompose-check") {
    add(kGridKeys);
    add(kSolverKeys);
    add({"amplitude", "m"});
  } else if (sub == "blowup-scan") {
    add(kGridKeys);
    add(kSolverKeys);
    add({"p_list", "amplitude_list", "threads"});
  }
  return keys;  // exponent-window needs the common keys only
}

ModelParams params_from(const RunConfig& cfg) {
  ModelParams p;
  p.dim = cfg.get_int("dim", 3);
  p.v0 = cfg.get_double("v0", 1.0);
  p.p = cfg.get_double("p", 2.0);
  p.nonlinearity = nonlinearity_from_string(cfg.get_string("nonlinearity", "signed"));
  p.r0 = cfg.get_double("r0", 7.0);
  p.validate();
  return p;
}

SolverConfig solver_from(const RunConfig& cfg) {
  SolverConfig sc;
  sc.dt = cfg.get_double("dt", 0.0);
  sc.cfl = cfg.get_double("cfl", 0.9);
  sc.t_end = cfg.get_double("t_end", 100.0);
  sc.output_stride = cfg.get_int("output_stride", 20);
  sc.blowup_threshold = cfg.get_double("blowup_threshold", 1e6);
  sc.energy_m = cfg.get_double("energy_m", 1.5);
  sc.validate();
  return sc;
}

RadialGrid grid_from(const RunConfig& cfg) {
  return build_grid(cfg.get_double("r_max", 101.0), cfg.get_int("n", 2001));
}

struct RunArtifacts {
  std::vector<std::pair<std::string, std::string>> files;  // name -> content

  void add(const std::string& name, const std::string& content) {
    files.emplace_back(name, content);
  }
};

void write_artifacts(const std::string& out_dir, const RunConfig& cfg,
                     const RunArtifacts& artifacts) {
  fs::create_directories(out_dir);
  for (const auto& [name, content] : artifacts.files) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    f << content;
  }
  {
    std::ofstream f(fs::path(out_dir) / "config_resolved.cfg", std::ios::binary);
    f << cfg.resolved_text();
  }
  {
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    std::ofstream f(fs::path(out_dir) / "manifest.csv", std::ios::binary);
    f << "config_hash,version\n" << hex << ',' << version << '\n';
  }
}

int run_exponent_window(const RunConfig& cfg, std::ostream& out) {
  ModelParams p;
  p.dim = cfg.get_int("dim", 3);
  p.v0 = cfg.get_double("v0", 3.0);
  const ExponentWindow w = exponent_window(p);
  out << "p_lo=" << format_short(w.p_lo) << ",p_hi=" << format_short(w.p_hi);
  if (w.critical) out << ",critical=" << format_short(*w.critical);
  out << '\n';
  return 0;
}

int run_kummer_table(const RunConfig& cfg, const std::string& out_dir,
                     std::ostream& out) {
  const double a = cfg.get_double("a", 1.0);
  const double c = cfg.get_double("c", 2.0);
  const std::vector<double> zs = cfg.has("z")
                                     ? cfg.get_values("z")
                                     : std::vector<double>{0, 1, 2, 3, 4, 5};
  std::ostringstream csv;
  csv << "z,M\n";
  for (double z : zs) {
    csv << format17(z) << ',' << format17(kummer_m(a, c, z)) << '\n';
  }
  if (out_dir.empty()) {
    out << csv.str();
  } else {
    RunArtifacts art;
    art.add("kummer.csv", csv.str());
    write_artifacts(out_dir, cfg, art);
  }
  return 0;
}

int run_verify_inequalities(const RunConfig& cfg, const std::string& out_dir,
                            std::ostream& out) {
  const ModelParams params = params_from(cfg);
  const RadialGrid grid(cfg.get_double("r_max", 40.0), cfg.get_int("n", 2001));
  const int bumps = cfg.get_int("bumps", 200);
  const double delta = cfg.get_double("delta", 0.25);
  const double t = cfg.get_double("t", 1.0);
  const double ckn_q = cfg.get_double("ckn_q", 3.0);
  const std::vector<double> betas =
      cfg.has("beta_list") ? cfg.get_values("beta_list")
                           : std::vector<double>{0.0, 0.5, 1.0};
  const std::vector<double> ms = cfg.has("m_list")
                                     ? cfg.get_values("m_list")
                                     : std::vector<double>{0.5, 1.0, 1.5};
  std::mt19937 rng(static_cast<unsigned>(cfg.get_int("seed", 12345)));
  const auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (rng() * (1.0 / 4294967296.0));
  };
  std::vector<RadialField> family;
  family.reserve(static_cast<size_t>(bumps));
  for (int k = 0; k < bumps; ++k) {
    family.push_back(
        bump_field(grid, uniform(0.5, 5.0), uniform(1.5, params.r0)));
  }

  const double slack = 1e-6;
  double worst = 0.0;
  std::ostringstream csv;
  csv << "checker,cell,bumps,max_violation,ratio_min,ratio_max\n";
  const auto violation = [](const InequalityCheck& c) {
    return std::max(0.0, c.lhs - c.rhs) / std::max({std::abs(c.rhs), 1e-300});
  };

  for (double beta : betas) {
    if (!(params.dim - 2.0 + beta > 0.0)) continue;
    double v = 0.0;
    for (const RadialField& w : family) {
      v = std::max(v, violation(hardy_check(w, beta, params.dim)));
    }
    worst = std::max(worst, v);
    csv << "hardy,beta=" << format_short(beta) << ',' << bumps << ','
        << format17(v) << ",,\n";
  }
  for (double m : ms) {
    double v = 0.0;
    for (const RadialField& w : family) {
      v = std::max(v, violation(psi_hardy_check(w, m, t, params.dim)));
    }
    worst = std::max(worst, v);
    csv << "psi-hardy,m=" << format_short(m) << ',' << bumps << ','
        << format17(v) << ",,\n";
  }
  for (double beta : betas) {
    if (!(beta < params.dim - 1.0)) continue;
    double v = 0.0;
    for (const RadialField& w : family) {
      v = std::max(v, violation(ibp_check(w, beta, delta, t, params)));
    }
    worst = std::max(worst, v);
    csv << "ibp,beta=" << format_short(beta) << ',' << bumps << ','
        << format17(v) << ",,\n";
  }
  {
    double lo = 1e300, hi = 0.0;
    for (const RadialField& w : family) {
      const double r = gn_ratio(w, params.dim);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    csv << "gn,q=2N/(N-2)," << bumps << ",," << format17(lo) << ','
        << format17(hi) << '\n';
  }
  for (double m : ms) {
    if (!(m > 2.0 - params.dim)) continue;
    double lo = 1e300, hi = 0.0;
    for (const RadialField& w : family) {
      const CknCheck c = ckn_check(w, m, ckn_q, params.dim);
      if (c.rhs <= 0.0) continue;
      lo = std::min(lo, c.lhs / c.rhs);
      hi = std::max(hi, c.lhs / c.rhs);
    }
    csv << "ckn,mu=" << format_short(m) << ',' << bumps << ",,"
        << format17(lo) << ',' << format17(hi) << '\n';
  }

  if (out_dir.empty()) {
    out << csv.str();
  } else {
    RunArtifacts art;
    art.add("inequalities.csv", csv.str());
    write_artifacts(out_dir, cfg, art);
  }
  out << "max_violation=" << format17(worst) << '\n';
  return worst <= slack ? 0 : 1;
}

int run_simulate(const RunConfig& cfg, const std::string& out_dir,
                 std::ostream& out) {
  const ModelParams params = params_from(cfg);
  const SolverConfig sc = solver_from(cfg);
  const RadialGrid grid = grid_from(cfg);
  const double amplitude = cfg.get_double("amplitude", 1.0);
  const RadialField u0 = scan_bump_profile(grid, amplitude);
  const WaveState init{u0, u0, 0.0};

  const Trajectory traj =
      params.nonlinearity == Nonlinearity::None
          ? solve_wave(init, [](double, double) { return 0.0; }, params, sc)
          : solve_semilinear(init, params, sc);

  std::ostringstream energies, outcome, final_state;
  write_energy_csv(energies, traj.energies);
  write_outcome_csv(outcome, "simulate", traj.outcome);
  write_field_csv(final_state, traj.snapshots.back().w);
  if (out_dir.empty()) {
    out << outcome.str();
  } else {
    RunArtifacts art;
    art.add("energies.csv", energies.str());
    art.add("outcome.csv", outcome.str());
    art.add("final_state.csv", final_state.str());
    write_artifacts(out_dir, cfg, art);
    out << outcome.str();
  }
  return traj.outcome.kind == Outcome::Kind::NumericalFailure ? 2 : 0;
}

int run_decompose_check(const RunConfig& cfg, const std::string& out_dir,
                        std::ostream& out) {
  const ModelParams params = params_from(cfg);
  const SolverConfig sc = solver_from(cfg);
  const RadialGrid grid = grid_from(cfg);
  const double amplitude = cfg.get_double("amplitude", 1.0);
  const double m = cfg.get_double("m", 1.5);
  const RadialField u0 = scan_bump_profile(grid, amplitude);
  const Decomposition dec = decompose_solution(
      u0, u0, [](double, double) { return 0.0; }, m, params, sc);

  double max_err = 0.0;
  for (const auto& [t, e] : dec.reconstruction_error) max_err = std::max(max_err, e);

  std::ostringstream err_csv, psi_csv;
  write_error_series_csv(err_csv, dec.reconstruction_error);
  write_field_csv(psi_csv, dec.psi1);
  if (out_dir.empty()) {
    out << err_csv.str();
  } else {
    RunArtifacts art;
    art.add("reconstruction_error.csv", err_csv.str());
    art.add("psi1.csv", psi_csv.str());
    write_artifacts(out_dir, cfg, art);
  }
  out << "max_rel_error=" << format17(max_err) << '\n';
  return dec.u.outcome.kind == Outcome::Kind::NumericalFailure ? 2 : 0;
}

int run_decay_fit(const RunConfig& cfg, const std::string& out_dir,
                  std::ostream& out) {
  ModelParams params = params_from(cfg);
  params.nonlinearity = Nonlinearity::None;
  const SolverConfig sc = solver_from(cfg);
  const RadialGrid grid = grid_from(cfg);
  const double amplitude = cfg.get_double("amplitude", 1.0);
  const RadialField u0 = scan_bump_profile(grid, amplitude);
  const Trajectory traj = solve_wave(
      WaveState{u0, u0, 0.0}, [](double, double) { return 0.0; }, params, sc);
  if (traj.outcome.kind == Outcome::Kind::NumericalFailure) {
    out << "outcome=" << to_string(traj.outcome.kind) << '\n';
    return 2;
  }
  std::vector<std::pair<double, double>> series;
  for (const EnergySample& e : traj.energies.samples) {
    series.emplace_back(e.t, e.e0);
  }
  const double lo = cfg.get_double("fit_lo", 20.0);
  const double hi = cfg.get_double("fit_hi", sc.t_end);
  const double slope = decay_exponent_fit(series, lo, hi);

  if (!out_dir.empty()) {
    std::ostringstream energies;
    write_energy_csv(energies, traj.energies);
    RunArtifacts art;
    art.add("energies.csv", energies.str());
    write_artifacts(out_dir, cfg, art);
  }
  out << "decay_slope=" << format17(slope) << '\n';
  return 0;
}

int run_blowup_scan(const RunConfig& cfg, const std::string& out_dir,
                    std::ostream& out) {
  const ModelParams params = params_from(cfg);
  const SolverConfig sc = solver_from(cfg);
  const RadialGrid grid = grid_from(cfg);
  const std::vector<double> ps = cfg.has("p_list")
                                     ? cfg.get_values("p_list")
                                     : std::vector<double>{1.6, 1.8, 2.0, 2.5};
  const std::vector<double> amps = cfg.has("amplitude_list")
                                       ? cfg.get_values("amplitude_list")
                                       : std::vector<double>{0.05, 0.5, 5.0};
  const int threads = cfg.get_int("threads", 0);
  const std::vector<ScanOutcome> rows =
      blowup_scan(ps, amps, params, sc, grid, threads);
  std::ostringstream csv;
  write_scan_csv(csv, rows);
  if (out_dir.empty()) {
    out << csv.str();
  } else {
    RunArtifacts art;
    art.add("scan.csv", csv.str());
    write_artifacts(out_dir, cfg, art);
    out << csv.str();
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const auto usage = [&err](const std::string& msg) {
    err << "critwave: " << msg
        << " (subcommands: kummer-table, verify-inequalities, simulate, "
           "decompose-check, decay-fit, blowup-scan, exponent-window)\n";
    return 1;
  };
  if (args.empty()) return usage("missing subcommand");
  const std::string sub = args[0];
  const std::vector<std::string> known_subs = {
      "kummer-table",     "verify-inequalities", "simulate",
      "decompose-check",  "decay-fit",           "blowup-scan",
      "exponent-window"};
  if (std::find(known_subs.begin(), known_subs.end(), sub) == known_subs.end()) {
    return usage("unknown subcommand: " + sub);
  }

  RunConfig cfg;
  std::string out_dir;
  try {
    // --config first so flag overrides win regardless of position
    for (size_t i = 1; i < args.size(); i += 2) {
      if (args[i] == "--config") {
        if (i + 1 >= args.size()) return usage("--config needs a value");
        cfg = RunConfig::from_file(args[i + 1]);
      }
    }
    for (size_t i = 1; i < args.size(); i += 2) {
      const std::string& flag = args[i];
      if (flag.rfind("--", 0) != 0) return usage("expected a --flag, got: " + flag);
      if (i + 1 >= args.size()) return usage("flag needs a value: " + flag);
      const std::string key = flag.substr(2);
      if (key == "config") continue;
      if (key == "out") {
        out_dir = args[i + 1];
        continue;
      }
      cfg.set(key, args[i + 1]);
    }
    cfg.require_known_keys(keys_for(sub));

    if (sub == "exponent-window") return run_exponent_window(cfg, out);
    if (sub == "kummer-table") return run_kummer_table(cfg, out_dir, out);
    if (sub == "verify-inequalities") {
      return run_verify_inequalities(cfg, out_dir, out);
    }
    if (sub == "simulate") return run_simulate(cfg, out_dir, out);
    if (sub == "decompose-check") return run_decompose_check(cfg, out_dir, out);
    if (sub == "decay-fit") return run_decay_fit(cfg, out_dir, out);
    if (sub == "blowup-scan") return run_blowup_scan(cfg, out_dir, out);
  } catch (const NumericalError& e) {
    err << "critwave: numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "critwave: " << e.what() << '\n';
    return 1;
  }
  return usage("unknown subcommand: " + sub);
}

}  // namespace critwave::cli
