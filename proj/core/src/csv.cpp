#include "critwave/csv.hpp"

#include <cmath>
#include <cstdio>

namespace critwave {

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_field_csv(std::ostream& out, const RadialField& f) {
  out << "r,value\n";
  for (int i = 0; i < f.size(); ++i) {
    out << format17(f.grid().r(i)) << ',' << format17(f[i]) << '\n';
  }
}

void write_energy_csv(std::ostream& out, const EnergyReport& report) {
  out << "t,E0,Epsi_m,Epsi_m1,Esharp,Estar,Etilde\n";
  for (const EnergySample& e : report.samples) {
    out << format17(e.t) << ',' << format17(e.e0) << ',' << format17(e.e_psi_m)
        << ',' << format17(e.e_psi_m1) << ',' << format17(e.e_sharp) << ','
        << format17(e.e_star) << ',' << format17(e.e_tilde) << '\n';
  }
}

void write_outcome_csv(std::ostream& out, const std::string& case_id,
                       const Outcome& outcome) {
  out << "case_id,outcome,t_star\n";
  out << case_id << ',' << to_string(outcome.kind) << ',';
  if (!std::isnan(outcome.t_star)) out << format17(outcome.t_star);
  out << '\n';
}

void write_scan_csv(std::ostream& out, std::span<const ScanOutcome> rows) {
  out << "p,amplitude,outcome,t_star,decay_slope\n";
  for (const ScanOutcome& row : rows) {
    out << format17(row.p) << ',' << format17(row.amplitude) << ','
        << to_string(row.outcome.kind) << ',';
    if (!std::isnan(row.outcome.t_star)) out << format17(row.outcome.t_star);
    out << ',';
    if (row.decay_slope) out << format17(*row.decay_slope);
    out << '\n';
  }
}

void write_error_series_csv(std::ostream& out,
                            std::span<const std::pair<double, double>> series) {
  out << "t,rel_error\n";
  for (const auto& [t, e] : series) {
    out << format17(t) << ',' << format17(e) << '\n';
  }
}

}  // namespace critwave
