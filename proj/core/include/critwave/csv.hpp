#pragma once
/*
 * CSV emission. All floating-point values are written with 17 significant
 * digits so outputs round-trip and diff cleanly.
 */

#include <ostream>
#include <span>
#include <string>

#include "critwave/experiments.hpp"
#include "critwave/functionals.hpp"
#include "critwave/grid.hpp"
#include "critwave/solvers.hpp"

namespace critwave {

std::string format17(double x);

// Header `r,value`, one row per node.
void write_field_csv(std::ostream& out, const RadialField& f);

// Header `t,E0,Epsi_m,Epsi_m1,Esharp,Estar,Etilde`.
void write_energy_csv(std::ostream& out, const EnergyReport& report);

// Header `case_id,outcome,t_star`; t_star empty unless detected.
void write_outcome_csv(std::ostream& out, const std::string& case_id,
                       const Outcome& outcome);

// Header `p,amplitude,outcome,t_star,decay_slope`.
void write_scan_csv(std::ostream& out, std::span<const ScanOutcome> rows);

// Header `t,rel_error`.
void write_error_series_csv(std::ostream& out,
                            std::span<const std::pair<double, double>> series);

}  // namespace critwave
