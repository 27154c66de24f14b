#ifndef CHIRALQB_COMMANDS_HPP
#define CHIRALQB_COMMANDS_HPP

#include <string>

#include "chiralqb/config.hpp"
#include "chiralqb/table.hpp"

namespace chiralqb {

// Time evolution of all battery/charger metrics from the vacuum.
// Columns: t, E_B, E_C, W, R, eta, C, n1, n2, abs_m1, abs_m2.
ResultTable cmd_evolve(const RunConfig& cfg);

// Single-row closed-form steady-state summary (energies, ergotropy,
// thermal weights, moments, eta_ss, R_ss, C_ss).
ResultTable cmd_steady(const RunConfig& cfg);

// Steady-state metrics over a 1-D or 2-D parameter grid, with ratio
// columns against the reciprocal (D = 0) baseline at the same phase.
// Degenerate grid points become NaN rows with the `degenerate` flag set.
ResultTable cmd_sweep(const RunConfig& cfg, int jobs = 0);

// Canonical study presets named fig2, fig3, fig4, figS1 (see README).
ResultTable cmd_figure(const std::string& name, const RunConfig& cfg,
                       int jobs = 0);

}  // namespace chiralqb

#endif
