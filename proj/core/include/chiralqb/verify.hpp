#ifndef CHIRALQB_VERIFY_HPP
#define CHIRALQB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chiralqb/params.hpp"

namespace chiralqb {

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;   // worst observed deviation or the key value
    double tolerance = 0.0;  // bound it was held against
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 12345;
    int cutoff = 6;
    double omega_scale = 0.05;  // oracle drive = omega_scale*gamma_R
    int draws = 100;            // random parameter draws
};

// Random non-degenerate parameter draw used by the property checks.
SystemParams draw_params(std::uint64_t seed, int index);

// --- single checks (used by tests, the canary, and the report) --------

// max relative deviation of (m1, m2) between closed-form transients and
// the ODE integrator over t in [0, 20/alpha].
CheckResult check_transient_vs_ode(const SystemParams& p, double tol);

// ODE steady state against the closed-form energy/ergotropy expressions.
CheckResult check_steady_ode_vs_formula(const SystemParams& p, double tol);

// Moment identities <m_l^2> = <m_l>^2 and n_l - |m_l|^2 = kappa*nbar*R_l(t)
// along an ODE trajectory.
CheckResult check_identities_ode(const SystemParams& p, double tol);

// Truncated-Fock trajectory against the moment ODE. p_oracle and p_ode are
// identical in normal use; passing different sets turns this into a
// mutation canary.
CheckResult check_oracle_vs_ode(const SystemParams& p_oracle,
                                const SystemParams& p_ode, int cutoff,
                                double tol);

// Spectral ergotropy / relative-entropy coherence vs the Gaussian formulas
// plus the tail-mass and Gaussian-purity gates on oracle states.
CheckResult check_oracle_gaussian(const SystemParams& p, int cutoff,
                                  double tol);

// --- the full battery --------------------------------------------------

// Acceptance criteria 1..11 plus the supporting property checks; every
// tolerance is pinned inside.
std::vector<CheckResult> run_all_checks(const VerifyOptions& opt = {});

// Human-readable report; pass-through exit code convention: 0 ok, 2 fail.
std::string format_report(const std::vector<CheckResult>& checks,
                          const VerifyOptions& opt);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace chiralqb

#endif
