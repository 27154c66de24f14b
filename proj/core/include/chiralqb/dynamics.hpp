#ifndef CHIRALQB_DYNAMICS_HPP
#define CHIRALQB_DYNAMICS_HPP

#include <optional>

#include "chiralqb/moments.hpp"
#include "chiralqb/params.hpp"

namespace chiralqb {

// Time derivatives of the closed moment system, in the frame rotating at
// the (resonant) drive frequency. Total function on valid inputs.
MomentState moment_rhs(const MomentState& s, const SystemParams& p);

// Same with an explicit complex drive amplitude. The model's drive is real
// nonnegative; the complex overload exists so phase-covariance properties
// can be exercised.
MomentState moment_rhs(const MomentState& s, const SystemParams& p, cplx drive);

struct EvolveOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    std::optional<cplx> drive;  // overrides p.drive_amp when set
};

// Integrates the moment system from the vacuum over [0, t_end], sampled on
// a uniform grid of n_samples points (endpoints included). Adaptive
// embedded Runge-Kutta 4(5); throws StepSizeUnderflow if the controller
// stalls.
Trajectory evolve(const SystemParams& p, double t_end, int n_samples,
                  const EvolveOptions& opt = {});
Trajectory evolve(const SystemParams& p, double t_end, int n_samples,
                  double rtol, double atol);

struct SteadyOdeOptions {
    double rtol = 1e-10;
    double atol = 1e-13;
    double horizon_alphas = 2000;  // give up after this many 1/alpha
};

// Integrates until the max-norm of moment_rhs drops below tol times a
// characteristic scale alpha*(1+|state|) + Omega + kappa*nbar. Throws
// NoConvergence when the horizon is exceeded (near-degenerate dark mode).
MomentState steady_from_ode(const SystemParams& p, double tol = 1e-9,
                            const SteadyOdeOptions& opt = {});

}  // namespace chiralqb

#endif
