#ifndef CHIRALQB_ANALYTIC_HPP
#define CHIRALQB_ANALYTIC_HPP

#include <utility>
#include <vector>

#include "chiralqb/moments.hpp"
#include "chiralqb/params.hpp"

namespace chiralqb {

// Laplace poles of the first-moment subsystem,
// s_pm = -(alpha/2 +- sqrt(gamma_L*gamma_R*exp(2i*phase))).
struct FirstMomentPoles {
    cplx s_plus;
    cplx s_minus;
};

FirstMomentPoles first_moment_poles(const SystemParams& p);

// zeta = alpha^2 - 4*gamma_L*gamma_R*exp(2i*phase)  (= 4*s_plus*s_minus)
cplx zeta(const SystemParams& p);

// xi = alpha^2 - 2*gamma_L*gamma_R*cos(2*phase)
double xi(const SystemParams& p);

// <m1>(t), <m2>(t) from the vacuum under resonant drive. Evaluated in a
// form that is uniformly stable through the confluent (double-pole) limit.
// Throws SteadyStateUndefined on the dark-mode degeneracy |zeta| ~ 0.
std::pair<cplx, cplx> transient_means(const SystemParams& p, double t);

// Long-time limits: m1_ss = -2i*Omega*alpha/zeta,
// m2_ss = 4i*Omega*gamma_R*exp(i*phase)/zeta.
std::pair<cplx, cplx> steady_means(const SystemParams& p);

struct ThermalPole {
    cplx s;
    int multiplicity;
};

// The five poles {0, -alpha +- q_plus, -alpha +- q_minus} of the thermal
// response, with numerically coincident poles merged. Multiplicities always
// sum to 5; s = 0 is present with multiplicity 1 whenever the steady state
// exists.
struct ThermalPoleSet {
    std::vector<ThermalPole> poles;
};

ThermalPoleSet thermal_pole_set(const SystemParams& p, double group_tol = 1e-9);

// R_l(t): the weight multiplying kappa*nbar in <m_l^dag m_l>(t). mode is 1
// (charger) or 2 (battery). Throws SteadyStateUndefined when
// |xi^2 - 4 gamma_L^2 gamma_R^2| ~ 0.
double thermal_weight(const SystemParams& p, int mode, double t);

// Steady-state limit of thermal_weight.
double thermal_weight_ss(const SystemParams& p, int mode);

// Closed-form steady state summary.
struct SteadyReport {
    cplx m1_ss;
    cplx m2_ss;
    double E_C_ss;  // charger energy, omega0 units
    double E_B_ss;  // battery energy
    double W_ss;    // battery ergotropy
    double R1_ss;
    double R2_ss;
    cplx zeta;
    double xi;
};

SteadyReport steady_metrics(const SystemParams& p);

// All eight moments at the steady state (the cross moment follows from the
// stationarity of its equation of motion).
MomentState steady_moments(const SystemParams& p);

}  // namespace chiralqb

#endif
