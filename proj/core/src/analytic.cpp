#include "chiralqb/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "chiralqb/errors.hpp"

namespace chiralqb {

namespace {

// degeneracy guards, relative to the natural scale of each denominator
constexpr double kZetaEps = 1e-10;   // |zeta| vs alpha^2
constexpr double kXiEps = 1e-10;     // |xi^2 - 4 GL^2 GR^2| vs alpha^4
constexpr double kConfluentW = 1e-7; // |w+ - w-| vs alpha^2

// cosh(sqrt(w)*t) and sinh(sqrt(w)*t)/(sqrt(w)*t) as even functions of
// sqrt(w); stable for w of either sign and through w = 0.
struct CoshSinhc {
    double C;
    double S;
};

CoshSinhc cosh_sinhc(double w, double t) {
    const double z2 = w * t * t;
    if (std::abs(z2) < 1e-8) {
        return {1.0 + z2 / 2.0 + z2 * z2 / 24.0,
                1.0 + z2 / 6.0 + z2 * z2 / 120.0};
    }
    if (w > 0.0) {
        const double z = std::sqrt(w) * t;
        return {std::cosh(z), std::sinh(z) / z};
    }
    const double z = std::sqrt(-w) * t;
    return {std::cos(z), std::sin(z) / z};
}

struct CoshSinhcC {
    cplx C;
    cplx S;
};

CoshSinhcC cosh_sinhc(cplx w, double t) {
    const cplx z2 = w * t * t;
    if (std::abs(z2) < 1e-8) {
        return {1.0 + z2 / 2.0 + z2 * z2 / 24.0,
                1.0 + z2 / 6.0 + z2 * z2 / 120.0};
    }
    const cplx z = std::sqrt(z2);
    return {std::cosh(z), std::sinh(z) / z};
}

double xi_denominator(const SystemParams& p) {
    const double x = xi(p);
    const double gg = p.gamma_L * p.gamma_R;
    return x * x - 4.0 * gg * gg;
}

void require_thermal_steady(const SystemParams& p) {
    const double a2 = p.alpha * p.alpha;
    if (std::abs(xi_denominator(p)) < kXiEps * a2 * a2) {
        throw SteadyStateUndefined(
            "xi^2 - 4 gamma_L^2 gamma_R^2 vanishes (dark collective mode); "
            "thermal steady state undefined");
    }
}

void require_mean_steady(const SystemParams& p) {
    if (std::abs(zeta(p)) < kZetaEps * p.alpha * p.alpha) {
        throw SteadyStateUndefined(
            "alpha^2 - 4 gamma_L gamma_R exp(2i k0 d) vanishes (dark mode); "
            "steady state undefined");
    }
}

int check_mode(int mode) {
    if (mode != 1 && mode != 2) throw DomainError("mode must be 1 or 2");
    return mode;
}

}  // namespace

cplx zeta(const SystemParams& p) {
    return p.alpha * p.alpha -
           4.0 * p.gamma_L * p.gamma_R * std::polar(1.0, 2.0 * p.phase);
}

double xi(const SystemParams& p) {
    return p.alpha * p.alpha -
           2.0 * p.gamma_L * p.gamma_R * std::cos(2.0 * p.phase);
}

FirstMomentPoles first_moment_poles(const SystemParams& p) {
    const cplx rad = std::sqrt(p.gamma_L * p.gamma_R *
                               std::polar(1.0, 2.0 * p.phase));
    return {-(0.5 * p.alpha + rad), -(0.5 * p.alpha - rad)};
}

std::pair<cplx, cplx> steady_means(const SystemParams& p) {
    require_mean_steady(p);
    const cplx z = zeta(p);
    const cplx I(0.0, 1.0);
    const cplx m1 = -2.0 * I * p.drive_amp * p.alpha / z;
    const cplx m2 =
        4.0 * I * p.drive_amp * p.gamma_R * std::polar(1.0, p.phase) / z;
    return {m1, m2};
}

std::pair<cplx, cplx> transient_means(const SystemParams& p, double t) {
    if (!(t >= 0.0)) throw DomainError("t must be >= 0");
    require_mean_steady(p);

    const double a = p.alpha;
    const cplx I(0.0, 1.0);
    const cplx w = p.gamma_L * p.gamma_R * std::polar(1.0, 2.0 * p.phase);
    const double s0 = -0.5 * a;             // pole midpoint
    const cplx denom = 0.25 * zeta(p);       // s0^2 - w = s_plus * s_minus
    const cplx pref2 = I * p.drive_amp * p.gamma_R * std::polar(1.0, p.phase);

    const cplx delta = std::sqrt(w);
    const double margin = (0.5 * a - std::abs(delta.real())) * t;
    if (margin > 200.0) {
        // both exponentials are far below representable significance
        return {-I * p.drive_amp * (-s0) / denom, pref2 / denom};
    }

    cplx b1, b2;  // the time-dependent brackets
    if (std::abs(delta) * t < 350.0) {
        const auto [C, S] = cosh_sinhc(w, t);
        const cplx decay = std::exp(cplx(s0 * t, 0.0));
        b1 = -s0 + decay * (s0 * C - w * t * S);
        b2 = 1.0 + decay * (s0 * t * S - C);
    } else {
        // poles are widely split; evaluate residues in combined-exponent form
        const cplx sp = s0 - delta, sm = s0 + delta;
        const cplx ep = std::exp(sp * t), em = std::exp(sm * t);
        b1 = -s0 + 0.5 * (sm * ep + sp * em);
        b2 = 1.0 + (sm * ep - sp * em) / (sp - sm);
    }
    return {-I * p.drive_amp * b1 / denom, pref2 * b2 / denom};
}

ThermalPoleSet thermal_pole_set(const SystemParams& p, double group_tol) {
    const double a = p.alpha;
    const double gg = p.gamma_L * p.gamma_R;
    const double c2 = std::cos(2.0 * p.phase);
    const double wp = std::max(0.0, 2.0 * gg * (c2 + 1.0));
    const double wm = std::min(0.0, 2.0 * gg * (c2 - 1.0));
    const double qp = std::sqrt(wp);
    const double qm = std::sqrt(-wm);

    const cplx all[5] = {cplx(0.0, 0.0), cplx(-a + qp, 0.0), cplx(-a - qp, 0.0),
                         cplx(-a, qm), cplx(-a, -qm)};
    ThermalPoleSet set;
    for (const cplx& s : all) {
        bool merged = false;
        for (auto& pole : set.poles) {
            if (std::abs(pole.s - s) <= group_tol * a) {
                pole.multiplicity += 1;
                merged = true;
                break;
            }
        }
        if (!merged) set.poles.push_back({s, 1});
    }
    return set;
}

double thermal_weight_ss(const SystemParams& p, int mode) {
    check_mode(mode);
    require_thermal_steady(p);
    const double gx = (mode == 1) ? p.gamma_L : p.gamma_R;
    return p.alpha * (xi(p) + 2.0 * gx * gx) / xi_denominator(p);
}

double thermal_weight(const SystemParams& p, int mode, double t) {
    check_mode(mode);
    if (!(t >= 0.0)) throw DomainError("t must be >= 0");
    require_thermal_steady(p);

    const double a = p.alpha;
    const double a2 = a * a;
    const double gg = p.gamma_L * p.gamma_R;
    const double gx = (mode == 1) ? p.gamma_L : p.gamma_R;
    const double c = 2.0 * gg * std::cos(2.0 * p.phase);
    const double gx2 = 2.0 * gx * gx;
    const double wp = c + 2.0 * gg;  // = 4 gg cos^2(phase) >= 0
    const double wm = c - 2.0 * gg;  // <= 0

    const double r_ss = a * (a2 - c + gx2) / ((a2 - wp) * (a2 - wm));

    const double qp = std::sqrt(std::max(0.0, wp));
    if ((a - qp) * t > 200.0) return r_ss;

    // transient part: e^{-alpha t} times the divided difference of
    //   g(w) = (w - c + gx2) * (w*t*S(w) + alpha*C(w)) / (w - alpha^2)
    // between w = wp and w = wm (the two squared pole offsets).
    double transient;
    if (qp * t < 350.0) {
        auto g = [&](double w) {
            const auto [C, S] = cosh_sinhc(w, t);
            return (w - c + gx2) * (w * t * S + a * C) / (w - a2);
        };
        double dd;
        if (std::abs(wp - wm) > kConfluentW * a2) {
            dd = (g(wp) - g(wm)) / (wp - wm);
        } else {
            // confluent limit: derivative at the midpoint
            const double w0 = 0.5 * (wp + wm);
            const auto [C, S] = cosh_sinhc(w0, t);
            const double K = w0 - c + gx2;
            const double P = w0 * t * S + a * C;
            const double Pp = 0.5 * t * (S + C) + 0.5 * a * t * t * S;
            dd = (P + K * Pp) / (w0 - a2) - K * P / ((w0 - a2) * (w0 - a2));
        }
        transient = std::exp(-a * t) * dd;
    } else {
        // large split: fold e^{-alpha t} into each exponential to avoid
        // overflow of cosh
        const double Kp = wp - c + gx2;
        const double pairp = Kp *
                             0.5 *
                             ((a + qp) * std::exp(-(a - qp) * t) +
                              (a - qp) * std::exp(-(a + qp) * t)) /
                             ((wp - wm) * (wp - a2));
        const auto [Cm, Sm] = cosh_sinhc(wm, t);
        const double Km = wm - c + gx2;
        const double pairm = Km * std::exp(-a * t) * (wm * t * Sm + a * Cm) /
                             ((wm - wp) * (wm - a2));
        transient = pairp + pairm;
    }
    return r_ss + transient;
}

SteadyReport steady_metrics(const SystemParams& p) {
    require_mean_steady(p);
    require_thermal_steady(p);

    SteadyReport rep;
    rep.zeta = zeta(p);
    rep.xi = xi(p);
    auto [m1, m2] = steady_means(p);
    rep.m1_ss = m1;
    rep.m2_ss = m2;
    rep.R1_ss = thermal_weight_ss(p, 1);
    rep.R2_ss = thermal_weight_ss(p, 2);

    const double knb = p.kappa * p.nbar;
    const double w0 = p.omega0;
    rep.W_ss = w0 * std::norm(m2);
    rep.E_B_ss = w0 * (std::norm(m2) + knb * rep.R2_ss + 0.5);
    rep.E_C_ss = w0 * (std::norm(m1) + knb * rep.R1_ss + 0.5);
    return rep;
}

MomentState steady_moments(const SystemParams& p) {
    const SteadyReport rep = steady_metrics(p);
    const double knb = p.kappa * p.nbar;
    MomentState s;
    s.m1 = rep.m1_ss;
    s.m2 = rep.m2_ss;
    s.m1_sq = rep.m1_ss * rep.m1_ss;
    s.m2_sq = rep.m2_ss * rep.m2_ss;
    s.m1m2 = rep.m1_ss * rep.m2_ss;
    s.n1 = std::norm(rep.m1_ss) + knb * rep.R1_ss;
    s.n2 = std::norm(rep.m2_ss) + knb * rep.R2_ss;
    // stationarity of d<m1^dag m2>/dt
    const cplx eip = std::polar(1.0, p.phase);
    const cplx I(0.0, 1.0);
    s.m1d_m2 = (-p.gamma_R * eip * s.n1 - p.gamma_L * std::conj(eip) * s.n2 +
                I * p.drive_amp * rep.m2_ss) /
               p.alpha;
    return s;
}

}  // namespace chiralqb
