#include "chiralqb/params.hpp"

#include <cmath>
#include <string>

#include "chiralqb/errors.hpp"

namespace chiralqb {

namespace {

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0)) {  // also rejects NaN
        throw NegativeRate(std::string(name) + " must be >= 0, got " +
                           std::to_string(v));
    }
}

}  // namespace

SystemParams validate(const ParamsSpec& raw) {
    require_nonnegative(raw.gamma_R, "gamma_R");
    require_nonnegative(raw.gamma_L, "gamma_L");
    require_nonnegative(raw.kappa, "kappa");
    require_nonnegative(raw.drive_amp, "drive_amp");
    if (!(raw.nbar >= 0.0)) {
        throw NegativeTemperature("nbar must be >= 0, got " +
                                  std::to_string(raw.nbar));
    }
    if (!(raw.omega0 > 0.0)) {
        throw NegativeRate("omega0 must be > 0, got " +
                           std::to_string(raw.omega0));
    }
    if (!std::isfinite(raw.phase)) {
        throw ValidationError("phase must be finite");
    }

    SystemParams p;
    p.omega0 = raw.omega0;
    p.gamma_R = raw.gamma_R;
    p.gamma_L = raw.gamma_L;
    p.kappa = raw.kappa;
    p.nbar = raw.nbar;
    p.drive_amp = raw.drive_amp;
    p.phase = raw.phase;
    p.alpha = raw.gamma_L + raw.gamma_R + raw.kappa;
    if (!(p.alpha > 0.0)) {
        throw NonPositiveAlpha(
            "gamma_L + gamma_R + kappa must be positive; no steady state "
            "exists otherwise");
    }
    const double sum = raw.gamma_L + raw.gamma_R;
    if (sum > 0.0) {
        p.chirality = (raw.gamma_R - raw.gamma_L) / sum;
    } else {
        p.chirality = std::nullopt;
    }
    return p;
}

SystemParams validate(const SystemParams& p) {
    ParamsSpec raw;
    raw.omega0 = p.omega0;
    raw.gamma_R = p.gamma_R;
    raw.gamma_L = p.gamma_L;
    raw.kappa = p.kappa;
    raw.nbar = p.nbar;
    raw.drive_amp = p.drive_amp;
    raw.phase = p.phase;
    return validate(raw);
}

RatePair rates_from_chirality(double gamma_R, double D) {
    require_nonnegative(gamma_R, "gamma_R");
    if (!(std::abs(D) <= 1.0)) {
        throw ChiralityOutOfRange("D must lie in [-1, 1], got " +
                                  std::to_string(D));
    }
    if (D == -1.0) {
        throw ChiralityOutOfRange(
            "D = -1 is unreachable with gamma_R held fixed (gamma_L would "
            "diverge)");
    }
    return RatePair{gamma_R * (1.0 - D) / (1.0 + D), gamma_R};
}

GeometryRates chirality_from_geometry(const GeometryInput& g) {
    require_nonnegative(g.gamma_scale, "gamma_scale");
    if (!(g.theta >= 0.0 && g.theta <= M_PI)) {
        throw ValidationError("theta must lie in [0, pi]");
    }
    const double c = std::cos(g.theta);
    const double s = std::sin(g.theta);
    // g_lambda ~ (pi/a)cos(theta) - k_lambda sin(theta), with k_R = -k_L
    const double aR = g.u * c - s;
    const double aL = g.u * c + s;
    GeometryRates out;
    out.gamma_R = g.gamma_scale * aR * aR;
    out.gamma_L = g.gamma_scale * aL * aL;
    const double sum = out.gamma_L + out.gamma_R;
    if (!(sum > 0.0)) {
        throw DegenerateCoupling(
            "both couplings vanish at this geometry; chirality undefined");
    }
    out.chirality = (out.gamma_R - out.gamma_L) / sum;
    return out;
}

double nbar_from_temperature_ratio(double kT_over_omega0) {
    if (!(kT_over_omega0 >= 0.0)) {
        throw NegativeTemperature("temperature ratio must be >= 0");
    }
    if (kT_over_omega0 == 0.0) return 0.0;
    return 1.0 / std::expm1(1.0 / kT_over_omega0);
}

double rate_from_frequency(double f, double f0) {
    if (!(f0 > 0.0)) throw DomainError("reference frequency must be positive");
    if (!(f >= 0.0)) throw NegativeRate("frequency must be >= 0");
    return f / f0;
}

SystemParams canonical_params(double D, double phase, double nbar) {
    // omega0/2pi = 16.2 GHz, gamma_R/2pi = 20 MHz, kappa/2pi = 1 MHz,
    // Omega/2pi = 36 MHz; the 2pi's cancel in the ratios.
    const double gamma_R = 20.0 / 16200.0;
    const auto rates = rates_from_chirality(gamma_R, D);
    ParamsSpec raw;
    raw.omega0 = 1.0;
    raw.gamma_R = rates.gamma_R;
    raw.gamma_L = rates.gamma_L;
    raw.kappa = 1.0 / 16200.0;
    raw.drive_amp = 36.0 / 16200.0;
    raw.phase = phase;
    raw.nbar = nbar;
    return validate(raw);
}

}  // namespace chiralqb
