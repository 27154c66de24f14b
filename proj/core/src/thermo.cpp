#include "chiralqb/thermo.hpp"

#include <cmath>
#include <string>

#include "chiralqb/errors.hpp"

namespace chiralqb {

namespace {

constexpr double kDetTol = 1e-6;
constexpr double kErgoClamp = 1e-8;
constexpr double kEntropyFlush = 1e-15;

}  // namespace

double det_sigma(const GaussianState& g) {
    return g.s11 * g.s22 - g.s12 * g.s12;
}

GaussianState gaussian_from_moments(const MomentState& s, int mode) {
    if (mode != 1 && mode != 2) throw DomainError("mode must be 1 or 2");
    const cplx m = (mode == 1) ? s.m1 : s.m2;
    const cplx msq = (mode == 1) ? s.m1_sq : s.m2_sq;
    const double n = (mode == 1) ? s.n1 : s.n2;

    const cplx centered = msq - m * m;   // <m^2> - <m>^2
    const double occ = n - std::norm(m); // <m^dag m> - |<m>|^2

    GaussianState g;
    g.d1 = std::sqrt(2.0) * m.real();
    g.d2 = std::sqrt(2.0) * m.imag();
    g.s11 = 2.0 * centered.real() + 2.0 * occ + 1.0;
    g.s22 = -2.0 * centered.real() + 2.0 * occ + 1.0;
    g.s12 = 2.0 * centered.imag();

    if (det_sigma(g) < 1.0 - kDetTol) {
        throw UnphysicalState("covariance determinant " +
                              std::to_string(det_sigma(g)) +
                              " below the vacuum floor; moment data "
                              "inconsistent");
    }
    return g;
}

double energy(const GaussianState& g, double omega0) {
    return omega0 *
           (0.25 * (g.s11 + g.s22) + 0.5 * (g.d1 * g.d1 + g.d2 * g.d2));
}

double ergotropy(const GaussianState& g, double omega0) {
    const double det = det_sigma(g);
    if (det < 1.0 - kDetTol) {
        throw UnphysicalState("covariance determinant below vacuum floor");
    }
    const double w = energy(g, omega0) - 0.5 * omega0 * std::sqrt(std::max(det, 1.0));
    if (w < 0.0) {
        if (w < -kErgoClamp * omega0) {
            throw UnphysicalState("ergotropy " + std::to_string(w) +
                                  " below the rounding window");
        }
        return 0.0;
    }
    return w;
}

double bosonic_entropy(double x) {
    if (x < 0.0) {
        if (x > -1e-12) return 0.0;  // rounding of a physically-zero argument
        throw DomainError("bosonic_entropy argument must be >= 0, got " +
                          std::to_string(x));
    }
    if (x == 0.0) return 0.0;
    const double s = (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
    return (s < kEntropyFlush) ? 0.0 : s;
}

double coherence(const GaussianState& g) {
    const double det = det_sigma(g);
    if (det < 1.0 - kDetTol) {
        throw UnphysicalState("covariance determinant below vacuum floor");
    }
    const double nbar_eff =
        0.25 * (g.s11 + g.s22 + 2.0 * (g.d1 * g.d1 + g.d2 * g.d2) - 2.0);
    const double passive = 0.5 * (std::sqrt(std::max(det, 1.0)) - 1.0);
    const double c = bosonic_entropy(std::max(nbar_eff, 0.0)) -
                     bosonic_entropy(passive);
    return (c < 0.0) ? 0.0 : c;
}

double efficiency_eta(double E_B, double E_C) {
    if (!(E_C > 0.0)) throw DivisionByZero("charger energy must be positive");
    return E_B / E_C;
}

double extraction_ratio(double W, double E_B) {
    if (!(E_B > 0.0)) throw DomainError("battery energy must be positive");
    if (W < 0.0 || W > E_B * (1.0 + 1e-12)) {
        throw DomainError("ergotropy must lie in [0, E_B]");
    }
    return std::min(W / E_B, 1.0);
}

Metrics metrics_at(const MomentState& s, const SystemParams& p) {
    const GaussianState charger = gaussian_from_moments(s, 1);
    const GaussianState battery = gaussian_from_moments(s, 2);

    Metrics m;
    m.E_C = energy(charger, p.omega0);
    m.E_B = energy(battery, p.omega0);
    m.W = ergotropy(battery, p.omega0);
    m.R = extraction_ratio(m.W, m.E_B);
    m.eta = efficiency_eta(m.E_B, m.E_C);
    m.C = coherence(battery);

    // the general covariance path must reproduce the direct moment forms
    const double eb_direct = p.omega0 * (s.n2 + 0.5);
    const double ec_direct = p.omega0 * (s.n1 + 0.5);
    const double scale = std::abs(m.E_B) + std::abs(m.E_C);
    if (std::abs(m.E_B - eb_direct) > 1e-10 * scale ||
        std::abs(m.E_C - ec_direct) > 1e-10 * scale) {
        throw UnphysicalState(
            "covariance-path energies disagree with n + 1/2");
    }
    return m;
}

}  // namespace chiralqb
