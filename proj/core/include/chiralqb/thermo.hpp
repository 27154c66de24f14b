#ifndef CHIRALQB_THERMO_HPP
#define CHIRALQB_THERMO_HPP

#include "chiralqb/moments.hpp"
#include "chiralqb/params.hpp"

namespace chiralqb {

// Single-mode Gaussian state. Covariance convention: sigma_lm =
// Tr[{dr_l, dr_m} rho] with r = ((m+m^dag)/sqrt2, (m-m^dag)/(i*sqrt2)),
// so the vacuum has sigma = identity.
struct GaussianState {
    double s11 = 1.0;
    double s12 = 0.0;
    double s22 = 1.0;
    double d1 = 0.0;  // sqrt2 * Re<m>
    double d2 = 0.0;  // sqrt2 * Im<m>
};

double det_sigma(const GaussianState& g);

// Builds the reduced Gaussian state of one mode from the moment record.
// Throws UnphysicalState if det(sigma) < 1 - 1e-6.
GaussianState gaussian_from_moments(const MomentState& s, int mode);

// omega0 * (tr(sigma)/4 + |d|^2/2)
double energy(const GaussianState& g, double omega0);

// energy minus the passive (thermal) floor omega0*sqrt(det sigma)/2.
// Small negative results (rounding) clamp to 0; beyond -1e-8*omega0 the
// moment data is inconsistent and UnphysicalState is thrown.
double ergotropy(const GaussianState& g, double omega0);

// (x+1)log2(x+1) - x log2(x), continuously extended by S(0)=0. Bits.
double bosonic_entropy(double x);

// Relative entropy of coherence of a displaced thermal state, in bits.
double coherence(const GaussianState& g);

double efficiency_eta(double E_B, double E_C);      // E_B/E_C
double extraction_ratio(double W, double E_B);      // W/E_B

struct Metrics {
    double E_B;
    double E_C;
    double W;
    double R;    // W/E_B
    double eta;  // E_B/E_C
    double C;    // battery coherence, bits
};

// Full metric record for one moment state. Internally cross-checks the
// general covariance path against the closed-form shortcut
// E = omega0*(n + 1/2), W = omega0*|<m2>|^2 and fails loudly on mismatch.
Metrics metrics_at(const MomentState& s, const SystemParams& p);

}  // namespace chiralqb

#endif
