#ifndef CHIRALQB_PARAMS_HPP
#define CHIRALQB_PARAMS_HPP

#include <optional>
#include <utility>

namespace chiralqb {

// Raw parameter record as read from user input. All rates share the units
// of omega0 (omega0 = 1 is the canonical choice throughout).
struct ParamsSpec {
    double omega0 = 1.0;     // magnon resonance
    double gamma_R = 0.0;    // right-propagating coupling
    double gamma_L = 0.0;    // left-propagating coupling
    double kappa = 0.0;      // local magnon damping
    double nbar = 0.0;       // thermal occupation of the local baths
    double drive_amp = 0.0;  // charger drive amplitude
    double phase = 0.0;      // accumulated propagation phase k0*d (radians)
};

// Validated parameter set with the derived quantities filled in.
// Immutable after construction; safe to share across threads.
struct SystemParams {
    double omega0;
    double gamma_R;
    double gamma_L;
    double kappa;
    double nbar;
    double drive_amp;
    double phase;                      // stored unreduced
    double alpha;                      // gamma_L + gamma_R + kappa
    std::optional<double> chirality;   // D, defined when gamma_L+gamma_R > 0
};

// Checks all sign/positivity constraints and derives alpha and chirality.
// Throws NegativeRate, NegativeTemperature or NonPositiveAlpha.
SystemParams validate(const ParamsSpec& raw);

// Re-validation of an already valid set is the identity.
SystemParams validate(const SystemParams& p);

struct RatePair {
    double gamma_L;
    double gamma_R;
};

// Inverts D = (gamma_R - gamma_L)/(gamma_R + gamma_L) holding gamma_R fixed.
// D = -1 is rejected (gamma_L would diverge under this convention).
RatePair rates_from_chirality(double gamma_R, double D);

// Waveguide TE10 geometry, reduced to the three numbers the coupling
// formula actually depends on.
struct GeometryInput {
    double theta = 0.0;        // pi*x0/a, transverse position of both spheres
    double u = 0.0;            // (pi/a)/k0, transverse over guided wavenumber
    double gamma_scale = 0.0;  // common prefactor bundling gamma0*M*V/(2*eps0*omega0*a*b)
};

struct GeometryRates {
    double gamma_L;
    double gamma_R;
    double chirality;
};

// gamma_R = G0*(u*cos(theta) - sin(theta))^2, gamma_L with the opposite sign
// on the sine term (counter-propagating wave vector). Throws
// DegenerateCoupling when both rates vanish.
GeometryRates chirality_from_geometry(const GeometryInput& g);

// nbar = 1/(exp(omega0/kB*T) - 1) expressed through the ratio kB*T/omega0.
double nbar_from_temperature_ratio(double kT_over_omega0);

// Converts a quoted linear frequency f (f/2pi convention, any unit) into
// omega0 units given the resonance f0 quoted the same way.
double rate_from_frequency(double f, double f0);

// The canonical drive/damping working point, kept as exact frequency
// ratios (20, 1, 36 in units of 16200) rather than their rounded decimal
// forms; the rounded values shift the steady-state energy ratios visibly.
// D selects gamma_L through rates_from_chirality.
SystemParams canonical_params(double D = 1.0, double phase = 1.5707963267948966,
                          double nbar = 0.0);

}  // namespace chiralqb

#endif
