#include "chiralqb/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>

#include "chiralqb/errors.hpp"

namespace chiralqb {

namespace {

using StateVec = Eigen::Matrix<cplx, 8, 1>;
// component order: m1, m2, m1_sq, m2_sq, n1, n2, m1m2, m1d_m2

StateVec pack(const MomentState& s) {
    StateVec y;
    y << s.m1, s.m2, s.m1_sq, s.m2_sq, cplx(s.n1, 0.0), cplx(s.n2, 0.0),
        s.m1m2, s.m1d_m2;
    return y;
}

MomentState unpack(const StateVec& y) {
    MomentState s;
    s.m1 = y(0);
    s.m2 = y(1);
    s.m1_sq = y(2);
    s.m2_sq = y(3);
    s.n1 = y(4).real();
    s.n2 = y(5).real();
    s.m1m2 = y(6);
    s.m1d_m2 = y(7);
    return s;
}

StateVec rhs_vec(const StateVec& y, const SystemParams& p, cplx drive) {
    const double a = p.alpha;
    const double GL = p.gamma_L;
    const double GR = p.gamma_R;
    const cplx eip = std::polar(1.0, p.phase);
    const cplx I(0.0, 1.0);

    const cplx m1 = y(0), m2 = y(1), m1sq = y(2), m2sq = y(3);
    const cplx n1 = y(4), n2 = y(5), m1m2 = y(6), m1dm2 = y(7);
    const double knb = p.kappa * p.nbar;

    StateVec d;
    d(0) = -0.5 * a * m1 - GL * eip * m2 - I * drive;
    d(1) = -0.5 * a * m2 - GR * eip * m1;
    d(2) = -a * m1sq - 2.0 * GL * eip * m1m2 - 2.0 * I * drive * m1;
    d(3) = -a * m2sq - 2.0 * GR * eip * m1m2;
    // number moments stay exactly real: the coupled terms enter as z + c.c.
    d(4) = cplx(-a * n1.real() -
                    2.0 * std::real(GL * eip * m1dm2 + I * drive * std::conj(m1)) +
                    knb,
                0.0);
    d(5) = cplx(-a * n2.real() - 2.0 * GR * std::real(eip * std::conj(m1dm2)) + knb,
                0.0);
    d(6) = -a * m1m2 - GR * eip * m1sq - GL * eip * m2sq - I * drive * m2;
    d(7) = -a * m1dm2 - GR * eip * cplx(n1.real(), 0.0) -
           GL * std::conj(eip) * cplx(n2.real(), 0.0) +
           I * std::conj(drive) * m2;
    return d;
}

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA2[] = {1.0 / 5};
constexpr double kA3[] = {3.0 / 40, 9.0 / 40};
constexpr double kA4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
constexpr double kA5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561,
                          -212.0 / 729};
constexpr double kA6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247,
                          49.0 / 176, -5103.0 / 18656};
constexpr double kB[] = {35.0 / 384,    0.0,          500.0 / 1113,
                         125.0 / 192,   -2187.0 / 6784, 11.0 / 84};
// b - b_hat, embedded 4th-order error weights (k7 carries -1/40)
constexpr double kE[] = {71.0 / 57600,      0.0,        -71.0 / 16695,
                         71.0 / 1920,       -17253.0 / 339200,
                         22.0 / 525,        -1.0 / 40};

struct StepResult {
    StateVec y;
    StateVec f_new;  // FSAL derivative at the accepted point
    double err;      // scaled error norm
};

StepResult dopri5_step(const StateVec& y, const StateVec& f0, double h,
                       const SystemParams& p, cplx drive, double rtol,
                       double atol) {
    StateVec k1 = f0;
    StateVec k2 = rhs_vec(y + h * (kA2[0] * k1), p, drive);
    StateVec k3 = rhs_vec(y + h * (kA3[0] * k1 + kA3[1] * k2), p, drive);
    StateVec k4 =
        rhs_vec(y + h * (kA4[0] * k1 + kA4[1] * k2 + kA4[2] * k3), p, drive);
    StateVec k5 = rhs_vec(
        y + h * (kA5[0] * k1 + kA5[1] * k2 + kA5[2] * k3 + kA5[3] * k4), p,
        drive);
    StateVec k6 = rhs_vec(y + h * (kA6[0] * k1 + kA6[1] * k2 + kA6[2] * k3 +
                                   kA6[3] * k4 + kA6[4] * k5),
                          p, drive);
    StepResult r;
    r.y = y + h * (kB[0] * k1 + kB[2] * k3 + kB[3] * k4 + kB[4] * k5 +
                   kB[5] * k6);
    r.f_new = rhs_vec(r.y, p, drive);
    const StateVec err_vec = h * (kE[0] * k1 + kE[2] * k3 + kE[3] * k4 +
                                  kE[4] * k5 + kE[5] * k6 + kE[6] * r.f_new);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double sc =
            atol + rtol * std::max(std::abs(y(i)), std::abs(r.y(i)));
        const double e = std::abs(err_vec(i)) / sc;
        acc += e * e;
    }
    r.err = std::sqrt(acc / 8.0);
    return r;
}

class Integrator {
  public:
    Integrator(const SystemParams& p, cplx drive, double rtol, double atol)
        : p_(p), drive_(drive), rtol_(rtol), atol_(atol) {
        y_.setZero();
        f_ = rhs_vec(y_, p_, drive_);
        h_ = 0.05 / p_.alpha;
    }

    double t() const { return t_; }
    const StateVec& state() const { return y_; }
    const StateVec& deriv() const { return f_; }

    // Advances exactly to t_target.
    void advance_to(double t_target) {
        while (t_ < t_target) {
            const double h_max = t_target - t_;
            double h = std::min(h_, h_max);
            for (;;) {
                if (h < 1e3 * std::numeric_limits<double>::epsilon() *
                            std::max(std::abs(t_), 1.0 / p_.alpha)) {
                    throw StepSizeUnderflow(
                        "adaptive step collapsed at t = " + std::to_string(t_));
                }
                StepResult r = dopri5_step(y_, f_, h, p_, drive_, rtol_, atol_);
                if (r.err <= 1.0) {
                    t_ = (h == h_max) ? t_target : t_ + h;
                    y_ = r.y;
                    f_ = r.f_new;
                    const double grow =
                        (r.err == 0.0)
                            ? 5.0
                            : std::min(5.0, 0.9 * std::pow(r.err, -0.2));
                    h_ = h * std::max(0.2, grow);
                    break;
                }
                h *= std::max(0.2, 0.9 * std::pow(r.err, -0.2));
            }
        }
    }

  private:
    SystemParams p_;
    cplx drive_;
    double rtol_, atol_;
    double t_ = 0.0;
    double h_;
    StateVec y_;
    StateVec f_;
};

}  // namespace

MomentState moment_rhs(const MomentState& s, const SystemParams& p) {
    return moment_rhs(s, p, cplx(p.drive_amp, 0.0));
}

MomentState moment_rhs(const MomentState& s, const SystemParams& p,
                       cplx drive) {
    return unpack(rhs_vec(pack(s), p, drive));
}

Trajectory evolve(const SystemParams& p, double t_end, int n_samples,
                  const EvolveOptions& opt) {
    if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
    if (n_samples < 2) throw ValidationError("n_samples must be >= 2");

    const cplx drive = opt.drive.value_or(cplx(p.drive_amp, 0.0));
    Integrator integ(p, drive, opt.rtol, opt.atol);

    Trajectory traj;
    traj.times.reserve(n_samples);
    traj.states.reserve(n_samples);
    traj.times.push_back(0.0);
    traj.states.push_back(MomentState{});
    for (int k = 1; k < n_samples; ++k) {
        const double tk = t_end * static_cast<double>(k) / (n_samples - 1);
        integ.advance_to(tk);
        traj.times.push_back(tk);
        traj.states.push_back(unpack(integ.state()));
    }
    return traj;
}

Trajectory evolve(const SystemParams& p, double t_end, int n_samples,
                  double rtol, double atol) {
    EvolveOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    return evolve(p, t_end, n_samples, opt);
}

MomentState steady_from_ode(const SystemParams& p, double tol,
                            const SteadyOdeOptions& opt) {
    Integrator integ(p, cplx(p.drive_amp, 0.0), opt.rtol, opt.atol);
    const double horizon = opt.horizon_alphas / p.alpha;
    const double segment = 1.0 / p.alpha;
    while (true) {
        integ.advance_to(integ.t() + segment);
        const double res = integ.deriv().cwiseAbs().maxCoeff();
        const double scale = p.alpha * (1.0 + integ.state().cwiseAbs().maxCoeff()) +
                             p.drive_amp + p.kappa * p.nbar;
        if (res < tol * scale) return unpack(integ.state());
        if (integ.t() > horizon) {
            throw NoConvergence(
                "moment derivatives did not settle below tolerance within " +
                std::to_string(opt.horizon_alphas) +
                "/alpha; parameters may sit near a dark-mode degeneracy");
        }
    }
}

}  // namespace chiralqb
