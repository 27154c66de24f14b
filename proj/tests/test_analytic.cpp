#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "chiralqb/analytic.hpp"
#include "chiralqb/dynamics.hpp"
#include "chiralqb/errors.hpp"

using namespace chiralqb;

namespace {

SystemParams make(double gR, double gL, double kappa, double omega,
                  double phase = 0.0, double nbar = 0.0) {
    ParamsSpec raw;
    raw.gamma_R = gR;
    raw.gamma_L = gL;
    raw.kappa = kappa;
    raw.drive_amp = omega;
    raw.phase = phase;
    raw.nbar = nbar;
    return validate(raw);
}

// The inverse-Laplace residue expressions evaluated literally, valid for
// well-separated poles. Kept independent of the library implementation.
std::pair<cplx, cplx> raw_transient(const SystemParams& p, double t,
                                    bool swap_branch = false) {
    const cplx I(0.0, 1.0);
    cplx rad = std::sqrt(p.gamma_L * p.gamma_R *
                         std::polar(1.0, 2.0 * p.phase));
    if (swap_branch) rad = -rad;
    const double ah = 0.5 * p.alpha;
    const cplx sp = -(ah + rad);
    const cplx sm = -(ah - rad);
    const cplx m1 =
        -I * p.drive_amp *
        (ah / (sp * sm) + (sp + ah) * std::exp(sp * t) / (sp * (sp - sm)) +
         (sm + ah) * std::exp(sm * t) / (sm * (sm - sp)));
    const cplx m2 = I * p.drive_amp * p.gamma_R * std::polar(1.0, p.phase) *
                    (1.0 / (sp * sm) + std::exp(sp * t) / (sp * (sp - sm)) +
                     std::exp(sm * t) / (sm * (sm - sp)));
    return {m1, m2};
}

// Residue sum for R_l(t) assuming the five poles are simple. Independent of
// the library path; only valid away from pole collisions.
double raw_thermal_weight(const SystemParams& p, int mode, double t) {
    const double a = p.alpha;
    const double gg = p.gamma_L * p.gamma_R;
    const double c = 2.0 * gg * std::cos(2.0 * p.phase);
    const double gx = (mode == 1) ? p.gamma_L : p.gamma_R;

    auto N = [&](cplx s) {
        const cplx u = s + a;
        return u * (u * u - c + 2.0 * gx * gx);
    };
    auto Q = [&](cplx s) {
        const cplx u = s + a;
        const cplx b = u * u - c;
        return b * b - 4.0 * gg * gg;
    };
    auto Qp = [&](cplx s) {
        const cplx u = s + a;
        return 4.0 * (u * u - c) * u;
    };

    const cplx qp = std::sqrt(cplx(2.0 * gg * (std::cos(2.0 * p.phase) + 1.0)));
    const cplx qm = std::sqrt(cplx(2.0 * gg * (std::cos(2.0 * p.phase) - 1.0)));
    const cplx poles[4] = {-a + qp, -a - qp, -a + qm, -a - qm};

    cplx sum = N(cplx(0.0)) / Q(cplx(0.0));  // residue at s = 0
    for (const cplx s : poles) {
        sum += N(s) * std::exp(s * t) / (s * Qp(s));
    }
    REQUIRE(std::abs(sum.imag()) < 1e-10 * (1.0 + std::abs(sum.real())));
    return sum.real();
}

}  // namespace

TEST_CASE("first moment poles, symmetric lossless case") {
    const SystemParams p = make(1.0, 1.0, 0.0, 0.0, 0.0);
    const FirstMomentPoles fp = first_moment_poles(p);
    // {-2 Gamma, 0} and they sum to -alpha
    CHECK(std::abs(fp.s_plus - cplx(-2.0, 0.0)) < 1e-14);
    CHECK(std::abs(fp.s_minus) < 1e-14);
    CHECK(std::abs(fp.s_plus + fp.s_minus + cplx(p.alpha)) < 1e-14);
}

TEST_CASE("first moment poles collapse for one-way coupling") {
    const SystemParams p = make(1.3, 0.0, 0.2, 0.5, 0.8);
    const FirstMomentPoles fp = first_moment_poles(p);
    CHECK(std::abs(fp.s_plus - fp.s_minus) < 1e-14);
    CHECK(std::abs(fp.s_plus - cplx(-0.5 * p.alpha)) < 1e-14);
}

TEST_CASE("first moment poles, hand-evaluated radical") {
    const SystemParams p = make(1.0, 1.0, 0.1, 0.0, M_PI / 4);
    const FirstMomentPoles fp = first_moment_poles(p);
    const cplx root_i = cplx(1.0, 1.0) / std::sqrt(2.0);  // sqrt(e^{i pi/2})
    CHECK(std::abs(fp.s_plus - (cplx(-1.05) - root_i)) < 1e-14);
    CHECK(std::abs(fp.s_minus - (cplx(-1.05) + root_i)) < 1e-14);
}

TEST_CASE("zeta equals four times the pole product") {
    const SystemParams p = make(0.9, 0.4, 0.2, 0.3, 1.1);
    const FirstMomentPoles fp = first_moment_poles(p);
    CHECK(std::abs(zeta(p) - 4.0 * fp.s_plus * fp.s_minus) < 1e-13);
}

TEST_CASE("transient means start at the vacuum") {
    const SystemParams p = make(1.0, 0.7, 0.2, 0.9, 0.4);
    const auto [m1, m2] = transient_means(p, 0.0);
    CHECK(std::abs(m1) < 1e-14);
    CHECK(std::abs(m2) < 1e-14);
}

TEST_CASE("transient means match the literal residue formula") {
    const SystemParams sets[] = {
        make(1.0, 0.7, 0.2, 0.9, 0.4),  make(0.5, 0.5, 0.3, 1.0, 1.2),
        make(2.0, 0.1, 0.05, 0.7, 2.8), make(1.0, 1.0, 0.2, 0.4, M_PI / 2),
    };
    for (const auto& p : sets) {
        for (double t : {0.1, 0.9, 3.7, 11.0}) {
            const auto [m1, m2] = transient_means(p, t);
            const auto [r1, r2] = raw_transient(p, t);
            CHECK(std::abs(m1 - r1) < 1e-12 * (1.0 + std::abs(r1)));
            CHECK(std::abs(m2 - r2) < 1e-12 * (1.0 + std::abs(r2)));
            // swapping the square-root branch relabels the poles only
            const auto [b1, b2] = raw_transient(p, t, true);
            CHECK(std::abs(r1 - b1) < 1e-12 * (1.0 + std::abs(r1)));
            CHECK(std::abs(r2 - b2) < 1e-12 * (1.0 + std::abs(r2)));
        }
    }
}

TEST_CASE("transient means stay finite through the confluent limit") {
    // gamma_L = 0 makes the poles exactly coincide; tiny gamma_L probes the
    // near-degenerate band where the literal formula would cancel badly
    for (double gl : {0.0, 1e-14, 1e-10}) {
        const SystemParams p = make(1.0, gl, 0.1, 0.8, 0.6);
        const auto [m1, m2] = transient_means(p, 2.5);
        // double-pole limit evaluated by hand: 1/(s(s+a)^2) etc.
        const double ah = 0.5 * p.alpha;
        const cplx I(0.0, 1.0);
        const cplx m1_ref = -I * p.drive_amp * (1.0 - std::exp(-ah * 2.5)) / ah;
        const cplx m2_ref = I * p.drive_amp * p.gamma_R *
                            std::polar(1.0, p.phase) *
                            (1.0 - std::exp(-ah * 2.5) * (1.0 + ah * 2.5)) /
                            (ah * ah);
        CHECK(std::abs(m1 - m1_ref) < 1e-9 * std::abs(m1_ref));
        CHECK(std::abs(m2 - m2_ref) < 1e-9 * std::abs(m2_ref));
    }
}

TEST_CASE("transient means converge to the steady means") {
    // at phase pi/2 both poles sit at Re(s) = -alpha/2, so by t = 80/alpha
    // the exponentials are below 1e-17 relative
    const SystemParams p = make(1.1, 0.6, 0.3, 0.8, M_PI / 2);
    const auto [s1, s2] = steady_means(p);
    const auto [m1, m2] = transient_means(p, 80.0 / p.alpha);
    CHECK(std::abs(m1 - s1) <= 1e-12 * std::abs(s1));
    CHECK(std::abs(m2 - s2) <= 1e-12 * std::abs(s2));
    // a generic phase decays at the spectral gap alpha/2 - |Re sqrt(GL GR
    // e^{2i phase})| instead
    const SystemParams q = make(1.1, 0.6, 0.3, 0.8, 2.2);
    const double gap =
        0.5 * q.alpha - std::abs(std::sqrt(q.gamma_L * q.gamma_R *
                                           std::polar(1.0, 2.0 * q.phase))
                                     .real());
    const auto [g1, g2] = steady_means(q);
    const auto [t1, t2] = transient_means(q, 35.0 / gap);
    CHECK(std::abs(t1 - g1) <= 1e-12 * std::abs(g1));
    CHECK(std::abs(t2 - g2) <= 1e-12 * std::abs(g2));
}

TEST_CASE("transient means across the overflow-guard seam") {
    // |delta|*t crosses 350 while the slow pole has not fully decayed, so
    // both evaluation branches are exercised against the literal formula
    const SystemParams p = make(1.0, 1.0, 0.01, 0.6, 0.3);
    for (double t : {300.0, 345.0, 355.0, 420.0}) {
        const auto [m1, m2] = transient_means(p, t);
        const auto [r1, r2] = raw_transient(p, t);
        CHECK(std::abs(m1 - r1) < 1e-10 * (1.0 + std::abs(r1)));
        CHECK(std::abs(m2 - r2) < 1e-10 * (1.0 + std::abs(r2)));
    }
}

TEST_CASE("thermal weight across the overflow-guard seam") {
    const SystemParams p = make(1.0, 1.0, 0.01, 0.0, 0.3);
    // q_plus ~ 1.91, alpha ~ 2.01: q*t crosses 350 near t ~ 183
    for (double t : {150.0, 180.0, 190.0, 250.0}) {
        for (int mode : {1, 2}) {
            const double lib = thermal_weight(p, mode, t);
            const double raw = raw_thermal_weight(p, mode, t);
            CHECK(lib == doctest::Approx(raw).epsilon(1e-9));
        }
    }
}

TEST_CASE("transient means agree with the integrator at the working point") {
    const SystemParams p = canonical_params(0.5, M_PI / 2);
    const double t = 1000.0;
    const Trajectory traj = evolve(p, t, 2, 1e-11, 1e-14);
    const auto [m1, m2] = transient_means(p, t);
    CHECK(std::abs(traj.states.back().m1 - m1) < 1e-8 * std::abs(m1));
    CHECK(std::abs(traj.states.back().m2 - m2) < 1e-8 * std::abs(m2));
}

TEST_CASE("steady means") {
    SUBCASE("no drive, no excitation") {
        const SystemParams p = make(1.0, 0.5, 0.1, 0.0, 0.9);
        const auto [m1, m2] = steady_means(p);
        CHECK(std::abs(m1) == 0.0);
        CHECK(std::abs(m2) == 0.0);
    }
    SUBCASE("fully chiral working point") {
        const SystemParams p = canonical_params(1.0, M_PI / 2);
        const auto [m1, m2] = steady_means(p);
        CHECK(std::abs(m2) == doctest::Approx(2880.0 / 441.0).epsilon(1e-14));
        CHECK(std::abs(m1) == doctest::Approx(1512.0 / 441.0).epsilon(1e-14));
    }
    SUBCASE("dark mode is rejected") {
        const SystemParams p = make(1.0, 1.0, 0.0, 0.5, 0.0);
        CHECK_THROWS_AS(steady_means(p), SteadyStateUndefined);
        CHECK_THROWS_AS(transient_means(p, 1.0), SteadyStateUndefined);
    }
}

TEST_CASE("thermal pole multiplicities") {
    SUBCASE("one-way coupling: fourfold pole at -alpha") {
        const SystemParams p = make(1.0, 0.0, 0.3, 0.0, 0.7);
        const ThermalPoleSet set = thermal_pole_set(p);
        REQUIRE(set.poles.size() == 2);
        CHECK(std::abs(set.poles[0].s) == 0.0);
        CHECK(set.poles[0].multiplicity == 1);
        CHECK(std::abs(set.poles[1].s - cplx(-p.alpha)) < 1e-14);
        CHECK(set.poles[1].multiplicity == 4);
    }
    SUBCASE("half-wave distance: conjugate pair plus double pole") {
        const SystemParams p = make(1.0, 1.0, 0.2, 0.0, M_PI / 2);
        const ThermalPoleSet set = thermal_pole_set(p);
        REQUIRE(set.poles.size() == 4);
        int total = 0;
        bool found_pair = false, found_double = false;
        for (const auto& pole : set.poles) {
            total += pole.multiplicity;
            if (pole.multiplicity == 2) {
                found_double = std::abs(pole.s - cplx(-p.alpha)) < 1e-12;
            }
            if (std::abs(pole.s - cplx(-p.alpha, 2.0)) < 1e-12) {
                found_pair = true;  // -alpha + 2i*Gamma
            }
        }
        CHECK(total == 5);
        CHECK(found_pair);
        CHECK(found_double);
    }
    SUBCASE("integer-wave distance: real split plus double pole") {
        const SystemParams p = make(1.0, 1.0, 0.2, 0.0, 0.0);
        const ThermalPoleSet set = thermal_pole_set(p);
        int total = 0;
        bool split = false;
        for (const auto& pole : set.poles) {
            total += pole.multiplicity;
            if (std::abs(pole.s - cplx(-p.alpha + 2.0)) < 1e-12) split = true;
        }
        CHECK(total == 5);
        CHECK(split);
    }
}

TEST_CASE("thermal weight basics") {
    const SystemParams p = make(0.8, 0.6, 0.25, 0.0, 1.3);
    CHECK(thermal_weight(p, 1, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(thermal_weight(p, 2, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("thermal weight of decoupled modes") {
    const double kappa = 0.45;
    const SystemParams p = make(0.0, 0.0, kappa, 0.0);
    for (double t : {0.0, 0.5, 2.0, 10.0}) {
        const double expect = (1.0 - std::exp(-kappa * t)) / kappa;
        CHECK(thermal_weight(p, 1, t) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(thermal_weight(p, 2, t) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(thermal_weight_ss(p, 1) == doctest::Approx(1.0 / kappa).epsilon(1e-14));
    CHECK(thermal_weight_ss(p, 2) == doctest::Approx(1.0 / kappa).epsilon(1e-14));
}

TEST_CASE("thermal weight matches the literal residue sum on simple poles") {
    const SystemParams sets[] = {
        make(1.1, 0.7, 0.3, 0.0, 0.9),
        make(0.6, 0.5, 0.2, 0.0, 2.4),
        make(1.8, 0.2, 0.4, 0.0, 0.3),
    };
    for (const auto& p : sets) {
        for (double t : {0.2, 1.0, 4.0, 12.0}) {
            for (int mode : {1, 2}) {
                const double lib = thermal_weight(p, mode, t);
                const double raw = raw_thermal_weight(p, mode, t);
                CHECK(lib == doctest::Approx(raw).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("thermal weight against the undriven thermal integrator") {
    // R_l(t) = n_l(t)/(kappa*nbar) when Omega = 0; includes the degenerate
    // pole patterns the residue shortcut cannot reach
    const SystemParams sets[] = {
        make(1.0, 0.0, 0.3, 0.0, 0.7, 0.5),       // fourfold pole
        make(1.0, 1e-9, 0.3, 0.0, 0.7, 0.5),      // near-confluent band
        make(1.0, 1.0, 0.2, 0.0, M_PI / 2, 0.4),  // double pole + pair
        make(0.9, 0.6, 0.35, 0.0, 1.1, 0.8),      // generic
    };
    for (const auto& p : sets) {
        const double knb = p.kappa * p.nbar;
        const Trajectory traj = evolve(p, 15.0 / p.alpha, 16, 1e-11, 1e-14);
        for (size_t i = 0; i < traj.times.size(); ++i) {
            const double r1 = thermal_weight(p, 1, traj.times[i]);
            const double r2 = thermal_weight(p, 2, traj.times[i]);
            CHECK(traj.states[i].n1 / knb ==
                  doctest::Approx(r1).epsilon(1e-8));
            CHECK(traj.states[i].n2 / knb ==
                  doctest::Approx(r2).epsilon(1e-8));
        }
    }
}

TEST_CASE("steady thermal weights at full chirality") {
    const SystemParams p = canonical_params(1.0, M_PI / 2);
    CHECK(thermal_weight_ss(p, 1) ==
          doctest::Approx(16200.0 / 21.0).epsilon(1e-14));
    const double a = 21.0 / 16200.0, gr = 20.0 / 16200.0;
    CHECK(thermal_weight_ss(p, 2) ==
          doctest::Approx((a * a + 2.0 * gr * gr) / (a * a * a)).epsilon(1e-14));
    // large-time limit of the transient weight reproduces both
    for (int mode : {1, 2}) {
        CHECK(thermal_weight(p, mode, 2000.0 / p.alpha) ==
              doctest::Approx(thermal_weight_ss(p, mode)).epsilon(1e-10));
    }
}

TEST_CASE("steady metrics frozen working-point values") {
    // exact rational arithmetic on the closed forms, canonical rates in units
    // of 16200: gamma_R = 20, kappa = 1, Omega = 36
    const double W1 = 8294400.0 / 194481.0;   // (2880/441)^2
    const double EC1 = 2286144.0 / 194481.0;  // (1512/441)^2
    const double W0 = 8294400.0 / 10764961.0; // 16*36^2*400/3281^2

    const SteadyReport chiral = steady_metrics(canonical_params(1.0, M_PI / 2));
    CHECK(chiral.W_ss == doctest::Approx(W1).epsilon(1e-13));
    CHECK(chiral.E_B_ss == doctest::Approx(W1 + 0.5).epsilon(1e-13));
    CHECK(chiral.E_C_ss == doctest::Approx(EC1 + 0.5).epsilon(1e-13));

    const SteadyReport achiral = steady_metrics(canonical_params(0.0, M_PI / 2));
    CHECK(achiral.W_ss == doctest::Approx(W0).epsilon(1e-13));
    CHECK(achiral.E_B_ss == doctest::Approx(W0 + 0.5).epsilon(1e-13));
}

TEST_CASE("steady metrics of the undriven vacuum") {
    const SystemParams p = make(1.0, 0.4, 0.2, 0.0, 0.8);
    const SteadyReport rep = steady_metrics(p);
    CHECK(rep.E_B_ss == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rep.E_C_ss == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rep.W_ss == 0.0);
}

TEST_CASE("steady metrics are pi-periodic in the phase") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double phase = 2.0 * M_PI * uni(rng);
        const SystemParams a =
            make(1.2, 0.5, 0.2, 0.7, phase, 0.3);
        const SystemParams b =
            make(1.2, 0.5, 0.2, 0.7, phase + M_PI, 0.3);
        const SteadyReport ra = steady_metrics(a);
        const SteadyReport rb = steady_metrics(b);
        CHECK(ra.E_B_ss == doctest::Approx(rb.E_B_ss).epsilon(1e-12));
        CHECK(ra.E_C_ss == doctest::Approx(rb.E_C_ss).epsilon(1e-12));
        CHECK(ra.W_ss == doctest::Approx(rb.W_ss).epsilon(1e-12));
        CHECK(ra.R1_ss == doctest::Approx(rb.R1_ss).epsilon(1e-12));
        CHECK(ra.R2_ss == doctest::Approx(rb.R2_ss).epsilon(1e-12));
    }
}

TEST_CASE("ergotropy consistency identities") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const SystemParams p = make(0.2 + 1.5 * uni(rng), 1.2 * uni(rng),
                                    0.05 + 0.5 * uni(rng), 2.0 * uni(rng),
                                    2.0 * M_PI * uni(rng), uni(rng));
        SteadyReport rep;
        try {
            rep = steady_metrics(p);
        } catch (const SteadyStateUndefined&) {
            continue;
        }
        // W = omega0 |<m2>|^2 and E_B - W - 1/2 = kappa nbar R2 exactly
        CHECK(rep.W_ss ==
              doctest::Approx(std::norm(rep.m2_ss)).epsilon(1e-12));
        CHECK(rep.E_B_ss - rep.W_ss - 0.5 ==
              doctest::Approx(p.kappa * p.nbar * rep.R2_ss).epsilon(1e-12));
        CHECK(rep.W_ss <= rep.E_B_ss);
        CHECK(rep.E_B_ss >= 0.5);
    }
}

TEST_CASE("swap antisymmetry of the steady ergotropy") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    for (int i = 0; i < 30; ++i) {
        const double gR = uni(rng), gL = uni(rng), kappa = 0.3 * uni(rng);
        const double phase = 6.0 * uni(rng);
        const SystemParams p = make(gR, gL, kappa, 0.9, phase);
        const SystemParams q = make(gL, gR, kappa, 0.9, phase);
        const double w_p = steady_metrics(p).W_ss;
        const double w_q = steady_metrics(q).W_ss;
        CHECK(w_q == doctest::Approx(w_p * (gL / gR) * (gL / gR)).epsilon(1e-11));
    }
}

TEST_CASE("temperature independence of the steady ergotropy") {
    for (double nbar : {0.0, 0.4, 1.3}) {
        const SystemParams p = make(1.0, 0.3, 0.15, 0.8, 1.9, nbar);
        CHECK(steady_metrics(p).W_ss ==
              steady_metrics(make(1.0, 0.3, 0.15, 0.8, 1.9, 0.0)).W_ss);
    }
}

TEST_CASE("64-fold bound in the small-damping limit") {
    ParamsSpec raw;
    raw.gamma_R = 1e-3;
    raw.kappa = 1e-9;
    raw.drive_amp = 5e-4;
    raw.phase = M_PI / 2;
    raw.gamma_L = 0.0;
    const double w1 = steady_metrics(validate(raw)).W_ss;
    raw.gamma_L = raw.gamma_R;
    const double w0 = steady_metrics(validate(raw)).W_ss;
    CHECK(w1 / w0 == doctest::Approx(64.0).epsilon(1e-3));
}

TEST_CASE("steady_moments agrees with the settled integrator") {
    const SystemParams sets[] = {
        canonical_params(1.0, M_PI / 2),
        make(0.9, 0.5, 0.3, 0.7, 1.4, 0.6),
    };
    for (const auto& p : sets) {
        const MomentState a = steady_moments(p);
        const MomentState b = steady_from_ode(p, 1e-12);
        CHECK(std::abs(a.m1 - b.m1) < 1e-7 * (1.0 + std::abs(a.m1)));
        CHECK(std::abs(a.m2 - b.m2) < 1e-7 * (1.0 + std::abs(a.m2)));
        CHECK(std::abs(a.m1_sq - b.m1_sq) < 1e-6 * (1.0 + std::abs(a.m1_sq)));
        CHECK(std::abs(a.m1m2 - b.m1m2) < 1e-6 * (1.0 + std::abs(a.m1m2)));
        CHECK(std::abs(a.m1d_m2 - b.m1d_m2) <
              1e-6 * (1.0 + std::abs(a.m1d_m2)));
        CHECK(a.n1 == doctest::Approx(b.n1).epsilon(1e-7));
        CHECK(a.n2 == doctest::Approx(b.n2).epsilon(1e-7));
    }
}
