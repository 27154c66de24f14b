#include <doctest.h>

#include <cmath>
#include <random>

#include "chiralqb/errors.hpp"
#include "chiralqb/params.hpp"

using namespace chiralqb;

TEST_CASE("validate fills derived fields") {
    ParamsSpec raw;
    raw.gamma_R = 1.0;
    raw.gamma_L = 1.0;
    raw.kappa = 0.1;
    const SystemParams p = validate(raw);
    CHECK(p.alpha == doctest::Approx(2.1).epsilon(1e-15));
    REQUIRE(p.chirality.has_value());
    CHECK(*p.chirality == doctest::Approx(0.0));
}

TEST_CASE("validate accepts the canonical working point") {
    const SystemParams p = canonical_params(1.0, M_PI / 2);
    CHECK(p.gamma_R == doctest::Approx(20.0 / 16200.0).epsilon(1e-15));
    CHECK(p.gamma_L == 0.0);
    CHECK(p.alpha == doctest::Approx(21.0 / 16200.0).epsilon(1e-15));
    CHECK(p.drive_amp == doctest::Approx(36.0 / 16200.0).epsilon(1e-15));
    REQUIRE(p.chirality.has_value());
    CHECK(*p.chirality == doctest::Approx(1.0));
}

TEST_CASE("validate rejects bad records") {
    ParamsSpec raw;
    CHECK_THROWS_AS(validate(raw), NonPositiveAlpha);  // all rates zero
    raw.gamma_R = -1.0;
    CHECK_THROWS_AS(validate(raw), NegativeRate);
    raw.gamma_R = 1.0;
    raw.nbar = -0.5;
    CHECK_THROWS_AS(validate(raw), NegativeTemperature);
}

TEST_CASE("validate is idempotent") {
    ParamsSpec raw;
    raw.gamma_R = 0.7;
    raw.gamma_L = 0.2;
    raw.kappa = 0.05;
    raw.drive_amp = 1.3;
    raw.phase = 2.4;
    raw.nbar = 0.3;
    const SystemParams p = validate(raw);
    const SystemParams q = validate(p);
    CHECK(q.alpha == p.alpha);
    CHECK(q.gamma_L == p.gamma_L);
    CHECK(q.phase == p.phase);
    CHECK(*q.chirality == *p.chirality);
}

TEST_CASE("rates_from_chirality") {
    CHECK(rates_from_chirality(1.0, 0.0).gamma_L == doctest::Approx(1.0));
    CHECK(rates_from_chirality(1.0, 1.0).gamma_L == doctest::Approx(0.0));
    // (1 - 1/3)/(1 + 1/3) = 1/2
    CHECK(rates_from_chirality(1.0, 1.0 / 3.0).gamma_L ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(rates_from_chirality(1.0, 1.5), ChiralityOutOfRange);
    CHECK_THROWS_AS(rates_from_chirality(1.0, -1.0), ChiralityOutOfRange);
}

TEST_CASE("rates_from_chirality inverts the chirality definition") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ud(-0.999, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double D = ud(rng);
        const auto [gl, gr] = rates_from_chirality(1.7, D);
        CHECK((gr - gl) / (gr + gl) == doctest::Approx(D).epsilon(1e-12));
    }
}

TEST_CASE("chirality_from_geometry zero cases") {
    GeometryInput g;
    g.u = 1.0;
    g.gamma_scale = 1.0;

    g.theta = 0.0;
    auto r = chirality_from_geometry(g);
    CHECK(r.gamma_R == doctest::Approx(1.0));
    CHECK(r.gamma_L == doctest::Approx(1.0));
    CHECK(r.chirality == doctest::Approx(0.0));

    g.theta = M_PI / 4;
    r = chirality_from_geometry(g);
    CHECK(r.gamma_R == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.gamma_L == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.chirality == doctest::Approx(-1.0));

    g.theta = 3 * M_PI / 4;
    r = chirality_from_geometry(g);
    CHECK(r.gamma_R == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.gamma_L == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.chirality == doctest::Approx(1.0));
}

TEST_CASE("geometry rates are nonnegative and mirror-symmetric") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uth(0.0, M_PI);
    std::uniform_real_distribution<double> uu(0.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        GeometryInput g;
        g.theta = uth(rng);
        g.u = uu(rng);
        g.gamma_scale = 0.5;
        GeometryRates a;
        try {
            a = chirality_from_geometry(g);
        } catch (const DegenerateCoupling&) {
            continue;
        }
        CHECK(a.gamma_L >= 0.0);
        CHECK(a.gamma_R >= 0.0);
        GeometryInput m = g;
        m.theta = M_PI - g.theta;
        const GeometryRates b = chirality_from_geometry(m);
        CHECK(b.gamma_L == doctest::Approx(a.gamma_R).epsilon(1e-10));
        CHECK(b.gamma_R == doctest::Approx(a.gamma_L).epsilon(1e-10));
        CHECK(b.chirality == doctest::Approx(-a.chirality).epsilon(1e-9));
    }
}

TEST_CASE("degenerate geometry is rejected") {
    GeometryInput g;
    g.theta = M_PI / 2;  // cos = 0
    g.u = 0.0;           // no transverse component either... sin = 1
    g.gamma_scale = 0.0;
    CHECK_THROWS_AS(chirality_from_geometry(g), DegenerateCoupling);
}

TEST_CASE("temperature conversion") {
    CHECK(nbar_from_temperature_ratio(0.0) == 0.0);
    // kT = omega0: nbar = 1/(e - 1)
    CHECK(nbar_from_temperature_ratio(1.0) ==
          doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(nbar_from_temperature_ratio(-0.1), NegativeTemperature);
}

TEST_CASE("frequency-to-rate conversion") {
    // 20 MHz coupling at a 16.2 GHz resonance
    CHECK(rate_from_frequency(0.020, 16.2) ==
          doctest::Approx(20.0 / 16200.0).epsilon(1e-15));
    CHECK(rate_from_frequency(0.020, 16.2) ==
          doctest::Approx(canonical_params(1.0).gamma_R).epsilon(1e-15));
    CHECK_THROWS_AS(rate_from_frequency(1.0, 0.0), DomainError);
}
