#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "radimp/spectra.hpp"
#include "test_helpers.hpp"

using radimp::shape_spectrum_circ;
using radimp::shape_spectrum_poly;
using radimp::shape_spectrum_sinc;

namespace {

// Closed form restated independently of the implementation for the
// switch-continuity checks.
double poly_closed_form(double u) {
    const double u2 = u * u;
    return -16.0 * (3.0 * u * std::cos(u) + (u2 - 3.0) * std::sin(u)) / (u2 * u2 * u);
}

double poly_series(double u) {
    const double u2 = u * u;
    return 16.0 / 15.0 - u2 / 13.125 + u2 * u2 / 472.5 - u2 * u2 * u2 / 31185.0 +
           u2 * u2 * u2 * u2 / 3243240.0 - u2 * u2 * u2 * u2 * u2 / 486486000.0;
}

}  // namespace

TEST_CASE("poly spectrum pinned values") {
    CHECK(shape_spectrum_poly(0.0) == doctest::Approx(16.0 / 15.0).epsilon(1e-14));
    CHECK(shape_spectrum_poly(M_PI) ==
          doctest::Approx(48.0 / (M_PI * M_PI * M_PI * M_PI)).epsilon(1e-13));
    // Frozen from the defining-integral oracle (adaptive quadrature of
    // 2 ∫_0^1 cos(0.3 t)(1-t²)² dt).
    CHECK(shape_spectrum_poly(0.3) == doctest::Approx(1.0598266433102609).epsilon(1e-12));
    CHECK(shape_spectrum_poly(0.3) ==
          doctest::Approx(testref::spectrum_poly_defining(0.3)).epsilon(1e-10));
}

TEST_CASE("sinc spectrum pinned values") {
    CHECK(shape_spectrum_sinc(0.0) == 1.0);
    CHECK(std::fabs(shape_spectrum_sinc(M_PI)) < 1e-15);
    CHECK(shape_spectrum_sinc(1.5) == doctest::Approx(std::sin(1.5) / 1.5).epsilon(1e-15));
    CHECK(shape_spectrum_sinc(1.5) == doctest::Approx(0.664996657736011).epsilon(1e-12));
}

TEST_CASE("circular spectrum pinned values") {
    CHECK(shape_spectrum_circ(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // Frozen from the series-J0 defining-integral oracle.
    CHECK(shape_spectrum_circ(5.0) == doctest::Approx(0.046698397518549375).epsilon(1e-11));
    CHECK(shape_spectrum_circ(5.0) ==
          doctest::Approx(testref::spectrum_circ_defining_series_j0(5.0)).epsilon(1e-9));
    CHECK(std::fabs(shape_spectrum_circ(40.0)) < 0.002);
}

TEST_CASE("non-finite arguments raise domain errors") {
    const double nan = std::nan("");
    const double inf = INFINITY;
    CHECK_THROWS_AS(shape_spectrum_poly(nan), std::domain_error);
    CHECK_THROWS_AS(shape_spectrum_poly(inf), std::domain_error);
    CHECK_THROWS_AS(shape_spectrum_sinc(nan), std::domain_error);
    CHECK_THROWS_AS(shape_spectrum_sinc(-inf), std::domain_error);
    CHECK_THROWS_AS(shape_spectrum_circ(nan), std::domain_error);
    CHECK_THROWS_AS(shape_spectrum_circ(inf), std::domain_error);
}

TEST_CASE("evenness is exact") {
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = dist(rng);
        CHECK(shape_spectrum_poly(u) == shape_spectrum_poly(-u));
        CHECK(shape_spectrum_sinc(u) == shape_spectrum_sinc(-u));
        CHECK(shape_spectrum_circ(u) == shape_spectrum_circ(-u));
    }
}

TEST_CASE("series/closed-form switch is continuous") {
    const double u0 = radimp::kPolySeriesCutoff;
    CHECK(std::fabs(poly_closed_form(u0) - poly_series(u0)) < 1e-12);
    CHECK(std::fabs(poly_closed_form(u0 - 1e-6) - poly_series(u0 - 1e-6)) < 1e-12);
    CHECK(std::fabs(poly_closed_form(u0 + 1e-6) - poly_series(u0 + 1e-6)) < 1e-12);
    // The library value agrees with both branches at the switch.
    CHECK(std::fabs(shape_spectrum_poly(u0) - poly_series(u0)) < 1e-13);
    CHECK(std::fabs(shape_spectrum_poly(u0 - 1e-9) - poly_closed_form(u0 - 1e-9)) < 1e-12);
}

TEST_CASE("defining-integral equivalence on random arguments") {
    std::mt19937 rng(987654321u);
    std::uniform_real_distribution<double> dist(0.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        const double u = dist(rng);

        const double sp = shape_spectrum_poly(u);
        const double sp_ref = testref::spectrum_poly_defining(u);
        CHECK(std::fabs(sp - sp_ref) <= 1e-8 * std::fabs(sp_ref) + 1e-12);

        const double ss = shape_spectrum_sinc(u);
        const double ss_ref = testref::spectrum_sinc_defining(u);
        CHECK(std::fabs(ss - ss_ref) <= 1e-8 * std::fabs(ss_ref) + 1e-12);

        const double sc = shape_spectrum_circ(u);
        const double sc_ref = testref::spectrum_circ_defining(u);
        CHECK(std::fabs(sc - sc_ref) <= 1e-8 * std::fabs(sc_ref) + 1e-12);
    }
}

TEST_CASE("large-argument decay bounds") {
    std::mt19937 rng(13579u);
    std::uniform_real_distribution<double> dist(10.0, 200.0);
    for (int i = 0; i < 300; ++i) {
        const double u = dist(rng);
        CHECK(std::fabs(shape_spectrum_poly(u)) <= 64.0 / (u * u * u));
        CHECK(std::fabs(shape_spectrum_sinc(u)) <= 1.0 / u);
    }
}
