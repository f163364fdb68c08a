#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radimp/impedance.hpp"
#include "radimp/oracle.hpp"

using radimp::bruteforce_impedance;
using radimp::build_mesh;
using radimp::MediumParams;
using radimp::monopole_asymptote;
using radimp::PanelMesh;
using radimp::RadiatorSpec;
using radimp::Tolerance;

namespace {

// Full (unsymmetrized) restatement of the double sum, including the exact
// near-field static potential, used to check the half-sum exploitation.
double corner(double X, double Y) {
    const double ax = std::fabs(X), ay = std::fabs(Y);
    if (ax == 0.0 || ay == 0.0) return 0.0;
    const double s = (X > 0 ? 1.0 : -1.0) * (Y > 0 ? 1.0 : -1.0);
    return s * (ax * std::asinh(ay / ax) + ay * std::asinh(ax / ay));
}

double rect_pot(double x0, double y0, double hx, double hy) {
    return corner(x0 + hx / 2, y0 + hy / 2) - corner(x0 - hx / 2, y0 + hy / 2) -
           corner(x0 + hx / 2, y0 - hy / 2) + corner(x0 - hx / 2, y0 - hy / 2);
}

void full_sum(const PanelMesh& mesh, double k, double& re, double& im) {
    const double A = mesh.area[0];
    const double near_radius = 4.0 * std::max(mesh.panel_dx, mesh.panel_dy);
    re = 0.0;
    im = 0.0;
    const std::size_t n = mesh.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dx = mesh.x[i] - mesh.x[j];
            const double dy = mesh.y[i] - mesh.y[j];
            const double R = std::sqrt(dx * dx + dy * dy);
            const double w = mesh.velocity[i] * mesh.velocity[j] / R;
            re += w * std::sin(k * R);
            if (R < near_radius) {
                im += w * (std::cos(k * R) - 1.0) +
                      mesh.velocity[i] * mesh.velocity[j] *
                          rect_pot(dx, dy, mesh.panel_dx, mesh.panel_dy) / A;
            } else {
                im += w * std::cos(k * R);
            }
        }
    }
}

}  // namespace

TEST_CASE("mesh structure") {
    const auto sq = build_mesh(RadiatorSpec::rect2d(1.0, 1.0), 10);
    CHECK(sq.size() == 100);
    double area = 0.0;
    for (double a : sq.area) area += a;
    CHECK(area == doctest::Approx(4.0).epsilon(1e-14));

    const auto r4 = build_mesh(RadiatorSpec::rect2d(1.0, 4.0), 10);
    CHECK(r4.nx == 10);
    CHECK(r4.ny == 40);
    CHECK(r4.size() == 400);

    const auto circ = build_mesh(RadiatorSpec::circular(1.0), 50);
    double circ_area = 0.0;
    for (double a : circ.area) circ_area += a;
    CHECK(circ_area == doctest::Approx(M_PI).epsilon(1e-12));
    for (std::size_t i = 0; i < circ.size(); ++i) {
        CHECK(circ.x[i] * circ.x[i] + circ.y[i] * circ.y[i] <= 1.0);
    }
}

TEST_CASE("mesh preconditions and resource cap") {
    CHECK_THROWS_AS(build_mesh(RadiatorSpec::rect2d(1.0, 1.0), 4), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh(RadiatorSpec::rect2d(1.0, 25.0), 64), std::length_error);
    // An explicit larger budget admits the same mesh.
    const auto big = build_mesh(RadiatorSpec::rect2d(1.0, 25.0), 64, 120000);
    CHECK(big.size() == 64u * 1600u);
}

TEST_CASE("panel-size accuracy contract") {
    const auto coarse = build_mesh(RadiatorSpec::rect2d(1.0, 1.0), 8);
    const MediumParams medium;
    // lambda/8 at ka = 4 is ~0.196 half-widths; the n=8 panel is 0.25.
    CHECK_THROWS_AS(bruteforce_impedance(coarse, 4.0, medium), std::invalid_argument);
    CHECK_NOTHROW(bruteforce_impedance(coarse, 1.0, medium));
    CHECK_THROWS_AS(bruteforce_impedance(coarse, 0.0, medium), std::invalid_argument);
}

TEST_CASE("uniform piston against the classical small-ka resistance") {
    PanelMesh mesh = build_mesh(RadiatorSpec::circular(1.0), 64);
    for (double& v : mesh.velocity) v = 1.0;
    mesh.vrms_ratio_sq = 1.0;
    const auto z = bruteforce_impedance(mesh, 0.2, MediumParams{});
    CHECK(z.r == doctest::Approx(0.5 * 0.2 * 0.2).epsilon(0.02));
}

TEST_CASE("cross-method equivalence with the spectral path") {
    const RadiatorSpec sq = RadiatorSpec::rect2d(1.0, 1.0);
    const auto mesh = build_mesh(sq, 64);
    const auto oracle = bruteforce_impedance(mesh, 1.0, MediumParams{});
    const auto spectral = radimp::rect2d_impedance(sq, 1.0, Tolerance{});
    CHECK(std::fabs(spectral.r - oracle.r) / oracle.r < 0.02);
    CHECK(std::fabs(spectral.x - oracle.x) / oracle.x < 0.02);
}

TEST_CASE("ka -> 0 resistance vanishes") {
    const auto mesh = build_mesh(RadiatorSpec::rect2d(1.0, 1.0), 16);
    const auto z = bruteforce_impedance(mesh, 0.05, MediumParams{});
    CHECK(z.r > 0.0);
    CHECK(z.r < 1e-3);
}

TEST_CASE("self-term matches the analytic small-disk formula exactly") {
    PanelMesh mesh;
    mesh.spec = RadiatorSpec::rect2d(1.0, 1.0);
    mesh.nx = 1;
    mesh.ny = 1;
    mesh.panel_dx = 0.05;
    mesh.panel_dy = 0.05;
    mesh.x = {0.0};
    mesh.y = {0.0};
    mesh.area = {0.0025};
    mesh.velocity = {1.0};
    mesh.total_area = 0.0025;
    mesh.vrms_ratio_sq = 1.0;
    const double ka = 0.5;
    const auto z = bruteforce_impedance(mesh, ka, MediumParams{});
    const double eps = std::sqrt(mesh.area[0] / M_PI);
    CHECK(z.r == (1.0 - std::cos(ka * eps)) * mesh.area[0] / mesh.total_area);
    CHECK(z.x == std::sin(ka * eps) * mesh.area[0] / mesh.total_area);
}

TEST_CASE("half-sum symmetry exploitation matches the full double sum") {
    const auto mesh = build_mesh(RadiatorSpec::rect2d(1.0, 1.0), 8);
    const double k = 1.5;
    double re_full = 0.0, im_full = 0.0;
    full_sum(mesh, k, re_full, im_full);

    const auto z = bruteforce_impedance(mesh, k, MediumParams{});
    const double A = mesh.area[0];
    const double eps = std::sqrt(A / M_PI);
    double self2 = 0.0;
    for (double v : mesh.velocity) self2 += v * v;
    const double norm = mesh.vrms_ratio_sq * mesh.total_area;
    const double r_ref =
        (re_full * k * A * A / (2.0 * M_PI) + self2 * (1.0 - std::cos(k * eps)) * A) / norm;
    const double x_ref =
        (im_full * k * A * A / (2.0 * M_PI) + self2 * std::sin(k * eps) * A) / norm;
    CHECK(std::fabs(z.r - r_ref) <= 1e-12 * std::fabs(r_ref));
    CHECK(std::fabs(z.x - x_ref) <= 1e-12 * std::fabs(x_ref));
}

TEST_CASE("threaded reduction is bit-identical to single-threaded") {
    const auto mesh = build_mesh(RadiatorSpec::rect2d(1.0, 2.0), 24);
    const auto z1 = bruteforce_impedance(mesh, 2.0, MediumParams{}, 1);
    const auto z2 = bruteforce_impedance(mesh, 2.0, MediumParams{}, 2);
    CHECK(z1.r == z2.r);
    CHECK(z1.x == z2.x);
}

TEST_CASE("mesh convergence: doubling n moves r by < 0.5%") {
    const RadiatorSpec sq = RadiatorSpec::rect2d(1.0, 1.0);
    const MediumParams medium;
    for (double ka : {1.0, 4.0}) {
        const auto coarse = bruteforce_impedance(build_mesh(sq, 32), ka, medium);
        const auto fine = bruteforce_impedance(build_mesh(sq, 64), ka, medium);
        CHECK(std::fabs(fine.r - coarse.r) / fine.r < 0.005);
        CHECK(fine.r > 0.0);
    }
}

TEST_CASE("monopole coefficients") {
    CHECK(monopole_asymptote(RadiatorSpec::rect2d(1.0, 1.0)) ==
          doctest::Approx(49.0 / (50.0 * M_PI)).epsilon(1e-15));
    CHECK(monopole_asymptote(RadiatorSpec::rect2d(1.0, 4.0)) ==
          doctest::Approx(4.0 * 49.0 / (50.0 * M_PI)).epsilon(1e-15));
    CHECK(monopole_asymptote(RadiatorSpec::rect1d(1.0, 25.0)) ==
          doctest::Approx(35.0 / M_PI).epsilon(1e-15));
    CHECK(monopole_asymptote(RadiatorSpec::circular(1.0)) ==
          doctest::Approx(5.0 / 18.0).epsilon(1e-15));

    // The coefficient must also be what the bruteforce path tends to.
    const auto mesh = build_mesh(RadiatorSpec::circular(1.0), 48);
    const auto z = bruteforce_impedance(mesh, 0.05, MediumParams{});
    CHECK(z.r / (0.05 * 0.05) == doctest::Approx(5.0 / 18.0).epsilon(0.02));
}

TEST_CASE("medium validation") {
    MediumParams bad;
    bad.density = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = MediumParams{};
    bad.sound_speed = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
