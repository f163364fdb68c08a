#include "radimp/spectra.hpp"

#include <cmath>
#include <stdexcept>

namespace radimp {
namespace {

void require_finite(double u, const char* who) {
    if (!std::isfinite(u)) {
        throw std::domain_error(std::string(who) + ": argument must be finite");
    }
}

}  // namespace

double shape_spectrum_poly(double u) {
    require_finite(u, "shape_spectrum_poly");
    u = std::fabs(u);
    if (u < kPolySeriesCutoff) {
        // Σ 16 (-u²)^n / ((2n)! (2n+1)(2n+3)(2n+5)), terms through u^10;
        // next term is below 3e-15 relative at the cutoff.
        const double u2 = u * u;
        return 16.0 / 15.0 +
               u2 * (-1.0 / 13.125 +
                     u2 * (1.0 / 472.5 +
                           u2 * (-1.0 / 31185.0 +
                                 u2 * (1.0 / 3243240.0 + u2 * (-1.0 / 486486000.0)))));
    }
    const double u2 = u * u;
    const double u5 = u2 * u2 * u;
    return -16.0 * (3.0 * u * std::cos(u) + (u2 - 3.0) * std::sin(u)) / u5;
}

double shape_spectrum_sinc(double u) {
    require_finite(u, "shape_spectrum_sinc");
    u = std::fabs(u);
    if (u < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
    }
    return std::sin(u) / u;
}

double shape_spectrum_circ(double u) {
    require_finite(u, "shape_spectrum_circ");
    u = std::fabs(u);
    if (u < kCircSeriesCutoff) {
        // Σ 2 (-1)^m (u/2)^{2m} / ((m!)² (m+1)(m+2)(m+3)), terms through u^12.
        const double u2 = u * u;
        return 1.0 / 3.0 +
               u2 * (-1.0 / 48.0 +
                     u2 * (1.0 / 1920.0 +
                           u2 * (-1.0 / 138240.0 +
                                 u2 * (1.0 / 15482880.0 +
                                       u2 * (-1.0 / 2477260800.0 + u2 / 535088332800.0)))));
    }
    return 16.0 * std::cyl_bessel_j(3.0, u) / (u * u * u);
}

}  // namespace radimp
