#pragma once

namespace radimp {

/// Velocity-profile axis factors whose spatial Fourier transforms the
/// spectrum functions below implement.
enum class ShapeKind {
    PolyClamped,     // (1 - (x/a)^2)^2, clamped-plate axis factor
    RectWindow,      // rectangle function, the long axis of the 1D profile
    CircPolyClamped  // (1 - r^2/a^2)^2, axisymmetric clamped profile
};

/// Arguments below this magnitude are evaluated by power series instead of
/// the closed forms, which cancel catastrophically near zero.
inline constexpr double kPolySeriesCutoff = 0.5;
inline constexpr double kCircSeriesCutoff = 0.5;

/// Transform of the clamped-plate axis factor:
///   S(u) = (1/a) ∫_{-a}^{a} e^{iux/a} (1-(x/a)^2)^2 dx
///        = -16 (3u cos u + (u^2-3) sin u) / u^5.
/// Even in u; S(0) = 16/15. Throws std::domain_error on non-finite input.
double shape_spectrum_poly(double u);

/// Unnormalized sinc, sin(u)/u, the transform of the rectangle window over
/// [-b, b] evaluated at u = k_y b. Even; |result| <= 1.
double shape_spectrum_sinc(double u);

/// Radial transform of the axisymmetric clamped profile:
///   S_c(u) = 2 ∫_0^1 (1-s^2)^2 J0(us) s ds = 16 J3(u) / u^3.
/// S_c(0) = 1/3.
double shape_spectrum_circ(double u);

}  // namespace radimp
