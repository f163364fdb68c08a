#pragma once

#include <vector>

#include "radimp/quadrature.hpp"

namespace radimp {

enum class RadiatorKind { Rect2D, Rect1D, Circular };

/// Geometry of one radiator. For rectangular kinds a is the half-width and
/// b the half-length (aspect = b/a); circular radiators carry the radius in
/// half_width_a.
struct RadiatorSpec {
    RadiatorKind kind = RadiatorKind::Rect2D;
    double half_width_a = 1.0;
    double half_length_b = 1.0;

    static RadiatorSpec rect2d(double half_width, double half_length);
    static RadiatorSpec rect1d(double half_width, double half_length);
    static RadiatorSpec circular(double radius);

    double aspect() const { return half_length_b / half_width_a; }
    double radius() const { return half_width_a; }
    /// 4ab for rectangles, πa² for the disk.
    double area() const;
    void validate() const;  // throws std::invalid_argument
};

enum class Normalization { By4abRhoC, ByPiA2RhoC };

/// One dimensionless impedance sample. r and x are the radiation resistance
/// and reactance divided by ρc times the radiator area (4ab or πa²), with
/// the spatial RMS velocity as reference. The reactance is reported with the
/// physically positive (mass-loading) sign: the evanescent branch of the
/// wavenumber integral carries -j, so the raw imaginary part comes out
/// negative and is negated here.
struct NormalizedImpedance {
    double ka = 0.0;
    double r = 0.0;
    double x = 0.0;
    Normalization normalization = Normalization::By4abRhoC;
    bool converged = true;
    /// False above ka = 5 (rectangular) or ka = 5.5 (circular), where the
    /// single-mode reactance model is outside its validated range. Values
    /// are still computed; this is a caveat, not a rejection.
    bool reactance_validated = true;
};

enum class Spacing { Linear, Log };
enum class OutputFormat { Csv, Json };

struct SweepSpec {
    double ka_min = 0.2;
    double ka_max = 12.0;
    int n_points = 60;
    Spacing spacing = Spacing::Linear;
    Tolerance tol;
    OutputFormat output_format = OutputFormat::Csv;

    void validate() const;  // throws std::invalid_argument
    std::vector<double> grid() const;
};

struct ImpedanceCurve {
    RadiatorSpec spec;
    std::vector<NormalizedImpedance> points;
    Tolerance tol;
};

inline constexpr double kReactanceValidityRect = 5.0;
inline constexpr double kReactanceValidityCirc = 5.5;

/// Clamped rectangular radiator, Bouwkamp wavenumber integrals with the
/// squared poly spectrum on both axes:
///   r = (ka)² β (99225/16384)/(16π²) ∫∫_{t<1} S²(ka t cosφ) S²(ka β t sinφ) t dt dφ/√(1-t²)
/// and x the matching t>1 integral. Aspect < 1 is accepted and relabeled
/// through the exchange symmetry r(ka, β) = r(βka, 1/β).
NormalizedImpedance rect2d_impedance(const RadiatorSpec& spec, double ka, const Tolerance& tol);

/// Long-membrane 1D profile (poly across the width, rectangle along the
/// length): kernel S²·sinc², prefactor (ka)² β (315/128)/(4π²). Requires
/// aspect >= 1.
NormalizedImpedance rect1d_impedance(const RadiatorSpec& spec, double ka, const Tolerance& tol);

/// Axisymmetric clamped radiator; the azimuthal integral collapses to 2π and
///   r = (5/2)(ka)² ∫_0^1 S_c²(ka t) t dt/√(1-t²),  x likewise over t > 1.
NormalizedImpedance circular_impedance(const RadiatorSpec& spec, double ka, const Tolerance& tol);

/// Dispatch on spec.kind.
NormalizedImpedance impedance(const RadiatorSpec& spec, double ka, const Tolerance& tol);

/// Evaluate the ka grid of `sweep`. Points are independent and deterministic,
/// so the curve is identical for any jobs count; results are gathered in grid
/// order. Non-convergence is recorded per point, never dropped.
ImpedanceCurve sweep(const RadiatorSpec& spec, const SweepSpec& sweep_spec, int jobs = 1);

}  // namespace radimp
