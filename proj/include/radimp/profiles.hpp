#pragma once

#include <string>
#include <vector>

#include "radimp/impedance.hpp"
#include "radimp/spectra.hpp"

namespace radimp {

/// Rectangular tensor grid of velocity samples (arbitrary scale), e.g. an
/// FEM export. values are row-major over (xs.size(), ys.size()).
struct SampledGrid {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;

    double at(std::size_t ix, std::size_t iy) const { return values[ix * ys.size() + iy]; }
    void validate() const;  // throws std::invalid_argument
};

/// Analytic velocity-profile model backing a RadiatorSpec.
struct ProfileModel {
    RadiatorSpec geometry;

    explicit ProfileModel(const RadiatorSpec& spec) : geometry(spec) { geometry.validate(); }
    ShapeKind axis_x() const;
    ShapeKind axis_y() const;
};

/// Peak-normalized velocity at (x, y); 0 outside the aperture.
double eval_profile(const ProfileModel& model, double x, double y);

/// V_RMS²/v0², the exact spatial mean of the squared profile:
/// 16384/99225 (rect 2D), 128/315 (1D), 1/5 (circular).
double vrms_ratio(const ProfileModel& model);

/// Absolute relative error between the grid and the model, both peak
/// normalized, with trapezoidal area weights:
///   ARE = Σ |v̂_grid - v̂_model| w / Σ v̂_grid w.
/// Invariant under uniform scaling of the grid values.
double are(const SampledGrid& grid, const ProfileModel& model);

/// Parse a CSV velocity grid (header "x,y,v", meters, arbitrary velocity
/// scale; row order free). Coordinates are sorted and deduplicated; scatter
/// that does not form a tensor grid is rejected, as are non-finite entries
/// (diagnostics carry the offending line number).
SampledGrid load_grid(const std::string& path);

/// Complete a quarter-symmetry export (x >= 0, y >= 0) to the full aperture
/// by even reflection in both axes.
SampledGrid mirror_quadrant(const SampledGrid& quarter);

}  // namespace radimp
