#pragma once

#include <cstddef>
#include <vector>

#include "radimp/impedance.hpp"

namespace radimp {

struct MediumParams {
    double density = 1.21;      // kg/m^3, air
    double sound_speed = 343.0; // m/s

    void validate() const;  // throws std::invalid_argument
};

/// Uniform panel discretization of the radiator surface. Panels are
/// rectangles of size panel_dx × panel_dy; the circular kind keeps panels
/// whose centers fall inside the disk and rescales areas so the total is
/// exactly πa². Velocities are the analytic peak-normalized profile sampled
/// at panel centers.
struct PanelMesh {
    RadiatorSpec spec;
    int nx = 0;
    int ny = 0;
    double panel_dx = 0.0;
    double panel_dy = 0.0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> area;
    std::vector<double> velocity;
    double total_area = 0.0;
    double vrms_ratio_sq = 0.0;  // V_RMS²/v0² of the sampled profile

    std::size_t size() const { return x.size(); }
};

inline constexpr std::size_t kDefaultMaxPanels = 41000;

/// n_per_width panels span the full width 2a; ny scales with the aspect so
/// panels stay near-square. Exceeding max_panels raises a resource error
/// (this path is O(N²) and meant for validation, not production).
PanelMesh build_mesh(const RadiatorSpec& spec, int n_per_width,
                     std::size_t max_panels = kDefaultMaxPanels);

/// Direct Rayleigh-Sommerfeld double sum over panel pairs,
///   Z = [Σ_i Σ_j v_i v_j (jρck) G(R_ij) A_i A_j] / (V_RMS² Area ρc),
/// with G the baffled half-space Green's function and the i = j self-term
/// evaluated by the analytic equal-area-disk integral, ε = sqrt(A/π). The
/// static 1/R part of near pairs (R below a few panel sizes) uses the exact
/// rectangle potential instead of the midpoint value; the midpoint rule
/// there carries an O(panel) bias that the reactance inherits. Requires
/// panel size <= λ/8. threads = 0 picks hardware concurrency; the reduction
/// order is fixed (indexed stripes) so results are identical for any thread
/// count.
NormalizedImpedance bruteforce_impedance(const PanelMesh& mesh, double ka,
                                         const MediumParams& medium, int threads = 0);

/// Closed-form coefficient C of the low-frequency law r -> C (ka)², from the
/// exact profile integrals (volume velocity and RMS velocity) and the
/// baffled monopole power ρck²U²/(2π):
///   rect 2D: 49β/(50π),  rect 1D: 7β/(5π),  circular: 5/18.
double monopole_asymptote(const RadiatorSpec& spec);

}  // namespace radimp
