#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace radimp {

struct Tolerance {
    double rel = 1e-6;
    double abs = 1e-9;
    int max_subdivisions = 2000;

    bool valid() const { return rel > 0.0 && abs >= 0.0 && max_subdivisions >= 1; }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

/// Thrown when an integrand returns a non-finite value.
class IntegrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) integration of f over [lo, hi].
/// Subdivision always splits the pending interval with the largest error
/// estimate; ties resolve in insertion order, which keeps refinement biased
/// toward the singular endpoint for the transformed kernels used here.
/// Exhausting max_subdivisions returns converged = false with the best
/// estimate rather than throwing.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, const Tolerance& tol);

/// Same, but refinement starts from the given strictly increasing breakpoints
/// (used to pre-resolve oscillatory integrands).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    const Tolerance& tol);

/// ∫_0^{2π} ∫_0^1 g(t,φ) t/sqrt(1-t²) dt dφ with the endpoint weight removed
/// by t = sin θ. When phi_symmetric is set (g even in cos φ and in sin φ
/// separately) only [0, π/2] is integrated and the result scaled by 4.
QuadratureResult integrate_inner_disk(const std::function<double(double, double)>& g,
                                      const Tolerance& tol, bool phi_symmetric = true);

/// One term of a tail envelope: amplitude / t^power, power > 1.
struct TailEnvelopeTerm {
    double amplitude = 0.0;
    double power = 0.0;
};

/// Decay bound for the φ-integrated kernel magnitude,
///   ∫_0^{2π} |g(t,φ)| dφ  <=  Σ_i amplitude_i / t^power_i   for t >= t_min,
/// used to pick the truncation point of the semi-infinite integral so that
/// the discarded remainder stays below 0.1 × the absolute tolerance.
struct TailEnvelope {
    std::vector<TailEnvelopeTerm> terms;
    double t_min = 1.0;
};

/// ∫_0^{2π} ∫_1^∞ g(t,φ) t/sqrt(t²-1) dt dφ via t = cosh ψ. The radial
/// integral is truncated where the envelope bounds the remainder; requires
/// tol.abs > 0 for the truncation criterion to be well defined.
QuadratureResult integrate_outer_tail(const std::function<double(double, double)>& g,
                                      const Tolerance& tol, const TailEnvelope& envelope,
                                      bool phi_symmetric = true);

/// Axisymmetric tail ∫_1^∞ h(t) t/sqrt(t²-1) dt, envelope bounding |h(t)|.
QuadratureResult integrate_tail_1d(const std::function<double(double)>& h,
                                   const Tolerance& tol, const TailEnvelope& envelope);

}  // namespace radimp
