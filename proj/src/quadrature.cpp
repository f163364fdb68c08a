#include "radimp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace radimp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// G7/K15 pair on [-1, 1], positive half. Entries with wg == 0 are
// Kronrod-only nodes.
struct GkNode {
    double x;
    double wk;
    double wg;
};

constexpr std::array<GkNode, 8> kGk15 = {{
    {0.0, 0.20948214108472782801, 0.41795918367346938776},
    {0.2077849550078984676, 0.20443294007529889241, 0.0},
    {0.40584515137739716691, 0.19035057806478540991, 0.38183005050511894495},
    {0.58608723546769113029, 0.16900472663926790283, 0.0},
    {0.74153118559939443986, 0.14065325971552591875, 0.2797053914892766679},
    {0.86486442335976907279, 0.10479001032225018384, 0.0},
    {0.94910791234275852453, 0.063092092629978553291, 0.12948496616886969327},
    {0.99145537112081263921, 0.022935322010529224964, 0.0},
}};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    std::int64_t seq = 0;
};

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.seq > rhs.seq;  // FIFO among equal errors
    }
};

double checked_eval(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg << "integrand returned non-finite value at x = " << x;
        throw IntegrationError(msg.str());
    }
    return y;
}

Panel gk15_panel(const std::function<double(double)>& f, double a, double b,
                 std::int64_t& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 15> fx{};
    const double fc = checked_eval(f, center);
    fx[0] = fc;
    double resk = kGk15[0].wk * fc;
    double resg = kGk15[0].wg * fc;
    double resabs = kGk15[0].wk * std::fabs(fc);
    for (std::size_t i = 1; i < kGk15.size(); ++i) {
        const double dx = half * kGk15[i].x;
        const double f1 = checked_eval(f, center - dx);
        const double f2 = checked_eval(f, center + dx);
        fx[2 * i - 1] = f1;
        fx[2 * i] = f2;
        resk += kGk15[i].wk * (f1 + f2);
        resg += kGk15[i].wg * (f1 + f2);
        resabs += kGk15[i].wk * (std::fabs(f1) + std::fabs(f2));
    }
    evaluations += 15;

    const double mean = 0.5 * resk;
    double resasc = kGk15[0].wk * std::fabs(fc - mean);
    for (std::size_t i = 1; i < kGk15.size(); ++i) {
        resasc += kGk15[i].wk *
                  (std::fabs(fx[2 * i - 1] - mean) + std::fabs(fx[2 * i] - mean));
    }

    const double value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    // QUADPACK-style sharpened estimate with a roundoff floor.
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    err = std::max(err, 50.0 * kEps * resabs);

    return Panel{a, b, value, err, 0};
}

struct Totals {
    double value = 0.0;
    double error = 0.0;
};

Totals sum_in_order(std::vector<Panel> panels) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& p, const Panel& q) { return p.a < q.a; });
    Totals t;
    for (const Panel& p : panels) {
        t.value += p.value;
        t.error += p.error;
    }
    return t;
}

QuadratureResult adaptive_core(const std::function<double(double)>& f,
                               std::span<const double> breakpoints, const Tolerance& tol) {
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
    std::vector<Panel> finished;
    std::int64_t evaluations = 0;
    std::int64_t seq = 0;

    double running_value = 0.0;
    double running_error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        Panel p = gk15_panel(f, breakpoints[i], breakpoints[i + 1], evaluations);
        p.seq = seq++;
        running_value += p.value;
        running_error += p.error;
        active.push(p);
    }

    const auto target = [&](double value) {
        return std::max(tol.abs, tol.rel * std::fabs(value));
    };

    int splits = 0;
    while (running_error > target(running_value) && splits < tol.max_subdivisions &&
           !active.empty()) {
        Panel worst = active.top();
        active.pop();
        const double width = worst.b - worst.a;
        const double scale = std::max({std::fabs(worst.a), std::fabs(worst.b), 1.0});
        if (width <= 100.0 * kEps * scale) {
            // Cannot be refined further in double precision.
            finished.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15_panel(f, worst.a, mid, evaluations);
        Panel right = gk15_panel(f, mid, worst.b, evaluations);
        left.seq = seq++;
        right.seq = seq++;
        running_value += left.value + right.value - worst.value;
        running_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++splits;
    }

    while (!active.empty()) {
        finished.push_back(active.top());
        active.pop();
    }
    const Totals totals = sum_in_order(std::move(finished));

    QuadratureResult result;
    result.value = totals.value;
    result.error_estimate = totals.error;
    result.evaluations = evaluations;
    result.converged = totals.error <= target(totals.value);
    return result;
}

void check_tolerance(const Tolerance& tol) {
    if (!tol.valid()) {
        throw std::invalid_argument("Tolerance: rel > 0, abs >= 0, max_subdivisions >= 1 required");
    }
}

std::vector<double> uniform_breakpoints(double lo, double hi, int segments) {
    std::vector<double> pts(static_cast<std::size_t>(segments) + 1);
    for (int i = 0; i <= segments; ++i) {
        pts[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(segments);
    }
    pts.front() = lo;
    pts.back() = hi;
    return pts;
}

// Remainder bound of the truncated tail, ∫_T^∞ env(t) t/sqrt(t²-1) dt with
// env = Σ A_i/t^p_i:  Σ A_i T^{1-p_i} / ((p_i - 1) sqrt(1 - T^{-2})).
double tail_remainder(const TailEnvelope& env, double t) {
    double sum = 0.0;
    for (const TailEnvelopeTerm& term : env.terms) {
        sum += term.amplitude * std::pow(t, 1.0 - term.power) / (term.power - 1.0);
    }
    return sum / std::sqrt(1.0 - 1.0 / (t * t));
}

double solve_truncation(const TailEnvelope& env, double budget) {
    if (env.terms.empty()) {
        throw std::invalid_argument("outer tail requires a non-empty envelope");
    }
    for (const TailEnvelopeTerm& term : env.terms) {
        if (!(term.power > 1.0) || !(term.amplitude >= 0.0)) {
            throw std::invalid_argument("tail envelope terms need power > 1 and amplitude >= 0");
        }
    }
    double lo = std::max({env.t_min, 1.0 + 1e-9});
    if (tail_remainder(env, lo) <= budget) return lo;
    double hi = lo;
    while (tail_remainder(env, hi) > budget) {
        hi *= 4.0;
        if (hi > 1e120) {
            throw std::invalid_argument("tail envelope cannot meet the truncation budget");
        }
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (tail_remainder(env, mid) > budget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

std::vector<double> tail_breakpoints(double psi_max) {
    // Dense near ψ = 0 (the transformed t = 1 endpoint), unit steps beyond.
    std::vector<double> pts;
    const double head = std::min(psi_max, 3.0);
    const int head_segments = 16;
    for (int i = 0; i < head_segments; ++i) {
        pts.push_back(head * static_cast<double>(i) / head_segments);
    }
    double psi = head;
    while (psi < psi_max) {
        pts.push_back(psi);
        psi += 1.0;
    }
    pts.push_back(psi_max);
    return pts;
}

struct InnerAccumulator {
    std::int64_t evaluations = 0;
    bool all_converged = true;
};

// Shared outer-φ / inner-radial nesting for the two weighted double
// integrals. `radial` integrates the transformed radial variable at fixed φ.
QuadratureResult nest_phi(const std::function<QuadratureResult(double)>& radial,
                          const Tolerance& tol, bool phi_symmetric, double extra_error,
                          double outer_budget) {
    const double sym = phi_symmetric ? 4.0 : 1.0;
    const double phi_hi = phi_symmetric ? M_PI / 2.0 : 2.0 * M_PI;

    InnerAccumulator acc;
    const auto outer_f = [&](double phi) {
        const QuadratureResult inner = radial(phi);
        acc.evaluations += inner.evaluations;
        acc.all_converged = acc.all_converged && inner.converged;
        return inner.value;
    };

    Tolerance outer_tol;
    outer_tol.rel = outer_budget * tol.rel;
    outer_tol.abs = outer_budget * tol.abs / sym;
    outer_tol.max_subdivisions = tol.max_subdivisions;
    const std::vector<double> phi_pts = uniform_breakpoints(0.0, phi_hi, 8);
    const QuadratureResult outer = adaptive_core(outer_f, phi_pts, outer_tol);

    QuadratureResult result;
    result.value = sym * outer.value;
    result.error_estimate =
        sym * outer.error_estimate + 0.1 * tol.abs + 0.05 * tol.rel * std::fabs(result.value) +
        extra_error;
    result.evaluations = acc.evaluations;
    result.converged = outer.converged && acc.all_converged &&
                       result.error_estimate <= std::max(tol.abs, tol.rel * std::fabs(result.value));
    return result;
}

Tolerance inner_tolerance(const Tolerance& tol) {
    Tolerance inner;
    inner.rel = 0.05 * tol.rel;
    inner.abs = 0.05 * tol.abs / (2.0 * M_PI);
    inner.max_subdivisions = tol.max_subdivisions;
    return inner;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                                    double hi, const Tolerance& tol) {
    check_tolerance(tol);
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw std::invalid_argument("integrate_adaptive requires finite lo < hi");
    }
    const std::array<double, 2> pts{lo, hi};
    return adaptive_core(f, pts, tol);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints, const Tolerance& tol) {
    check_tolerance(tol);
    if (breakpoints.size() < 2) {
        throw std::invalid_argument("need at least two breakpoints");
    }
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i]) || !(breakpoints[i] < breakpoints[i + 1])) {
            throw std::invalid_argument("breakpoints must be finite and strictly increasing");
        }
    }
    return adaptive_core(f, breakpoints, tol);
}

QuadratureResult integrate_inner_disk(const std::function<double(double, double)>& g,
                                      const Tolerance& tol, bool phi_symmetric) {
    check_tolerance(tol);
    const Tolerance inner_tol = inner_tolerance(tol);
    const std::vector<double> theta_pts = uniform_breakpoints(0.0, M_PI / 2.0, 8);

    const auto radial = [&](double phi) {
        const auto f = [&](double theta) {
            const double t = std::sin(theta);
            return g(t, phi) * t;
        };
        return adaptive_core(f, theta_pts, inner_tol);
    };
    return nest_phi(radial, tol, phi_symmetric, 0.0, 0.8);
}

QuadratureResult integrate_outer_tail(const std::function<double(double, double)>& g,
                                      const Tolerance& tol, const TailEnvelope& envelope,
                                      bool phi_symmetric) {
    check_tolerance(tol);
    if (!(tol.abs > 0.0)) {
        throw std::invalid_argument("integrate_outer_tail requires tol.abs > 0");
    }
    const double truncation_budget = 0.1 * tol.abs;
    const double t_max = solve_truncation(envelope, truncation_budget);
    const double psi_max = std::acosh(t_max);
    const std::vector<double> psi_pts = tail_breakpoints(psi_max);
    const Tolerance inner_tol = inner_tolerance(tol);

    const auto radial = [&](double phi) {
        const auto f = [&](double psi) {
            const double t = std::cosh(psi);
            return g(t, phi) * t;
        };
        return adaptive_core(f, psi_pts, inner_tol);
    };
    return nest_phi(radial, tol, phi_symmetric, truncation_budget, 0.7);
}

QuadratureResult integrate_tail_1d(const std::function<double(double)>& h,
                                   const Tolerance& tol, const TailEnvelope& envelope) {
    check_tolerance(tol);
    if (!(tol.abs > 0.0)) {
        throw std::invalid_argument("integrate_tail_1d requires tol.abs > 0");
    }
    const double truncation_budget = 0.1 * tol.abs;
    const double t_max = solve_truncation(envelope, truncation_budget);
    const double psi_max = std::acosh(t_max);
    const std::vector<double> psi_pts = tail_breakpoints(psi_max);

    Tolerance core_tol;
    core_tol.rel = 0.8 * tol.rel;
    core_tol.abs = 0.8 * tol.abs;
    core_tol.max_subdivisions = tol.max_subdivisions;
    const auto f = [&](double psi) {
        const double t = std::cosh(psi);
        return h(t) * t;
    };
    QuadratureResult result = adaptive_core(f, psi_pts, core_tol);
    result.error_estimate += truncation_budget;
    result.converged = result.converged &&
                       result.error_estimate <=
                           std::max(tol.abs, tol.rel * std::fabs(result.value));
    return result;
}

}  // namespace radimp
