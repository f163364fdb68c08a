#include "radimp/oracle.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "radimp/profiles.hpp"

namespace radimp {
namespace {

// Static potential ∫ dS'/|r - s'| of a rectangle of size hx × hy centered at
// (x0, y0), observed from the origin. Corner decomposition of
// ∫0^X ∫0^Y dx dy / r = X asinh(Y/X) + Y asinh(X/Y), extended by parity.
double corner_potential(double X, double Y) {
    const double ax = std::fabs(X);
    const double ay = std::fabs(Y);
    if (ax == 0.0 || ay == 0.0) return 0.0;
    const double sign = (X > 0 ? 1.0 : -1.0) * (Y > 0 ? 1.0 : -1.0);
    return sign * (ax * std::asinh(ay / ax) + ay * std::asinh(ax / ay));
}

double rect_static_potential(double x0, double y0, double hx, double hy) {
    const double x1 = x0 - 0.5 * hx;
    const double x2 = x0 + 0.5 * hx;
    const double y1 = y0 - 0.5 * hy;
    const double y2 = y0 + 0.5 * hy;
    return corner_potential(x2, y2) - corner_potential(x1, y2) - corner_potential(x2, y1) +
           corner_potential(x1, y1);
}

struct PartialSum {
    double re = 0.0;
    double im = 0.0;
};

}  // namespace

void MediumParams::validate() const {
    if (!(density > 0.0) || !(sound_speed > 0.0)) {
        throw std::invalid_argument("medium requires density > 0 and sound_speed > 0");
    }
}

PanelMesh build_mesh(const RadiatorSpec& spec, int n_per_width, std::size_t max_panels) {
    spec.validate();
    if (n_per_width < 8) {
        throw std::invalid_argument("build_mesh requires n_per_width >= 8");
    }

    PanelMesh mesh;
    mesh.spec = spec;
    const ProfileModel model(spec);
    mesh.vrms_ratio_sq = vrms_ratio(model);

    const double a = spec.half_width_a;
    if (spec.kind == RadiatorKind::Circular) {
        const int n = n_per_width;
        const double h = 2.0 * a / n;
        std::size_t inside = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double px = -a + (i + 0.5) * h;
                const double py = -a + (j + 0.5) * h;
                if (px * px + py * py <= a * a) ++inside;
            }
        }
        if (inside > max_panels) {
            std::ostringstream msg;
            msg << "mesh of " << inside << " panels exceeds the budget of " << max_panels;
            throw std::length_error(msg.str());
        }
        mesh.nx = n;
        mesh.ny = n;
        mesh.panel_dx = h;
        mesh.panel_dy = h;
        mesh.total_area = M_PI * a * a;
        // Rescale so the masked panels sum exactly to the disk area.
        const double panel_area = mesh.total_area / static_cast<double>(inside);
        mesh.x.reserve(inside);
        mesh.y.reserve(inside);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double px = -a + (i + 0.5) * h;
                const double py = -a + (j + 0.5) * h;
                if (px * px + py * py > a * a) continue;
                mesh.x.push_back(px);
                mesh.y.push_back(py);
                mesh.area.push_back(panel_area);
                mesh.velocity.push_back(eval_profile(model, px, py));
            }
        }
        return mesh;
    }

    const double b = spec.half_length_b;
    const int nx = n_per_width;
    const int ny = std::max(1, static_cast<int>(std::lround(n_per_width * spec.aspect())));
    const std::size_t count = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    if (count > max_panels) {
        std::ostringstream msg;
        msg << "mesh of " << count << " panels exceeds the budget of " << max_panels;
        throw std::length_error(msg.str());
    }
    mesh.nx = nx;
    mesh.ny = ny;
    mesh.panel_dx = 2.0 * a / nx;
    mesh.panel_dy = 2.0 * b / ny;
    mesh.total_area = 4.0 * a * b;
    const double panel_area = mesh.panel_dx * mesh.panel_dy;
    mesh.x.reserve(count);
    mesh.y.reserve(count);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double px = -a + (i + 0.5) * mesh.panel_dx;
            const double py = -b + (j + 0.5) * mesh.panel_dy;
            mesh.x.push_back(px);
            mesh.y.push_back(py);
            mesh.area.push_back(panel_area);
            mesh.velocity.push_back(eval_profile(model, px, py));
        }
    }
    return mesh;
}

NormalizedImpedance bruteforce_impedance(const PanelMesh& mesh, double ka,
                                         const MediumParams& medium, int threads) {
    medium.validate();
    if (!(ka > 0.0) || !std::isfinite(ka)) {
        throw std::invalid_argument("ka must be finite and > 0");
    }
    const std::size_t n = mesh.size();
    if (n == 0) throw std::invalid_argument("empty mesh");

    const double a_ref = mesh.spec.half_width_a;
    const double k = ka / a_ref;
    const double h = std::max(mesh.panel_dx, mesh.panel_dy);
    const double lambda = 2.0 * M_PI / k;
    if (h > lambda / 8.0) {
        std::ostringstream msg;
        msg << "panel size " << h << " exceeds lambda/8 = " << lambda / 8.0
            << "; refine the mesh for this ka";
        throw std::invalid_argument(msg.str());
    }

    const double* px = mesh.x.data();
    const double* py = mesh.y.data();
    const double* pv = mesh.velocity.data();
    const double area = mesh.area[0];  // uniform by construction
    const double near_radius = 4.0 * h;
    const double inv_two_pi = 1.0 / (2.0 * M_PI);

    // Fixed stripe decomposition: 256 index stripes summed in order, so the
    // reduction is identical for every thread count.
    const std::size_t n_stripes = std::min<std::size_t>(256, n);
    std::vector<PartialSum> stripes(n_stripes);
    std::atomic<std::size_t> next_stripe{0};

    auto run_stripe = [&](std::size_t s) {
        const std::size_t begin = s * n / n_stripes;
        const std::size_t end = (s + 1) * n / n_stripes;
        double re = 0.0;
        double im = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double xi = px[i];
            const double yi = py[i];
            const double vi = pv[i];
            double row_re = 0.0;
            double row_im = 0.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dx = xi - px[j];
                const double dy = yi - py[j];
                const double R = std::sqrt(dx * dx + dy * dy);
                const double kR = k * R;
                const double w = vi * pv[j] / R;
                row_re += w * std::sin(kR);
                if (R < near_radius) {
                    // Exact static 1/R integral over the source panel; the
                    // midpoint value is first-order biased this close in.
                    const double pot =
                        rect_static_potential(dx, dy, mesh.panel_dx, mesh.panel_dy);
                    row_im += w * (std::cos(kR) - 1.0) + vi * pv[j] * pot / area;
                } else {
                    row_im += w * std::cos(kR);
                }
            }
            re += row_re;
            im += row_im;
        }
        stripes[s] = PartialSum{re, im};
    };

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_stripes)));
    if (n_threads == 1) {
        for (std::size_t s = 0; s < n_stripes; ++s) run_stripe(s);
    } else {
        auto worker = [&]() {
            for (;;) {
                const std::size_t s = next_stripe.fetch_add(1);
                if (s >= n_stripes) return;
                run_stripe(s);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    double sum_re = 0.0;
    double sum_im = 0.0;
    for (const PartialSum& s : stripes) {
        sum_re += s.re;
        sum_im += s.im;
    }
    // Pairs were counted once; the kernel is symmetric under i <-> j.
    sum_re *= 2.0;
    sum_im *= 2.0;

    // P / (rho c) = sum_ij v_i v_j k [sin(kR) + j cos(kR)] A^2 / (2 pi R)
    //             + self terms v_i^2 [(1 - cos(k eps)) + j sin(k eps)] A.
    double power_re = sum_re * k * area * area * inv_two_pi;
    double power_im = sum_im * k * area * area * inv_two_pi;
    const double eps = std::sqrt(area / M_PI);
    double self_v2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) self_v2 += pv[i] * pv[i];
    power_re += self_v2 * (1.0 - std::cos(k * eps)) * area;
    power_im += self_v2 * std::sin(k * eps) * area;

    const double norm = mesh.vrms_ratio_sq * mesh.total_area;
    NormalizedImpedance z;
    z.ka = ka;
    z.r = power_re / norm;
    z.x = power_im / norm;
    z.normalization = mesh.spec.kind == RadiatorKind::Circular ? Normalization::ByPiA2RhoC
                                                               : Normalization::By4abRhoC;
    z.converged = true;
    if (!std::isfinite(z.r) || !std::isfinite(z.x)) {
        throw std::runtime_error("bruteforce accumulation produced non-finite values");
    }
    z.reactance_validated = mesh.spec.kind == RadiatorKind::Circular
                                ? ka <= kReactanceValidityCirc
                                : ka <= kReactanceValidityRect;
    return z;
}

double monopole_asymptote(const RadiatorSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case RadiatorKind::Rect2D: return 49.0 * spec.aspect() / (50.0 * M_PI);
        case RadiatorKind::Rect1D: return 7.0 * spec.aspect() / (5.0 * M_PI);
        case RadiatorKind::Circular: return 5.0 / 18.0;
    }
    throw std::invalid_argument("unknown radiator kind");
}

}  // namespace radimp
