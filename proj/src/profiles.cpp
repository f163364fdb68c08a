#include "radimp/profiles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace radimp {
namespace {

double axis_poly(double s) {
    if (std::fabs(s) >= 1.0) return 0.0;
    const double w = 1.0 - s * s;
    return w * w;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << path << ": line " << line << ": " << what;
    throw std::invalid_argument(msg.str());
}

// Collapse coordinates that agree within a span-relative tolerance and map
// each sample onto the resulting tensor grid.
std::vector<double> unique_sorted(std::vector<double> v, double tolerance) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double value : v) {
        if (out.empty() || value - out.back() > tolerance) out.push_back(value);
    }
    return out;
}

std::size_t locate(const std::vector<double>& axis, double value, double tolerance) {
    const auto it = std::lower_bound(axis.begin(), axis.end(), value - tolerance);
    if (it == axis.end() || std::fabs(*it - value) > tolerance) {
        throw std::invalid_argument("coordinate does not lie on the tensor grid");
    }
    return static_cast<std::size_t>(it - axis.begin());
}

std::vector<double> trapezoid_weights(const std::vector<double>& coords) {
    const std::size_t n = coords.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = coords[i + 1] - coords[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

std::vector<double> mirror_axis(const std::vector<double>& half, double tolerance) {
    if (half.front() < -tolerance) {
        throw std::invalid_argument("mirror requires coordinates >= 0");
    }
    std::vector<double> full;
    const bool has_zero = std::fabs(half.front()) <= tolerance;
    for (std::size_t i = half.size(); i-- > (has_zero ? 1 : 0);) {
        full.push_back(-half[i]);
    }
    full.insert(full.end(), half.begin(), half.end());
    return full;
}

}  // namespace

void SampledGrid::validate() const {
    if (xs.size() < 2 || ys.size() < 2) {
        throw std::invalid_argument("grid needs at least 2 coordinates per axis");
    }
    if (values.size() != xs.size() * ys.size()) {
        throw std::invalid_argument("grid value count does not match nx*ny");
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i] < xs[i + 1])) throw std::invalid_argument("xs must be strictly increasing");
    }
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        if (!(ys[i] < ys[i + 1])) throw std::invalid_argument("ys must be strictly increasing");
    }
    bool any_nonzero = false;
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("grid contains non-finite values");
        if (v != 0.0) any_nonzero = true;
    }
    if (!any_nonzero) throw std::invalid_argument("grid is identically zero");
}

ShapeKind ProfileModel::axis_x() const {
    return geometry.kind == RadiatorKind::Circular ? ShapeKind::CircPolyClamped
                                                   : ShapeKind::PolyClamped;
}

ShapeKind ProfileModel::axis_y() const {
    switch (geometry.kind) {
        case RadiatorKind::Rect2D: return ShapeKind::PolyClamped;
        case RadiatorKind::Rect1D: return ShapeKind::RectWindow;
        case RadiatorKind::Circular: return ShapeKind::CircPolyClamped;
    }
    throw std::invalid_argument("unknown radiator kind");
}

double eval_profile(const ProfileModel& model, double x, double y) {
    const RadiatorSpec& g = model.geometry;
    switch (g.kind) {
        case RadiatorKind::Rect2D:
            return axis_poly(x / g.half_width_a) * axis_poly(y / g.half_length_b);
        case RadiatorKind::Rect1D:
            if (std::fabs(y) > g.half_length_b) return 0.0;
            return axis_poly(x / g.half_width_a);
        case RadiatorKind::Circular: {
            const double s2 =
                (x * x + y * y) / (g.half_width_a * g.half_width_a);
            if (s2 >= 1.0) return 0.0;
            const double w = 1.0 - s2;
            return w * w;
        }
    }
    throw std::invalid_argument("unknown radiator kind");
}

double vrms_ratio(const ProfileModel& model) {
    switch (model.geometry.kind) {
        case RadiatorKind::Rect2D: return 16384.0 / 99225.0;
        case RadiatorKind::Rect1D: return 128.0 / 315.0;
        case RadiatorKind::Circular: return 1.0 / 5.0;
    }
    throw std::invalid_argument("unknown radiator kind");
}

double are(const SampledGrid& grid, const ProfileModel& model) {
    grid.validate();
    const RadiatorSpec& g = model.geometry;
    const double a = g.half_width_a;
    const double b = g.kind == RadiatorKind::Circular ? g.half_width_a : g.half_length_b;
    const double slack = 1e-6;
    if (grid.xs.front() > -a * (1.0 - slack) || grid.xs.back() < a * (1.0 - slack) ||
        grid.ys.front() > -b * (1.0 - slack) || grid.ys.back() < b * (1.0 - slack)) {
        throw std::invalid_argument("grid does not cover the radiator aperture");
    }

    // Peak normalization: divide by the sample of largest magnitude, so a
    // uniform rescaling of the grid cancels exactly.
    double peak = 0.0;
    for (double v : grid.values) {
        if (std::fabs(v) > std::fabs(peak)) peak = v;
    }

    const std::vector<double> wx = trapezoid_weights(grid.xs);
    const std::vector<double> wy = trapezoid_weights(grid.ys);

    double num = 0.0;
    double den = 0.0;
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix) {
        for (std::size_t iy = 0; iy < grid.ys.size(); ++iy) {
            const double w = wx[ix] * wy[iy];
            const double vg = grid.at(ix, iy) / peak;
            const double vm = eval_profile(model, grid.xs[ix], grid.ys[iy]);
            num += std::fabs(vg - vm) * w;
            den += vg * w;
        }
    }
    if (den == 0.0) throw std::invalid_argument("grid integrates to zero; ARE undefined");
    return num / den;
}

SampledGrid load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open grid file: " + path);

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
    ++line_no;
    {
        std::string header = trim(line);
        std::transform(header.begin(), header.end(), header.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        header.erase(std::remove_if(header.begin(), header.end(),
                                    [](unsigned char c) { return std::isspace(c); }),
                     header.end());
        if (header != "x,y,v") parse_fail(path, 1, "expected header \"x,y,v\", got \"" + line + "\"");
    }

    struct Sample {
        double x, y, v;
    };
    std::vector<Sample> samples;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty()) continue;
        std::istringstream ss(row);
        std::string field;
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ss, field, ',')) parse_fail(path, line_no, "expected 3 fields");
            try {
                std::size_t used = 0;
                vals[i] = std::stod(trim(field), &used);
                if (used != trim(field).size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                parse_fail(path, line_no, "cannot parse \"" + field + "\" as a number");
            }
            if (!std::isfinite(vals[i])) parse_fail(path, line_no, "non-finite value");
        }
        if (std::getline(ss, field, ',')) parse_fail(path, line_no, "expected exactly 3 fields");
        samples.push_back({vals[0], vals[1], vals[2]});
    }
    if (samples.size() < 4) throw std::invalid_argument(path + ": need at least 4 samples");

    double span = 0.0;
    std::vector<double> xs_all, ys_all;
    xs_all.reserve(samples.size());
    ys_all.reserve(samples.size());
    for (const Sample& s : samples) {
        xs_all.push_back(s.x);
        ys_all.push_back(s.y);
        span = std::max({span, std::fabs(s.x), std::fabs(s.y)});
    }
    const double tolerance = std::max(span, 1.0) * 1e-12;
    SampledGrid grid;
    grid.xs = unique_sorted(std::move(xs_all), tolerance);
    grid.ys = unique_sorted(std::move(ys_all), tolerance);

    const std::size_t nx = grid.xs.size();
    const std::size_t ny = grid.ys.size();
    if (samples.size() != nx * ny) {
        std::ostringstream msg;
        msg << path << ": " << samples.size() << " samples do not form a " << nx << "x" << ny
            << " tensor grid (scatter input is rejected rather than resampled)";
        throw std::invalid_argument(msg.str());
    }
    grid.values.assign(nx * ny, std::numeric_limits<double>::quiet_NaN());
    std::vector<bool> seen(nx * ny, false);
    for (const Sample& s : samples) {
        std::size_t ix, iy;
        try {
            ix = locate(grid.xs, s.x, tolerance);
            iy = locate(grid.ys, s.y, tolerance);
        } catch (const std::exception&) {
            throw std::invalid_argument(path + ": samples do not form a tensor grid");
        }
        if (seen[ix * ny + iy]) {
            throw std::invalid_argument(path + ": duplicate grid node");
        }
        seen[ix * ny + iy] = true;
        grid.values[ix * ny + iy] = s.v;
    }
    grid.validate();
    return grid;
}

SampledGrid mirror_quadrant(const SampledGrid& quarter) {
    quarter.validate();
    const double span = std::max({std::fabs(quarter.xs.back()), std::fabs(quarter.ys.back()), 1.0});
    const double tolerance = span * 1e-12;

    SampledGrid full;
    full.xs = mirror_axis(quarter.xs, tolerance);
    full.ys = mirror_axis(quarter.ys, tolerance);
    const std::size_t nx = full.xs.size();
    const std::size_t ny = full.ys.size();
    full.values.resize(nx * ny);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double ax = std::fabs(full.xs[ix]);
        const std::size_t qx = locate(quarter.xs, ax, tolerance);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double ay = std::fabs(full.ys[iy]);
            const std::size_t qy = locate(quarter.ys, ay, tolerance);
            full.values[ix * ny + iy] = quarter.at(qx, qy);
        }
    }
    return full;
}

}  // namespace radimp
