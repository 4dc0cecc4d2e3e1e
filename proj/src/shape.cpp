#include "isospec/shape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isospec {
namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be a positive number");
}

double parse_number(std::string_view tok, std::string_view ctx) {
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw std::invalid_argument("bad number '" + s + "' in shape '" + std::string(ctx) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double segment_distance(double px, double py, const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((px - a[0]) * dx + (py - a[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(px - a[0] - t * dx, py - a[1] - t * dy);
}

}  // namespace

Shape Shape::disk(double radius) {
    require_positive(radius, "disk radius");
    return Shape(Type::disk, {radius});
}

Shape Shape::ellipse(double semi_x, double semi_y) {
    require_positive(semi_x, "ellipse semi-axis");
    require_positive(semi_y, "ellipse semi-axis");
    return Shape(Type::ellipse, {semi_x, semi_y});
}

Shape Shape::rectangle(double a, double b) {
    require_positive(a, "rectangle side");
    require_positive(b, "rectangle side");
    return Shape(Type::rectangle, {a, b});
}

Shape Shape::lshape(double side, double arm) {
    require_positive(side, "L-shape side");
    require_positive(arm, "L-shape arm width");
    if (!(arm < side)) throw std::invalid_argument("L-shape arm width must be smaller than the side");
    return Shape(Type::lshape, {side, arm});
}

Shape Shape::annulus(double r_in, double r_out) {
    require_positive(r_in, "annulus inner radius");
    require_positive(r_out, "annulus outer radius");
    if (!(r_in < r_out)) throw std::invalid_argument("annulus inner radius must be below the outer radius");
    return Shape(Type::annulus, {r_in, r_out});
}

Shape Shape::polygon(std::vector<std::array<double, 2>> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (const auto& v : vertices)
        if (!std::isfinite(v[0]) || !std::isfinite(v[1])) throw std::invalid_argument("polygon vertex is not finite");
    Shape s(Type::polygon, {});
    s.vertices_ = std::move(vertices);
    if (!(s.area() > 0.0)) throw std::invalid_argument("polygon has zero area");
    return s;
}

Shape Shape::parse(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("shape '" + std::string(text) + "' must look like kind:params");
    const std::string_view kind = text.substr(0, colon);
    const std::string_view rest = text.substr(colon + 1);
    if (kind == "polygon") {
        std::vector<std::array<double, 2>> verts;
        for (std::string_view pt : split(rest, ';')) {
            const auto xy = split(pt, ',');
            if (xy.size() != 2) throw std::invalid_argument("polygon vertex '" + std::string(pt) + "' needs x,y");
            verts.push_back({parse_number(xy[0], text), parse_number(xy[1], text)});
        }
        return polygon(std::move(verts));
    }
    std::vector<double> p;
    for (std::string_view tok : split(rest, ',')) p.push_back(parse_number(tok, text));
    auto need = [&](std::size_t k) {
        if (p.size() != k)
            throw std::invalid_argument("shape '" + std::string(text) + "' expects " + std::to_string(k) + " parameter(s)");
    };
    if (kind == "disk") { need(1); return disk(p[0]); }
    if (kind == "ellipse") { need(2); return ellipse(p[0], p[1]); }
    if (kind == "rectangle") { need(2); return rectangle(p[0], p[1]); }
    if (kind == "lshape") { need(2); return lshape(p[0], p[1]); }
    if (kind == "annulus") { need(2); return annulus(p[0], p[1]); }
    throw std::invalid_argument("unknown shape kind '" + std::string(kind) +
                                "' (expected disk|ellipse|rectangle|lshape|annulus|polygon)");
}

double Shape::level(double x, double y) const {
    switch (type_) {
        case Type::disk:
            return std::hypot(x, y) - params_[0];
        case Type::ellipse: {
            // ρ - 1 has Lipschitz constant 1/min(a, b).
            const double a = params_[0], b = params_[1];
            return (std::hypot(x / a, y / b) - 1.0) * std::min(a, b);
        }
        case Type::rectangle:
            return std::max({-x, x - params_[0], -y, y - params_[1]});
        case Type::lshape: {
            const double s = params_[0], w = params_[1];
            const double square = std::max({-x, x - s, -y, y - s});
            const double notch = std::max(w - x, w - y);  // negative inside the removed square
            return std::max(square, -notch);
        }
        case Type::annulus: {
            const double r = std::hypot(x, y);
            return std::max(r - params_[1], params_[0] - r);
        }
        case Type::polygon: {
            const std::size_t n = vertices_.size();
            bool inside = false;
            double dist = INFINITY;
            for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
                const auto& a = vertices_[i];
                const auto& b = vertices_[j];
                if ((a[1] > y) != (b[1] > y) && x < (b[0] - a[0]) * (y - a[1]) / (b[1] - a[1]) + a[0])
                    inside = !inside;
                dist = std::min(dist, segment_distance(x, y, a, b));
            }
            return inside ? -dist : dist;
        }
    }
    return INFINITY;
}

double Shape::area() const {
    switch (type_) {
        case Type::disk: return pi * params_[0] * params_[0];
        case Type::ellipse: return pi * params_[0] * params_[1];
        case Type::rectangle: return params_[0] * params_[1];
        case Type::lshape: {
            const double cut = params_[0] - params_[1];
            return params_[0] * params_[0] - cut * cut;
        }
        case Type::annulus: return pi * (params_[1] * params_[1] - params_[0] * params_[0]);
        case Type::polygon: {
            double twice = 0.0;
            const std::size_t n = vertices_.size();
            for (std::size_t i = 0, j = n - 1; i < n; j = i++)
                twice += vertices_[j][0] * vertices_[i][1] - vertices_[i][0] * vertices_[j][1];
            return 0.5 * std::abs(twice);
        }
    }
    return 0.0;
}

double Shape::perimeter() const {
    switch (type_) {
        case Type::disk: return 2.0 * pi * params_[0];
        case Type::ellipse: {
            // Ramanujan's second approximation
            const double a = params_[0], b = params_[1];
            const double h = (a - b) * (a - b) / ((a + b) * (a + b));
            return pi * (a + b) * (1.0 + 3.0 * h / (10.0 + std::sqrt(4.0 - 3.0 * h)));
        }
        case Type::rectangle: return 2.0 * (params_[0] + params_[1]);
        case Type::lshape: return 4.0 * params_[0];
        case Type::annulus: return 2.0 * pi * (params_[0] + params_[1]);
        case Type::polygon: {
            double p = 0.0;
            const std::size_t n = vertices_.size();
            for (std::size_t i = 0, j = n - 1; i < n; j = i++)
                p += std::hypot(vertices_[i][0] - vertices_[j][0], vertices_[i][1] - vertices_[j][1]);
            return p;
        }
    }
    return 0.0;
}

std::array<double, 4> Shape::bounding_box() const {
    switch (type_) {
        case Type::disk: return {-params_[0], params_[0], -params_[0], params_[0]};
        case Type::ellipse: return {-params_[0], params_[0], -params_[1], params_[1]};
        case Type::rectangle: return {0.0, params_[0], 0.0, params_[1]};
        case Type::lshape: return {0.0, params_[0], 0.0, params_[0]};
        case Type::annulus: return {-params_[1], params_[1], -params_[1], params_[1]};
        case Type::polygon: {
            std::array<double, 4> box{INFINITY, -INFINITY, INFINITY, -INFINITY};
            for (const auto& v : vertices_) {
                box[0] = std::min(box[0], v[0]);
                box[1] = std::max(box[1], v[0]);
                box[2] = std::min(box[2], v[1]);
                box[3] = std::max(box[3], v[1]);
            }
            return box;
        }
    }
    return {0, 0, 0, 0};
}

std::string Shape::describe() const {
    switch (type_) {
        case Type::disk: return "disk:" + fmt(params_[0]);
        case Type::ellipse: return "ellipse:" + fmt(params_[0]) + "," + fmt(params_[1]);
        case Type::rectangle: return "rectangle:" + fmt(params_[0]) + "," + fmt(params_[1]);
        case Type::lshape: return "lshape:" + fmt(params_[0]) + "," + fmt(params_[1]);
        case Type::annulus: return "annulus:" + fmt(params_[0]) + "," + fmt(params_[1]);
        case Type::polygon: {
            std::string s = "polygon:";
            for (std::size_t i = 0; i < vertices_.size(); ++i) {
                if (i) s += ';';
                s += fmt(vertices_[i][0]) + "," + fmt(vertices_[i][1]);
            }
            return s;
        }
    }
    return "";
}

}  // namespace isospec
