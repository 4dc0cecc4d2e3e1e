#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace isospec {

/// Analytic planar shape with an exact area.
///
/// Coordinates: disk, ellipse and annulus are centred at the origin; the
/// rectangle is [0,a]×[0,b]; the L-shape is [0,s]² with the square (w,s]²
/// removed; polygons use their vertex coordinates as given.
class Shape {
public:
    enum class Type { disk, ellipse, rectangle, lshape, annulus, polygon };

    static Shape disk(double radius);
    static Shape ellipse(double semi_x, double semi_y);
    static Shape rectangle(double a, double b);
    static Shape lshape(double side, double arm);
    static Shape annulus(double r_in, double r_out);
    static Shape polygon(std::vector<std::array<double, 2>> vertices);

    /// Parses "disk:1", "ellipse:2,1", "rectangle:1,1", "lshape:2,1",
    /// "annulus:0.5,1", "polygon:0,0;1,0;0,1". Throws std::invalid_argument.
    static Shape parse(std::string_view text);

    Type type() const { return type_; }
    const std::vector<double>& params() const { return params_; }
    const std::vector<std::array<double, 2>>& vertices() const { return vertices_; }

    /// Negative inside, positive outside; |level| never exceeds the distance
    /// to the boundary.
    double level(double x, double y) const;
    bool contains(double x, double y) const { return level(x, y) < 0.0; }

    double area() const;
    double perimeter() const;
    std::array<double, 4> bounding_box() const;  // xmin, xmax, ymin, ymax

    /// Canonical text form accepted by parse().
    std::string describe() const;

private:
    Shape(Type t, std::vector<double> p) : type_(t), params_(std::move(p)) {}

    Type type_;
    std::vector<double> params_;
    std::vector<std::array<double, 2>> vertices_;
};

}  // namespace isospec
