#pragma once

#include <array>
#include <string>
#include <vector>

namespace geocon {

// Tolerance for boundary containment in rotated frames and (relative) on
// ball boundaries. Axis-aligned interval tests are exact comparisons.
inline constexpr double kGeomEps = 1e-9;

struct Point {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int dim = 2;

    double x() const { return c[0]; }
    double y() const { return c[1]; }
    double z() const { return c[2]; }
};

Point point2(double x, double y);
Point point3(double x, double y, double z);
bool operator==(const Point& a, const Point& b);

// Embedded processes; the index of a point is its process id.
struct PointSet {
    std::vector<Point> points;

    int size() const { return static_cast<int>(points.size()); }
    int dim() const { return points.empty() ? 0 : points.front().dim; }

    // Enforces: non-empty, uniform dimension, finite coordinates, pairwise
    // distinct locations. Throws std::invalid_argument on violation.
    void validate() const;
};

enum class ShapeKind { AxisSquare, OrientedSquare, Circle, AxisCube, Sphere };

std::string shape_kind_name(ShapeKind kind);
ShapeKind shape_kind_from_name(const std::string& name);
int shape_dim(ShapeKind kind);

// size is the side for squares/cubes and the diameter for circles/spheres.
// anchor is the bottom-left(-near) corner for squares/cubes and the center
// for circles/spheres. rotation (radians, [0, pi/2)) applies to
// OrientedSquare only and turns the square about its anchor corner.
struct Shape {
    ShapeKind kind = ShapeKind::AxisSquare;
    double size = 1.0;
    Point anchor;
    double rotation = 0.0;

    void validate() const;
};

Shape axis_square(Point anchor, double side);
Shape oriented_square(Point anchor, double side, double rotation);
Shape circle(Point center, double diameter);
Shape axis_cube(Point anchor, double side);
Shape sphere(Point center, double diameter);

// Axis-aligned box, 2-D or 3-D depending on the corner points.
struct Rect {
    Point lo;
    Point hi;
};

double distance(const Point& p, const Point& q);
double distance_sq(const Point& p, const Point& q);

// Max distance between any two points of the shape: sqrt(2)*side for
// squares, sqrt(3)*side for cubes, the diameter for circles and spheres.
double shape_diameter(const Shape& s);

// Closed containment: boundary points count as covered.
bool contains(const Shape& s, const Point& p);

std::vector<int> covered_indices(const Shape& s, const PointSet& ps);

// Closed intersection test. Supported pairs: axis box vs axis box, circle
// vs circle (and sphere vs sphere), circle vs axis box, and any pair
// involving an oriented square in 2-D (separating-axis test). Anything else
// throws std::invalid_argument.
bool shapes_overlap(const Shape& a, const Shape& b);

Rect enclosing_rect(const PointSet& ps);

// Corner list of a (possibly rotated) square, counter-clockwise from anchor.
std::array<Point, 4> square_corners(const Shape& s);

bool rect_contains(const Rect& r, const Point& p);
bool rects_overlap(const Rect& a, const Rect& b);

}  // namespace geocon
