#include "geocon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geocon {

Point point2(double x, double y) {
    Point p;
    p.c = {x, y, 0.0};
    p.dim = 2;
    return p;
}

Point point3(double x, double y, double z) {
    Point p;
    p.c = {x, y, z};
    p.dim = 3;
    return p;
}

bool operator==(const Point& a, const Point& b) {
    if (a.dim != b.dim) return false;
    for (int i = 0; i < a.dim; ++i)
        if (a.c[i] != b.c[i]) return false;
    return true;
}

void PointSet::validate() const {
    if (points.empty()) throw std::invalid_argument("point set is empty");
    const int d = points.front().dim;
    if (d != 2 && d != 3) throw std::invalid_argument("point dimension must be 2 or 3");
    for (const Point& p : points) {
        if (p.dim != d) throw std::invalid_argument("mixed point dimensions");
        for (int i = 0; i < d; ++i)
            if (!std::isfinite(p.c[i])) throw std::invalid_argument("non-finite coordinate");
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("duplicate point locations");
}

std::string shape_kind_name(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::AxisSquare: return "square";
        case ShapeKind::OrientedSquare: return "oriented-square";
        case ShapeKind::Circle: return "circle";
        case ShapeKind::AxisCube: return "cube";
        case ShapeKind::Sphere: return "sphere";
    }
    throw std::logic_error("bad shape kind");
}

ShapeKind shape_kind_from_name(const std::string& name) {
    if (name == "square" || name == "axis-square") return ShapeKind::AxisSquare;
    if (name == "oriented-square") return ShapeKind::OrientedSquare;
    if (name == "circle") return ShapeKind::Circle;
    if (name == "cube" || name == "axis-cube") return ShapeKind::AxisCube;
    if (name == "sphere") return ShapeKind::Sphere;
    throw std::invalid_argument("unknown shape kind: " + name);
}

int shape_dim(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::AxisSquare:
        case ShapeKind::OrientedSquare:
        case ShapeKind::Circle:
            return 2;
        case ShapeKind::AxisCube:
        case ShapeKind::Sphere:
            return 3;
    }
    throw std::logic_error("bad shape kind");
}

void Shape::validate() const {
    if (!(size > 0.0)) throw std::invalid_argument("shape size must be > 0");
    if (anchor.dim != shape_dim(kind)) throw std::invalid_argument("anchor dimension mismatch");
    if (kind == ShapeKind::OrientedSquare) {
        if (rotation < 0.0 || rotation >= std::acos(-1.0) / 2.0)
            throw std::invalid_argument("rotation must lie in [0, pi/2)");
    } else if (rotation != 0.0) {
        throw std::invalid_argument("rotation only applies to oriented squares");
    }
}

Shape axis_square(Point anchor, double side) { return Shape{ShapeKind::AxisSquare, side, anchor, 0.0}; }
Shape oriented_square(Point anchor, double side, double rotation) {
    return Shape{ShapeKind::OrientedSquare, side, anchor, rotation};
}
Shape circle(Point center, double diameter) { return Shape{ShapeKind::Circle, diameter, center, 0.0}; }
Shape axis_cube(Point anchor, double side) { return Shape{ShapeKind::AxisCube, side, anchor, 0.0}; }
Shape sphere(Point center, double diameter) { return Shape{ShapeKind::Sphere, diameter, center, 0.0}; }

double distance_sq(const Point& p, const Point& q) {
    if (p.dim != q.dim) throw std::invalid_argument("distance: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < p.dim; ++i) {
        const double d = p.c[i] - q.c[i];
        s += d * d;
    }
    return s;
}

double distance(const Point& p, const Point& q) { return std::sqrt(distance_sq(p, q)); }

double shape_diameter(const Shape& s) {
    s.validate();
    switch (s.kind) {
        case ShapeKind::AxisSquare:
        case ShapeKind::OrientedSquare:
            return std::sqrt(2.0) * s.size;
        case ShapeKind::AxisCube:
            return std::sqrt(3.0) * s.size;
        case ShapeKind::Circle:
        case ShapeKind::Sphere:
            return s.size;
    }
    throw std::logic_error("bad shape kind");
}

namespace {

bool box_contains(const Point& lo, double side, const Point& p, int dim) {
    for (int i = 0; i < dim; ++i)
        if (p.c[i] < lo.c[i] || p.c[i] > lo.c[i] + side) return false;
    return true;
}

}  // namespace

bool contains(const Shape& s, const Point& p) {
    if (p.dim != shape_dim(s.kind)) throw std::invalid_argument("contains: dimension mismatch");
    switch (s.kind) {
        case ShapeKind::AxisSquare:
            return box_contains(s.anchor, s.size, p, 2);
        case ShapeKind::AxisCube:
            return box_contains(s.anchor, s.size, p, 3);
        case ShapeKind::Circle:
        case ShapeKind::Sphere: {
            // Closed ball with a relative boundary tolerance: cover circles
            // are anchored on derived coordinates, so a point lying exactly
            // on the boundary in exact arithmetic may round a hair outside.
            const double r = s.size / 2.0;
            return distance_sq(s.anchor, p) <= r * r * (1.0 + kGeomEps);
        }
        case ShapeKind::OrientedSquare: {
            // Test in the square's own frame; the rotation makes the
            // comparison inexact, hence the epsilon.
            const double cs = std::cos(s.rotation), sn = std::sin(s.rotation);
            const double dx = p.x() - s.anchor.x(), dy = p.y() - s.anchor.y();
            const double u = cs * dx + sn * dy;
            const double v = -sn * dx + cs * dy;
            return u >= -kGeomEps && u <= s.size + kGeomEps && v >= -kGeomEps && v <= s.size + kGeomEps;
        }
    }
    throw std::logic_error("bad shape kind");
}

std::vector<int> covered_indices(const Shape& s, const PointSet& ps) {
    std::vector<int> out;
    for (int i = 0; i < ps.size(); ++i)
        if (contains(s, ps.points[i])) out.push_back(i);
    return out;
}

std::array<Point, 4> square_corners(const Shape& s) {
    const double cs = std::cos(s.rotation), sn = std::sin(s.rotation);
    const auto at = [&](double u, double v) {
        return point2(s.anchor.x() + cs * u - sn * v, s.anchor.y() + sn * u + cs * v);
    };
    return {at(0, 0), at(s.size, 0), at(s.size, s.size), at(0, s.size)};
}

namespace {

bool boxes_overlap(const Point& a, double sa, const Point& b, double sb, int dim) {
    for (int i = 0; i < dim; ++i)
        if (a.c[i] + sa < b.c[i] || b.c[i] + sb < a.c[i]) return false;
    return true;
}

bool balls_overlap(const Shape& a, const Shape& b) {
    const double r = (a.size + b.size) / 2.0;
    return distance_sq(a.anchor, b.anchor) <= r * r;
}

bool circle_box_overlap(const Shape& c, const Point& lo, double side) {
    const double r = c.size / 2.0;
    double s = 0.0;
    for (int i = 0; i < shape_dim(c.kind); ++i) {
        const double v = std::clamp(c.anchor.c[i], lo.c[i], lo.c[i] + side);
        const double d = c.anchor.c[i] - v;
        s += d * d;
    }
    return s <= r * r;
}

// Separating-axis test for two (possibly rotated) squares, closed semantics.
bool squares_overlap_sat(const Shape& a, const Shape& b) {
    const auto ca = square_corners(a);
    const auto cb = square_corners(b);
    const auto axes_of = [](const Shape& s) {
        const double cs = std::cos(s.rotation), sn = std::sin(s.rotation);
        return std::array<std::array<double, 2>, 2>{{{cs, sn}, {-sn, cs}}};
    };
    const auto project = [](const std::array<Point, 4>& pts, const std::array<double, 2>& ax, double& lo,
                            double& hi) {
        lo = hi = pts[0].x() * ax[0] + pts[0].y() * ax[1];
        for (int i = 1; i < 4; ++i) {
            const double t = pts[i].x() * ax[0] + pts[i].y() * ax[1];
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    };
    for (const auto& axes : {axes_of(a), axes_of(b)}) {
        for (const auto& ax : axes) {
            double alo, ahi, blo, bhi;
            project(ca, ax, alo, ahi);
            project(cb, ax, blo, bhi);
            if (ahi < blo || bhi < alo) return false;
        }
    }
    return true;
}

Shape as_oriented(const Shape& s) {
    Shape o = s;
    o.kind = ShapeKind::OrientedSquare;
    return o;
}

}  // namespace

bool shapes_overlap(const Shape& a, const Shape& b) {
    if (shape_dim(a.kind) != shape_dim(b.kind))
        throw std::invalid_argument("shapes_overlap: dimension mismatch");
    const ShapeKind ka = a.kind, kb = b.kind;
    if (ka == ShapeKind::AxisSquare && kb == ShapeKind::AxisSquare)
        return boxes_overlap(a.anchor, a.size, b.anchor, b.size, 2);
    if (ka == ShapeKind::AxisCube && kb == ShapeKind::AxisCube)
        return boxes_overlap(a.anchor, a.size, b.anchor, b.size, 3);
    if ((ka == ShapeKind::Circle && kb == ShapeKind::Circle) ||
        (ka == ShapeKind::Sphere && kb == ShapeKind::Sphere))
        return balls_overlap(a, b);
    if (ka == ShapeKind::Circle && kb == ShapeKind::AxisSquare)
        return circle_box_overlap(a, b.anchor, b.size);
    if (ka == ShapeKind::AxisSquare && kb == ShapeKind::Circle)
        return circle_box_overlap(b, a.anchor, a.size);
    if (ka == ShapeKind::Sphere && kb == ShapeKind::AxisCube)
        return circle_box_overlap(a, b.anchor, b.size);
    if (ka == ShapeKind::AxisCube && kb == ShapeKind::Sphere)
        return circle_box_overlap(b, a.anchor, a.size);
    if ((ka == ShapeKind::OrientedSquare || ka == ShapeKind::AxisSquare) &&
        (kb == ShapeKind::OrientedSquare || kb == ShapeKind::AxisSquare))
        return squares_overlap_sat(as_oriented(a), as_oriented(b));
    throw std::invalid_argument("shapes_overlap: unsupported kind pair " + shape_kind_name(ka) + "/" +
                                shape_kind_name(kb));
}

Rect enclosing_rect(const PointSet& ps) {
    if (ps.points.empty()) throw std::invalid_argument("enclosing_rect: empty point set");
    Rect r{ps.points.front(), ps.points.front()};
    for (const Point& p : ps.points) {
        if (p.dim != r.lo.dim) throw std::invalid_argument("enclosing_rect: mixed dimensions");
        for (int i = 0; i < p.dim; ++i) {
            r.lo.c[i] = std::min(r.lo.c[i], p.c[i]);
            r.hi.c[i] = std::max(r.hi.c[i], p.c[i]);
        }
    }
    return r;
}

bool rect_contains(const Rect& r, const Point& p) {
    for (int i = 0; i < p.dim; ++i)
        if (p.c[i] < r.lo.c[i] || p.c[i] > r.hi.c[i]) return false;
    return true;
}

bool rects_overlap(const Rect& a, const Rect& b) {
    for (int i = 0; i < a.lo.dim; ++i)
        if (a.hi.c[i] < b.lo.c[i] || b.hi.c[i] < a.lo.c[i]) return false;
    return true;
}

}  // namespace geocon
