#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "geocon/geometry.hpp"
#include "geocon/rng.hpp"

using namespace geocon;

namespace {

// Boundary samples including the extremal features (corners, antipodes), so
// the sampled max pairwise distance reaches the true diameter.
std::vector<Point> boundary_samples(const Shape& s, Rng& rng, int n) {
    std::vector<Point> out;
    const double pi = std::acos(-1.0);
    switch (s.kind) {
        case ShapeKind::AxisSquare:
        case ShapeKind::OrientedSquare: {
            const auto corners = square_corners(s);
            out.assign(corners.begin(), corners.end());
            for (int i = 0; i < n; ++i) {
                const double t = rng.uniform(0.0, 4.0);
                const int edge = static_cast<int>(t);
                const double frac = t - edge;
                const Point& a = corners[edge];
                const Point& b = corners[(edge + 1) % 4];
                out.push_back(point2(a.x() + frac * (b.x() - a.x()), a.y() + frac * (b.y() - a.y())));
            }
            break;
        }
        case ShapeKind::Circle: {
            const double r = s.size / 2.0;
            for (int i = 0; i < n; ++i) {
                const double th = rng.uniform(0.0, 2.0 * pi);
                out.push_back(point2(s.anchor.x() + r * std::cos(th), s.anchor.y() + r * std::sin(th)));
            }
            out.push_back(point2(s.anchor.x() - r, s.anchor.y()));
            out.push_back(point2(s.anchor.x() + r, s.anchor.y()));
            break;
        }
        case ShapeKind::Sphere: {
            const double r = s.size / 2.0;
            for (int i = 0; i < n; ++i) {
                const double z = rng.uniform(-1.0, 1.0);
                const double th = rng.uniform(0.0, 2.0 * pi);
                const double rho = std::sqrt(1.0 - z * z);
                out.push_back(point3(s.anchor.x() + r * rho * std::cos(th),
                                     s.anchor.y() + r * rho * std::sin(th), s.anchor.z() + r * z));
            }
            out.push_back(point3(s.anchor.x() - r, s.anchor.y(), s.anchor.z()));
            out.push_back(point3(s.anchor.x() + r, s.anchor.y(), s.anchor.z()));
            break;
        }
        case ShapeKind::AxisCube: {
            for (double x : {0.0, s.size})
                for (double y : {0.0, s.size})
                    for (double z : {0.0, s.size})
                        out.push_back(point3(s.anchor.x() + x, s.anchor.y() + y, s.anchor.z() + z));
            for (int i = 0; i < n; ++i) {
                Point p = point3(s.anchor.x() + rng.uniform(0.0, s.size),
                                 s.anchor.y() + rng.uniform(0.0, s.size),
                                 s.anchor.z() + rng.uniform(0.0, s.size));
                const int axis = rng.below(3);
                p.c[axis] = s.anchor.c[axis] + (rng.bit() ? s.size : 0.0);  // push onto a face
                out.push_back(p);
            }
            break;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("distance") {
    CHECK(distance(point2(0, 0), point2(3, 4)) == doctest::Approx(5.0));
    CHECK(distance(point2(1, 2), point2(1, 2)) == 0.0);
    CHECK(distance(point3(0, 0, 0), point3(1, 1, 1)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(distance(point2(1, 2), point2(3, 4)) == distance(point2(3, 4), point2(1, 2)));
    CHECK_THROWS_AS(distance(point2(0, 0), point3(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("point set validation") {
    PointSet ok;
    ok.points = {point2(0, 0), point2(1, 1)};
    CHECK_NOTHROW(ok.validate());
    PointSet dup;
    dup.points = {point2(0, 0), point2(0, 0)};
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
    PointSet mixed;
    mixed.points = {point2(0, 0), point3(1, 1, 1)};
    CHECK_THROWS_AS(mixed.validate(), std::invalid_argument);
    PointSet bad;
    bad.points = {point2(std::nan(""), 0)};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    PointSet empty;
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}

TEST_CASE("shape diameters") {
    CHECK(shape_diameter(axis_square(point2(0, 0), 2)) == doctest::Approx(2 * std::sqrt(2.0)));
    CHECK(shape_diameter(circle(point2(0, 0), 2)) == 2.0);
    CHECK(shape_diameter(axis_cube(point3(0, 0, 0), 1)) == doctest::Approx(std::sqrt(3.0)));
    CHECK(shape_diameter(sphere(point3(1, 2, 3), 0.5)) == 0.5);

    // sampled boundary points never exceed the diameter and reach it
    Rng rng(99);
    const double pi = std::acos(-1.0);
    const Shape shapes[] = {
        axis_square(point2(1, -2), 1.5),
        oriented_square(point2(0.3, 0.4), 2.0, pi / 5),
        circle(point2(-1, 1), 3.0),
        axis_cube(point3(0, 1, 2), 1.2),
        sphere(point3(0, 0, 0), 2.5),
    };
    for (const Shape& s : shapes) {
        const auto pts = boundary_samples(s, rng, 300);
        double max_d = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                max_d = std::max(max_d, distance(pts[i], pts[j]));
        CHECK(max_d <= shape_diameter(s) + 1e-9);
        CHECK(max_d >= shape_diameter(s) - 1e-9);
    }
}

TEST_CASE("containment is closed") {
    const Shape sq = axis_square(point2(0, 0), 2);
    CHECK(contains(sq, point2(2, 2)));
    CHECK_FALSE(contains(sq, point2(2 + 1e-6, 1)));
    CHECK(contains(circle(point2(0, 0), 2), point2(1, 0)));
    CHECK(contains(sphere(point3(0, 0, 0), 2), point3(0, 0, 1)));
    CHECK(contains(axis_cube(point3(0, 0, 0), 1), point3(1, 1, 1)));

    const double pi = std::acos(-1.0);
    const Shape rot = oriented_square(point2(0, 0), 1.0, pi / 4);
    // far corner of the rotated square
    CHECK(contains(rot, point2(0, std::sqrt(2.0))));
    CHECK_FALSE(contains(rot, point2(0.9, 0.0)));

    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const Shape s = oriented_square(point2(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                                        0.5 + rng.unit(), rng.uniform(0.0, pi / 2 * 0.999));
        for (const Point& p : boundary_samples(s, rng, 40)) CHECK(contains(s, p));
    }
}

TEST_CASE("covered_indices") {
    PointSet ps;
    ps.points = {point2(0.5, 0.5), point2(2, 2)};
    CHECK(covered_indices(axis_square(point2(0, 0), 1), ps) == std::vector<int>{0});
    PointSet far;
    far.points = {point2(50, 50)};
    CHECK(covered_indices(axis_square(point2(0, 0), 1), far).empty());
    PointSet ring;
    ring.points = {point2(1, 0), point2(0, 1), point2(1, 1)};
    CHECK(covered_indices(circle(point2(0, 0), 2), ring) == std::vector<int>{0, 1});
}

TEST_CASE("shapes_overlap") {
    CHECK(shapes_overlap(axis_square(point2(0, 0), 1), axis_square(point2(1, 0), 1)));  // shared edge
    CHECK_FALSE(shapes_overlap(circle(point2(0, 0), 2), circle(point2(3, 0), 2)));
    CHECK(shapes_overlap(circle(point2(0, 0), 2), circle(point2(2, 0), 2)));  // touching
    const double pi = std::acos(-1.0);
    CHECK(shapes_overlap(oriented_square(point2(0.9, 0.9), 1, pi / 4), axis_square(point2(0, 0), 1)));
    CHECK(shapes_overlap(circle(point2(1.5, 0.5), 1), axis_square(point2(0, 0), 1)));
    CHECK_FALSE(shapes_overlap(circle(point2(2.6, 0.5), 1), axis_square(point2(0, 0), 1)));
    CHECK(shapes_overlap(sphere(point3(1.4, 0.5, 0.5), 1), axis_cube(point3(0, 0, 0), 1)));
    CHECK_THROWS_AS(shapes_overlap(circle(point2(0, 0), 1), oriented_square(point2(0, 0), 1, 0.3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(shapes_overlap(circle(point2(0, 0), 1), sphere(point3(0, 0, 0), 1)),
                    std::invalid_argument);

    // symmetry + reflexivity on random pairs of supported kinds
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        const auto rand_shape = [&](int pick) {
            const double x = rng.uniform(-3, 3), y = rng.uniform(-3, 3);
            const double size = 0.3 + rng.unit();
            switch (pick) {
                case 0: return axis_square(point2(x, y), size);
                case 1: return circle(point2(x, y), size);
                default: return oriented_square(point2(x, y), size, rng.uniform(0.0, pi / 2 * 0.999));
            }
        };
        const Shape a = rand_shape(rng.below(3));
        const Shape b = rand_shape(rng.below(3));
        if ((a.kind == ShapeKind::Circle) != (b.kind == ShapeKind::Circle) &&
            (a.kind == ShapeKind::OrientedSquare || b.kind == ShapeKind::OrientedSquare))
            continue;  // circle vs oriented square is unsupported
        CHECK(shapes_overlap(a, b) == shapes_overlap(b, a));
        CHECK(shapes_overlap(a, a));
    }
}

TEST_CASE("enclosing_rect") {
    PointSet ps;
    ps.points = {point2(1, 1), point2(3, 5), point2(2, 2)};
    const Rect r = enclosing_rect(ps);
    CHECK(r.lo == point2(1, 1));
    CHECK(r.hi == point2(3, 5));

    PointSet one;
    one.points = {point2(4, -2)};
    const Rect d = enclosing_rect(one);
    CHECK(d.lo == d.hi);

    PointSet cube_pts;
    cube_pts.points = {point3(0, 0, 0), point3(2, 1, 3)};
    const Rect r3 = enclosing_rect(cube_pts);
    CHECK(r3.lo == point3(0, 0, 0));
    CHECK(r3.hi == point3(2, 1, 3));

    PointSet empty;
    CHECK_THROWS_AS(enclosing_rect(empty), std::invalid_argument);

    // shrinking any side by epsilon drops a point
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        PointSet rand_ps;
        const int n = 1 + rng.below(10);
        for (int i = 0; i < n; ++i) rand_ps.points.push_back(point2(rng.uniform(0, 10), rng.uniform(0, 10)));
        const Rect rr = enclosing_rect(rand_ps);
        for (const Point& p : rand_ps.points) CHECK(rect_contains(rr, p));
        for (int axis = 0; axis < 2; ++axis) {
            if (rr.hi.c[axis] == rr.lo.c[axis]) continue;
            Rect shrunk_hi = rr;
            shrunk_hi.hi.c[axis] -= 1e-9;
            Rect shrunk_lo = rr;
            shrunk_lo.lo.c[axis] += 1e-9;
            bool lost_hi = false, lost_lo = false;
            for (const Point& p : rand_ps.points) {
                lost_hi = lost_hi || !rect_contains(shrunk_hi, p);
                lost_lo = lost_lo || !rect_contains(shrunk_lo, p);
            }
            CHECK(lost_hi);
            CHECK(lost_lo);
        }
    }
}

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(axis_square(point2(0, 0), 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(oriented_square(point2(0, 0), 1.0, 2.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(axis_square(point3(0, 0, 0), 1.0).validate(), std::invalid_argument);
    CHECK_NOTHROW(oriented_square(point2(0, 0), 1.0, 0.0).validate());
}
