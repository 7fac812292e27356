#include "geocon/covering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace geocon {

namespace {

// Splits `members` (already restricted to one strip along axis `axis`) into
// windows [a, a+ell] anchored at the lowest uncovered coordinate.
std::vector<std::pair<double, std::vector<int>>> split_windows(const PointSet& ps,
                                                               const std::vector<int>& members, int axis,
                                                               double ell) {
    std::vector<int> order = members;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ps.points[a].c[axis] != ps.points[b].c[axis]) return ps.points[a].c[axis] < ps.points[b].c[axis];
        return a < b;
    });
    std::vector<std::pair<double, std::vector<int>>> windows;
    std::size_t i = 0;
    while (i < order.size()) {
        const double a = ps.points[order[i]].c[axis];
        windows.push_back({a, {}});
        while (i < order.size() && ps.points[order[i]].c[axis] <= a + ell) {
            windows.back().second.push_back(order[i]);
            ++i;
        }
    }
    return windows;
}

}  // namespace

CoverSet gsquare(const PointSet& ps, double ell) {
    ps.validate();
    if (ps.dim() != 2) throw std::invalid_argument("gsquare: 2-D points required");
    if (!(ell > 0.0)) throw std::invalid_argument("gsquare: ell must be > 0");

    const Rect r = enclosing_rect(ps);
    CoverSet cs;
    cs.kind = ShapeKind::AxisSquare;
    cs.size = ell;

    std::vector<int> all(ps.points.size());
    std::iota(all.begin(), all.end(), 0);
    for (const auto& [slab_y, slab_members] : split_windows(ps, all, 1, ell)) {
        cs.slabs.push_back(Rect{point2(r.lo.x(), slab_y), point2(r.hi.x(), slab_y + ell)});
        for (const auto& [sq_x, members] : split_windows(ps, slab_members, 0, ell)) {
            (void)members;
            cs.areas.push_back(axis_square(point2(sq_x, slab_y), ell));
        }
    }
    return cs;
}

CoverSet gcircle(const PointSet& ps, double ell) {
    const CoverSet squares = gsquare(ps, ell);
    CoverSet cs;
    cs.kind = ShapeKind::Circle;
    cs.size = ell;
    cs.slabs = squares.slabs;
    for (const Shape& sq : squares.areas) {
        const double h = ell / 2.0;
        const Point a = sq.anchor;
        const Point centers[4] = {
            point2(a.x() + h, a.y()),        // bottom
            point2(a.x(), a.y() + h),        // left
            point2(a.x() + ell, a.y() + h),  // right
            point2(a.x() + h, a.y() + ell),  // top
        };
        for (const Point& c : centers) {
            const Shape circ = circle(c, ell);
            if (!covered_indices(circ, ps).empty()) cs.areas.push_back(circ);
        }
    }
    return cs;
}

CoverSet gcube(const PointSet& ps, double ell) {
    ps.validate();
    if (ps.dim() != 3) throw std::invalid_argument("gcube: 3-D points required");
    if (!(ell > 0.0)) throw std::invalid_argument("gcube: ell must be > 0");

    const Rect r = enclosing_rect(ps);
    CoverSet cs;
    cs.kind = ShapeKind::AxisCube;
    cs.size = ell;

    std::vector<int> all(ps.points.size());
    std::iota(all.begin(), all.end(), 0);
    for (const auto& [layer_z, layer_members] : split_windows(ps, all, 2, ell)) {
        for (const auto& [row_y, row_members] : split_windows(ps, layer_members, 1, ell)) {
            cs.slabs.push_back(Rect{point3(r.lo.x(), row_y, layer_z),
                                    point3(r.hi.x(), row_y + ell, layer_z + ell)});
            for (const auto& [cube_x, members] : split_windows(ps, row_members, 0, ell)) {
                (void)members;
                cs.areas.push_back(axis_cube(point3(cube_x, row_y, layer_z), ell));
            }
        }
    }
    return cs;
}

CoverSet gsphere(const PointSet& ps, double ell) {
    const CoverSet cubes = gcube(ps, ell);
    CoverSet cs;
    cs.kind = ShapeKind::Sphere;
    cs.size = ell;
    cs.slabs = cubes.slabs;
    const double q1 = ell / 4.0, q3 = 3.0 * ell / 4.0;
    for (const Shape& cube : cubes.areas) {
        const Point a = cube.anchor;
        for (double oz : {q1, q3})
            for (double oy : {q1, q3})
                for (double ox : {q1, q3}) {
                    const Shape sp = sphere(point3(a.x() + ox, a.y() + oy, a.z() + oz), ell);
                    if (!covered_indices(sp, ps).empty()) cs.areas.push_back(sp);
                }
    }
    return cs;
}

CoverSet greedy_cover(const PointSet& ps, ShapeKind kind, double ell) {
    switch (kind) {
        case ShapeKind::AxisSquare: return gsquare(ps, ell);
        case ShapeKind::Circle: return gcircle(ps, ell);
        case ShapeKind::AxisCube: return gcube(ps, ell);
        case ShapeKind::Sphere: return gsphere(ps, ell);
        default: throw std::invalid_argument("greedy_cover: cover kind must be axis-aligned or round");
    }
}

namespace {

using Mask = std::uint32_t;

Mask covered_mask(const Shape& s, const PointSet& ps) {
    Mask m = 0;
    for (int i = 0; i < ps.size(); ++i)
        if (contains(s, ps.points[i])) m |= Mask{1} << i;
    return m;
}

std::vector<Mask> box_candidate_masks(const PointSet& ps, double ell, int dim) {
    // Any axis-aligned cover box can be translated until, per axis, the low
    // face touches the smallest covered coordinate; so anchors drawn from
    // point coordinates exhaust all distinct covers.
    std::vector<std::vector<double>> coords(dim);
    for (const Point& p : ps.points)
        for (int a = 0; a < dim; ++a) coords[a].push_back(p.c[a]);
    for (auto& v : coords) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::vector<Mask> masks;
    const auto add = [&](const Point& anchor) {
        const Shape s = dim == 2 ? axis_square(anchor, ell) : axis_cube(anchor, ell);
        const Mask m = covered_mask(s, ps);
        if (m) masks.push_back(m);
    };
    if (dim == 2) {
        for (double x : coords[0])
            for (double y : coords[1]) add(point2(x, y));
    } else {
        for (double x : coords[0])
            for (double y : coords[1])
                for (double z : coords[2]) add(point3(x, y, z));
    }
    return masks;
}

std::vector<Mask> circle_candidate_masks(const PointSet& ps, double ell) {
    // A cover disk can be slid until one covered point lies on its boundary,
    // then rotated about it until a second touches, so disks centered on a
    // point or pinned by two boundary points suffice; three-point
    // circumcenters are included as well.
    const double r = ell / 2.0;
    std::vector<Point> centers;
    for (const Point& p : ps.points) centers.push_back(p);
    const int n = ps.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Point& a = ps.points[i];
            const Point& b = ps.points[j];
            const double d2 = distance_sq(a, b);
            if (d2 > ell * ell) continue;
            const double h = std::sqrt(std::max(0.0, r * r - d2 / 4.0));
            const double mx = (a.x() + b.x()) / 2.0, my = (a.y() + b.y()) / 2.0;
            const double len = std::sqrt(d2);
            if (len == 0.0) continue;
            const double nx = -(b.y() - a.y()) / len, ny = (b.x() - a.x()) / len;
            centers.push_back(point2(mx + h * nx, my + h * ny));
            centers.push_back(point2(mx - h * nx, my - h * ny));
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const Point& a = ps.points[i];
                const Point& b = ps.points[j];
                const Point& c = ps.points[k];
                const double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) +
                                        c.x() * (a.y() - b.y()));
                if (d == 0.0) continue;  // collinear
                const double a2 = a.x() * a.x() + a.y() * a.y();
                const double b2 = b.x() * b.x() + b.y() * b.y();
                const double c2 = c.x() * c.x() + c.y() * c.y();
                const double ux = (a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / d;
                const double uy = (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / d;
                centers.push_back(point2(ux, uy));
            }
    std::vector<Mask> masks;
    for (const Point& c : centers) {
        const Mask m = covered_mask(circle(c, ell), ps);
        if (m) masks.push_back(m);
    }
    return masks;
}

int min_set_cover(const std::vector<Mask>& candidates, int n) {
    const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
    // Per point: candidate masks covering it (deduplicated).
    std::vector<Mask> uniq = candidates;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<std::vector<Mask>> by_bit(n);
    for (Mask m : uniq)
        for (int b = 0; b < n; ++b)
            if (m & (Mask{1} << b)) by_bit[b].push_back(m);
    std::vector<std::int8_t> memo(std::size_t{1} << n, -1);
    const auto solve = [&](auto&& self, Mask uncovered) -> int {
        if (!uncovered) return 0;
        std::int8_t& slot = memo[uncovered];
        if (slot >= 0) return slot;
        int bit = 0;
        while (!(uncovered & (Mask{1} << bit))) ++bit;
        int best = n;  // one singleton square per point always suffices
        for (Mask m : by_bit[bit]) best = std::min(best, 1 + self(self, uncovered & ~m));
        slot = static_cast<std::int8_t>(best);
        return best;
    };
    return solve(solve, full);
}

}  // namespace

OracleResult optimal_cover_oracle(const PointSet& ps, ShapeKind kind, double ell, int cap) {
    ps.validate();
    if (ps.size() > 12) throw std::invalid_argument("optimal_cover_oracle: N <= 12 required");
    if (!(ell > 0.0)) throw std::invalid_argument("optimal_cover_oracle: ell must be > 0");
    std::vector<Mask> candidates;
    switch (kind) {
        case ShapeKind::AxisSquare:
            if (ps.dim() != 2) throw std::invalid_argument("oracle: square cover needs 2-D points");
            candidates = box_candidate_masks(ps, ell, 2);
            break;
        case ShapeKind::Circle:
            if (ps.dim() != 2) throw std::invalid_argument("oracle: circle cover needs 2-D points");
            candidates = circle_candidate_masks(ps, ell);
            break;
        case ShapeKind::AxisCube:
            if (ps.dim() != 3) throw std::invalid_argument("oracle: cube cover needs 3-D points");
            candidates = box_candidate_masks(ps, ell, 3);
            break;
        default:
            throw std::invalid_argument("optimal_cover_oracle: unsupported shape kind");
    }
    const int k = min_set_cover(candidates, ps.size());
    if (k > cap) return OracleResult{k, true};
    return OracleResult{k, false};
}

int overlap_count(const CoverSet& cs, const Shape& f) {
    int n = 0;
    for (const Shape& a : cs.areas)
        if (shapes_overlap(a, f)) ++n;
    return n;
}

int overlap_bound(OverlapKey key) {
    switch (key) {
        case OverlapKey::SquareAnyOverSquares: return 7;
        case OverlapKey::SquareAxisOverSquares: return 4;
        case OverlapKey::SmallSquareOrCircleOverSquares: return 4;
        case OverlapKey::CircleOverCircles: return 28;
        case OverlapKey::SmallCircleOverCircles: return 16;
        case OverlapKey::BigCircleOverSquares: return 8;
        case OverlapKey::BigCircleOverCircles: return 32;
        case OverlapKey::CubeAnyOverCubes: return 27;
        case OverlapKey::CubeAxisOverCubes: return 8;
        case OverlapKey::SphereOverSpheres: return 108;
        case OverlapKey::SphereOverSpheresOctant: return 216;
        case OverlapKey::SphereOverSpheresImplemented: return 64;
    }
    throw std::invalid_argument("overlap_bound: unknown key");
}

std::string overlap_key_name(OverlapKey key) {
    switch (key) {
        case OverlapKey::SquareAnyOverSquares: return "square-any-squares";
        case OverlapKey::SquareAxisOverSquares: return "square-axis-squares";
        case OverlapKey::SmallSquareOrCircleOverSquares: return "small-square-or-circle-squares";
        case OverlapKey::CircleOverCircles: return "circle-circles";
        case OverlapKey::SmallCircleOverCircles: return "small-circle-circles";
        case OverlapKey::BigCircleOverSquares: return "big-circle-squares";
        case OverlapKey::BigCircleOverCircles: return "big-circle-circles";
        case OverlapKey::CubeAnyOverCubes: return "cube-any-cubes";
        case OverlapKey::CubeAxisOverCubes: return "cube-axis-cubes";
        case OverlapKey::SphereOverSpheres: return "sphere-spheres";
        case OverlapKey::SphereOverSpheresOctant: return "sphere-spheres-octant";
        case OverlapKey::SphereOverSpheresImplemented: return "sphere-spheres-implemented";
    }
    throw std::invalid_argument("overlap_key_name: unknown key");
}

OverlapKey overlap_key_from_name(const std::string& name) {
    for (OverlapKey k :
         {OverlapKey::SquareAnyOverSquares, OverlapKey::SquareAxisOverSquares,
          OverlapKey::SmallSquareOrCircleOverSquares, OverlapKey::CircleOverCircles,
          OverlapKey::SmallCircleOverCircles, OverlapKey::BigCircleOverSquares,
          OverlapKey::BigCircleOverCircles, OverlapKey::CubeAnyOverCubes, OverlapKey::CubeAxisOverCubes,
          OverlapKey::SphereOverSpheres, OverlapKey::SphereOverSpheresOctant,
          OverlapKey::SphereOverSpheresImplemented})
        if (overlap_key_name(k) == name) return k;
    throw std::invalid_argument("unknown overlap key: " + name);
}

std::vector<OverlapKey> primary_overlap_keys() {
    return {OverlapKey::SquareAnyOverSquares,    OverlapKey::SquareAxisOverSquares,
            OverlapKey::SmallSquareOrCircleOverSquares, OverlapKey::CircleOverCircles,
            OverlapKey::SmallCircleOverCircles,  OverlapKey::BigCircleOverSquares,
            OverlapKey::BigCircleOverCircles,    OverlapKey::CubeAnyOverCubes,
            OverlapKey::CubeAxisOverCubes,       OverlapKey::SphereOverSpheres};
}

CoverageNumber coverage_number(const PointSet& ps, ShapeKind kind, double ell) {
    ps.validate();
    const bool oracle_kind =
        kind == ShapeKind::AxisSquare || kind == ShapeKind::Circle || kind == ShapeKind::AxisCube;
    if (oracle_kind && ps.size() <= 12) {
        const OracleResult r = optimal_cover_oracle(ps, kind, ell, ps.size());
        return CoverageNumber{r.k, true};
    }
    const ShapeKind greedy_kind = kind == ShapeKind::OrientedSquare ? ShapeKind::AxisSquare : kind;
    return CoverageNumber{static_cast<int>(greedy_cover(ps, greedy_kind, ell).areas.size()), false};
}

}  // namespace geocon
