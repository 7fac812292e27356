#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geocon/geometry.hpp"

namespace geocon {

// A deterministic cover of a point set by identical axis-aligned areas.
// slabs keeps the strip/cuboid decomposition the construction used; tests
// inspect it for disjointness and per-slab optimality.
struct CoverSet {
    ShapeKind kind = ShapeKind::AxisSquare;
    double size = 1.0;
    std::vector<Shape> areas;
    std::vector<Rect> slabs;
};

// Greedy square cover: horizontal slabs of height `ell` anchored at the
// lowest uncovered point, squares within a slab placed left to right with a
// point on each square's left side. Squares are pairwise disjoint and the
// result is a 2-approximation of the optimal square cover.
CoverSet gsquare(const PointSet& ps, double ell);

// Square cover refined into circles of diameter `ell` centered on the four
// side midpoints of each square; circles that cover no point are dropped.
CoverSet gcircle(const PointSet& ps, double ell);

// 3-D analogue of gsquare: depth-`ell` layers, height-`ell` rows, cubes left
// to right. Cubes are pairwise disjoint; 4-approximation.
CoverSet gcube(const PointSet& ps, double ell);

// Cube cover refined into eight spheres of diameter `ell`, one per octant
// sub-cube (octant diameter sqrt(3)/2*ell < ell, so coverage is certain);
// empty spheres are dropped. A four-sphere refinement would not cover the
// cube: a ell/2 x ell/2 x ell block already has diameter sqrt(1.5)*ell.
CoverSet gsphere(const PointSet& ps, double ell);

// Dispatch by cover kind (square, circle, cube, sphere).
CoverSet greedy_cover(const PointSet& ps, ShapeKind kind, double ell);

struct OracleResult {
    int k = 0;
    bool cap_exceeded = false;
};

// Exact minimum cover size by exhaustive search over canonical placements:
// axis boxes anchored on point coordinates per axis (any cover translates
// onto such anchors without uncovering points), circles pinned by one point
// (centered on it), two boundary points, or three boundary points. Requires
// N <= 12; kind must be AxisSquare, Circle, or AxisCube.
OracleResult optimal_cover_oracle(const PointSet& ps, ShapeKind kind, double ell, int cap = 64);

// Number of cover areas the shape f overlaps (n(F) for one placement).
int overlap_count(const CoverSet& cs, const Shape& f);

// Fault-area/cover-shape combinations with a proven overlap ceiling.
enum class OverlapKey {
    SquareAnyOverSquares,        // F square side l, any orientation, square covers: 7
    SquareAxisOverSquares,       // F square side l, axis-aligned: 4
    SmallSquareOrCircleOverSquares,  // F square or circle of size l/sqrt(2): 4
    CircleOverCircles,           // F circle diameter l, circle covers: 28
    SmallCircleOverCircles,      // F circle diameter l/sqrt(2), circle covers: 16
    BigCircleOverSquares,        // F circle diameter sqrt(2)l, square covers: 8
    BigCircleOverCircles,        // F circle diameter sqrt(2)l, circle covers: 32
    CubeAnyOverCubes,            // F cube side l, any orientation: 27
    CubeAxisOverCubes,           // F cube side l, axis-aligned: 8
    SphereOverSpheres,           // F sphere diameter l, sphere covers: 108 (4x27 figure)
    SphereOverSpheresOctant,     // same counting under the 8-sphere refinement: 216
    // Proven ceiling for the implemented cover: the fault sphere's bounding
    // cube meets at most 2 layers x 2 rows x 2 cubes, 8 spheres each.
    SphereOverSpheresImplemented,
};

int overlap_bound(OverlapKey key);
std::string overlap_key_name(OverlapKey key);
OverlapKey overlap_key_from_name(const std::string& name);
std::vector<OverlapKey> primary_overlap_keys();  // the ten table rows

struct CoverageNumber {
    int value = 0;
    bool exact = false;  // false: greedy upper bound only
};

// Minimum number of `kind`-shaped areas of size `ell` needed to cover all
// points: exact (oracle) when N <= 12 and the kind is oracle-supported,
// otherwise the greedy cover size as a flagged upper bound. A value <= 3M
// certifies the instance unsolvable for M fault areas.
CoverageNumber coverage_number(const PointSet& ps, ShapeKind kind, double ell);

}  // namespace geocon
