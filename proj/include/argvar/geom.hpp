#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "argvar/holo.hpp"
#include "argvar/jet.hpp"

namespace argvar::geom {

// ---------------------------------------------------------------------------
// Curves

struct LineSeg { Cx p, q; };

/// Arc of circle |z - center| = radius from angle a0 to a1 (a1 < a0 runs
/// clockwise). Angles in radians.
struct ArcSeg { Cx center; double radius; double a0, a1; };

/// t in [0,1] -> path(t), path given as a holomorphic expression evaluated
/// on the real segment; jets supply velocity and acceleration.
struct AnalyticSeg { holo::ExprPtr path; };

using Segment = std::variant<LineSeg, ArcSeg, AnalyticSeg>;

struct Curve {
    std::vector<Segment> segments;
};

/// Point with d/dt and d2/dt2 of the segment parameterization at t in [0,1].
Jet2 segment_point(const Segment& s, double t);

Cx segment_start(const Segment& s);
Cx segment_end(const Segment& s);
Cx curve_start(const Curve& c);
Cx curve_end(const Curve& c);
bool curve_closed(const Curve& c, double tol = 1e-9);

/// Checks endpoint continuity and nonvanishing sampled velocity.
void validate_curve(const Curve& c, double tol = 1e-9);

Curve reverse_curve(const Curve& c);

/// Points evaluated at n+1 uniformly spaced parameters per segment.
std::vector<Cx> sample_curve(const Curve& c, int per_segment);

double curve_length(const Curve& c);

/// Integral of |curvature| over smooth parts plus exterior turning angles at
/// vertices (incl. the closing vertex of a closed curve). Throws CuspError on
/// a tangent reversal.
double total_curvature(const Curve& c);

// ---------------------------------------------------------------------------
// Regions

struct Disk { Cx center; double radius; };
struct Rect { Cx lo, hi; };  // axis-aligned, lo.real<hi.real, lo.imag<hi.imag
struct Polygon { std::vector<Cx> vertices; };  // simple, any orientation

/// Sector of annulus r_in <= |z-center| <= r_out, angle in [a0, a1],
/// a1 - a0 <= 2*pi (equality = full annulus).
struct AnnulusSector { Cx center; double r_in, r_out; double a0, a1; };

struct Region {
    std::variant<Disk, Rect, Polygon, AnnulusSector> shape;
    bool open = false;
};

void validate_region(const Region& r);

/// Closed containment test; tol > 0 accepts points within tol of the region.
bool region_contains(const Region& r, Cx p, double tol = 0.0);

/// Euclidean distance from p to the boundary of r (p may be inside or out).
double region_boundary_distance(const Region& r, Cx p);

/// Boundary as closed loops: outer loop counterclockwise, inner hole loops
/// clockwise (so summed windings of f over all loops count interior zeros).
std::vector<Curve> boundary_loops(const Region& r);

/// Positively oriented boundary as a Curve.
Curve region_boundary_curve(const Region& r);

/// ~n points along the boundary, spread by segment length.
std::vector<Cx> region_boundary_samples(const Region& r, int n);

/// Axis-aligned bounding box (lo, hi).
std::pair<Cx, Cx> region_bbox(const Region& r);

/// Largest |p - q| over boundary samples; exact for disk/rect.
double euclidean_diameter(const Region& r);

// ---------------------------------------------------------------------------
// Grid shortest-path diameter

struct GridParams {
    double h = 0.05;
    int levels = 2;
};

struct DiameterResult {
    double value = 0.0;
    double error_estimate = 0.0;
    operator double() const { return value; }
};

/// Intrinsic (geodesic) diameter of the compact region K, via shortest paths
/// on an 8-connected grid graph with line-of-sight path shortening, reported
/// from two refinement levels. Throws DisconnectedError if the finest grid
/// graph restricted to K is disconnected.
DiameterResult intrinsic_diameter(const Region& K, const GridParams& grid);

// ---------------------------------------------------------------------------
// Gaps

/// min over p in K of distance(p, boundary of U). Closed form for disk pairs,
/// boundary sampling with doubling otherwise. Throws ContainmentError if K is
/// not contained in U.
double gap(const Region& K, const Region& U);

/// min over curve points of distance to the boundary of U.
double gap_curve(const Curve& gamma, const Region& U);

// ---------------------------------------------------------------------------
// Poincare metric (curvature -1; unit-disk density 2/(1-|z|^2))

double poincare_distance_disk(Cx a, Cx b);

/// Distance from 0 to w in the half-plane {Re w < 1}, density 1/(1 - Re w).
double poincare_distance_halfplane(Cx w);

// ---------------------------------------------------------------------------
// Conformal catalog

struct ConformalMapEntry {
    Region source;
    Cx basepoint;             // mapped to 0
    holo::ExprPtr forward;    // source -> unit disk
    holo::ExprPtr inverse;    // unit disk -> source
};

/// Closed-form Riemann map of a catalog region onto the unit disk with
/// phi(b) = 0. Currently disks only; UnsupportedShapeError otherwise.
ConformalMapEntry conformal_to_disk(const Region& U, Cx b);

/// Moebius map {Re w < 1} -> unit disk, 0 -> 0: w -> -w / (2 - w).
holo::ExprPtr halfplane_to_disk();

}  // namespace argvar::geom
