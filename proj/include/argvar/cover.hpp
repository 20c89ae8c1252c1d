#pragma once

#include <optional>
#include <vector>

#include "argvar/geom.hpp"

namespace argvar::cover {

/// Covering surface over the plane, branched over one finite point.
/// Sheets are delimited by a cut ray in the negative real direction from the
/// branch point; crossing the cut counterclockwise raises the sheet index.
struct CoverSpec {
    enum class Kind { Trivial, Log, Root };
    Kind kind = Kind::Trivial;
    Cx branch_point = 0.0;
    int order = 2;  // root covers only, >= 2
};

void validate_cover(const CoverSpec& c);

/// Sheet index reduced to its canonical representative (mod order for root
/// covers, 0 for the trivial cover).
int normalize_sheet(const CoverSpec& c, int sheet);

struct SheetPoint {
    Cx base;
    int sheet = 0;
};

/// Coordinate on the covering surface: z for the trivial cover,
/// log(z-a) + 2*pi*i*sheet for the log cover, the sheet-selected m-th root of
/// z-a for a root cover of order m.
Cx covering_coordinate(const CoverSpec& c, const SheetPoint& p);

/// d(zeta)/dz at p, the reciprocal of the projection derivative.
Cx covering_coordinate_d1(const CoverSpec& c, const SheetPoint& p);

struct SheetPiece {
    int sheet = 0;
    geom::Region region;
};

/// Region on the covering surface as sheet-tagged planar pieces; pieces
/// touching the cut are glued to the adjacent sheet automatically.
struct SurfaceRegion {
    CoverSpec cover;
    std::vector<SheetPiece> pieces;
};

/// Annulus {r_in < |z-a| < r_out} lifted over the covering angle range
/// [theta0, theta1] (unbounded-looking spans allowed on log covers; on root
/// covers the range lives mod 2*pi*order). Generates one piece per sheet.
SurfaceRegion lifted_annulus(const CoverSpec& c, double r_in, double r_out,
                             double theta0, double theta1);

bool surface_contains(const SurfaceRegion& u, const SheetPoint& p, double tol = 0.0);

struct CutCrossing {
    size_t segment = 0;
    double t = 0.0;
    int direction = 0;  // +1 counterclockwise, -1 clockwise
};

struct SurfaceCurve {
    CoverSpec cover;
    geom::Curve base;
    int start_sheet = 0;
    std::vector<CutCrossing> crossings;
    int end_sheet = 0;
};

/// Lifts a planar curve to the cover starting on start_sheet, recording cut
/// crossings. Throws BranchPointError if the curve approaches the branch
/// point, TangencyError on a tangential cut crossing.
SurfaceCurve lift_curve(const geom::Curve& gamma, const CoverSpec& c, int start_sheet);

/// Sheet index at parameter t of segment seg (after crossings strictly before).
int sheet_at(const SurfaceCurve& sc, size_t seg, double t);

/// Like sheet_at, but a sample landing exactly on a recorded crossing is
/// resolved by the side of the cut the point z lies on, keeping the sheet
/// consistent with arg(z - branch).
int sheet_at_point(const SurfaceCurve& sc, size_t seg, double t, Cx z);

/// Curve points together with their sheets, n+1 samples per segment.
std::vector<SheetPoint> sample_surface_curve(const SurfaceCurve& sc, int per_segment);

/// pi-gap between K and the boundary of U: min over p in K of the largest
/// radius of a disk about p that lies in U and projects injectively (capped
/// by the distance to the branch point).
double pi_gap(const SurfaceRegion& K, const SurfaceRegion& U);
double pi_gap(const SurfaceCurve& K, const SurfaceRegion& U);

/// Shortest-path diameter of the multi-sheet grid graph in the metric lifted
/// from the plane.
geom::DiameterResult surface_intrinsic_diameter(const SurfaceRegion& K,
                                                const geom::GridParams& grid);

}  // namespace argvar::cover
