#include "argvar/cover.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include "argvar/config.hpp"
#include "argvar/errors.hpp"

namespace argvar::cover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Crossing direction of the straight segment z0 -> z1 over the cut ray
// (negative real direction from the branch point): +1 counterclockwise,
// -1 clockwise, 0 none. The segment must stay away from the branch point.
int segment_cut_crossing(Cx branch, Cx z0, Cx z1) {
    double y0 = (z0 - branch).imag(), y1 = (z1 - branch).imag();
    bool up0 = y0 > 0.0, up1 = y1 > 0.0;
    if (up0 == up1) return 0;
    double t = y0 / (y0 - y1);
    double x = (z0 + t * (z1 - z0) - branch).real();
    if (x >= 0.0) return 0;
    return up0 ? +1 : -1;
}

}  // namespace

void validate_cover(const CoverSpec& c) {
    if (c.kind == CoverSpec::Kind::Root && c.order < 2)
        throw ValidationError("root cover order must be >= 2");
}

int normalize_sheet(const CoverSpec& c, int sheet) {
    switch (c.kind) {
        case CoverSpec::Kind::Trivial: return 0;
        case CoverSpec::Kind::Log: return sheet;
        case CoverSpec::Kind::Root: {
            int m = c.order;
            int s = sheet % m;
            return s < 0 ? s + m : s;
        }
    }
    return sheet;
}

Cx covering_coordinate(const CoverSpec& c, const SheetPoint& p) {
    switch (c.kind) {
        case CoverSpec::Kind::Trivial:
            return p.base;
        case CoverSpec::Kind::Log:
            return std::log(p.base - c.branch_point) + Cx(0.0, kTwoPi * p.sheet);
        case CoverSpec::Kind::Root: {
            Cx u = p.base - c.branch_point;
            double m = c.order;
            double r = std::pow(std::abs(u), 1.0 / m);
            double th = (std::arg(u) + kTwoPi * normalize_sheet(c, p.sheet)) / m;
            return std::polar(r, th);
        }
    }
    return p.base;
}

Cx covering_coordinate_d1(const CoverSpec& c, const SheetPoint& p) {
    switch (c.kind) {
        case CoverSpec::Kind::Trivial:
            return 1.0;
        case CoverSpec::Kind::Log:
            return 1.0 / (p.base - c.branch_point);
        case CoverSpec::Kind::Root:
            return covering_coordinate(c, p) /
                   (double(c.order) * (p.base - c.branch_point));
    }
    return 1.0;
}

SurfaceRegion lifted_annulus(const CoverSpec& c, double r_in, double r_out,
                             double theta0, double theta1) {
    validate_cover(c);
    if (!(r_in > 0 && r_out > r_in) || !(theta1 > theta0))
        throw ValidationError("lifted_annulus: bad radii or angle range");
    SurfaceRegion out;
    out.cover = c;
    if (c.kind == CoverSpec::Kind::Trivial) {
        double span = std::min(theta1 - theta0, kTwoPi);
        out.pieces.push_back({0, geom::Region{geom::AnnulusSector{
                                     c.branch_point, r_in, r_out, theta0, theta0 + span}}});
        return out;
    }
    if (c.kind == CoverSpec::Kind::Root && theta1 - theta0 >= kTwoPi * c.order) {
        theta1 = theta0 + kTwoPi * c.order;  // full cover
    }
    int s_lo = int(std::floor((theta0 + kPi) / kTwoPi));
    int s_hi = int(std::floor((theta1 + kPi - 1e-12) / kTwoPi));
    for (int s = s_lo; s <= s_hi; ++s) {
        double lo = std::max(theta0, (2 * s - 1) * kPi);
        double hi = std::min(theta1, (2 * s + 1) * kPi);
        if (hi - lo <= 1e-12) continue;
        int sheet = (c.kind == CoverSpec::Kind::Root) ? normalize_sheet(c, s) : s;
        out.pieces.push_back(
            {sheet, geom::Region{geom::AnnulusSector{c.branch_point, r_in, r_out,
                                                     lo - kTwoPi * s, hi - kTwoPi * s}}});
    }
    return out;
}

bool surface_contains(const SurfaceRegion& u, const SheetPoint& p, double tol) {
    int s = normalize_sheet(u.cover, p.sheet);
    for (const auto& piece : u.pieces)
        if (normalize_sheet(u.cover, piece.sheet) == s &&
            geom::region_contains(piece.region, p.base, tol))
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Curve lifting

namespace {

void lift_segment(const geom::Segment& seg, size_t seg_idx, const CoverSpec& c,
                  std::vector<CutCrossing>& out) {
    Cx a = c.branch_point;
    std::function<void(double, Cx, double, Cx, int)> walk =
        [&](double t0, Cx z0, double t1, Cx z1, int depth) {
            double d0 = std::abs(z0 - a), d1 = std::abs(z1 - a);
            if (std::min(d0, d1) < 1e-9)
                throw BranchPointError("curve passes too close to the branch point");
            if (std::abs(z1 - z0) > 0.4 * std::min(d0, d1)) {
                if (depth > 48)
                    throw BranchPointError("curve winds too tightly near the branch point");
                double tm = 0.5 * (t0 + t1);
                Cx zm = geom::segment_point(seg, tm).v;
                walk(t0, z0, tm, zm, depth + 1);
                walk(tm, zm, t1, z1, depth + 1);
                return;
            }
            int dir = segment_cut_crossing(a, z0, z1);
            if (dir == 0) return;
            // refine the crossing parameter by bisection on the cut side, so
            // that samples taken near tc agree with their sheet assignment
            double lo = t0, hi = t1;
            bool up_lo = (z0 - a).imag() > 0.0;
            for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
                double tm = 0.5 * (lo + hi);
                bool up_m = (geom::segment_point(seg, tm).v - a).imag() > 0.0;
                if (up_m == up_lo)
                    lo = tm;
                else
                    hi = tm;
            }
            double tc = 0.5 * (lo + hi);
            Cx vel = geom::segment_point(seg, tc).d1;
            if (std::abs(vel.imag()) <= 1e-9 * std::abs(vel))
                throw TangencyError("curve tangent to the cut at a crossing");
            out.push_back({seg_idx, tc, dir});
        };
    const int kInit = 64;
    Cx prev = geom::segment_point(seg, 0.0).v;
    for (int k = 1; k <= kInit; ++k) {
        double t = double(k) / kInit;
        Cx cur = geom::segment_point(seg, t).v;
        walk(double(k - 1) / kInit, prev, t, cur, 0);
        prev = cur;
    }
}

}  // namespace

SurfaceCurve lift_curve(const geom::Curve& gamma, const CoverSpec& c, int start_sheet) {
    validate_cover(c);
    SurfaceCurve sc;
    sc.cover = c;
    sc.base = gamma;
    sc.start_sheet = start_sheet;
    if (c.kind != CoverSpec::Kind::Trivial)
        for (size_t i = 0; i < gamma.segments.size(); ++i)
            lift_segment(gamma.segments[i], i, c, sc.crossings);
    int s = start_sheet;
    for (const auto& cr : sc.crossings) s += cr.direction;
    sc.end_sheet = (c.kind == CoverSpec::Kind::Root) ? normalize_sheet(c, s) : s;
    return sc;
}

int sheet_at(const SurfaceCurve& sc, size_t seg, double t) {
    int s = sc.start_sheet;
    for (const auto& cr : sc.crossings)
        if (cr.segment < seg || (cr.segment == seg && cr.t <= t)) s += cr.direction;
    return (sc.cover.kind == CoverSpec::Kind::Root) ? normalize_sheet(sc.cover, s) : s;
}

int sheet_at_point(const SurfaceCurve& sc, size_t seg, double t, Cx z) {
    Cx a = sc.cover.branch_point;
    int s = sc.start_sheet;
    for (const auto& cr : sc.crossings) {
        bool before = cr.segment < seg || (cr.segment == seg && cr.t < t);
        if (!before && cr.segment == seg && cr.t == t) {
            // sample exactly at a crossing: decide by the cut side so the
            // sheet stays consistent with arg(z - a)
            double y = (z - a).imag();
            bool up = y > 0.0 || (y == 0.0 && !std::signbit(y));
            before = (cr.direction == 1) ? !up : up;
        }
        if (before) s += cr.direction;
    }
    if (sc.cover.kind == CoverSpec::Kind::Root) s = normalize_sheet(sc.cover, s);
    return s;
}

std::vector<SheetPoint> sample_surface_curve(const SurfaceCurve& sc, int per_segment) {
    std::vector<SheetPoint> out;
    for (size_t i = 0; i < sc.base.segments.size(); ++i) {
        int first = (i == 0) ? 0 : 1;
        for (int k = first; k <= per_segment; ++k) {
            double t = double(k) / per_segment;
            Cx z = geom::segment_point(sc.base.segments[i], t).v;
            out.push_back({z, sheet_at_point(sc, i, t, z)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// pi-gap

namespace {

// Concentric annular model of a SurfaceRegion: all pieces are annulus
// sectors centered at the branch point with common radii, whose covering
// angle ranges tile a contiguous interval.
struct AngularModel {
    double r_in = 0.0, r_out = 0.0;
    double theta0 = 0.0, theta1 = 0.0;
    bool full_wrap = false;  // root cover tiling the whole deck group
};

std::optional<AngularModel> angular_model(const SurfaceRegion& u) {
    if (u.cover.kind == CoverSpec::Kind::Trivial || u.pieces.empty())
        return std::nullopt;
    std::vector<std::pair<double, double>> spans;
    AngularModel m;
    bool first = true;
    for (const auto& piece : u.pieces) {
        const auto* a = std::get_if<geom::AnnulusSector>(&piece.region.shape);
        if (!a) return std::nullopt;
        if (std::abs(a->center - u.cover.branch_point) > 1e-12) return std::nullopt;
        if (first) {
            m.r_in = a->r_in;
            m.r_out = a->r_out;
            first = false;
        } else if (std::abs(a->r_in - m.r_in) > 1e-12 ||
                   std::abs(a->r_out - m.r_out) > 1e-12) {
            return std::nullopt;
        }
        if (a->a0 < -kPi - 1e-9 || a->a1 > kPi + 1e-9) return std::nullopt;
        spans.push_back({a->a0 + kTwoPi * piece.sheet, a->a1 + kTwoPi * piece.sheet});
    }
    std::sort(spans.begin(), spans.end());
    for (size_t i = 0; i + 1 < spans.size(); ++i)
        if (spans[i + 1].first > spans[i].second + 1e-9) return std::nullopt;
    m.theta0 = spans.front().first;
    m.theta1 = spans.back().second;
    if (u.cover.kind == CoverSpec::Kind::Root &&
        m.theta1 - m.theta0 >= kTwoPi * u.cover.order - 1e-9)
        m.full_wrap = true;
    return m;
}

double covering_angle(const CoverSpec& c, const SheetPoint& p) {
    return std::arg(p.base - c.branch_point) + kTwoPi * p.sheet;
}

double dist_to_radial_end(double d, double delta, double r_in, double r_out) {
    if (delta >= 0.5 * kPi) return kInf;
    double foot = d * std::cos(delta);
    if (foot < r_in)
        return std::sqrt(d * d + r_in * r_in - 2.0 * d * r_in * std::cos(delta));
    if (foot > r_out)
        return std::sqrt(d * d + r_out * r_out - 2.0 * d * r_out * std::cos(delta));
    return d * std::sin(delta);
}

// Largest injectively-projecting disk radius about p inside the model region.
double eps_model(const AngularModel& m, const CoverSpec& c, const SheetPoint& p) {
    double d = std::abs(p.base - c.branch_point);
    if (d < m.r_in - 1e-9 || d > m.r_out + 1e-9)
        throw ContainmentError("pi_gap: point of K outside U (radially)");
    double best = std::min(d - m.r_in, m.r_out - d);
    if (!m.full_wrap) {
        double th = covering_angle(c, p);
        if (c.kind == CoverSpec::Kind::Root) {
            double period = kTwoPi * c.order;
            th = m.theta0 + std::fmod(th - m.theta0, period);
            if (th < m.theta0) th += period;
        }
        double lo = th - m.theta0, hi = m.theta1 - th;
        if (lo < -1e-9 || hi < -1e-9)
            throw ContainmentError("pi_gap: point of K outside U (angularly)");
        best = std::min({best, dist_to_radial_end(d, std::max(lo, 0.0), m.r_in, m.r_out),
                         dist_to_radial_end(d, std::max(hi, 0.0), m.r_in, m.r_out)});
    }
    return std::max(best, 0.0);
}

// Generic fallback: bisection on the disk radius with ring sampling; sheets
// of ring points follow the straight segment from the center.
double eps_sampled(const SurfaceRegion& u, const SheetPoint& p, double r_cap) {
    Cx a = u.cover.branch_point;
    auto inside = [&](double r) {
        static const double rings[3] = {0.35, 0.7, 1.0};
        const int n_ang = 96;
        for (double ring : rings)
            for (int k = 0; k < n_ang; ++k) {
                Cx w = p.base + ring * r * std::polar(1.0, kTwoPi * k / n_ang);
                int dir = (u.cover.kind == CoverSpec::Kind::Trivial)
                              ? 0
                              : segment_cut_crossing(a, p.base, w);
                if (!surface_contains(u, {w, p.sheet + dir}, 1e-12)) return false;
            }
        return true;
    };
    if (!surface_contains(u, p, 1e-9))
        throw ContainmentError("pi_gap: point of K outside U");
    if (inside(r_cap)) return r_cap;
    double lo = 0.0, hi = r_cap;
    for (int it = 0; it < 30; ++it) {
        double mid = 0.5 * (lo + hi);
        (inside(mid) ? lo : hi) = mid;
    }
    return lo;
}

double eps_at(const SurfaceRegion& u, const std::optional<AngularModel>& model,
              const SheetPoint& p) {
    if (model) return eps_model(*model, u.cover, p);
    double r_cap;
    if (u.cover.kind == CoverSpec::Kind::Trivial) {
        double span = 0.0;
        for (const auto& piece : u.pieces) {
            auto [lo, hi] = geom::region_bbox(piece.region);
            span = std::max(span, std::abs(hi - lo));
        }
        r_cap = span;
    } else {
        r_cap = std::abs(p.base - u.cover.branch_point);
    }
    return eps_sampled(u, p, r_cap);
}

double pi_gap_over_samples(
    const SurfaceRegion& u,
    const std::function<std::vector<SheetPoint>(int)>& samples_at) {
    auto model = angular_model(u);
    auto value_at = [&](int n) {
        double best = kInf;
        for (const auto& p : samples_at(n)) best = std::min(best, eps_at(u, model, p));
        return best;
    };
    double prev = value_at(64);
    int n = 64;
    for (int k = 0; k < max_refine_depth(); ++k) {
        n *= 2;
        double cur = value_at(n);
        if (std::abs(cur - prev) <= 1e-6 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
        if (n > (1 << 16)) break;
    }
    return prev;
}

}  // namespace

double pi_gap(const SurfaceRegion& K, const SurfaceRegion& U) {
    // trivial cover over a single planar piece pair reduces to geom::gap
    if (K.cover.kind == CoverSpec::Kind::Trivial && K.pieces.size() == 1 &&
        U.cover.kind == CoverSpec::Kind::Trivial && U.pieces.size() == 1)
        return geom::gap(K.pieces[0].region, U.pieces[0].region);
    auto samples_at = [&](int n) {
        std::vector<SheetPoint> pts;
        for (const auto& piece : K.pieces)
            for (Cx z : geom::region_boundary_samples(piece.region, n))
                pts.push_back({z, piece.sheet});
        return pts;
    };
    return pi_gap_over_samples(U, samples_at);
}

double pi_gap(const SurfaceCurve& K, const SurfaceRegion& U) {
    if (K.cover.kind == CoverSpec::Kind::Trivial && U.pieces.size() == 1)
        return geom::gap_curve(K.base, U.pieces[0].region);
    auto samples_at = [&](int n) { return sample_surface_curve(K, n); };
    return pi_gap_over_samples(U, samples_at);
}

// ---------------------------------------------------------------------------
// Surface intrinsic diameter

namespace {

struct SurfaceGrid {
    double h = 0.0;
    double x0 = 0.0, y0 = 0.0;
    int nx = 0, ny = 0;
    std::map<std::tuple<int, int, int>, int> id;  // (sheet, i, j) -> node
    std::vector<Cx> pts;
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<int> boundary;
};

SurfaceGrid build_surface_grid(const SurfaceRegion& K, double h) {
    SurfaceGrid g;
    g.h = h;
    double x0 = kInf, y0 = kInf, x1 = -kInf, y1 = -kInf;
    for (const auto& piece : K.pieces) {
        auto [lo, hi] = geom::region_bbox(piece.region);
        x0 = std::min(x0, lo.real()); y0 = std::min(y0, lo.imag());
        x1 = std::max(x1, hi.real()); y1 = std::max(y1, hi.imag());
    }
    g.x0 = x0 - 0.5 * h;
    g.y0 = y0 - 0.5 * h;
    if (K.cover.kind != CoverSpec::Kind::Trivial) {
        // align rows so the cut lies on a cell edge, never through centers:
        // open pieces would otherwise drop a whole row along the cut
        double by = K.cover.branch_point.imag();
        g.y0 = by - std::ceil((by - g.y0) / h) * h;
    }
    g.nx = int(std::ceil((x1 - g.x0) / h)) + 1;
    g.ny = int(std::ceil((y1 - g.y0) / h)) + 1;

    std::vector<int> sheets;
    for (const auto& piece : K.pieces) {
        int s = (K.cover.kind == CoverSpec::Kind::Root)
                    ? normalize_sheet(K.cover, piece.sheet)
                    : piece.sheet;
        if (std::find(sheets.begin(), sheets.end(), s) == sheets.end())
            sheets.push_back(s);
    }
    auto member = [&](int s, Cx p) {
        return surface_contains(K, {p, s});
    };
    for (int s : sheets)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                Cx p(g.x0 + (i + 0.5) * h, g.y0 + (j + 0.5) * h);
                if (member(s, p)) {
                    g.id[{s, i, j}] = int(g.pts.size());
                    g.pts.push_back(p);
                }
            }
    g.adj.resize(g.pts.size());
    static const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    for (const auto& [key, u] : g.id) {
        auto [s, i, j] = key;
        Cx p = g.pts[u];
        int degree = 0;
        for (int k = 0; k < 8; ++k) {
            int ii = i + dx[k], jj = j + dy[k];
            if (ii < 0 || jj < 0 || ii >= g.nx || jj >= g.ny) continue;
            Cx q(g.x0 + (ii + 0.5) * h, g.y0 + (jj + 0.5) * h);
            int dir = (K.cover.kind == CoverSpec::Kind::Trivial)
                          ? 0
                          : segment_cut_crossing(K.cover.branch_point, p, q);
            int s2 = s + dir;
            if (K.cover.kind == CoverSpec::Kind::Root) s2 = normalize_sheet(K.cover, s2);
            auto it = g.id.find({s2, ii, jj});
            if (it == g.id.end()) continue;
            ++degree;
            double w = (dx[k] != 0 && dy[k] != 0) ? h * std::sqrt(2.0) : h;
            g.adj[u].push_back({it->second, w});
        }
        if (degree < 8) g.boundary.push_back(u);
    }
    return g;
}

struct SurfaceLevel {
    double value = 0.0;
    bool connected = true;
};

SurfaceLevel surface_diameter_level(const SurfaceRegion& K, double h) {
    SurfaceGrid g = build_surface_grid(K, h);
    SurfaceLevel res;
    if (g.pts.size() < 2) {
        res.value = 0.0;
        return res;
    }
    auto dijkstra = [&](int src, std::vector<double>& dist) {
        dist.assign(g.pts.size(), kInf);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[src] = 0.0;
        pq.push({0.0, src});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u]) continue;
            for (auto [v, w] : g.adj[u])
                if (d + w < dist[v]) {
                    dist[v] = d + w;
                    pq.push({dist[v], v});
                }
        }
    };
    std::vector<double> dist;
    dijkstra(0, dist);
    for (double d : dist)
        if (d == kInf) { res.connected = false; return res; }
    std::vector<int> sources = g.boundary.empty() ? std::vector<int>{0} : g.boundary;
    const size_t kMaxSources = 300;
    if (sources.size() > kMaxSources) {
        std::vector<int> sub;
        double stride = double(sources.size()) / kMaxSources;
        for (size_t k = 0; k < kMaxSources; ++k)
            sub.push_back(sources[size_t(k * stride)]);
        sources = sub;
    }
    double best = 0.0;
    for (int s : sources) {
        dijkstra(s, dist);
        for (double d : dist)
            if (d < kInf) best = std::max(best, d);
    }
    res.value = best;
    return res;
}

}  // namespace

geom::DiameterResult surface_intrinsic_diameter(const SurfaceRegion& K,
                                                const geom::GridParams& grid) {
    if (!(grid.h > 0)) throw ValidationError("grid cell size must be positive");
    if (K.pieces.empty()) throw ValidationError("surface region has no pieces");
    if (K.cover.kind == CoverSpec::Kind::Trivial && K.pieces.size() == 1)
        return geom::intrinsic_diameter(K.pieces[0].region, grid);
    double h_fine = grid.levels >= 2 ? 0.5 * grid.h : grid.h;
    SurfaceLevel fine = surface_diameter_level(K, h_fine);
    if (!fine.connected)
        throw DisconnectedError("surface grid graph is disconnected");
    geom::DiameterResult out;
    out.value = fine.value;
    if (grid.levels >= 2) {
        SurfaceLevel coarse = surface_diameter_level(K, grid.h);
        out.error_estimate = coarse.connected
                                 ? std::max(std::abs(fine.value - coarse.value), 0.5 * h_fine)
                                 : grid.h;
    } else {
        out.error_estimate = grid.h;
    }
    return out;
}

}  // namespace argvar::cover
