#include "argvar/geom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "argvar/config.hpp"
#include "argvar/errors.hpp"
#include "argvar/quad.hpp"

namespace argvar::geom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist_point_segment(Cx p, Cx a, Cx b) {
    Cx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

// angle of p normalized into [a0, a0 + 2*pi)
double norm_angle_from(double theta, double a0) {
    double t = std::fmod(theta - a0, kTwoPi);
    if (t < 0) t += kTwoPi;
    return a0 + t;
}

bool angle_in_span(double theta, double a0, double a1) {
    if (a1 - a0 >= kTwoPi - 1e-12) return true;
    return norm_angle_from(theta, a0) <= a1 + 1e-12;
}

double dist_point_arc(Cx p, Cx c, double r, double a0, double a1) {
    double theta = std::arg(p - c);
    if (angle_in_span(theta, a0, a1)) return std::abs(std::abs(p - c) - r);
    Cx e0 = c + r * std::polar(1.0, a0);
    Cx e1 = c + r * std::polar(1.0, a1);
    return std::min(std::abs(p - e0), std::abs(p - e1));
}

}  // namespace

// ---------------------------------------------------------------------------
// Curves

Jet2 segment_point(const Segment& s, double t) {
    if (const auto* l = std::get_if<LineSeg>(&s))
        return {l->p + t * (l->q - l->p), l->q - l->p, 0.0};
    if (const auto* a = std::get_if<ArcSeg>(&s)) {
        double d = a->a1 - a->a0;
        Cx e = a->radius * std::polar(1.0, a->a0 + d * t);
        return {a->center + e, Cx(0.0, d) * e, -d * d * e};
    }
    const auto& an = std::get<AnalyticSeg>(s);
    return holo::eval_jet(an.path, Cx(t, 0.0));
}

Cx segment_start(const Segment& s) { return segment_point(s, 0.0).v; }
Cx segment_end(const Segment& s) { return segment_point(s, 1.0).v; }

Cx curve_start(const Curve& c) {
    if (c.segments.empty()) throw ValidationError("empty curve");
    return segment_start(c.segments.front());
}

Cx curve_end(const Curve& c) {
    if (c.segments.empty()) throw ValidationError("empty curve");
    return segment_end(c.segments.back());
}

bool curve_closed(const Curve& c, double tol) {
    return std::abs(curve_start(c) - curve_end(c)) <= tol;
}

void validate_curve(const Curve& c, double tol) {
    if (c.segments.empty()) throw ValidationError("curve has no segments");
    for (size_t i = 0; i + 1 < c.segments.size(); ++i) {
        Cx e = segment_end(c.segments[i]);
        Cx s = segment_start(c.segments[i + 1]);
        if (std::abs(e - s) > tol)
            throw ValidationError("curve segments " + std::to_string(i) + "," +
                                  std::to_string(i + 1) + " do not share an endpoint");
    }
    constexpr int kSpeedSamples = 33;
    for (const auto& seg : c.segments)
        for (int k = 0; k < kSpeedSamples; ++k) {
            double t = double(k) / (kSpeedSamples - 1);
            if (std::abs(segment_point(seg, t).d1) <= 1e-9)
                throw ValidationError("curve segment has vanishing velocity");
        }
}

Curve reverse_curve(const Curve& c) {
    Curve r;
    for (auto it = c.segments.rbegin(); it != c.segments.rend(); ++it) {
        if (const auto* l = std::get_if<LineSeg>(&*it))
            r.segments.push_back(LineSeg{l->q, l->p});
        else if (const auto* a = std::get_if<ArcSeg>(&*it))
            r.segments.push_back(ArcSeg{a->center, a->radius, a->a1, a->a0});
        else {
            const auto& an = std::get<AnalyticSeg>(*it);
            r.segments.push_back(AnalyticSeg{
                holo::compose(an.path, holo::affine(-1.0, 1.0))});
        }
    }
    return r;
}

std::vector<Cx> sample_curve(const Curve& c, int per_segment) {
    std::vector<Cx> out;
    out.reserve(c.segments.size() * per_segment + 1);
    for (size_t i = 0; i < c.segments.size(); ++i) {
        int first = (i == 0) ? 0 : 1;
        for (int k = first; k <= per_segment; ++k)
            out.push_back(segment_point(c.segments[i], double(k) / per_segment).v);
    }
    return out;
}

double curve_length(const Curve& c) {
    double total = 0.0;
    for (const auto& seg : c.segments) {
        if (const auto* l = std::get_if<LineSeg>(&seg))
            total += std::abs(l->q - l->p);
        else if (const auto* a = std::get_if<ArcSeg>(&seg))
            total += a->radius * std::abs(a->a1 - a->a0);
        else {
            const auto& an = std::get<AnalyticSeg>(seg);
            total += quad::adaptive_simpson(
                [&](double t) { return std::abs(holo::eval_jet(an.path, Cx(t, 0.0)).d1); },
                0.0, 1.0, 1e-10);
        }
    }
    return total;
}

namespace {

double turning_angle(Cx t_in, Cx t_out) {
    double ang = std::abs(std::arg(t_out / t_in));
    if (std::abs(ang - kPi) <= 1e-9)
        throw CuspError("tangent reversal at curve vertex");
    return ang;
}

}  // namespace

double total_curvature(const Curve& c) {
    double total = 0.0;
    for (const auto& seg : c.segments) {
        if (std::holds_alternative<LineSeg>(seg)) continue;
        if (const auto* a = std::get_if<ArcSeg>(&seg)) {
            total += std::abs(a->a1 - a->a0);
            continue;
        }
        const auto& an = std::get<AnalyticSeg>(seg);
        total += quad::adaptive_simpson(
            [&](double t) {
                Jet2 j = holo::eval_jet(an.path, Cx(t, 0.0));
                double sp2 = std::norm(j.d1);
                return std::abs(std::imag(std::conj(j.d1) * j.d2)) / sp2;
            },
            0.0, 1.0, 1e-10, 16);
    }
    // vertex turning angles (closing vertex included for closed curves)
    size_t n = c.segments.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        Cx t_in = segment_point(c.segments[i], 1.0).d1;
        Cx t_out = segment_point(c.segments[i + 1], 0.0).d1;
        total += turning_angle(t_in, t_out);
    }
    if (n >= 1 && curve_closed(c)) {
        Cx t_in = segment_point(c.segments.back(), 1.0).d1;
        Cx t_out = segment_point(c.segments.front(), 0.0).d1;
        total += turning_angle(t_in, t_out);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Regions

void validate_region(const Region& r) {
    if (const auto* d = std::get_if<Disk>(&r.shape)) {
        if (!(d->radius > 0)) throw ValidationError("disk radius must be positive");
    } else if (const auto* rc = std::get_if<Rect>(&r.shape)) {
        if (!(rc->lo.real() < rc->hi.real() && rc->lo.imag() < rc->hi.imag()))
            throw ValidationError("rectangle corners must be ordered lo < hi");
    } else if (const auto* pg = std::get_if<Polygon>(&r.shape)) {
        const auto& v = pg->vertices;
        if (v.size() < 3) throw ValidationError("polygon needs >= 3 vertices");
        auto seg_intersect = [](Cx a, Cx b, Cx c, Cx d) {
            auto cross = [](Cx u, Cx w) { return u.real() * w.imag() - u.imag() * w.real(); };
            double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
            double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
            return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
        };
        size_t n = v.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                if (seg_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                    throw ValidationError("polygon is self-intersecting");
            }
    } else {
        const auto& a = std::get<AnnulusSector>(r.shape);
        if (!(a.r_in > 0 && a.r_out > a.r_in))
            throw ValidationError("annulus sector needs 0 < r_in < r_out");
        if (!(a.a1 > a.a0 && a.a1 - a.a0 <= kTwoPi + 1e-12))
            throw ValidationError("annulus sector angle span must be in (0, 2*pi]");
    }
}

namespace {

bool contains_exact(const Region& r, Cx p) {
    if (const auto* d = std::get_if<Disk>(&r.shape))
        return std::abs(p - d->center) <= d->radius;
    if (const auto* rc = std::get_if<Rect>(&r.shape))
        return p.real() >= rc->lo.real() && p.real() <= rc->hi.real() &&
               p.imag() >= rc->lo.imag() && p.imag() <= rc->hi.imag();
    if (const auto* pg = std::get_if<Polygon>(&r.shape)) {
        const auto& v = pg->vertices;
        size_t n = v.size();
        bool inside = false;
        for (size_t i = 0, j = n - 1; i < n; j = i++) {
            if (((v[i].imag() > p.imag()) != (v[j].imag() > p.imag())) &&
                (p.real() < (v[j].real() - v[i].real()) * (p.imag() - v[i].imag()) /
                                    (v[j].imag() - v[i].imag()) +
                                v[i].real()))
                inside = !inside;
        }
        if (inside) return true;
        // boundary points
        for (size_t i = 0, j = n - 1; i < n; j = i++)
            if (dist_point_segment(p, v[j], v[i]) <= 1e-12) return true;
        return false;
    }
    const auto& a = std::get<AnnulusSector>(r.shape);
    double d = std::abs(p - a.center);
    if (d < a.r_in || d > a.r_out) return false;
    return angle_in_span(std::arg(p - a.center), a.a0, a.a1);
}

}  // namespace

bool region_contains(const Region& r, Cx p, double tol) {
    if (contains_exact(r, p)) return true;
    return tol > 0.0 && region_boundary_distance(r, p) <= tol;
}

double region_boundary_distance(const Region& r, Cx p) {
    if (const auto* d = std::get_if<Disk>(&r.shape))
        return std::abs(d->radius - std::abs(p - d->center));
    if (const auto* rc = std::get_if<Rect>(&r.shape)) {
        Cx a = rc->lo, b = Cx(rc->hi.real(), rc->lo.imag());
        Cx c = rc->hi, e = Cx(rc->lo.real(), rc->hi.imag());
        return std::min({dist_point_segment(p, a, b), dist_point_segment(p, b, c),
                         dist_point_segment(p, c, e), dist_point_segment(p, e, a)});
    }
    if (const auto* pg = std::get_if<Polygon>(&r.shape)) {
        const auto& v = pg->vertices;
        double best = kInf;
        for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
            best = std::min(best, dist_point_segment(p, v[j], v[i]));
        return best;
    }
    const auto& a = std::get<AnnulusSector>(r.shape);
    double best = std::min(dist_point_arc(p, a.center, a.r_in, a.a0, a.a1),
                           dist_point_arc(p, a.center, a.r_out, a.a0, a.a1));
    if (a.a1 - a.a0 < kTwoPi - 1e-12) {
        Cx u0 = std::polar(1.0, a.a0), u1 = std::polar(1.0, a.a1);
        best = std::min(best, dist_point_segment(p, a.center + a.r_in * u0,
                                                 a.center + a.r_out * u0));
        best = std::min(best, dist_point_segment(p, a.center + a.r_in * u1,
                                                 a.center + a.r_out * u1));
    }
    return best;
}

// One or two closed loops (full annulus has two).
std::vector<Curve> boundary_loops(const Region& r) {
    if (const auto* d = std::get_if<Disk>(&r.shape))
        return {Curve{{ArcSeg{d->center, d->radius, 0.0, kTwoPi}}}};
    if (const auto* rc = std::get_if<Rect>(&r.shape)) {
        Cx a = rc->lo, b = Cx(rc->hi.real(), rc->lo.imag());
        Cx c = rc->hi, e = Cx(rc->lo.real(), rc->hi.imag());
        return {Curve{{LineSeg{a, b}, LineSeg{b, c}, LineSeg{c, e}, LineSeg{e, a}}}};
    }
    if (const auto* pg = std::get_if<Polygon>(&r.shape)) {
        auto v = pg->vertices;
        double area2 = 0.0;
        for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
            area2 += v[j].real() * v[i].imag() - v[i].real() * v[j].imag();
        if (area2 < 0) std::reverse(v.begin(), v.end());
        Curve c;
        for (size_t i = 0; i < v.size(); ++i)
            c.segments.push_back(LineSeg{v[i], v[(i + 1) % v.size()]});
        return {c};
    }
    const auto& a = std::get<AnnulusSector>(r.shape);
    if (a.a1 - a.a0 >= kTwoPi - 1e-12) {
        return {Curve{{ArcSeg{a.center, a.r_out, 0.0, kTwoPi}}},
                Curve{{ArcSeg{a.center, a.r_in, kTwoPi, 0.0}}}};
    }
    Cx u0 = std::polar(1.0, a.a0), u1 = std::polar(1.0, a.a1);
    return {Curve{{LineSeg{a.center + a.r_in * u0, a.center + a.r_out * u0},
                   ArcSeg{a.center, a.r_out, a.a0, a.a1},
                   LineSeg{a.center + a.r_out * u1, a.center + a.r_in * u1},
                   ArcSeg{a.center, a.r_in, a.a1, a.a0}}}};
}

Curve region_boundary_curve(const Region& r) {
    auto loops = boundary_loops(r);
    if (loops.size() != 1)
        throw UnsupportedShapeError("region boundary is not a single closed loop");
    return loops[0];
}

std::vector<Cx> region_boundary_samples(const Region& r, int n) {
    auto loops = boundary_loops(r);
    double total = 0.0;
    for (const auto& l : loops) total += curve_length(l);
    std::vector<Cx> out;
    out.reserve(n + 8);
    for (const auto& l : loops)
        for (const auto& seg : l.segments) {
            Curve single{{seg}};
            int k = std::max(2, int(std::ceil(n * curve_length(single) / total)));
            for (int i = 0; i < k; ++i)
                out.push_back(segment_point(seg, double(i) / k).v);
        }
    return out;
}

std::pair<Cx, Cx> region_bbox(const Region& r) {
    if (const auto* d = std::get_if<Disk>(&r.shape))
        return {d->center - Cx(d->radius, d->radius), d->center + Cx(d->radius, d->radius)};
    if (const auto* rc = std::get_if<Rect>(&r.shape)) return {rc->lo, rc->hi};
    if (const auto* pg = std::get_if<Polygon>(&r.shape)) {
        double x0 = kInf, y0 = kInf, x1 = -kInf, y1 = -kInf;
        for (Cx v : pg->vertices) {
            x0 = std::min(x0, v.real()); x1 = std::max(x1, v.real());
            y0 = std::min(y0, v.imag()); y1 = std::max(y1, v.imag());
        }
        return {Cx(x0, y0), Cx(x1, y1)};
    }
    const auto& a = std::get<AnnulusSector>(r.shape);
    double R = a.r_out;
    return {a.center - Cx(R, R), a.center + Cx(R, R)};
}

double euclidean_diameter(const Region& r) {
    if (const auto* d = std::get_if<Disk>(&r.shape)) return 2.0 * d->radius;
    if (const auto* rc = std::get_if<Rect>(&r.shape)) return std::abs(rc->hi - rc->lo);
    auto pts = region_boundary_samples(r, 512);
    if (const auto* pg = std::get_if<Polygon>(&r.shape)) pts = pg->vertices;
    double best = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, std::abs(pts[i] - pts[j]));
    return best;
}

// ---------------------------------------------------------------------------
// Grid diameter

namespace {

struct GridGraph {
    double h = 0.0;
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0;
    std::vector<int> id;        // (i,j) -> node index, -1 outside
    std::vector<Cx> pts;
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<int> boundary;  // nodes with a missing neighbor

    int at(int i, int j) const {
        if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
        return id[size_t(j) * nx + i];
    }
};

GridGraph build_grid(const Region& K, double h) {
    auto [lo, hi] = region_bbox(K);
    GridGraph g;
    g.h = h;
    g.x0 = lo.real() - 0.5 * h;
    g.y0 = lo.imag() - 0.5 * h;
    g.nx = std::max(1, int(std::ceil((hi.real() - g.x0) / h)) + 1);
    g.ny = std::max(1, int(std::ceil((hi.imag() - g.y0) / h)) + 1);
    g.id.assign(size_t(g.nx) * g.ny, -1);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Cx p(g.x0 + (i + 0.5) * h, g.y0 + (j + 0.5) * h);
            if (region_contains(K, p)) {
                g.id[size_t(j) * g.nx + i] = int(g.pts.size());
                g.pts.push_back(p);
            }
        }
    g.adj.resize(g.pts.size());
    static const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int u = g.at(i, j);
            if (u < 0) continue;
            int degree = 0;
            for (int k = 0; k < 8; ++k) {
                int v = g.at(i + dx[k], j + dy[k]);
                if (v < 0) continue;
                ++degree;
                double w = (dx[k] != 0 && dy[k] != 0) ? h * std::sqrt(2.0) : h;
                g.adj[u].push_back({v, w});
            }
            if (degree < 8) g.boundary.push_back(u);
        }
    return g;
}

void dijkstra(const GridGraph& g, int src, std::vector<double>& dist,
              std::vector<int>& parent) {
    dist.assign(g.pts.size(), kInf);
    parent.assign(g.pts.size(), -1);
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
                parent[v] = u;
                pq.push({dist[v], v});
            }
    }
}

bool segment_inside(const Region& K, Cx a, Cx b, double step) {
    int n = std::max(2, int(std::ceil(std::abs(b - a) / step)));
    for (int i = 0; i <= n; ++i) {
        Cx p = a + (b - a) * (double(i) / n);
        if (!region_contains(K, p, 1e-9)) return false;
    }
    return true;
}

// Greedy line-of-sight shortening of a grid path; result never exceeds the
// grid length and equals the chord in convex regions.
double smoothed_length(const Region& K, const GridGraph& g,
                       const std::vector<int>& path) {
    if (path.size() < 2) return 0.0;
    double step = 0.25 * g.h;
    double len = 0.0;
    size_t i = 0;
    while (i + 1 < path.size()) {
        size_t j = i + 1;
        size_t k = j + 1;
        while (k < path.size() && segment_inside(K, g.pts[path[i]], g.pts[path[k]], step)) {
            j = k;
            k += (k - i);  // geometric advance, then settle
        }
        // settle back: find largest reachable index between j and k-1
        size_t hi = std::min(k, path.size()) - 1;
        while (hi > j && !segment_inside(K, g.pts[path[i]], g.pts[path[hi]], step)) --hi;
        j = std::max(j, hi);
        len += std::abs(g.pts[path[j]] - g.pts[path[i]]);
        i = j;
    }
    return len;
}

struct LevelResult {
    double value = 0.0;
    bool connected = true;
    size_t nodes = 0;
};

LevelResult diameter_level(const Region& K, double h) {
    GridGraph g = build_grid(K, h);
    LevelResult res;
    res.nodes = g.pts.size();
    if (g.pts.size() < 2) {
        res.value = euclidean_diameter(K);
        return res;
    }
    std::vector<double> dist;
    std::vector<int> parent;
    // connectivity via a single Dijkstra
    dijkstra(g, 0, dist, parent);
    for (double d : dist)
        if (d == kInf) { res.connected = false; break; }
    if (!res.connected) return res;

    std::vector<int> sources = g.boundary.empty()
                                   ? std::vector<int>{0}
                                   : g.boundary;
    const size_t kMaxSources = 400;
    if (sources.size() > kMaxSources) {
        std::vector<int> sub;
        double stride = double(sources.size()) / kMaxSources;
        for (size_t k = 0; k < kMaxSources; ++k)
            sub.push_back(sources[size_t(k * stride)]);
        sources = sub;
    }
    double best = 0.0;
    for (int s : sources) {
        dijkstra(g, s, dist, parent);
        int far = s;
        for (size_t v = 0; v < dist.size(); ++v)
            if (dist[v] < kInf && dist[v] > dist[far]) far = int(v);
        std::vector<int> path;
        for (int v = far; v != -1; v = parent[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        best = std::max(best, smoothed_length(K, g, path));
    }
    res.value = best;
    return res;
}

}  // namespace

DiameterResult intrinsic_diameter(const Region& K, const GridParams& grid) {
    if (!(grid.h > 0)) throw ValidationError("grid cell size must be positive");
    double h_fine = grid.levels >= 2 ? 0.5 * grid.h : grid.h;
    LevelResult fine = diameter_level(K, h_fine);
    if (!fine.connected)
        throw DisconnectedError("grid graph restricted to K is disconnected");
    DiameterResult out;
    out.value = fine.value;
    if (grid.levels >= 2) {
        LevelResult coarse = diameter_level(K, grid.h);
        out.error_estimate = coarse.connected
                                 ? std::max(std::abs(fine.value - coarse.value), 0.5 * h_fine)
                                 : grid.h;
    } else {
        out.error_estimate = grid.h;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaps

namespace {

double refine_doubling(const std::function<double(int)>& value_at, int n0,
                       double agree_tol = 1e-6) {
    double prev = value_at(n0);
    int n = n0;
    for (int k = 0; k < max_refine_depth(); ++k) {
        n *= 2;
        double cur = value_at(n);
        if (std::abs(cur - prev) <= agree_tol * std::max(1.0, std::abs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

double gap(const Region& K, const Region& U) {
    const auto* kd = std::get_if<Disk>(&K.shape);
    const auto* ud = std::get_if<Disk>(&U.shape);
    if (kd && ud) {
        double g = ud->radius - std::abs(kd->center - ud->center) - kd->radius;
        if (g <= 0) throw ContainmentError("K is not contained in U");
        return g;
    }
    // interior spot check
    auto [lo, hi] = region_bbox(K);
    Cx mid = 0.5 * (lo + hi);
    if (region_contains(K, mid) && !region_contains(U, mid, 1e-9))
        throw ContainmentError("K is not contained in U");
    auto value_at = [&](int n) {
        double best = kInf;
        for (Cx p : region_boundary_samples(K, n)) {
            if (!region_contains(U, p, 1e-9))
                throw ContainmentError("K is not contained in U");
            best = std::min(best, region_boundary_distance(U, p));
        }
        return best;
    };
    return refine_doubling(value_at, 64);
}

double gap_curve(const Curve& gamma, const Region& U) {
    auto value_at = [&](int n) {
        double best = kInf;
        for (Cx p : sample_curve(gamma, n)) {
            if (!region_contains(U, p, 1e-9))
                throw ContainmentError("curve leaves U");
            best = std::min(best, region_boundary_distance(U, p));
        }
        return best;
    };
    return refine_doubling(value_at, 64);
}

// ---------------------------------------------------------------------------
// Poincare metric

double poincare_distance_disk(Cx a, Cx b) {
    if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0)
        throw DomainError("poincare_distance_disk: point not in the open unit disk");
    double m = std::abs((a - b) / (1.0 - std::conj(a) * b));
    return 2.0 * std::atanh(m);
}

double poincare_distance_halfplane(Cx w) {
    if (w.real() >= 1.0)
        throw DomainError("poincare_distance_halfplane: Re w must be < 1");
    // right half-plane form with zeta = 1 - w, base point zeta = 1
    double arg = 1.0 + std::norm(w) / (2.0 * (1.0 - w.real()));
    return std::acosh(arg);
}

// ---------------------------------------------------------------------------
// Conformal catalog

ConformalMapEntry conformal_to_disk(const Region& U, Cx b) {
    const auto* d = std::get_if<Disk>(&U.shape);
    if (!d)
        throw UnsupportedShapeError("conformal catalog covers disks only");
    Cx c = d->center;
    double R = d->radius;
    Cx beta = b - c;
    if (std::abs(beta) >= R)
        throw ContainmentError("basepoint not inside the disk");
    // phi(z) = R (z - c - beta) / (R^2 - conj(beta) (z - c))
    auto num = holo::affine(R, -R * (c + beta));
    auto den = holo::affine(-std::conj(beta), R * R + std::conj(beta) * c);
    auto fwd = holo::quotient(num, den);
    // inverse(w) = c + R (R w + beta) / (R + conj(beta) w)
    auto inum = holo::affine(R * R, R * beta);
    auto iden = holo::affine(std::conj(beta), R);
    auto inv = holo::sum(holo::constant(c), holo::quotient(inum, iden));
    return ConformalMapEntry{U, b, fwd, inv};
}

holo::ExprPtr halfplane_to_disk() {
    return holo::quotient(holo::affine(-1.0, 0.0), holo::affine(-1.0, 2.0));
}

}  // namespace argvar::geom
