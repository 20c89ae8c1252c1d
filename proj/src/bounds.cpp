#include "argvar/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "argvar/config.hpp"
#include "argvar/errors.hpp"

namespace argvar::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHoldsTol = 1e-6;  // multiplicative guard for BoundCheck

// Doubles the sample count until two successive values agree to relative 1e-6.
double refine_rel(const std::function<double(int)>& value_at, const char* what) {
    int n = 64;
    double prev = value_at(n);
    for (int k = 0; k < max_refine_depth(); ++k) {
        n *= 2;
        double cur = value_at(n);
        if (std::abs(cur - prev) <= 1e-6 * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw NonconvergenceError(std::string(what) + ": sampling did not converge");
}

// Covering coordinate of a boundary/interior point of a sheet piece. For
// annulus-sector pieces centered at the branch point, the local angle is
// resolved into the piece's angular window, so points lying exactly on the
// cut (arg = pi) get the branch the piece actually uses.
Cx piece_zeta(const cover::CoverSpec& c, const cover::SheetPiece& piece, Cx z) {
    if (c.kind == cover::CoverSpec::Kind::Trivial) return z;
    Cx u = z - c.branch_point;
    double th = std::arg(u);
    if (const auto* a = std::get_if<geom::AnnulusSector>(&piece.region.shape);
        a && std::abs(a->center - c.branch_point) < 1e-12) {
        if (th < a->a0 - 1e-9) th += kTwoPi;
        else if (th > a->a1 + 1e-9) th -= kTwoPi;
    }
    double thcov = th + kTwoPi * piece.sheet;
    if (c.kind == cover::CoverSpec::Kind::Log) return Cx(std::log(std::abs(u)), thcov);
    return std::polar(std::pow(std::abs(u), 1.0 / c.order), thcov / c.order);
}

// d(zeta)/dz for the same branch choice.
Cx piece_zeta_d1(const cover::CoverSpec& c, const cover::SheetPiece& piece, Cx z) {
    if (c.kind == cover::CoverSpec::Kind::Trivial) return 1.0;
    Cx u = z - c.branch_point;
    if (c.kind == cover::CoverSpec::Kind::Log) return 1.0 / u;
    return piece_zeta(c, piece, z) / (double(c.order) * u);
}

// ---------------------------------------------------------------------------
// Adaptive argument tracking

struct StepEval {
    Cx v;   // f along the curve at parameter t
    Cx dv;  // d/dt of the same
};

using SegEval = std::function<StepEval(size_t seg, double t)>;

struct WalkStats {
    double signed_sum = 0.0;
    double abs_sum = 0.0;
    double fmin = kInf;
    double fmax = 0.0;
    int depth = 0;
};

// Walks every segment with initial resolution n0, splitting any step whose
// endpoint ratio or log-derivative estimate admits |delta arg| anywhere near
// pi/2; with |f1/f0 - 1| <= 0.3 each accepted step has |delta arg| <= 0.31.
WalkStats walk_arg(const SegEval& at, size_t nseg, int n0, const char* what) {
    WalkStats w;
    const int kMaxDepth = 46;
    std::function<void(size_t, double, const StepEval&, double, const StepEval&, int)>
        rec = [&](size_t seg, double t0, const StepEval& a, double t1,
                  const StepEval& b, int depth) {
            w.depth = std::max(w.depth, depth);
            double am = std::abs(a.v), bm = std::abs(b.v);
            w.fmin = std::min({w.fmin, am, bm});
            w.fmax = std::max({w.fmax, am, bm});
            if (am < 1e-300 || bm < 1e-300)
                throw ZeroOnCurveError(std::string(what) +
                                       ": function vanishes on the curve");
            Cx ratio = b.v / a.v;
            bool split = std::abs(ratio - 1.0) > 0.3 ||
                         std::abs(a.dv / a.v) * (t1 - t0) > 0.8;
            if (split) {
                if (depth >= kMaxDepth)
                    throw NonconvergenceError(std::string(what) +
                                              ": argument tracking did not converge");
                double tm = 0.5 * (t0 + t1);
                StepEval m = at(seg, tm);
                rec(seg, t0, a, tm, m, depth + 1);
                rec(seg, tm, m, t1, b, depth + 1);
                return;
            }
            double dphi = std::arg(ratio);
            w.signed_sum += dphi;
            w.abs_sum += std::abs(dphi);
        };
    for (size_t s = 0; s < nseg; ++s) {
        StepEval prev = at(s, 0.0);
        for (int k = 1; k <= n0; ++k) {
            double t = double(k) / n0;
            StepEval cur = at(s, t);
            rec(s, double(k - 1) / n0, prev, t, cur, 0);
            prev = cur;
        }
    }
    return w;
}

SegEval curve_eval(const holo::ExprPtr& f, const geom::Curve& gamma) {
    return [f, &gamma](size_t s, double t) {
        Jet2 zt = geom::segment_point(gamma.segments[s], t);
        Jet2 fz = holo::eval_jet(f, zt.v);
        return StepEval{fz.v, fz.d1 * zt.d1};
    };
}

SegEval surface_eval(const holo::ExprPtr& f, const cover::SurfaceCurve& sc) {
    return [f, &sc](size_t s, double t) {
        Jet2 zt = geom::segment_point(sc.base.segments[s], t);
        cover::SheetPoint p{zt.v, cover::sheet_at_point(sc, s, t, zt.v)};
        Cx zeta = cover::covering_coordinate(sc.cover, p);
        Cx dz = cover::covering_coordinate_d1(sc.cover, p);
        Jet2 fz = holo::eval_jet(f, zeta);
        return StepEval{fz.v, fz.d1 * dz * zt.d1};
    };
}

VarArgResult var_from_walks(const SegEval& at, size_t nseg) {
    WalkStats w1 = walk_arg(at, nseg, 32, "variation_of_argument");
    WalkStats w2 = walk_arg(at, nseg, 64, "variation_of_argument");
    if (w2.fmin < 1e-9 * w2.fmax)
        throw ZeroOnCurveError("variation_of_argument: |f| below zero tolerance");
    VarArgResult r;
    r.value = w2.abs_sum;
    r.depth = w2.depth;
    r.error_estimate = std::max(std::abs(w2.abs_sum - w1.abs_sum),
                                1e-12 * std::max(1.0, w2.abs_sum));
    return r;
}

}  // namespace

BoundCheck make_check(const std::string& name, double lhs, double rhs,
                      double error_budget, std::map<std::string, double> inputs) {
    BoundCheck c;
    c.name = name;
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.holds = lhs <= rhs * (1.0 + kHoldsTol) + error_budget;
    c.inputs = std::move(inputs);
    c.inputs["error_budget"] = error_budget;
    return c;
}

// ---------------------------------------------------------------------------
// Moduli

double sup_modulus(const holo::ExprPtr& f, const geom::Region& U) {
    return refine_rel(
        [&](int n) {
            double best = 0.0;
            for (Cx z : geom::region_boundary_samples(U, n))
                best = std::max(best, std::abs(holo::eval(f, z)));
            return best;
        },
        "sup_modulus");
}

double sup_modulus(const holo::ExprPtr& f, const cover::SurfaceRegion& U) {
    return refine_rel(
        [&](int n) {
            double best = 0.0;
            for (const auto& piece : U.pieces)
                for (Cx z : geom::region_boundary_samples(piece.region, n))
                    best = std::max(best,
                                    std::abs(holo::eval(f, piece_zeta(U.cover, piece, z))));
            return best;
        },
        "sup_modulus");
}

double max_modulus_on_compact(const holo::ExprPtr& f, const geom::Region& K) {
    auto [lo, hi] = geom::region_bbox(K);
    return refine_rel(
        [&, lo = lo, hi = hi](int n) {
            double best = 0.0;
            for (Cx z : geom::region_boundary_samples(K, n))
                best = std::max(best, std::abs(holo::eval(f, z)));
            int m = std::max(8, int(std::ceil(std::sqrt(double(n)))));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    // offset grid: avoids exact hits of removable singular
                    // points of quotient representations (e.g. z/z at 0)
                    Cx z(lo.real() + (hi.real() - lo.real()) * (i + 0.5) / m,
                         lo.imag() + (hi.imag() - lo.imag()) * (j + 0.5) / m);
                    if (!geom::region_contains(K, z)) continue;
                    try {
                        best = std::max(best, std::abs(holo::eval(f, z)));
                    } catch (const DomainError&) {
                        // isolated removable singularity; the boundary samples
                        // carry the maximum anyway
                    }
                }
            return best;
        },
        "max_modulus_on_compact");
}

double max_modulus_on_compact(const holo::ExprPtr& f, const geom::Curve& K) {
    return refine_rel(
        [&](int n) {
            double best = 0.0;
            for (Cx z : geom::sample_curve(K, n))
                best = std::max(best, std::abs(holo::eval(f, z)));
            return best;
        },
        "max_modulus_on_compact");
}

double max_modulus_on_compact(const holo::ExprPtr& f, const cover::SurfaceRegion& K) {
    // boundary suffices: f is holomorphic on a neighborhood of the closed
    // region, so the maximum modulus principle applies sheet-wise
    return sup_modulus(f, K);
}

BernsteinData bernstein_index(const holo::ExprPtr& f, const geom::Region& K,
                              const geom::Region& U) {
    BernsteinData b;
    b.M = sup_modulus(f, U);
    b.m = max_modulus_on_compact(f, K);
    if (b.m < 1e-300)
        throw ZeroFunctionError("bernstein_index: function is (numerically) zero on K");
    b.B = std::max(0.0, std::log(b.M / b.m));
    return b;
}

BernsteinData bernstein_index(const holo::ExprPtr& f, const cover::SurfaceRegion& K,
                              const cover::SurfaceRegion& U) {
    BernsteinData b;
    b.M = sup_modulus(f, U);
    b.m = max_modulus_on_compact(f, K);
    if (b.m < 1e-300)
        throw ZeroFunctionError("bernstein_index: function is (numerically) zero on K");
    b.B = std::max(0.0, std::log(b.M / b.m));
    return b;
}

// ---------------------------------------------------------------------------
// Argument tracking

namespace {

int winding_from_loops(const std::vector<std::pair<SegEval, size_t>>& loops,
                       const char* what) {
    int n0 = 32;
    for (int attempt = 0; attempt <= max_refine_depth(); ++attempt, n0 *= 2) {
        double total = 0.0, fmin = kInf, fmax = 0.0;
        try {
            for (const auto& [eval, nseg] : loops) {
                WalkStats w = walk_arg(eval, nseg, n0, what);
                total += w.signed_sum;
                fmin = std::min(fmin, w.fmin);
                fmax = std::max(fmax, w.fmax);
            }
        } catch (const ZeroOnCurveError&) {
            throw BoundaryZeroError(std::string(what) +
                                    ": |f| below zero tolerance on the boundary");
        }
        if (fmin < 1e-9 * fmax)
            throw BoundaryZeroError(std::string(what) +
                                    ": |f| below zero tolerance on the boundary");
        double wind = total / kTwoPi;
        double nearest = std::round(wind);
        if (std::abs(wind - nearest) <= 1e-3) return int(nearest);
    }
    throw NonIntegerWindingError(std::string(what) +
                                 ": winding number did not settle on an integer");
}

}  // namespace

int count_zeros(const holo::ExprPtr& f, const geom::Region& R) {
    auto loops = geom::boundary_loops(R);
    std::vector<std::pair<SegEval, size_t>> evals;
    for (const auto& loop : loops)
        evals.push_back({curve_eval(f, loop), loop.segments.size()});
    return winding_from_loops(evals, "count_zeros");
}

int count_zeros(const holo::ExprPtr& f, const cover::SurfaceRegion& R) {
    // winding over each piece boundary: interface edges cancel in pairs by
    // the gluing consistency of the covering coordinate. Full-circle annulus
    // pieces are split at the window midpoint first: their planar boundary
    // loops have no radial edges, so f(zeta) would jump across the cut.
    std::vector<cover::SheetPiece> pieces;
    for (const auto& piece : R.pieces) {
        const auto* a = std::get_if<geom::AnnulusSector>(&piece.region.shape);
        if (R.cover.kind != cover::CoverSpec::Kind::Trivial && a &&
            std::abs(a->center - R.cover.branch_point) < 1e-12 &&
            a->a1 - a->a0 >= kTwoPi - 1e-12) {
            double mid = 0.5 * (a->a0 + a->a1);
            geom::AnnulusSector lo = *a, hi = *a;
            lo.a1 = mid;
            hi.a0 = mid;
            pieces.push_back({piece.sheet, geom::Region{lo, piece.region.open}});
            pieces.push_back({piece.sheet, geom::Region{hi, piece.region.open}});
        } else {
            pieces.push_back(piece);
        }
    }
    std::vector<geom::Curve> loops;  // keep alive for the evaluators
    std::vector<const cover::SheetPiece*> owner;
    for (const auto& piece : pieces)
        for (auto& loop : geom::boundary_loops(piece.region)) {
            loops.push_back(std::move(loop));
            owner.push_back(&piece);
        }
    std::vector<std::pair<SegEval, size_t>> evals;
    for (size_t i = 0; i < loops.size(); ++i) {
        const geom::Curve& loop = loops[i];
        const cover::SheetPiece& piece = *owner[i];
        SegEval at = [f, &loop, &piece, &R](size_t s, double t) {
            Jet2 zt = geom::segment_point(loop.segments[s], t);
            Cx zeta = piece_zeta(R.cover, piece, zt.v);
            Cx dz = piece_zeta_d1(R.cover, piece, zt.v);
            Jet2 fz = holo::eval_jet(f, zeta);
            return StepEval{fz.v, fz.d1 * dz * zt.d1};
        };
        evals.push_back({at, loop.segments.size()});
    }
    return winding_from_loops(evals, "count_zeros");
}

VarArgResult variation_of_argument(const holo::ExprPtr& f, const geom::Curve& gamma) {
    return var_from_walks(curve_eval(f, gamma), gamma.segments.size());
}

VarArgResult variation_of_argument(const holo::ExprPtr& f,
                                   const cover::SurfaceCurve& gamma) {
    return var_from_walks(surface_eval(f, gamma), gamma.base.segments.size());
}

// ---------------------------------------------------------------------------
// Closed-form bounds

double growth_zeros_bound(double B, double D, double eps) {
    return B * std::exp(2.0 * D / eps);
}

double poincare_zeros_bound(double B, double rho) { return B * std::exp(rho); }

double lemma1_bound(double Bp, double L, double D, double eps) {
    return Bp * (L / eps) * std::exp(2.0 * D / eps);
}

double lemma2_bound(double B, int d, double D, double eps) {
    return B + d * std::log(D / eps);
}

double polynomial_variation_bound(double kappa, int d) {
    return (kappa + kTwoPi) * d;
}

double lemma3_bound(double kappa, double L, double eps) {
    return kappa + 2.0 * L / eps;
}

double theorem_bound(double B, double L, double kappa, double D, double eps) {
    if (!(D / eps > 3.0))
        throw HypothesisError("theorem_bound: requires D/epsilon > 3");
    return B * (L / eps + kappa + 1.0) * std::exp(5.0 * D / eps);
}

// ---------------------------------------------------------------------------
// Checkers

BoundCheck koebe_ratio_check(const geom::ConformalMapEntry& phi,
                             const geom::Curve& gamma, double eps) {
    double g = geom::gap_curve(gamma, phi.source);
    if (g < eps - 1e-12)
        throw HypothesisError("koebe_ratio_check: gap(Gamma, source) < epsilon");
    double lhs = refine_rel(
        [&](int n) {
            double best = 0.0;
            for (Cx z : geom::sample_curve(gamma, n)) {
                Jet2 j = holo::eval_jet(phi.forward, z);
                best = std::max(best, std::abs(j.d2 / j.d1));
            }
            return best;
        },
        "koebe_ratio_check");
    double rhs = 2.0 / eps;
    return make_check("Koebe", lhs, rhs, 1e-9 * (1.0 + lhs),
                      {{"epsilon", eps}, {"gap", g}});
}

namespace {

// error budget for an exponential bound when the measured D carries an
// uncertainty: difference of the bound at D + dD and at D
double exp_bound_err(double base, double coeff, double D, double dD, double eps) {
    return base * (std::exp(coeff * (D + dD) / eps) - std::exp(coeff * D / eps));
}

// a nesting violation while measuring a gap is a failed geometric hypothesis
double measured_gap(const std::function<double()>& g, const char* what) {
    try {
        return g();
    } catch (const ContainmentError& e) {
        throw HypothesisError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

BoundCheck check_growth_and_zeros(const holo::ExprPtr& f, const geom::Region& K,
                                  const geom::Region& U, const geom::GridParams& grid) {
    double eps = geom::gap(K, U);
    geom::DiameterResult D = geom::intrinsic_diameter(K, grid);
    BernsteinData b = bernstein_index(f, K, U);
    int zeros = count_zeros(f, K);
    double rhs = growth_zeros_bound(b.B, D.value, eps);
    double err = exp_bound_err(b.B, 2.0, D.value, D.error_estimate, eps) +
                 1e-5 * (1.0 + rhs);
    return make_check("GrowthAndZeros", zeros, rhs, err,
                      {{"B", b.B},
                       {"D", D.value},
                       {"D_error", D.error_estimate},
                       {"epsilon", eps},
                       // the source statement prints the gap condition with
                       // "<= eps"; a gap *lower* bound is what the proof uses,
                       // so the measured gap enters as-is and this flag
                       // records the reading
                       {"gap_condition_read_as_lower_bound", 1.0}});
}

BoundCheck check_growth_and_zeros(const holo::ExprPtr& f,
                                  const cover::SurfaceRegion& K,
                                  const cover::SurfaceRegion& U,
                                  const geom::GridParams& grid) {
    double eps = cover::pi_gap(K, U);
    geom::DiameterResult D = cover::surface_intrinsic_diameter(K, grid);
    BernsteinData b = bernstein_index(f, K, U);
    int zeros = count_zeros(f, K);
    double rhs = growth_zeros_bound(b.B, D.value, eps);
    double err = exp_bound_err(b.B, 2.0, D.value, D.error_estimate, eps) +
                 1e-5 * (1.0 + rhs);
    return make_check("GrowthAndZeros", zeros, rhs, err,
                      {{"B", b.B},
                       {"D", D.value},
                       {"D_error", D.error_estimate},
                       {"epsilon", eps},
                       {"gap_condition_read_as_lower_bound", 1.0}});
}

namespace {

BoundCheck theorem_check_common(const std::string& name, double eps, double D,
                                double D_err, const BernsteinData& b, double L,
                                double kappa, const VarArgResult& va) {
    if (!(eps > 0.0)) throw HypothesisError(name + ": measured gap is not positive");
    if (!(D / eps > 3.0))
        throw HypothesisError(name + ": hypothesis D/epsilon > 3 fails (D/epsilon = " +
                              std::to_string(D / eps) + ")");
    double rhs = theorem_bound(b.B, L, kappa, D, eps);
    double err = va.error_estimate +
                 exp_bound_err(b.B * (L / eps + kappa + 1.0), 5.0, D, D_err, eps) +
                 1e-5 * (1.0 + rhs);
    // the source's final display absorbs the proof's "+ 2pi" into "+ 1"; both
    // forms are recorded, and the discrepancy between the two displays is
    // flagged (the intermediate form is strictly larger, so it holds whenever
    // the stated form does)
    double rhs_2pi = b.B * (L / eps + kappa + kTwoPi) * std::exp(5.0 * D / eps);
    bool holds_2pi = va.value <= rhs_2pi * (1.0 + 1e-6) + err;
    BoundCheck c = make_check(name, va.value, rhs, err,
                              {{"B", b.B},
                               {"D", D},
                               {"D_error", D_err},
                               {"epsilon", eps},
                               {"gamma_length", L},
                               {"kappa", kappa},
                               {"lhs_error", va.error_estimate},
                               {"rhs_intermediate_2pi", rhs_2pi},
                               {"intermediate_form_holds", holds_2pi ? 1.0 : 0.0},
                               {"stated_vs_intermediate_differ", rhs_2pi != rhs ? 1.0 : 0.0}});
    return c;
}

}  // namespace

BoundCheck check_theorem1(const holo::ExprPtr& f, const geom::Curve& gamma,
                          const geom::Region& U2, const geom::Region& U1,
                          const geom::Region& U, const geom::GridParams& grid) {
    double eps = measured_gap(
        [&] {
            return std::min({geom::gap_curve(gamma, U2), geom::gap(U2, U1),
                             geom::gap(U1, U)});
        },
        "check_theorem1");
    geom::DiameterResult d2 = geom::intrinsic_diameter(U2, grid);
    geom::DiameterResult d1 = geom::intrinsic_diameter(U1, grid);
    double D = std::max(d2.value, d1.value);
    double D_err = std::max(d2.error_estimate, d1.error_estimate);
    BernsteinData b = bernstein_index(f, U2, U);
    double L = geom::curve_length(gamma);
    double kappa = geom::total_curvature(gamma);
    VarArgResult va = variation_of_argument(f, gamma);
    return theorem_check_common("Theorem1", eps, D, D_err, b, L, kappa, va);
}

BoundCheck check_theorem2(const holo::ExprPtr& f, const cover::SurfaceCurve& gamma,
                          const cover::SurfaceRegion& U2,
                          const cover::SurfaceRegion& U1,
                          const cover::SurfaceRegion& U, const geom::GridParams& grid) {
    double eps = measured_gap(
        [&] {
            return std::min({cover::pi_gap(gamma, U2), cover::pi_gap(U2, U1),
                             cover::pi_gap(U1, U)});
        },
        "check_theorem2");
    geom::DiameterResult d2 = cover::surface_intrinsic_diameter(U2, grid);
    geom::DiameterResult d1 = cover::surface_intrinsic_diameter(U1, grid);
    double D = std::max(d2.value, d1.value);
    double D_err = std::max(d2.error_estimate, d1.error_estimate);
    BernsteinData b = bernstein_index(f, U2, U);
    // the surface metric is the pullback of the planar one, so length and
    // curvature coincide with those of the projected curve
    double L = geom::curve_length(gamma.base);
    double kappa = geom::total_curvature(gamma.base);
    VarArgResult va = variation_of_argument(f, gamma);
    return theorem_check_common("Theorem2", eps, D, D_err, b, L, kappa, va);
}

BoundCheck check_lemma1(const holo::ExprPtr& f, const geom::Curve& gamma,
                        const geom::Region& U2, const geom::Region& U1,
                        const geom::GridParams& grid) {
    if (count_zeros(f, U1) != 0)
        throw HypothesisError("check_lemma1: f has zeros in U' (must be nowhere zero)");
    double eps = measured_gap(
        [&] { return std::min(geom::gap_curve(gamma, U2), geom::gap(U2, U1)); },
        "check_lemma1");
    if (!(eps > 0.0)) throw HypothesisError("check_lemma1: measured gap is not positive");
    geom::DiameterResult d2 = geom::intrinsic_diameter(U2, grid);
    geom::DiameterResult d1 = geom::intrinsic_diameter(U1, grid);
    double D = std::max(d2.value, d1.value);
    double D_err = std::max(d2.error_estimate, d1.error_estimate);
    BernsteinData b = bernstein_index(f, U2, U1);
    double L = geom::curve_length(gamma);
    VarArgResult va = variation_of_argument(f, gamma);
    double rhs = lemma1_bound(b.B, L, D, eps);
    double err = va.error_estimate + exp_bound_err(b.B * L / eps, 2.0, D, D_err, eps) +
                 1e-5 * (1.0 + rhs);
    return make_check("Lemma1", va.value, rhs, err,
                      {{"B_prime", b.B},
                       {"D", D},
                       {"D_error", D_err},
                       {"epsilon", eps},
                       {"gamma_length", L},
                       {"lhs_error", va.error_estimate}});
}

BoundCheck check_lemma2(const holo::ExprPtr& f, const std::vector<Cx>& p_roots,
                        const geom::Region& U2, const geom::Region& U1,
                        const geom::Region& U, const geom::GridParams& grid) {
    for (Cx r : p_roots)
        if (!geom::region_contains(U1, r))
            throw HypothesisError("check_lemma2: a root of p lies outside U'");
    double eps = measured_gap(
        [&] { return std::min(geom::gap(U2, U1), geom::gap(U1, U)); },
        "check_lemma2");
    geom::DiameterResult d2 = geom::intrinsic_diameter(U2, grid);
    geom::DiameterResult d1 = geom::intrinsic_diameter(U1, grid);
    double D = std::max(d2.value, d1.value);
    double D_err = std::max(d2.error_estimate, d1.error_estimate);
    if (!(D / eps > 1.0))
        throw HypothesisError("check_lemma2: requires D/epsilon > 1");
    int d = int(p_roots.size());
    holo::ExprPtr F = holo::quotient(f, holo::from_roots(p_roots));
    BernsteinData bf = bernstein_index(f, U2, U);
    BernsteinData bF = bernstein_index(F, U2, U);
    double rhs = lemma2_bound(bf.B, d, D, eps);
    double err = d * (std::log(D + D_err) - std::log(D)) + 1e-5 * (1.0 + std::abs(rhs));
    return make_check("Lemma2", bF.B, rhs, err,
                      {{"B", bf.B},
                       {"B_F", bF.B},
                       {"D", D},
                       {"D_error", D_err},
                       {"epsilon", eps},
                       {"degree", double(d)}});
}

geom::Curve image_curve(const holo::ExprPtr& phi, const geom::Curve& gamma) {
    const Cx I(0.0, 1.0);
    geom::Curve out;
    for (const auto& seg : gamma.segments) {
        holo::ExprPtr base;
        if (const auto* l = std::get_if<geom::LineSeg>(&seg)) {
            base = holo::affine(l->q - l->p, l->p);
        } else if (const auto* a = std::get_if<geom::ArcSeg>(&seg)) {
            base = holo::compose(holo::affine(a->radius, a->center),
                                 holo::exponential(holo::affine(I * (a->a1 - a->a0),
                                                                I * a->a0)));
        } else {
            base = std::get<geom::AnalyticSeg>(seg).path;
        }
        out.segments.push_back(geom::AnalyticSeg{holo::compose(phi, base)});
    }
    return out;
}

BoundCheck check_lemma3(const geom::ConformalMapEntry& phi, const geom::Curve& gamma,
                        double eps) {
    double g = geom::gap_curve(gamma, phi.source);
    if (g < eps - 1e-12)
        throw HypothesisError("check_lemma3: gap(Gamma, source) < epsilon");
    double kappa = geom::total_curvature(gamma);
    double L = geom::curve_length(gamma);
    double lhs = geom::total_curvature(image_curve(phi.forward, gamma));
    double rhs = lemma3_bound(kappa, L, eps);
    return make_check("Lemma3", lhs, rhs, 1e-6 * (1.0 + lhs),
                      {{"kappa", kappa}, {"gamma_length", L}, {"epsilon", eps},
                       {"gap", g}});
}

BoundCheck check_submultiplicativity(const holo::ExprPtr& f, const holo::ExprPtr& p,
                                     const geom::Curve& gamma) {
    holo::ExprPtr F = holo::quotient(f, p);
    VarArgResult vf = variation_of_argument(f, gamma);
    VarArgResult vF = variation_of_argument(F, gamma);
    VarArgResult vp = variation_of_argument(p, gamma);
    double rhs = vF.value + vp.value;
    double err = vf.error_estimate + vF.error_estimate + vp.error_estimate + 1e-6;
    return make_check("Eq14", vf.value, rhs, err,
                      {{"V_F", vF.value},
                       {"V_p", vp.value},
                       {"lhs_error", vf.error_estimate}});
}

}  // namespace argvar::bounds
