#pragma once

#include <map>
#include <string>
#include <vector>

#include "argvar/cover.hpp"
#include "argvar/geom.hpp"

namespace argvar::bounds {

/// Bernstein index data: B = log(M/m) with M the sup of |f| over the domain U
/// and m the max of |f| over the compact K.
struct BernsteinData {
    double M = 0.0;
    double m = 0.0;
    double B = 0.0;
};

struct VarArgResult {
    double value = 0.0;  // radians
    int depth = 0;       // deepest adaptive subdivision level used
    double error_estimate = 0.0;
    operator double() const { return value; }
};

/// One verified inequality: holds iff lhs <= rhs * (1 + 1e-6) + error budget.
struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    bool holds = false;
    std::map<std::string, double> inputs;  // measured quantities digest
};

BoundCheck make_check(const std::string& name, double lhs, double rhs,
                      double error_budget,
                      std::map<std::string, double> inputs = {});

// --- moduli and Bernstein index ---------------------------------------------

/// sup over U of |f|, located on the boundary by the maximum-modulus
/// principle; boundary sampling doubled until relative 1e-6 agreement.
double sup_modulus(const holo::ExprPtr& f, const geom::Region& U);
double sup_modulus(const holo::ExprPtr& f, const cover::SurfaceRegion& U);

/// max over the compact K of |f| (boundary + interior samples for regions,
/// direct samples for curves).
double max_modulus_on_compact(const holo::ExprPtr& f, const geom::Region& K);
double max_modulus_on_compact(const holo::ExprPtr& f, const geom::Curve& K);
double max_modulus_on_compact(const holo::ExprPtr& f, const cover::SurfaceRegion& K);

BernsteinData bernstein_index(const holo::ExprPtr& f, const geom::Region& K,
                              const geom::Region& U);
BernsteinData bernstein_index(const holo::ExprPtr& f, const cover::SurfaceRegion& K,
                              const cover::SurfaceRegion& U);

// --- argument tracking -------------------------------------------------------

/// Number of zeros of f in R counted with multiplicity, via branch-continued
/// winding of f along the oriented boundary loops.
int count_zeros(const holo::ExprPtr& f, const geom::Region& R);
int count_zeros(const holo::ExprPtr& f, const cover::SurfaceRegion& R);

/// Total variation of a continuous branch of arg(f) along the curve.
VarArgResult variation_of_argument(const holo::ExprPtr& f, const geom::Curve& gamma);

/// Surface version: f is a function of the covering coordinate.
VarArgResult variation_of_argument(const holo::ExprPtr& f,
                                   const cover::SurfaceCurve& gamma);

// --- closed-form bounds ------------------------------------------------------

double growth_zeros_bound(double B, double D, double eps);       // B e^{2D/eps}
double poincare_zeros_bound(double B, double rho);               // B e^rho
double lemma1_bound(double Bp, double L, double D, double eps);  // B'(L/eps)e^{2D/eps}
double lemma2_bound(double B, int d, double D, double eps);      // B + d log(D/eps)
double polynomial_variation_bound(double kappa, int d);          // (kappa+2pi)d
double lemma3_bound(double kappa, double L, double eps);         // kappa + 2L/eps
/// B(L/eps + kappa + 1)e^{5D/eps}; throws HypothesisError unless D/eps > 3.
double theorem_bound(double B, double L, double kappa, double D, double eps);

// --- inequality checkers (epsilon and D always measured, never supplied) -----

BoundCheck koebe_ratio_check(const geom::ConformalMapEntry& phi,
                             const geom::Curve& gamma, double eps);

BoundCheck check_growth_and_zeros(const holo::ExprPtr& f, const geom::Region& K,
                                  const geom::Region& U, const geom::GridParams& grid);
BoundCheck check_growth_and_zeros(const holo::ExprPtr& f,
                                  const cover::SurfaceRegion& K,
                                  const cover::SurfaceRegion& U,
                                  const geom::GridParams& grid);

BoundCheck check_theorem1(const holo::ExprPtr& f, const geom::Curve& gamma,
                          const geom::Region& U2, const geom::Region& U1,
                          const geom::Region& U, const geom::GridParams& grid);
BoundCheck check_theorem2(const holo::ExprPtr& f, const cover::SurfaceCurve& gamma,
                          const cover::SurfaceRegion& U2,
                          const cover::SurfaceRegion& U1,
                          const cover::SurfaceRegion& U, const geom::GridParams& grid);

BoundCheck check_lemma1(const holo::ExprPtr& f, const geom::Curve& gamma,
                        const geom::Region& U2, const geom::Region& U1,
                        const geom::GridParams& grid);

BoundCheck check_lemma2(const holo::ExprPtr& f, const std::vector<Cx>& p_roots,
                        const geom::Region& U2, const geom::Region& U1,
                        const geom::Region& U, const geom::GridParams& grid);

BoundCheck check_lemma3(const geom::ConformalMapEntry& phi, const geom::Curve& gamma,
                        double eps);

BoundCheck check_submultiplicativity(const holo::ExprPtr& f, const holo::ExprPtr& p,
                                     const geom::Curve& gamma);

/// The analytic image curve phi(gamma) (used by check_lemma3, exposed for
/// tests): each base segment becomes an AnalyticSeg through composition.
geom::Curve image_curve(const holo::ExprPtr& phi, const geom::Curve& gamma);

}  // namespace argvar::bounds
