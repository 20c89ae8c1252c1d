#include "argvar/holo.hpp"

#include <utility>

#include "argvar/errors.hpp"

namespace argvar::holo {

namespace {

ExprPtr make(Node n) { return std::make_shared<const Expr>(std::move(n)); }

struct JetEval {
    Cx z;
    double zero_tol;

    Jet2 operator()(const ConstNode& n) const { return Jet2::constant(n.value); }
    Jet2 operator()(const CoordNode&) const { return Jet2::coordinate(z); }
    Jet2 operator()(const SumNode& n) const { return run(n.lhs) + run(n.rhs); }
    Jet2 operator()(const ProductNode& n) const { return run(n.lhs) * run(n.rhs); }
    Jet2 operator()(const QuotientNode& n) const {
        Jet2 den = run(n.den);
        if (std::abs(den.v) <= zero_tol)
            throw DomainError("quotient denominator vanishes at z=(" +
                              std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")");
        return run(n.num) / den;
    }
    Jet2 operator()(const IntPowNode& n) const { return jet_ipow(run(n.base), n.exponent); }
    Jet2 operator()(const ExpNode& n) const { return jet_exp(run(n.arg)); }
    Jet2 operator()(const LogNode& n) const {
        Jet2 u = run(n.arg);
        if (std::abs(u.v) <= zero_tol)
            throw DomainError("log argument vanishes at z=(" +
                              std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")");
        return jet_log(u, n.branch);
    }
    Jet2 operator()(const AffineNode& n) const { return {n.a * z + n.b, n.a, 0.0}; }
    Jet2 operator()(const RootsNode& n) const {
        Jet2 acc = Jet2::constant(1.0);
        for (Cx r : n.roots) acc = acc * Jet2{z - r, 1.0, 0.0};
        return acc;
    }
    Jet2 operator()(const ComposeNode& n) const {
        Jet2 inner = run(n.inner);
        Jet2 outer = eval_jet(n.outer, inner.v, zero_tol);
        return jet_compose(outer, inner);
    }

    Jet2 run(const ExprPtr& e) const { return std::visit(*this, e->node()); }
};

}  // namespace

ExprPtr constant(Cx c) { return make(ConstNode{c}); }
ExprPtr coordinate() { return make(CoordNode{}); }
ExprPtr sum(ExprPtr a, ExprPtr b) { return make(SumNode{std::move(a), std::move(b)}); }
ExprPtr product(ExprPtr a, ExprPtr b) { return make(ProductNode{std::move(a), std::move(b)}); }
ExprPtr quotient(ExprPtr num, ExprPtr den) { return make(QuotientNode{std::move(num), std::move(den)}); }

ExprPtr int_pow(ExprPtr base, int exponent) {
    if (exponent < 0) throw DomainError("int_pow exponent must be >= 0; use quotient");
    return make(IntPowNode{std::move(base), exponent});
}

ExprPtr exponential(ExprPtr arg) { return make(ExpNode{std::move(arg)}); }
ExprPtr logarithm(ExprPtr arg, int branch) { return make(LogNode{std::move(arg), branch}); }
ExprPtr affine(Cx a, Cx b) { return make(AffineNode{a, b}); }
ExprPtr from_roots(std::vector<Cx> roots) { return make(RootsNode{std::move(roots)}); }
ExprPtr compose(ExprPtr outer, ExprPtr inner) { return make(ComposeNode{std::move(outer), std::move(inner)}); }

Jet2 eval_jet(const ExprPtr& f, Cx z, double zero_tol) {
    return JetEval{z, zero_tol}.run(f);
}

Cx log_derivative(const ExprPtr& f, Cx z, double zero_tol) {
    Jet2 j = eval_jet(f, z, zero_tol);
    if (std::abs(j.v) <= zero_tol)
        throw ZeroValueError("log_derivative: |f(z)| below zero tolerance");
    return j.d1 / j.v;
}

}  // namespace argvar::holo
