#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "argvar/jet.hpp"

namespace argvar::holo {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct ConstNode { Cx value; };
struct CoordNode {};
struct SumNode { ExprPtr lhs, rhs; };
struct ProductNode { ExprPtr lhs, rhs; };
struct QuotientNode { ExprPtr num, den; };
struct IntPowNode { ExprPtr base; int exponent; };
struct ExpNode { ExprPtr arg; };
struct LogNode { ExprPtr arg; int branch; };   // principal branch + 2*pi*i*branch
struct AffineNode { Cx a, b; };                // z -> a*z + b
struct RootsNode { std::vector<Cx> roots; };   // monic, prod (z - r_j)
struct ComposeNode { ExprPtr outer, inner; };  // z -> outer(inner(z))

using Node = std::variant<ConstNode, CoordNode, SumNode, ProductNode,
                          QuotientNode, IntPowNode, ExpNode, LogNode,
                          AffineNode, RootsNode, ComposeNode>;

class Expr {
  public:
    explicit Expr(Node n) : node_(std::move(n)) {}
    const Node& node() const { return node_; }

  private:
    Node node_;
};

ExprPtr constant(Cx c);
ExprPtr coordinate();
ExprPtr sum(ExprPtr a, ExprPtr b);
ExprPtr product(ExprPtr a, ExprPtr b);
ExprPtr quotient(ExprPtr num, ExprPtr den);
ExprPtr int_pow(ExprPtr base, int exponent);  // exponent >= 0
ExprPtr exponential(ExprPtr arg);
ExprPtr logarithm(ExprPtr arg, int branch = 0);
ExprPtr affine(Cx a, Cx b);
ExprPtr from_roots(std::vector<Cx> roots);
ExprPtr compose(ExprPtr outer, ExprPtr inner);

inline constexpr double kDefaultZeroTol = 1e-12;

/// Evaluates f and its first two derivatives at z by jet propagation.
/// Throws DomainError when a quotient denominator or log argument falls
/// below zero_tol in modulus.
Jet2 eval_jet(const ExprPtr& f, Cx z, double zero_tol = kDefaultZeroTol);

inline Cx eval(const ExprPtr& f, Cx z, double zero_tol = kDefaultZeroTol) {
    return eval_jet(f, z, zero_tol).v;
}

/// f'(z)/f(z); throws ZeroValueError if |f(z)| <= zero_tol.
Cx log_derivative(const ExprPtr& f, Cx z, double zero_tol = kDefaultZeroTol);

}  // namespace argvar::holo
