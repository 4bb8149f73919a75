#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dode/dyadic.hpp"

namespace dode {

/// AST of sg-polynomial expressions: +, -, x, the sg-bar ramp and exact
/// halving over named variables and integer constants.  Immutable and
/// cheaply shareable.
class Expr {
public:
    enum class Kind { Var, Int, Add, Sub, Mul, SgnBar, Div2 };

    static Expr var(std::string name);
    static Expr integer(Int value);
    static Expr integer(long value) { return integer(Int(value)); }
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr sgnbar(Expr a);
    static Expr div2(Expr a);

    Kind kind() const;
    const std::string& name() const;  // Var
    const Int& value() const;         // Int
    Expr lhs() const;                 // Add/Sub/Mul
    Expr rhs() const;                 // Add/Sub/Mul
    Expr arg() const;                 // SgnBar/Div2

    friend Expr operator+(Expr a, Expr b) { return add(std::move(a), std::move(b)); }
    friend Expr operator-(Expr a, Expr b) { return sub(std::move(a), std::move(b)); }
    friend Expr operator*(Expr a, Expr b) { return mul(std::move(a), std::move(b)); }

    struct Node; // definition private to the implementation

private:
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

using Env = std::map<std::string, Dyadic>;

/// The sg-bar ramp: 0 for x <= 1/4, 1 for x >= 3/4, 2(x - 1/4) between.
Dyadic sgnbar_value(const Dyadic& x);

/// Exact evaluation; throws UnboundVariable.
Dyadic eval_expr(const Expr& e, const Env& env);
std::vector<Dyadic> eval_exprs(const std::vector<Expr>& es, const Env& env);

/// Inductive degree of variable x in e; sg-bar scopes contribute 0 and
/// div2 is degree-transparent.
long degree(const Expr& e, const std::string& x);

bool is_essentially_constant(const Expr& e, const std::vector<std::string>& vars);

/// Free variables of e, in first-occurrence order.
std::vector<std::string> free_vars(const Expr& e);

/// A[i][j] * f_j + B[i] decomposition with A, B essentially constant in
/// the target variables.
struct LinearDecomposition {
    std::vector<std::vector<Expr>> A; // one row per component, one column per target
    std::vector<Expr> B;
    std::vector<std::string> targets;
};

/// Collects each component into A.f + B form; throws NotEssentiallyLinear
/// when a component is syntactically of degree >= 2 in the targets.
LinearDecomposition decompose_linear(const std::vector<Expr>& components,
                                     const std::vector<std::string>& targets);

/// If(b, t, e) macro: sgb(b)*t + (1 - sgb(b))*e.
Expr build_if(Expr b, Expr t, Expr e);

/// An expression equal to s on each guaranteed range [s, s + width) for
/// the non-zero sentinels, and to 0 at 0.  Sentinels must be strictly
/// increasing non-negative integers; throws RangesOverlap when the ranges
/// are too close for exact sg-bar separation.
Expr build_selector(const Expr& input, const std::vector<Int>& sentinels,
                    const Dyadic& width = Dyadic(1));

/// input - selector(input): the fractional-part surrogate on the ranges.
Expr build_sigma(const Expr& input, const std::vector<Int>& sentinels,
                 const Dyadic& width = Dyadic(1));

/// Capture-free variable substitution.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl);

/// Surface syntax (infix + - *, sgb(e), half(e), if(b; t; e)).
std::string to_string(const Expr& e);

} // namespace dode
