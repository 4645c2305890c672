#pragma once

/**
 * @file expr.hpp
 * @brief Arithmetic expressions in one variable `t`.
 *
 * Grammar (whitespace is insignificant):
 *
 *     expr    := term (("+" | "-") term)*
 *     term    := unary (("*" | "/") unary)*
 *     unary   := "-" unary | power
 *     power   := primary ("^" power)?          right-associative
 *     primary := number | "t" | "pi" | "e"
 *              | ("abs"|"exp"|"ln"|"sqrt"|"sin"|"cos") "(" expr ")"
 *              | "pow" "(" expr "," expr ")"
 *              | "(" expr ")"
 *
 * An exponent may not begin with unary minus: `2^-t` is rejected, `2^(-t)` is
 * accepted. Unary minus binds looser than `^`, so `-t^2` is `-(t^2)`.
 */

#include "norlund/operators.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace norlund::expr {

enum class Constant { Pi, E };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Abs, Exp, Ln, Sqrt, Sin, Cos };

struct Node;

/// Immutable, shareable expression tree. Equality is structural.
class Expr {
public:
    static Expr number(double value);
    static Expr variable();
    static Expr constant(Constant c);
    static Expr negate(Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr call(Function fn, Expr argument);
    /// The two-argument function form pow(x, y), distinct from x^y.
    static Expr pow_call(Expr base, Expr exponent);

    const Node& node() const noexcept { return *node_; }

    friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct NumberNode {
    double value;
};
struct VariableNode {};
struct ConstantNode {
    Constant which;
};
struct NegateNode {
    Expr operand;
};
struct BinaryNode {
    BinaryOp op;
    Expr lhs;
    Expr rhs;
};
struct CallNode {
    Function fn;
    Expr argument;
};
struct PowCallNode {
    Expr base;
    Expr exponent;
};

struct Node {
    std::variant<NumberNode, VariableNode, ConstantNode, NegateNode, BinaryNode, CallNode, PowCallNode>
        value;
};

/// Throws SyntaxError (with byte offset and expected tokens) or UnknownIdentifier.
Expr parse(std::string_view text);

/// Throws DomainFault for ln/sqrt outside their domain, division by zero,
/// 0 to a negative power, a negative base with a non-integer exponent, and
/// any other non-finite intermediate.
double evaluate(const Expr& e, double t);

/// Minimal-parenthesis rendering; parse(format(e)) == e for parsed trees.
std::string format(const Expr& e);

RealFunction to_function(Expr e);

} // namespace norlund::expr
