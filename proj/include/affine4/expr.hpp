#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "affine4/errors.hpp"
#include "affine4/jet.hpp"

namespace affine4 {

/// Expression grammar (EBNF):
///   expr   := term (("+"|"-") term)*
///   term   := unary (("*"|"/") unary)*
///   unary  := "-" unary | factor
///   factor := base ("^" integer)?
///   base   := number | variable | ident "(" expr ")" | "(" expr ")"
///   ident in {sin, cos, exp, log, sqrt}
/// Immersions use variables {u, v}; hypersurface graphs use {x, y, z}.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprFunc { Sin, Cos, Exp, Log, Sqrt };

struct Expr {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double number = 0.0;  // Number
    int var = 0;          // Var: index into the variable list
    int exponent = 0;     // Pow
    ExprFunc func = ExprFunc::Sin;
    ExprPtr a, b;
};

ExprPtr make_number(double value);
ExprPtr make_var(int index);
ExprPtr make_neg(ExprPtr a);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_div(ExprPtr a, ExprPtr b);
ExprPtr make_pow(ExprPtr a, int exponent);
ExprPtr make_call(ExprFunc f, ExprPtr a);

/// Parse with the given variable names (e.g. {"u","v"}). Throws ParseError /
/// UnknownIdentifier.
ExprPtr parse_expr(std::string_view text, std::span<const std::string> variables);

/// Fully parenthesized form; parse(print(e)) reproduces e node for node.
std::string print_expr(const ExprPtr& e, std::span<const std::string> variables);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Symbolic partial derivative with light constant folding.
ExprPtr differentiate(const ExprPtr& e, int var);

/// Evaluate with scalar = double or Jet3; vars[i] feeds variable i.
template <class T>
T eval_expr(const ExprPtr& e, std::span<const T> vars);

extern template double eval_expr<double>(const ExprPtr&, std::span<const double>);
extern template Jet3 eval_expr<Jet3>(const ExprPtr&, std::span<const Jet3>);

}  // namespace affine4
