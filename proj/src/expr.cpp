#include "affine4/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace affine4 {

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_number(const ExprPtr& e, double v) { return e->kind == Expr::Kind::Number && e->number == v; }

const char* func_name(ExprFunc f) {
    switch (f) {
        case ExprFunc::Sin: return "sin";
        case ExprFunc::Cos: return "cos";
        case ExprFunc::Exp: return "exp";
        case ExprFunc::Log: return "log";
        case ExprFunc::Sqrt: return "sqrt";
    }
    return "?";
}

}  // namespace

ExprPtr make_number(double value) { return node({.kind = Expr::Kind::Number, .number = value}); }
ExprPtr make_var(int index) { return node({.kind = Expr::Kind::Var, .var = index}); }

ExprPtr make_neg(ExprPtr a) {
    if (a->kind == Expr::Kind::Number) return make_number(-a->number);
    return node({.kind = Expr::Kind::Neg, .a = std::move(a)});
}

ExprPtr make_add(ExprPtr a, ExprPtr b) {
    if (is_number(a, 0.0)) return b;
    if (is_number(b, 0.0)) return a;
    if (a->kind == Expr::Kind::Number && b->kind == Expr::Kind::Number) return make_number(a->number + b->number);
    return node({.kind = Expr::Kind::Add, .a = std::move(a), .b = std::move(b)});
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
    if (is_number(b, 0.0)) return a;
    if (a->kind == Expr::Kind::Number && b->kind == Expr::Kind::Number) return make_number(a->number - b->number);
    if (is_number(a, 0.0)) return make_neg(std::move(b));
    return node({.kind = Expr::Kind::Sub, .a = std::move(a), .b = std::move(b)});
}

ExprPtr make_mul(ExprPtr a, ExprPtr b) {
    if (is_number(a, 0.0) || is_number(b, 0.0)) return make_number(0.0);
    if (is_number(a, 1.0)) return b;
    if (is_number(b, 1.0)) return a;
    if (a->kind == Expr::Kind::Number && b->kind == Expr::Kind::Number) return make_number(a->number * b->number);
    return node({.kind = Expr::Kind::Mul, .a = std::move(a), .b = std::move(b)});
}

ExprPtr make_div(ExprPtr a, ExprPtr b) {
    if (is_number(a, 0.0)) return make_number(0.0);
    if (is_number(b, 1.0)) return a;
    return node({.kind = Expr::Kind::Div, .a = std::move(a), .b = std::move(b)});
}

ExprPtr make_pow(ExprPtr a, int exponent) {
    if (exponent == 0) return make_number(1.0);
    if (exponent == 1) return a;
    return node({.kind = Expr::Kind::Pow, .exponent = exponent, .a = std::move(a)});
}

ExprPtr make_call(ExprFunc f, ExprPtr a) { return node({.kind = Expr::Kind::Call, .func = f, .a = std::move(a)}); }

namespace {

class Parser {
  public:
    Parser(std::string_view text, std::span<const std::string> vars) : text_(text), vars_(vars) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input or an operator");
        return e;
    }

  private:
    std::string_view text_;
    std::span<const std::string> vars_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) { throw ParseError(pos_, expected); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+')) {
                e = make_add(e, term());
            } else if (eat('-')) {
                e = make_sub(e, term());
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            if (eat('*')) {
                e = make_mul(e, unary());
            } else if (eat('/')) {
                e = make_div(e, unary());
            } else {
                return e;
            }
        }
    }

    ExprPtr unary() {
        if (eat('-')) return make_neg(unary());
        return factor();
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (eat('^')) return make_pow(b, integer());
        return b;
    }

    int integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            fail("an integer exponent");
        }
        int value = 0;
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
        return value;
    }

    ExprPtr base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("a number, a variable, a function call or '('");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!eat(')')) fail("')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        fail("a number, a variable, a function call or '('");
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // 'e' belongs to something else; not part of the number
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc()) {
            pos_ = start;
            fail("a number");
        }
        return make_number(value);
    }

    ExprPtr ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (name == vars_[i]) return make_var(static_cast<int>(i));
        }
        const ExprFunc funcs[] = {ExprFunc::Sin, ExprFunc::Cos, ExprFunc::Exp, ExprFunc::Log, ExprFunc::Sqrt};
        for (ExprFunc f : funcs) {
            if (name == func_name(f)) {
                if (!eat('(')) fail("'(' after function name");
                ExprPtr arg = expr();
                if (!eat(')')) fail("')'");
                return make_call(f, arg);
            }
        }
        throw UnknownIdentifier(name, start);
    }
};

}  // namespace

ExprPtr parse_expr(std::string_view text, std::span<const std::string> variables) {
    return Parser(text, variables).run();
}

std::string print_expr(const ExprPtr& e, std::span<const std::string> variables) {
    switch (e->kind) {
        case Expr::Kind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e->number);
            if (e->number < 0.0) return "(0-" + std::string(buf + 1) + ")";
            return buf;
        }
        case Expr::Kind::Var:
            return variables[static_cast<std::size_t>(e->var)];
        case Expr::Kind::Neg:
            return "(-" + print_expr(e->a, variables) + ")";
        case Expr::Kind::Add:
            return "(" + print_expr(e->a, variables) + "+" + print_expr(e->b, variables) + ")";
        case Expr::Kind::Sub:
            return "(" + print_expr(e->a, variables) + "-" + print_expr(e->b, variables) + ")";
        case Expr::Kind::Mul:
            return "(" + print_expr(e->a, variables) + "*" + print_expr(e->b, variables) + ")";
        case Expr::Kind::Div:
            return "(" + print_expr(e->a, variables) + "/" + print_expr(e->b, variables) + ")";
        case Expr::Kind::Pow:
            return "(" + print_expr(e->a, variables) + ")^" + std::to_string(e->exponent);
        case Expr::Kind::Call:
            return std::string(func_name(e->func)) + "(" + print_expr(e->a, variables) + ")";
    }
    return "?";
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Number: return a->number == b->number;
        case Expr::Kind::Var: return a->var == b->var;
        case Expr::Kind::Neg: return expr_equal(a->a, b->a);
        case Expr::Kind::Pow: return a->exponent == b->exponent && expr_equal(a->a, b->a);
        case Expr::Kind::Call: return a->func == b->func && expr_equal(a->a, b->a);
        default: return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
    }
}

ExprPtr differentiate(const ExprPtr& e, int var) {
    switch (e->kind) {
        case Expr::Kind::Number:
            return make_number(0.0);
        case Expr::Kind::Var:
            return make_number(e->var == var ? 1.0 : 0.0);
        case Expr::Kind::Neg:
            return make_neg(differentiate(e->a, var));
        case Expr::Kind::Add:
            return make_add(differentiate(e->a, var), differentiate(e->b, var));
        case Expr::Kind::Sub:
            return make_sub(differentiate(e->a, var), differentiate(e->b, var));
        case Expr::Kind::Mul:
            return make_add(make_mul(differentiate(e->a, var), e->b), make_mul(e->a, differentiate(e->b, var)));
        case Expr::Kind::Div:
            // (a/b)' = a'/b - a b'/b^2
            return make_sub(make_div(differentiate(e->a, var), e->b),
                            make_div(make_mul(e->a, differentiate(e->b, var)), make_pow(e->b, 2)));
        case Expr::Kind::Pow:
            return make_mul(make_mul(make_number(e->exponent), make_pow(e->a, e->exponent - 1)),
                            differentiate(e->a, var));
        case Expr::Kind::Call: {
            ExprPtr da = differentiate(e->a, var);
            switch (e->func) {
                case ExprFunc::Sin: return make_mul(make_call(ExprFunc::Cos, e->a), da);
                case ExprFunc::Cos: return make_neg(make_mul(make_call(ExprFunc::Sin, e->a), da));
                case ExprFunc::Exp: return make_mul(make_call(ExprFunc::Exp, e->a), da);
                case ExprFunc::Log: return make_div(da, e->a);
                case ExprFunc::Sqrt:
                    return make_div(da, make_mul(make_number(2.0), make_call(ExprFunc::Sqrt, e->a)));
            }
            return make_number(0.0);
        }
    }
    return make_number(0.0);
}

namespace {

template <class T>
T apply_func(ExprFunc f, const T& x) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    switch (f) {
        case ExprFunc::Sin: return sin(x);
        case ExprFunc::Cos: return cos(x);
        case ExprFunc::Exp: return exp(x);
        case ExprFunc::Log: return log(x);
        case ExprFunc::Sqrt: return sqrt(x);
    }
    return x;
}

double pow_int_scalar(double x, int n) {
    if (n < 0) {
        if (x == 0.0) throw DomainError("zero raised to a negative power");
        return 1.0 / pow_int_scalar(x, -n);
    }
    double r = 1.0, b = x;
    unsigned e = static_cast<unsigned>(n);
    while (e > 0) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

double checked_log(double x) {
    if (!(x > 0.0)) throw DomainError("log of non-positive value");
    return std::log(x);
}
double checked_sqrt(double x) {
    if (!(x > 0.0)) throw DomainError("sqrt of non-positive value");
    return std::sqrt(x);
}
double checked_div(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
}

}  // namespace

template <class T>
T eval_expr(const ExprPtr& e, std::span<const T> vars) {
    switch (e->kind) {
        case Expr::Kind::Number: return T(e->number);
        case Expr::Kind::Var: return vars[static_cast<std::size_t>(e->var)];
        case Expr::Kind::Neg: return -eval_expr(e->a, vars);
        case Expr::Kind::Add: return eval_expr(e->a, vars) + eval_expr(e->b, vars);
        case Expr::Kind::Sub: return eval_expr(e->a, vars) - eval_expr(e->b, vars);
        case Expr::Kind::Mul: return eval_expr(e->a, vars) * eval_expr(e->b, vars);
        case Expr::Kind::Div: {
            if constexpr (std::is_same_v<T, double>) {
                return checked_div(eval_expr(e->a, vars), eval_expr(e->b, vars));
            } else {
                return eval_expr(e->a, vars) / eval_expr(e->b, vars);
            }
        }
        case Expr::Kind::Pow: {
            if constexpr (std::is_same_v<T, double>) {
                return pow_int_scalar(eval_expr(e->a, vars), e->exponent);
            } else {
                return pow_int(eval_expr(e->a, vars), e->exponent);
            }
        }
        case Expr::Kind::Call: {
            if constexpr (std::is_same_v<T, double>) {
                const double x = eval_expr(e->a, vars);
                switch (e->func) {
                    case ExprFunc::Log: return checked_log(x);
                    case ExprFunc::Sqrt: return checked_sqrt(x);
                    default: return apply_func(e->func, x);
                }
            } else {
                return apply_func(e->func, eval_expr(e->a, vars));
            }
        }
    }
    return T(0.0);
}

template double eval_expr<double>(const ExprPtr&, std::span<const double>);
template Jet3 eval_expr<Jet3>(const ExprPtr&, std::span<const Jet3>);

}  // namespace affine4
