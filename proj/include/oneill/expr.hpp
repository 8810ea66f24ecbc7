// Rational expressions over chart coordinates.  Nodes are immutable and
// shared, so copying an Expr is cheap and models can be passed by value.
#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oneill/jet.hpp"

namespace oneill {

class Expr {
public:
    enum class Op { constant, variable, add, sub, mul, div, neg };

    Expr() : Expr(constant(0.0)) {}
    Expr(double c) : Expr(constant(c)) {}  // NOLINT: implicit by design

    static Expr constant(double c);
    static Expr variable(int index);

    Op op() const;
    bool is_constant() const { return op() == Op::constant; }
    bool is_zero() const;
    double constant_value() const;
    // Largest variable index referenced, or -1.
    int max_variable() const;

    double eval(std::span<const double> coords) const;
    ScalarJet eval(const JetPoint& p) const;

    std::string to_string(std::span<const std::string> names = {}) const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& base, int exponent);

ScalarJet jet_eval(const Expr& f, const JetPoint& p);

// Grammar: sums and differences of products/quotients of factors; a factor is
// a number, a variable name, a parenthesised expression, or factor^integer.
// Unary minus is allowed.  Errors throw GeometryError(rejected_input).
Expr parse_expr(std::string_view text, std::span<const std::string> variable_names);

}  // namespace oneill
