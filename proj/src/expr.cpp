#include "oneill/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace oneill {

struct Expr::Node {
    Op op;
    double value = 0.0;
    int index = -1;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    int max_var = -1;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_binary(Expr::Op op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->max_var = std::max(a->max_var, b ? b->max_var : -1);
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

template <class T, class Leaf>
T eval_node(const Expr::Node& n, const Leaf& leaf) {
    switch (n.op) {
        case Expr::Op::constant:
        case Expr::Op::variable: return leaf(n);
        case Expr::Op::add: return eval_node<T>(*n.lhs, leaf) + eval_node<T>(*n.rhs, leaf);
        case Expr::Op::sub: return eval_node<T>(*n.lhs, leaf) - eval_node<T>(*n.rhs, leaf);
        case Expr::Op::mul: return eval_node<T>(*n.lhs, leaf) * eval_node<T>(*n.rhs, leaf);
        case Expr::Op::div: {
            T num = eval_node<T>(*n.lhs, leaf);
            T den = eval_node<T>(*n.rhs, leaf);
            if constexpr (std::is_same_v<T, double>) {
                if (!(std::abs(den) >= kSingularThreshold)) {
                    throw GeometryError(ErrorKind::singular_evaluation, "division by zero in expression");
                }
            }
            return num / den;
        }
        case Expr::Op::neg: return -eval_node<T>(*n.lhs, leaf);
    }
    return T{};
}

void print(const Expr::Node& n, std::span<const std::string> names, std::ostringstream& os) {
    switch (n.op) {
        case Expr::Op::constant: {
            char buf[32];
            auto res = std::to_chars(buf, buf + sizeof buf, n.value);
            os << std::string_view(buf, res.ptr - buf);
            return;
        }
        case Expr::Op::variable:
            if (n.index < static_cast<int>(names.size())) os << names[n.index];
            else os << "v" << n.index;
            return;
        case Expr::Op::neg:
            os << "-(";
            print(*n.lhs, names, os);
            os << ")";
            return;
        default: break;
    }
    const char sym = n.op == Expr::Op::add ? '+' : n.op == Expr::Op::sub ? '-' : n.op == Expr::Op::mul ? '*' : '/';
    os << "(";
    print(*n.lhs, names, os);
    os << " " << sym << " ";
    print(*n.rhs, names, os);
    os << ")";
}

}  // namespace

Expr Expr::constant(double c) {
    auto n = std::make_shared<Node>();
    n->op = Op::constant;
    n->value = c;
    return Expr(std::move(n));
}

Expr Expr::variable(int index) {
    if (index < 0) throw GeometryError(ErrorKind::rejected_input, "negative variable index");
    auto n = std::make_shared<Node>();
    n->op = Op::variable;
    n->index = index;
    n->max_var = index;
    return Expr(std::move(n));
}

Expr::Op Expr::op() const { return node_->op; }
bool Expr::is_zero() const { return node_->op == Op::constant && node_->value == 0.0; }
double Expr::constant_value() const { return node_->value; }
int Expr::max_variable() const { return node_->max_var; }

double Expr::eval(std::span<const double> coords) const {
    return eval_node<double>(*node_, [&](const Node& n) {
        return n.op == Op::constant ? n.value : coords[n.index];
    });
}

ScalarJet Expr::eval(const JetPoint& p) const {
    return eval_node<ScalarJet>(*node_, [&](const Node& n) {
        return n.op == Op::constant ? p.constant(n.value) : p.variable(n.index);
    });
}

std::string Expr::to_string(std::span<const std::string> names) const {
    std::ostringstream os;
    print(*node_, names, os);
    return os.str();
}

// Folding keeps builtin expressions small: products with exact zeros vanish
// and unit factors drop out.
Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Expr(make_binary(Expr::Op::add, a.node_, b.node_));
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value());
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return Expr(make_binary(Expr::Op::sub, a.node_, b.node_));
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value());
    if (a.is_zero() || b.is_zero()) return Expr::constant(0.0);
    if (a.is_constant() && a.constant_value() == 1.0) return b;
    if (b.is_constant() && b.constant_value() == 1.0) return a;
    return Expr(make_binary(Expr::Op::mul, a.node_, b.node_));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw GeometryError(ErrorKind::singular_evaluation, "division by the zero expression");
    if (a.is_zero()) return Expr::constant(0.0);
    if (b.is_constant() && b.constant_value() == 1.0) return a;
    return Expr(make_binary(Expr::Op::div, a.node_, b.node_));
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) return Expr::constant(-a.constant_value());
    return Expr(make_binary(Expr::Op::neg, a.node_, nullptr));
}

Expr pow(const Expr& base, int exponent) {
    if (exponent < 0) return Expr::constant(1.0) / pow(base, -exponent);
    Expr r = Expr::constant(1.0);
    for (int i = 0; i < exponent; ++i) r = r * base;
    return r;
}

ScalarJet jet_eval(const Expr& f, const JetPoint& p) {
    if (f.max_variable() >= p.dim()) {
        throw GeometryError(ErrorKind::rejected_input, "expression references a coordinate beyond the point");
    }
    return f.eval(p);
}

// ---- parser ---------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

    Expr parse() {
        Expr e = sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw GeometryError(ErrorKind::rejected_input,
                            "expression '" + std::string(text_) + "': " + msg + " at offset " + std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr sum() {
        Expr e = product();
        for (;;) {
            if (accept('+')) e = e + product();
            else if (accept('-')) e = e - product();
            else return e;
        }
    }

    Expr product() {
        Expr e = unary();
        for (;;) {
            if (accept('*')) e = e * unary();
            else if (accept('/')) e = e / unary();
            else return e;
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!accept('^')) return base;
        skip_space();
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        int exponent = 0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), exponent);
        if (res.ec != std::errc() || exponent > 64) fail("expected a small non-negative integer exponent");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return pow(base, negative ? -exponent : exponent);
    }

    Expr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
            if (res.ec != std::errc()) fail("malformed number");
            pos_ = static_cast<std::size_t>(res.ptr - text_.data());
            return Expr::constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view id = text_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < names_.size(); ++i) {
                if (names_[i] == id) return Expr::variable(static_cast<int>(i));
            }
            pos_ = start;
            fail("unknown variable '" + std::string(id) + "'");
        }
        fail("unexpected character");
    }

    std::string_view text_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, std::span<const std::string> variable_names) {
    return Parser(text, variable_names).parse();
}

}  // namespace oneill
