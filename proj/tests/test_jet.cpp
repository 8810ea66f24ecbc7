#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "oneill/expr.hpp"
#include "oneill/jet.hpp"

using namespace oneill;

namespace {

const std::vector<std::string> kNames = {"x", "y", "z"};

double eval_at(const Expr& e, std::vector<double> p) { return e.eval(p); }

}  // namespace

TEST(ScalarJet, ProductAndQuotientMatchClosedForm) {
    // f = x^2 y + 3 y / x at (1.3, -0.4)
    const JetPoint p({1.3, -0.4});
    const ScalarJet x = p.variable(0), y = p.variable(1);
    const ScalarJet f = x * x * y + 3.0 * y / x;
    const double X = 1.3, Y = -0.4;
    EXPECT_NEAR(f.value(), X * X * Y + 3 * Y / X, 1e-14);
    EXPECT_NEAR(f.gradient(0), 2 * X * Y - 3 * Y / (X * X), 1e-14);
    EXPECT_NEAR(f.gradient(1), X * X + 3 / X, 1e-14);
    EXPECT_NEAR(f.hessian(0, 0), 2 * Y + 6 * Y / (X * X * X), 1e-13);
    EXPECT_NEAR(f.hessian(0, 1), 2 * X - 3 / (X * X), 1e-13);
    EXPECT_NEAR(f.hessian(1, 0), f.hessian(0, 1), 0.0);
    EXPECT_NEAR(f.hessian(1, 1), 0.0, 1e-14);
}

TEST(ScalarJet, SqrtChainRule) {
    const JetPoint p({0.7, 1.9});
    const ScalarJet x = p.variable(0), y = p.variable(1);
    const ScalarJet s = sqrt(x * x + y * y);
    const double r = std::hypot(0.7, 1.9);
    EXPECT_NEAR(s.value(), r, 1e-15);
    EXPECT_NEAR(s.gradient(0), 0.7 / r, 1e-15);
    EXPECT_NEAR(s.hessian(0, 0), 1.9 * 1.9 / (r * r * r), 1e-14);
    EXPECT_NEAR(s.hessian(0, 1), -0.7 * 1.9 / (r * r * r), 1e-14);
}

TEST(ScalarJet, SingularOperationsThrow) {
    const JetPoint p({0.0, 1.0});
    const ScalarJet x = p.variable(0);
    try {
        (void)reciprocal(x);
        FAIL() << "expected singular_evaluation";
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::singular_evaluation);
    }
    EXPECT_THROW((void)sqrt(-1.0 * p.variable(1)), GeometryError);
    EXPECT_THROW((void)(p.variable(1) / 0.0), GeometryError);
}

TEST(ScalarJet, PartialAndTruncation) {
    const JetPoint p({0.5, 2.0});
    const ScalarJet x = p.variable(0), y = p.variable(1);
    const ScalarJet f = x * x * x * y;
    const ScalarJet fx = f.partial(0);  // 3 x^2 y, first order
    EXPECT_EQ(fx.order(), 1);
    EXPECT_NEAR(fx.value(), 3 * 0.25 * 2.0, 1e-15);
    EXPECT_NEAR(fx.gradient(0), 6 * 0.5 * 2.0, 1e-14);
    EXPECT_NEAR(fx.gradient(1), 3 * 0.25, 1e-15);
    EXPECT_EQ(f.truncated(0).order(), 0);
    // order propagates as the minimum through arithmetic
    EXPECT_EQ((fx * f).order(), 1);
}

TEST(Expr, ParserPrecedenceAndPowers) {
    const Expr e = parse_expr("1 + 2*x^2 - y/(1 + z^2) - -x", kNames);
    const std::vector<double> p = {0.5, 3.0, 2.0};
    EXPECT_NEAR(e.eval(p), 1 + 2 * 0.25 - 3.0 / 5.0 + 0.5, 1e-15);
    EXPECT_NEAR(eval_at(parse_expr("x^0", kNames), {4, 0, 0}), 1.0, 0.0);
    EXPECT_NEAR(eval_at(parse_expr("(x+y)^3", kNames), {1, 1, 0}), 8.0, 0.0);
    EXPECT_NEAR(eval_at(parse_expr("2.5e-1 * z", kNames), {0, 0, 4}), 1.0, 1e-15);
}

TEST(Expr, ParserRejectsMalformedInput) {
    for (const char* bad : {"x +", "w * 2", "(x", "x ^ 1.5", "x y", "", "2 ** x"}) {
        try {
            (void)parse_expr(bad, kNames);
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const GeometryError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::rejected_input) << bad;
        }
    }
}

TEST(Expr, ConstantFoldingAndZero) {
    const Expr x = Expr::variable(0);
    EXPECT_TRUE((x * 0.0).is_zero());
    EXPECT_TRUE((Expr(2.0) * Expr(3.0)).is_constant());
    EXPECT_DOUBLE_EQ((Expr(2.0) * Expr(3.0)).constant_value(), 6.0);
    EXPECT_THROW((void)(x / Expr(0.0)), GeometryError);
}

// Jet derivatives of parsed expressions against central differences.
TEST(Expr, JetDerivativesMatchFiniteDifferences) {
    const Expr f = parse_expr("x^2*y/(1 + z^2) + y^3 - x*z", kNames);
    const std::vector<double> p = {0.4, -1.2, 0.9};
    const ScalarJet j = jet_eval(f, JetPoint(p));
    const double h = 1e-4;
    for (int i = 0; i < 3; ++i) {
        std::vector<double> a = p, b = p;
        a[i] += h;
        b[i] -= h;
        EXPECT_NEAR(j.gradient(i), (f.eval(a) - f.eval(b)) / (2 * h), 1e-7) << i;
        for (int k = 0; k < 3; ++k) {
            std::vector<double> pp = p, pm = p, mp = p, mm = p;
            pp[i] += h, pp[k] += h;
            pm[i] += h, pm[k] -= h;
            mp[i] -= h, mp[k] += h;
            mm[i] -= h, mm[k] -= h;
            const double fd = (f.eval(pp) - f.eval(pm) - f.eval(mp) + f.eval(mm)) / (4 * h * h);
            EXPECT_NEAR(j.hessian(i, k), fd, 1e-6) << i << k;
        }
    }
}

TEST(Expr, PrintsWithNames) {
    const Expr f = parse_expr("x*y + 2", kNames);
    const std::string s = f.to_string(kNames);
    EXPECT_NE(s.find('x'), std::string::npos);
    EXPECT_NE(s.find('y'), std::string::npos);
    EXPECT_EQ(f.max_variable(), 1);
}
