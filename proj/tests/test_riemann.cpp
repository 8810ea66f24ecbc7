#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "oneill/contact.hpp"
#include "oneill/riemann.hpp"
#include "test_support.hpp"

using namespace oneill;
using oneill::testing::kP0;
using oneill::testing::random_points;

namespace {

ManifoldModel conformal_2d(const char* factor, std::vector<Expr> guard = {}) {
    const std::vector<std::string> names = {"u", "v"};
    const Expr f = parse_expr(factor, names);
    return make_manifold("conformal", names, {f, 0.0, 0.0, f}, std::move(guard));
}

ManifoldModel polynomial_3d() {
    const std::vector<std::string> n = {"a", "b", "c"};
    auto p = [&](const char* s) { return parse_expr(s, n); };
    return make_manifold("poly3", n,
                         {p("2 + a^2"), p("a*b/4"), p("c/5"),      //
                          p("a*b/4"), p("3 + b^2*c^2/9"), p("0"),  //
                          p("c/5"), p("0"), p("1 + a^2/3 + b^2/7")});
}

}  // namespace

// Round sphere in stereographic coordinates: K = 1.
TEST(Riemann, StereographicSphereHasUnitCurvature) {
    const ManifoldModel m = conformal_2d("4/(1 + u^2 + v^2)^2");
    const std::vector<double> e1 = {1, 0}, e2 = {0, 1};
    for (const auto& p : random_points(20, 2, 3)) {
        EXPECT_NEAR(sectional_curvature(m, p, e1, e2), 1.0, 1e-12);
    }
}

// Upper half plane: K = -1, and the domain guard rejects v <= 0.
TEST(Riemann, HalfPlaneHasCurvatureMinusOne) {
    const ManifoldModel m = conformal_2d("1/v^2", {Expr::variable(1)});
    const std::vector<double> e1 = {1, 0}, e2 = {0.3, 1};
    EXPECT_NEAR(sectional_curvature(m, std::vector<double>{0.2, 0.7}, e1, e2), -1.0, 1e-12);
    EXPECT_FALSE(m.admits(std::vector<double>{0.2, -0.7}));
    try {
        (void)local_geometry(m, std::vector<double>{0.2, -0.7});
        FAIL() << "expected out_of_domain";
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::out_of_domain);
    }
}

TEST(Riemann, DegenerateInputsAreRejected) {
    const ManifoldModel m = conformal_2d("u^2");
    try {
        (void)local_geometry(m, std::vector<double>{0.0, 1.0});
        FAIL() << "expected degenerate_metric";
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_metric);
    }
    const ManifoldModel s = conformal_2d("1 + u^2");
    const std::vector<double> x = {1, 2};
    try {
        (void)sectional_curvature(s, std::vector<double>{0.1, 0.1}, x, x);
        FAIL() << "expected degenerate_plane";
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_plane);
    }
    EXPECT_THROW((void)make_manifold("bad", {"u", "v"}, {1.0, 0.0, 0.0}), GeometryError);
    EXPECT_THROW((void)make_manifold("bad", {"u"}, {Expr::variable(3)}), GeometryError);
}

// Christoffel symbols against central differences of the metric.
TEST(Riemann, ChristoffelMatchesFiniteDifferences) {
    const ManifoldModel m = polynomial_3d();
    const std::vector<double> p = {0.4, -0.8, 1.1};
    const ChristoffelSymbols gam = christoffel_at(m, p);
    const double h = 1e-5;
    auto gval = [&](const std::vector<double>& q) {
        std::vector<double> g(9);
        for (int k = 0; k < 9; ++k) g[k] = m.metric[k].eval(q);
        return g;
    };
    std::array<std::vector<double>, 3> dg;
    for (int i = 0; i < 3; ++i) {
        std::vector<double> a = p, b = p;
        a[i] += h;
        b[i] -= h;
        const auto ga = gval(a), gb = gval(b);
        dg[i].resize(9);
        for (int k = 0; k < 9; ++k) dg[i][k] = (ga[k] - gb[k]) / (2 * h);
    }
    // lowered symbols Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    const auto g0 = gval(p);
    for (int l = 0; l < 3; ++l) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double fd = 0.5 * (dg[i][j * 3 + l] + dg[j][i * 3 + l] - dg[l][i * 3 + j]);
                double jet = 0.0;
                for (int k = 0; k < 3; ++k) jet += g0[l * 3 + k] * gam(k, i, j).value();
                EXPECT_NEAR(jet, fd, 1e-8) << l << i << j;
            }
        }
    }
}

// Algebraic symmetries and the first Bianchi identity for a generic metric.
TEST(Riemann, CurvatureSymmetriesAndBianchi) {
    const ManifoldModel m = polynomial_3d();
    for (const auto& p : random_points(5, 3, 11, -1.0, 1.0)) {
        const RiemannValue R = riemann_at(m, p);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) {
                    for (int l = 0; l < 3; ++l) {
                        worst = std::max(worst, std::abs(R(i, j, k, l) + R(j, i, k, l)));
                        worst = std::max(worst, std::abs(R(i, j, k, l) + R(i, j, l, k)));
                        worst = std::max(worst, std::abs(R(i, j, k, l) - R(k, l, i, j)));
                        worst = std::max(worst, std::abs(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l)));
                    }
                }
            }
        }
        EXPECT_LT(worst, 1e-12);
    }
}

// Coordinate values on R^5(-3) at the oracle point, frozen from the sympy oracle.
TEST(Riemann, HeisenbergModelMatchesSymbolicOracle) {
    const SasakianSpaceForm s = build_r2m1(2);
    const LocalGeometry geo = local_geometry(s.manifold, kP0);
    struct G {
        int k, i, j;
        double v;
    };
    const std::vector<G> gamma = {
        {0, 0, 2, 0.55},  {0, 1, 2, 0.2},  {0, 2, 4, -0.5},  {1, 0, 3, 0.55},  {1, 1, 3, 0.2},
        {1, 3, 4, -0.5},  {2, 0, 0, -1.1}, {2, 0, 1, -0.2},  {2, 0, 4, 0.5},   {3, 0, 1, -0.55},
        {3, 1, 1, -0.4},  {3, 1, 4, 0.5},  {4, 0, 2, 0.105}, {4, 0, 3, 0.22},  {4, 1, 2, 0.22},
        {4, 1, 3, -0.42}, {4, 2, 4, -0.55}, {4, 3, 4, -0.2}};
    double total = 0.0;
    for (const G& e : gamma) {
        EXPECT_NEAR(geo.gamma(e.k, e.i, e.j).value(), e.v, 1e-13) << e.k << e.i << e.j;
        EXPECT_NEAR(geo.gamma(e.k, e.j, e.i).value(), e.v, 1e-13);
    }
    for (int k = 0; k < 5; ++k) {
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) total += std::abs(geo.gamma(k, i, j).value());
        }
    }
    double listed = 0.0;
    for (const G& e : gamma) listed += (e.i == e.j ? 1.0 : 2.0) * std::abs(e.v);
    EXPECT_NEAR(total, listed, 1e-12);  // every other symbol vanishes

    struct Rc {
        int i, j, k, l;
        double v;
    };
    const std::vector<Rc> rv = {
        {0, 1, 0, 1, -0.085625}, {0, 1, 0, 4, 0.025},    {0, 1, 1, 4, -0.06875}, {0, 1, 2, 3, 0.0625},
        {0, 2, 0, 2, 0.111875},  {0, 2, 1, 2, -0.0275},  {0, 2, 1, 3, 0.125},    {0, 2, 2, 4, -0.06875},
        {0, 3, 0, 3, -0.075625}, {0, 3, 1, 2, 0.0625},   {0, 3, 1, 3, -0.0275},  {0, 3, 3, 4, -0.06875},
        {0, 4, 0, 1, 0.025},     {0, 4, 0, 4, -0.0625},  {1, 2, 0, 2, -0.0275},  {1, 2, 0, 3, 0.0625},
        {1, 2, 1, 2, -0.01},     {1, 2, 2, 4, -0.025},   {1, 3, 0, 2, 0.125},    {1, 3, 0, 3, -0.0275},
        {1, 3, 1, 3, 0.1775},    {1, 3, 3, 4, -0.025},   {1, 4, 0, 1, -0.06875}, {1, 4, 1, 4, -0.0625},
        {2, 3, 0, 1, 0.0625},    {2, 4, 0, 2, -0.06875}, {2, 4, 1, 2, -0.025},   {2, 4, 2, 4, -0.0625},
        {3, 4, 0, 3, -0.06875},  {3, 4, 1, 3, -0.025},   {3, 4, 3, 4, -0.0625}};
    for (const Rc& e : rv) EXPECT_NEAR(geo.riemann(e.i, e.j, e.k, e.l), e.v, 1e-12) << e.i << e.j << e.k << e.l;
    EXPECT_NEAR(geo.riemann(2, 3, 2, 3), 0.0, 1e-12);
}

TEST(Riemann, CovariantDerivativeOfCoordinateField) {
    // nabla_{d_u} d_u = Gamma^k_uu d_k on the half plane: (0, 1/v)
    const ManifoldModel m = conformal_2d("1/v^2", {Expr::variable(1)});
    const VectorField du{"du", {1.0, 0.0}};
    const std::vector<double> w = covariant_derivative(m, du, du, std::vector<double>{0.0, 0.5});
    EXPECT_NEAR(w[0], 0.0, 1e-14);
    EXPECT_NEAR(w[1], 2.0, 1e-13);
}

TEST(Riemann, PositiveDefiniteCheck) {
    EXPECT_TRUE(is_positive_definite(std::vector<double>{2, 1, 1, 2}, 2));
    EXPECT_FALSE(is_positive_definite(std::vector<double>{1, 2, 2, 1}, 2));
    EXPECT_FALSE(is_positive_definite(std::vector<double>{0, 0, 0, 1}, 2));
}
