#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oneill/model_io.hpp"
#include "oneill/submersion.hpp"
#include "test_support.hpp"

using namespace oneill;
using oneill::testing::data_path;
using oneill::testing::kP0;
using oneill::testing::kP1;
using oneill::testing::random_points;

namespace {

using Tensor3 = std::vector<std::vector<std::vector<double>>>;

// Frozen from tests/oracles/sympy_oracle.py: T[i][j][s] = g(T_{U_i} U_j, X_s), A[i][j][a] = g(A_{X_i} X_j, U_a).
const Tensor3 kVerticalT = {{{0, 0}, {0, 0}, {-1, 0}}, {{0, 0}, {0, 0}, {0, -1}}, {{-1, 0}, {0, -1}, {0, 0}}};
const Tensor3 kHorizontalA = {{{0, 0}, {0, 0}, {1, 0}}, {{0, 0}, {0, 0}, {0, 1}}, {{1, 0}, {0, 1}, {0, 0}}};
const Tensor3 kReebA = {{{0}, {0}, {1}, {0}}, {{0}, {0}, {0}, {1}}, {{-1}, {0}, {0}, {0}}, {{0}, {-1}, {0}, {0}}};

void expect_T(const ONeillTensors& o, const Tensor3& want) {
    for (int i = 0; i < o.r; ++i) {
        for (int j = 0; j < o.r; ++j) {
            for (int s = 0; s < o.n; ++s) EXPECT_NEAR(o.T(i, j, s), want[i][j][s], 1e-12) << i << j << s;
        }
    }
}

void expect_A(const ONeillTensors& o, const Tensor3& want) {
    for (int i = 0; i < o.n; ++i) {
        for (int j = 0; j < o.n; ++j) {
            for (int a = 0; a < o.r; ++a) EXPECT_NEAR(o.A(i, j, a), want[i][j][a], 1e-12) << i << j << a;
        }
    }
}

double max_abs_vec(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

SubmersionModel file_model(const char* name) { return *load_model(data_path(name)).submersion; }

}  // namespace

TEST(VerticalXi, TensorsMatchOracle) {
    const SubmersionModel m = build_vertical_xi_example();
    EXPECT_EQ(m.r(), 3);
    EXPECT_EQ(m.n(), 2);
    const ONeillTensors o = oneill_tensors_at(m, kP0);
    expect_T(o, kVerticalT);
    EXPECT_LT(max_abs_vec(o.A_hh), 1e-12);
    EXPECT_LT(max_abs_vec(o.N), 1e-12);
    EXPECT_NEAR(o.trace_phiB, -2.0, 1e-12);
}

TEST(VerticalXi, StructureHoldsAtRandomPoints) {
    const SubmersionModel m = build_vertical_xi_example();
    for (const auto& p : random_points(25, 5, 5)) {
        const SubmersionResiduals s = verify_riemannian_submersion(m, p);
        EXPECT_LT(s.preservation(), 1e-12);
        EXPECT_LT(s.vertical_kernel, 1e-12);
        EXPECT_TRUE(s.base_positive_definite);
        const LemmaResiduals l = verify_structure_lemmas(m, p);
        EXPECT_LT(l.t_symmetry, 1e-12);
        EXPECT_LT(l.a_alternation, 1e-12);
        EXPECT_LT(l.t_skew, 1e-12);
        EXPECT_LT(l.a_skew, 1e-12);
        EXPECT_LT(l.anti_invariance, 1e-12);
        EXPECT_LT(l.c_squared, 1e-12);
        EXPECT_NEAR(oneill_tensors_at(m, p).trace_phiB, -2.0, 1e-12);
    }
}

TEST(VerticalXi, AdaptedFrameDecomposition) {
    const SubmersionModel m = build_vertical_xi_example();
    const AdaptedFrame f = adapted_frame_at(m, kP0);
    EXPECT_EQ(f.U.size(), 3u);
    EXPECT_EQ(f.X.size(), 2u);
    EXPECT_EQ(f.xi_position, XiPosition::vertical);
    // phi maps the two non-Reeb vertical directions onto H, so mu = 0
    EXPECT_EQ(f.phiV.size(), 2u);
    EXPECT_TRUE(f.mu.empty());
    EXPECT_LT(f.gram_residual, 1e-12);
    EXPECT_LT(f.decomposition_residual, 1e-12);
}

TEST(VerticalXi, DifferentialAndProjection) {
    const SubmersionModel m = build_vertical_xi_example();
    const std::vector<double> u = m.project(kP0);
    ASSERT_EQ(u.size(), 2u);
    EXPECT_NEAR(u[0], 0.3 + 1.1, 1e-15);
    EXPECT_NEAR(u[1], -0.7 + 0.4, 1e-15);
    const auto J = differential_at(m, kP0);
    ASSERT_EQ(J.size(), 2u);
    EXPECT_NEAR(J[0][0], 1.0, 1e-15);
    EXPECT_NEAR(J[0][2], 1.0, 1e-15);
    EXPECT_NEAR(J[0][4], 0.0, 1e-15);
}

TEST(HorizontalXi, TensorsMatchOracle) {
    const SubmersionModel m = build_horizontal_xi_example();
    const ONeillTensors o = oneill_tensors_at(m, kP1);
    EXPECT_LT(max_abs_vec(o.T_vv), 1e-12);
    expect_A(o, kHorizontalA);
    EXPECT_NEAR(o.trace_phiB, -2.0, 1e-12);
}

// Independent closed form: |g_N(dpi X_i, dpi X_i) - 1| = 2 |x_i y_i| for X_i = (E_i + E_{i+2}) / sqrt 2.
TEST(HorizontalXi, LengthResidualClosedForm) {
    const SubmersionModel m = build_horizontal_xi_example();
    int checked = 0;
    for (const auto& p : random_points(60, 5, 6)) {
        if (!m.admits(p)) continue;
        ++checked;
        const SubmersionResiduals s = verify_riemannian_submersion(m, p);
        const double want = std::max(2 * std::abs(p[0] * p[2]), 2 * std::abs(p[1] * p[3]));
        EXPECT_NEAR(s.length, want, 1e-12);
        EXPECT_LT(s.vertical_kernel, 1e-12);
        // Sylvester criterion on g_N at the image
        const std::vector<double> u = m.project(p);
        const double a = u[0] * u[1] / 2, b = -u[0] / 2, c = -u[1] / 2;
        const double G[3][3] = {{0.5, a, b}, {a, 0.5, c}, {b, c, 1.0}};
        const double m2 = G[0][0] * G[1][1] - G[0][1] * G[1][0];
        const double det = G[0][0] * (G[1][1] * G[2][2] - G[1][2] * G[2][1]) -
                           G[0][1] * (G[1][0] * G[2][2] - G[1][2] * G[2][0]) +
                           G[0][2] * (G[1][0] * G[2][1] - G[1][1] * G[2][0]);
        EXPECT_EQ(s.base_positive_definite, m2 > 0 && det > 0) << u[0] << " " << u[1];
    }
    EXPECT_GT(checked, 20);
    EXPECT_NEAR(verify_riemannian_submersion(m, kP1).length, 0.9, 1e-12);
}

TEST(HorizontalXi, AlternationFailsButLemmasOtherwiseHold) {
    const SubmersionModel m = build_horizontal_xi_example();
    const LemmaResiduals l = verify_structure_lemmas(m, kP1);
    EXPECT_NEAR(l.a_alternation, 2.0, 1e-12);
    EXPECT_LT(l.t_symmetry, 1e-12);
    EXPECT_LT(l.anti_invariance, 1e-12);
    EXPECT_LT(l.c_squared, 1e-12);
    const AdaptedFrame f = adapted_frame_at(m, kP1);
    EXPECT_EQ(f.xi_position, XiPosition::horizontal);
    EXPECT_EQ(f.mu.size(), 1u);  // mu = span{xi}
    EXPECT_LT(f.decomposition_residual, 1e-12);
}

TEST(HorizontalXi, DomainGuard) {
    const SubmersionModel m = build_horizontal_xi_example();
    EXPECT_FALSE(m.admits(std::vector<double>{0.1, 0.1, 0.1, 0.1, 0.0}));
    EXPECT_TRUE(m.admits(kP1));
    EXPECT_THROW((void)analyze_point(m, std::vector<double>{0.1, 0.1, 0.1, 0.1, 0.0}), GeometryError);
}

TEST(Reeb, TotallyGeodesicGenuineSubmersion) {
    const SubmersionModel m = file_model("reeb.json");
    EXPECT_EQ(m.r(), 1);
    for (const auto& p : random_points(10, 5, 7)) {
        const SubmersionResiduals s = verify_riemannian_submersion(m, p);
        EXPECT_LT(s.preservation(), 1e-12);
        const ONeillTensors o = oneill_tensors_at(m, p);
        EXPECT_LT(max_abs_vec(o.T_vv), 1e-12);
        EXPECT_LT(max_abs_vec(o.T_vh), 1e-12);
    }
    expect_A(oneill_tensors_at(m, kP0), kReebA);
}

TEST(BrokenModel, AntiInvarianceResidualIsOne) {
    const SubmersionModel m = file_model("broken_anti_invariance.json");
    for (const auto& p : random_points(5, 5, 8)) {
        const SubmersionResiduals s = verify_riemannian_submersion(m, p);
        EXPECT_LT(s.preservation(), 1e-12);  // still a Riemannian submersion
        EXPECT_NEAR(verify_structure_lemmas(m, p).anti_invariance, 1.0, 1e-12);
    }
}

// Frames built from the projector (no analytic fields) reproduce the same
// frame-independent quantities as the analytic frames.
TEST(DerivedFrames, AgreeWithAnalyticFrames) {
    const SubmersionModel analytic = build_vertical_xi_example();
    const SubmersionModel derived = file_model("derived_vertical.json");
    EXPECT_FALSE(derived.analytic_frames());
    for (const auto& p : random_points(8, 5, 9)) {
        const FramedPoint fa = analyze_point(analytic, p);
        const FramedPoint fd = analyze_point(derived, p);
        EXPECT_FALSE(fd.tensors.has_derivatives);
        EXPECT_TRUE(fa.tensors.has_derivatives);
        EXPECT_LT(fd.gram_residual, 1e-10);
        auto sq = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x * x;
            return s;
        };
        const ONeillTensors oa = oneill_tensors(fa.tensors), od = oneill_tensors(fd.tensors);
        EXPECT_NEAR(sq(oa.T_vv), sq(od.T_vv), 1e-10);
        EXPECT_NEAR(sq(oa.A_hh), sq(od.A_hh), 1e-10);
        EXPECT_NEAR(oa.trace_phiB, od.trace_phiB, 1e-10);
        EXPECT_LT(verify_riemannian_submersion(derived, fd).preservation(), 1e-10);
    }
}

TEST(SubmersionModel, ValidationRejectsBadModels) {
    SubmersionModel m = build_vertical_xi_example();
    m.map.pop_back();
    EXPECT_THROW(m.validate(), GeometryError);
    SubmersionModel w = build_vertical_xi_example();
    w.xi_field = 7;
    EXPECT_THROW(w.validate(), GeometryError);
    SubmersionModel v = build_vertical_xi_example();
    v.xi_field = 0;  // V1 is not xi: caught per point by the xi slot residual
    EXPECT_GT(analyze_point(v, kP0).xi_slot_residual, 0.5);
    EXPECT_LT(analyze_point(build_vertical_xi_example(), kP0).xi_slot_residual, 1e-14);
}
