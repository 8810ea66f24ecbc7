#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oneill/model_io.hpp"
#include "oneill/theorems.hpp"
#include "test_support.hpp"

using namespace oneill;
using oneill::testing::data_path;
using oneill::testing::kP0;
using oneill::testing::kP1;
using oneill::testing::random_points;

namespace {

SubmersionModel file_model(const char* name) { return *load_model(data_path(name)).submersion; }

// Slacks frozen from tests/oracles/sympy_oracle.py (slack >= 0 means the bound holds).
void expect_slacks(const SubmersionModel& m, const std::vector<double>& p, const std::map<std::string, double>& want) {
    const FramedPoint fp = analyze_point(m, p);
    for (const auto& [name, s] : want) {
        const TheoremId id = *parse_theorem_id(name);
        EXPECT_NEAR(evaluate_theorem(fp.tensors, id).slack, s, 1e-10) << name;
    }
}

const VariantSlack& variant(const InequalityRecord& r, const std::string& name) {
    for (const VariantSlack& v : r.variants) {
        if (v.name == name) return v;
    }
    throw std::runtime_error("no variant " + name);
}

}  // namespace

TEST(Catalogue, IdsRoundTripAndCases) {
    for (const TheoremSpec& s : theorem_catalogue()) {
        EXPECT_EQ(parse_theorem_id(s.name), s.id);
        EXPECT_EQ(to_string(s.id), s.name);
    }
    EXPECT_FALSE(parse_theorem_id("V9").has_value());
    EXPECT_FALSE(parse_theorem_id("v1").has_value());
    const auto v = theorems_for(XiPosition::vertical);
    const auto h = theorems_for(XiPosition::horizontal);
    EXPECT_EQ(v.size(), 6u);
    EXPECT_EQ(h.size(), 5u);
    EXPECT_TRUE(theorem_spec(TheoremId::CMB1).needs_derivatives);
    EXPECT_FALSE(theorem_spec(TheoremId::V1).needs_derivatives);
}

TEST(Slacks, VerticalXiMatchesOracle) {
    expect_slacks(build_vertical_xi_example(), kP0,
                  {{"V1", 1.0}, {"V2", 4.0}, {"H1", 0.0}, {"CRV1", 1.0}, {"CRH1", 0.0}, {"CMB1", 9.0}});
}

TEST(Slacks, HorizontalXiMatchesOracle) {
    expect_slacks(build_horizontal_xi_example(), kP1,
                  {{"V3", 0.0}, {"H2", -12.0}, {"CRV2", 0.0}, {"CRH2", -3.0}, {"CMB2", 3.0}});
}

TEST(Slacks, ReebMatchesOracle) {
    expect_slacks(file_model("reeb.json"), kP0,
                  {{"V1", 0.0}, {"V2", 0.0}, {"H1", 12.0}, {"CRV1", 0.0}, {"CRH1", 3.0}, {"CMB1", -8.0}});
}

TEST(Slacks, YPlaneMatchesOracle) {
    expect_slacks(file_model("yplane.json"), kP0,
                  {{"V3", 0.0}, {"H2", -12.0}, {"CRV2", 0.0}, {"CRH2", -3.0}, {"CMB2", 3.0}});
}

TEST(CRH1, BothVariantsReported) {
    const InequalityRecord r = evaluate_theorem(file_model("reeb.json"), kP0, TheoremId::CRH1);
    ASSERT_EQ(r.variants.size(), 2u);
    EXPECT_NEAR(variant(r, "kappa=3/4").slack, 3.0, 1e-10);
    EXPECT_NEAR(variant(r, "kappa=3/8").slack, 4.5, 1e-10);
    EXPECT_TRUE(variant(r, "kappa=3/4").holds);
}

// condition => equality
TEST(Sharpness, ConditionHitsAreSharp) {
    struct Case {
        SubmersionModel model;
        std::vector<double> point;
        TheoremId id;
    };
    const std::vector<Case> cases = {{build_vertical_xi_example(), kP0, TheoremId::H1},
                                     {file_model("reeb.json"), kP0, TheoremId::V2},
                                     {file_model("yplane.json"), kP0, TheoremId::V3},
                                     {file_model("yplane.json"), kP0, TheoremId::CRV2}};
    for (const Case& c : cases) {
        const InequalityRecord r = evaluate_theorem(c.model, c.point, c.id);
        EXPECT_TRUE(r.condition_hit) << to_string(c.id);
        EXPECT_TRUE(r.sharp) << to_string(c.id);
        EXPECT_LE(std::abs(r.slack), 1e-6) << to_string(c.id);
    }
    // no hit when the condition fails
    const InequalityRecord v2 = evaluate_theorem(build_vertical_xi_example(), kP0, TheoremId::V2);
    EXPECT_FALSE(v2.condition_hit);
    EXPECT_NEAR(v2.flags.totally_geodesic, 1.0, 1e-12);
}

TEST(Sharpness, CombinedBoundOnReebIsHitButNotSharp) {
    const InequalityRecord r = evaluate_theorem(file_model("reeb.json"), kP0, TheoremId::CMB1);
    EXPECT_TRUE(r.condition_hit);
    EXPECT_FALSE(r.sharp);
    EXPECT_FALSE(r.holds);
}

TEST(V1, DroppedTermIsReported) {
    const InequalityRecord r = evaluate_theorem(build_vertical_xi_example(), kP0, TheoremId::V1);
    ASSERT_TRUE(r.dropped_term.has_value());
    EXPECT_GE(*r.dropped_term, 0.0);
}

// Random unit probes never violate the vertical-xi bounds.
TEST(Properties, RandomProbesHoldOnVerticalXi) {
    const SubmersionModel m = build_vertical_xi_example();
    std::mt19937_64 rng(51);
    std::normal_distribution<double> n01;
    for (const auto& p : random_points(8, 5, 52)) {
        const FramedPoint fp = analyze_point(m, p);
        for (int k = 0; k < 4; ++k) {
            Probe probe;
            probe.label = "random";
            probe.u.assign(5, 0.0);
            probe.x.assign(5, 0.0);
            double nu = 0.0, nx = 0.0;
            for (int a = 0; a < 3; ++a) nu += (probe.u[a] = n01(rng)) * probe.u[a];
            for (int a = 3; a < 5; ++a) nx += (probe.x[a] = n01(rng)) * probe.x[a];
            for (double& v : probe.u) v /= std::sqrt(nu);
            for (double& v : probe.x) v /= std::sqrt(nx);
            for (TheoremId id : theorems_for(XiPosition::vertical)) {
                const InequalityRecord r = evaluate_theorem(fp.tensors, id, probe);
                EXPECT_GE(r.slack, -1e-9) << to_string(id);
                if (id == TheoremId::CRH1) {
                    bool any = false;
                    for (const VariantSlack& v : r.variants) any = any || v.holds;
                    EXPECT_TRUE(any);
                }
            }
        }
    }
}

TEST(Reframe, ProducesAnOrthonormalAdaptedFrame) {
    const FramedPoint fp = analyze_point(build_vertical_xi_example(), kP0);
    Probe p;
    p.u = {0.0, 0.6, 0.8, 0.0, 0.0};
    p.x = {0.0, 0.0, 0.0, -0.6, 0.8};
    const FrameTensors t = reframe(fp.tensors, p);
    // phi stays skew and eta stays unit in the new frame
    const int d = t.dim();
    double skew = 0.0, en = 0.0;
    for (int a = 0; a < d; ++a) {
        en += t.eta[a] * t.eta[a];
        for (int b = 0; b < d; ++b) skew = std::max(skew, std::abs(t.phi[a * d + b] + t.phi[b * d + a]));
    }
    EXPECT_LT(skew, 1e-12);
    EXPECT_NEAR(en, 1.0, 1e-12);
    // the probe becomes the first vertical basis vector
    const InequalityRecord direct = evaluate_theorem(fp.tensors, TheoremId::V1, p);
    const InequalityRecord rotated = evaluate_theorem(t, TheoremId::V1);
    EXPECT_NEAR(direct.slack, rotated.slack, 1e-12);
}

TEST(Errors, WrongXiCaseAndMissingDerivatives) {
    const SubmersionModel m = build_vertical_xi_example();
    try {
        (void)evaluate_theorem(m, kP0, TheoremId::V3);
        FAIL() << "expected rejected_input";
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::rejected_input);
    }
    const SubmersionModel derived = file_model("derived_vertical.json");
    try {
        (void)evaluate_theorem(derived, kP0, TheoremId::CMB1);
        FAIL() << "expected unsupported_computation";
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unsupported_computation);
    }
    EXPECT_NEAR(evaluate_theorem(derived, kP0, TheoremId::V2).slack, 4.0, 1e-9);
}
