// Catalogue of the inequality theorems, slack bookkeeping and the equality
// diagnostics.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oneill/curvature.hpp"

namespace oneill {

enum class TheoremId { V1, V2, H1, V3, H2, CRV1, CRH1, CMB1, CRV2, CRH2, CMB2 };

enum class Direction { at_least, at_most };  // lhs >= rhs, lhs <= rhs

// Which probe vectors a theorem reads.
enum class ProbeKind { none, vertical, horizontal, both };

enum class EqualityCondition { totally_geodesic, integrable, chen_T, chen_A };

struct TheoremSpec {
    TheoremId id;
    std::string_view name;
    XiPosition xi_case;
    Direction direction;
    ProbeKind probe;
    EqualityCondition condition;
    bool needs_derivatives;
};

const std::vector<TheoremSpec>& theorem_catalogue();
const TheoremSpec& theorem_spec(TheoremId id);
std::string_view to_string(TheoremId id);
std::string_view to_string(EqualityCondition c);
std::optional<TheoremId> parse_theorem_id(std::string_view s);
std::vector<TheoremId> theorems_for(XiPosition xi);

struct EqualityFlags {
    double totally_geodesic = 0.0;  // max |T|
    double integrable = 0.0;        // max |A|
    double chen_T_trace = 0.0;      // max_s |T_11^s - sum_{j>=2} T_jj^s|
    double chen_T_offdiag = 0.0;    // max |T_1j^s|, j >= 2
    double chen_A = 0.0;            // max |A_1j^alpha|, j >= 2

    double residual(EqualityCondition c) const;
};

// Computed in the given frame: U_1 = e_0, X_1 = e_r.
EqualityFlags equality_diagnostics(const FrameTensors& t);
EqualityFlags equality_diagnostics(const SubmersionModel& model, std::span<const double> p);

// Probe vectors in frame coordinates.  Empty means the adapted frame's own
// first vector.  The probe frame is completed by Gram-Schmidt against the
// adapted frame, block by block.
struct Probe {
    std::string label = "first";
    FrameVector u;
    FrameVector x;
};

// Same tensors expressed in the frame whose first vertical vector is probe.u
// and first horizontal vector is probe.x.
FrameTensors reframe(const FrameTensors& t, const Probe& probe);

struct VariantSlack {
    std::string name;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = true;
};

struct InequalityRecord {
    TheoremId id = TheoremId::V1;
    std::string probe;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // >= 0 means the inequality holds
    bool holds = true;
    EqualityFlags flags;
    double condition_residual = 0.0;
    bool condition_hit = false;
    bool sharp = true;  // |slack| within the sharpness tolerance when condition_hit
    std::optional<double> dropped_term;  // V1: sum_j |T_U U_j|^2
    std::vector<VariantSlack> variants;  // CRH1: kappa = 3/4 and 3/8
};

InequalityRecord evaluate_theorem(const FrameTensors& t, TheoremId id, const Probe& probe = {},
                                  const Tolerances& tol = {});
InequalityRecord evaluate_theorem(const SubmersionModel& model, std::span<const double> p, TheoremId id,
                                  const Probe& probe = {}, const Tolerances& tol = {});

}  // namespace oneill
