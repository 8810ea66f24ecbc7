#include "oneill/theorems.hpp"

#include <algorithm>
#include <cmath>

namespace oneill {

namespace {

using D = Direction;
using P = ProbeKind;
using E = EqualityCondition;
constexpr XiPosition kV = XiPosition::vertical;
constexpr XiPosition kH = XiPosition::horizontal;

const std::vector<TheoremSpec> kCatalogue = {
    {TheoremId::V1, "V1", kV, D::at_least, P::vertical, E::totally_geodesic, false},
    {TheoremId::V2, "V2", kV, D::at_least, P::none, E::totally_geodesic, false},
    {TheoremId::H1, "H1", kV, D::at_most, P::none, E::integrable, false},
    {TheoremId::V3, "V3", kH, D::at_least, P::none, E::totally_geodesic, false},
    {TheoremId::H2, "H2", kH, D::at_most, P::none, E::integrable, false},
    {TheoremId::CRV1, "CRV1", kV, D::at_least, P::vertical, E::chen_T, false},
    {TheoremId::CRH1, "CRH1", kV, D::at_most, P::horizontal, E::chen_A, false},
    {TheoremId::CMB1, "CMB1", kV, D::at_most, P::both, E::chen_T, true},
    {TheoremId::CRV2, "CRV2", kH, D::at_least, P::vertical, E::chen_T, false},
    {TheoremId::CRH2, "CRH2", kH, D::at_most, P::horizontal, E::chen_A, false},
    {TheoremId::CMB2, "CMB2", kH, D::at_most, P::both, E::chen_T, true},
};

double sq(double v) { return v * v; }

}  // namespace

const std::vector<TheoremSpec>& theorem_catalogue() { return kCatalogue; }

const TheoremSpec& theorem_spec(TheoremId id) { return kCatalogue[static_cast<std::size_t>(id)]; }

std::string_view to_string(TheoremId id) { return theorem_spec(id).name; }

std::string_view to_string(EqualityCondition c) {
    switch (c) {
        case E::totally_geodesic: return "totally_geodesic";
        case E::integrable: return "integrable";
        case E::chen_T: return "chen_T";
        case E::chen_A: return "chen_A";
    }
    return "?";
}

std::optional<TheoremId> parse_theorem_id(std::string_view s) {
    for (const TheoremSpec& t : kCatalogue) {
        if (t.name == s) return t.id;
    }
    return std::nullopt;
}

std::vector<TheoremId> theorems_for(XiPosition xi) {
    std::vector<TheoremId> out;
    for (const TheoremSpec& t : kCatalogue) {
        if (t.xi_case == xi) out.push_back(t.id);
    }
    return out;
}

double EqualityFlags::residual(EqualityCondition c) const {
    switch (c) {
        case E::totally_geodesic: return totally_geodesic;
        case E::integrable: return integrable;
        case E::chen_T: return std::max(chen_T_trace, chen_T_offdiag);
        case E::chen_A: return chen_A;
    }
    return 0.0;
}

EqualityFlags equality_diagnostics(const FrameTensors& t) {
    const int r = t.r;
    const int n = t.n;
    const int d = r + n;
    EqualityFlags f;
    f.totally_geodesic = max_abs(t.T);
    f.integrable = max_abs(t.A);
    for (int s = r; s < d; ++s) {
        double diff = t.Tv(0, 0, s);
        for (int j = 1; j < r; ++j) diff -= t.Tv(j, j, s);
        f.chen_T_trace = std::max(f.chen_T_trace, std::abs(diff));
        for (int j = 1; j < r; ++j) f.chen_T_offdiag = std::max(f.chen_T_offdiag, std::abs(t.Tv(0, j, s)));
    }
    for (int j = r + 1; j < d; ++j) {
        for (int a = 0; a < r; ++a) f.chen_A = std::max(f.chen_A, std::abs(t.Av(r, j, a)));
    }
    return f;
}

EqualityFlags equality_diagnostics(const SubmersionModel& model, std::span<const double> p) {
    return equality_diagnostics(analyze_point(model, p).tensors);
}

namespace {

// Orthonormal basis of the block [lo, hi) whose first vector is `lead`.
void complete_block(std::vector<FrameVector>& cols, int lo, int hi, const FrameVector& lead, int d) {
    std::vector<FrameVector> block;
    block.push_back(lead);
    for (int a = lo; a < hi && static_cast<int>(block.size()) < hi - lo; ++a) {
        FrameVector e(d, 0.0);
        e[a] = 1.0;
        for (const FrameVector& b : block) {
            const double c = dot(e, b);
            for (int k = 0; k < d; ++k) e[k] -= c * b[k];
        }
        const double nv = std::sqrt(dot(e, e));
        if (nv < 1e-6) continue;
        for (double& v : e) v /= nv;
        block.push_back(std::move(e));
    }
    for (auto& b : block) cols.push_back(std::move(b));
}

void check_probe(const FrameTensors& t, const FrameVector& v, bool vertical, const char* what) {
    if (static_cast<int>(v.size()) != t.dim()) throw GeometryError(ErrorKind::rejected_input, what);
    const int lo = vertical ? t.r : 0;
    const int hi = vertical ? t.dim() : t.r;
    for (int a = lo; a < hi; ++a) {
        if (std::abs(v[a]) > 1e-10) throw GeometryError(ErrorKind::rejected_input, what);
    }
    if (std::abs(dot(v, v) - 1.0) > 1e-10) throw GeometryError(ErrorKind::rejected_input, what);
}

// out[...a...] = sum_i Q[i][a] in[...i...] on one slot of a rank-k array.
std::vector<double> transform(const std::vector<double>& in, int d, int rank, const std::vector<FrameVector>& Q) {
    std::vector<double> cur = in, next(in.size());
    int tail = 1;
    for (int k = 1; k < rank; ++k) tail *= d;
    for (int slot = 0; slot < rank; ++slot) {
        // contract leading index, append the new index at the back
        for (int a = 0; a < d; ++a) {
            for (int rest = 0; rest < tail; ++rest) {
                double s = 0.0;
                for (int i = 0; i < d; ++i) s += Q[a][i] * cur[i * tail + rest];
                next[rest * d + a] = s;
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

}  // namespace

FrameTensors reframe(const FrameTensors& t, const Probe& probe) {
    const int r = t.r;
    const int d = t.dim();
    if (probe.u.empty() && probe.x.empty()) return t;
    FrameVector u = probe.u.empty() ? t.basis(0) : probe.u;
    FrameVector x = probe.x.empty() ? t.basis(r) : probe.x;
    check_probe(t, u, true, "vertical probe must be a unit vertical frame vector");
    check_probe(t, x, false, "horizontal probe must be a unit horizontal frame vector");
    std::vector<FrameVector> Q;  // Q[a] = new basis vector a in old coordinates
    complete_block(Q, 0, r, u, d);
    complete_block(Q, r, d, x, d);
    if (static_cast<int>(Q.size()) != d) throw GeometryError(ErrorKind::degenerate_frame, "probe frame incomplete");

    FrameTensors o = t;
    o.R = transform(t.R, d, 4, Q);
    o.T = transform(t.T, d, 3, Q);
    o.A = transform(t.A, d, 3, Q);
    o.phi = transform(t.phi, d, 2, Q);
    o.eta = transform(t.eta, d, 1, Q);
    if (t.has_derivatives) {
        o.nablaT = transform(t.nablaT, d, 4, Q);
        o.nablaA = transform(t.nablaA, d, 4, Q);
    }
    o.xi_slot = -1;
    for (int a = 0; a < d; ++a) {
        if (std::abs(o.eta[a] - 1.0) < 1e-12) o.xi_slot = a;
    }
    return o;
}

InequalityRecord evaluate_theorem(const FrameTensors& base, TheoremId id, const Probe& probe, const Tolerances& tol) {
    const TheoremSpec& spec = theorem_spec(id);
    if (spec.xi_case != base.xi_position) {
        throw GeometryError(ErrorKind::rejected_input, std::string(spec.name) + " needs xi " +
                                                           std::string(to_string(spec.xi_case)) + ", model has xi " +
                                                           std::string(to_string(base.xi_position)));
    }
    if (spec.needs_derivatives && !base.has_derivatives) {
        throw GeometryError(ErrorKind::unsupported_computation,
                            std::string(spec.name) + " needs delta(N), which needs analytic frame fields");
    }
    const FrameTensors t = reframe(base, probe);
    const int r = t.r;
    const int n = t.n;
    const int d = r + n;
    const double c = t.c;
    const double cp = (c + 3.0) / 4.0;
    const double cm = (c - 1.0) / 4.0;
    const FrameVector U1 = t.basis(0);
    const FrameVector X1 = t.basis(r);

    FrameVector N(d, 0.0);
    for (int j = 0; j < r; ++j) {
        const FrameVector tj = t.apply_T(t.basis(j), t.basis(j));
        for (int k = 0; k < d; ++k) N[k] += tj[k];
    }
    const double N2 = dot(N, N);

    InequalityRecord rec;
    rec.id = id;
    rec.probe = probe.label;
    auto two_tau_hat = [&] {
        double s = 0.0;
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                if (i != j) s += fiber_curvature_hat(t, t.basis(i), t.basis(j), t.basis(j), t.basis(i));
            }
        }
        return s;
    };
    auto two_tau_star = [&] {
        double s = 0.0;
        for (int i = r; i < d; ++i) {
            for (int j = r; j < d; ++j) {
                if (i != j) s += horizontal_curvature_star(t, t.basis(i), t.basis(j), t.basis(j), t.basis(i));
            }
        }
        return s;
    };
    auto trace_phiB = [&] { return oneill_tensors(t).trace_phiB; };
    auto cx1_sq = [&] {
        const FrameVector cx = t.horizontal_part(t.apply_phi(X1));
        return dot(cx, cx);
    };
    auto combined_rhs = [&] {
        double a1 = 0.0;
        for (int s = r + 1; s < d; ++s) {
            for (int a = 0; a < r; ++a) a1 += sq(t.Av(r, s, a));
        }
        double tv = 0.0, ah = 0.0;
        for (int i = r; i < d; ++i) {
            for (int k = 0; k < r; ++k) {
                const FrameVector tk = t.apply_T(t.basis(k), t.basis(i));
                const FrameVector ai = t.apply_A(t.basis(i), t.basis(k));
                tv += dot(tk, tk);
                ah += dot(ai, ai);
            }
        }
        return ric_hat(t, U1) + ric_star(t, X1) + 0.25 * N2 + 3.0 * a1 - delta_N(t) + tv - ah;
    };
    const double eu = t.eta_of(U1);
    const double ex = t.eta_of(X1);

    switch (id) {
        case TheoremId::V1: {
            const FrameVector tuu = t.apply_T(U1, U1);
            rec.lhs = ric_hat(t, U1);
            rec.rhs = cp * (r - 1) - cm * ((r - 2) * eu * eu + 1.0) - dot(tuu, N);
            double dropped = 0.0;
            for (int j = 0; j < r; ++j) {
                const FrameVector tj = t.apply_T(U1, t.basis(j));
                dropped += dot(tj, tj);
            }
            rec.dropped_term = dropped;
            break;
        }
        case TheoremId::V2:
            rec.lhs = two_tau_hat();
            rec.rhs = cp * r * (r - 1) - 2.0 * cm * (r - 1) - N2;
            break;
        case TheoremId::H1:
            rec.lhs = two_tau_star();
            rec.rhs = cp * n * (n - 1) + 3.0 * cm * (n + trace_phiB());
            break;
        case TheoremId::V3:
            rec.lhs = two_tau_hat();
            rec.rhs = cp * r * (r - 1) - N2;
            break;
        case TheoremId::H2:
            rec.lhs = two_tau_star();
            rec.rhs = cp * n * (n - 1) + cm * (3.0 * trace_phiB() + n - 1);
            break;
        case TheoremId::CRV1:
            rec.lhs = ric_hat(t, U1);
            rec.rhs = cp * (r - 1) - cm * ((r - 2) * eu * eu + 1.0) - 0.25 * N2;
            break;
        case TheoremId::CRH1: {
            rec.lhs = ric_star(t, X1);
            const double cx = cx1_sq();
            rec.rhs = cp * (n - 1) + 0.75 * (c - 1.0) * cx;
            const double alt = cp * (n - 1) + 0.375 * (c - 1.0) * cx;
            rec.variants.push_back({"kappa=3/4", rec.rhs, rec.rhs - rec.lhs, rec.rhs - rec.lhs >= -tol.equality});
            rec.variants.push_back({"kappa=3/8", alt, alt - rec.lhs, alt - rec.lhs >= -tol.equality});
            break;
        }
        case TheoremId::CMB1:
            rec.lhs = cp * (n * r + n + r - 2) + cm * (3 * r - 4 - n - (r - 2) * eu * eu + 3.0 * cx1_sq());
            rec.rhs = combined_rhs();
            break;
        case TheoremId::CRV2:
            rec.lhs = ric_hat(t, U1);
            rec.rhs = cp * (r - 1) - 0.25 * N2;
            break;
        case TheoremId::CRH2:
            rec.lhs = ric_star(t, X1);
            rec.rhs = cp * (n - 1) + cm * ((2 - n) * ex * ex - 1.0 + 3.0 * cx1_sq());
            break;
        case TheoremId::CMB2:
            rec.lhs = cp * (n * r + n + r - 2) + cm * (2 * r - 4 - (n - 2) * ex * ex + 3.0 * cx1_sq());
            rec.rhs = combined_rhs();
            break;
    }
    rec.slack = spec.direction == Direction::at_least ? rec.lhs - rec.rhs : rec.rhs - rec.lhs;
    rec.holds = rec.slack >= -tol.equality;
    rec.flags = equality_diagnostics(t);
    rec.condition_residual = rec.flags.residual(spec.condition);
    rec.condition_hit = rec.condition_residual <= tol.equality;
    rec.sharp = !rec.condition_hit || std::abs(rec.slack) <= tol.sharpness;
    return rec;
}

InequalityRecord evaluate_theorem(const SubmersionModel& model, std::span<const double> p, TheoremId id,
                                  const Probe& probe, const Tolerances& tol) {
    if (theorem_spec(id).xi_case != model.xi_position) {
        throw GeometryError(ErrorKind::rejected_input, std::string(to_string(id)) + " does not apply to model '" +
                                                           model.name + "' (xi " +
                                                           std::string(to_string(model.xi_position)) + ")");
    }
    return evaluate_theorem(analyze_point(model, p).tensors, id, probe, tol);
}

}  // namespace oneill
