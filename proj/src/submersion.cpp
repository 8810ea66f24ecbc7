#include "oneill/submersion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oneill {

namespace {

VectorField combine(const std::string& name, const VectorField& a, double s, const VectorField& b) {
    VectorField out{name, {}};
    for (std::size_t k = 0; k < a.components.size(); ++k) {
        out.components.push_back(a.components[k] + Expr(s) * b.components[k]);
    }
    return out;
}

}  // namespace

std::vector<double> SubmersionModel::project(std::span<const double> p) const {
    std::vector<double> u;
    u.reserve(map.size());
    for (const Expr& e : map) u.push_back(e.eval(p));
    return u;
}

bool SubmersionModel::admits(std::span<const double> p) const {
    if (!total.manifold.admits(p)) return false;
    const std::vector<double> u = project(p);
    return base.admits(u);
}

bool SubmersionModel::sampling_admits(std::span<const double> p) const {
    if (!admits(p)) return false;
    for (const Expr& g : sampling_guard) {
        if (!(g.eval(p) > 0.0)) return false;
    }
    return true;
}

void SubmersionModel::validate() const {
    total.manifold.validate();
    base.validate();
    const int d = dim();
    if (static_cast<int>(map.size()) != b()) {
        throw GeometryError(ErrorKind::rejected_input, "model '" + name + "': map has wrong number of components");
    }
    if (b() < 1 || b() >= d) {
        throw GeometryError(ErrorKind::rejected_input, "model '" + name + "': base dimension must lie in [1, dim)");
    }
    for (const Expr& e : map) {
        if (e.max_variable() >= d) {
            throw GeometryError(ErrorKind::rejected_input, "model '" + name + "': map uses unknown coordinates");
        }
    }
    if (analytic_frames()) {
        if (static_cast<int>(vertical_fields.size()) != r() || static_cast<int>(horizontal_fields.size()) != n()) {
            throw GeometryError(ErrorKind::rejected_input,
                                "model '" + name + "': frame field counts must be r = dim - b and n = b");
        }
        const auto& block = xi_position == XiPosition::vertical ? vertical_fields : horizontal_fields;
        if (xi_field < 0 || xi_field >= static_cast<int>(block.size())) {
            throw GeometryError(ErrorKind::rejected_input, "model '" + name + "': xi is not in its declared block");
        }
        for (const auto* list : {&vertical_fields, &horizontal_fields}) {
            for (const VectorField& f : *list) {
                if (static_cast<int>(f.components.size()) != d) {
                    throw GeometryError(ErrorKind::rejected_input,
                                        "model '" + name + "': field '" + f.name + "' has wrong dimension");
                }
            }
        }
    }
    if (xi_position == XiPosition::vertical && r() < 1) {
        throw GeometryError(ErrorKind::rejected_input, "model '" + name + "': no room for xi in the vertical block");
    }
}

SubmersionModel build_vertical_xi_example() {
    SubmersionModel s;
    s.name = "vertical-xi";
    s.total = build_r2m1(2);
    const auto& e = s.total.reference_frame;  // E1..E4, xi
    const Expr eighth(0.125);
    s.base = make_manifold("R2", {"u1", "u2"}, {eighth, Expr(0.0), Expr(0.0), eighth});
    const Expr x1 = Expr::variable(0), x2 = Expr::variable(1), y1 = Expr::variable(2), y2 = Expr::variable(3);
    s.map = {x1 + y1, x2 + y2};
    s.vertical_fields = {combine("V1", e[0], -1.0, e[2]), combine("V2", e[1], -1.0, e[3]), e[4]};
    s.vertical_fields[2].name = "V3";
    s.horizontal_fields = {combine("H1", e[0], 1.0, e[2]), combine("H2", e[1], 1.0, e[3])};
    s.xi_position = XiPosition::vertical;
    s.xi_field = 2;
    s.validate();
    return s;
}

SubmersionModel build_horizontal_xi_example() {
    SubmersionModel s;
    s.name = "horizontal-xi";
    s.total = build_r2m1(2);
    const auto& e = s.total.reference_frame;
    const Expr u1 = Expr::variable(0), u2 = Expr::variable(1);
    const Expr q(0.25);
    // g_N = 1/4 [[1/2, u1 u2/2, -u1/2], [u1 u2/2, 1/2, -u2/2], [-u1/2, -u2/2, 1]]
    const std::vector<Expr> gn = {q * Expr(0.5),     q * (u1 * u2 * 0.5), q * (-(u1 * 0.5)),
                                  q * (u1 * u2 * 0.5), q * Expr(0.5),       q * (-(u2 * 0.5)),
                                  q * (-(u1 * 0.5)),   q * (-(u2 * 0.5)),   q};
    s.base = make_manifold("N", {"u1", "u2", "u3"}, gn, {u1 * u1 + u2 * u2 - Expr(2.0)});
    const Expr x1 = Expr::variable(0), x2 = Expr::variable(1), y1 = Expr::variable(2), y2 = Expr::variable(3),
               z = Expr::variable(4);
    s.map = {x1 + y1, x2 + y2, y1 * y1 * 0.5 + y2 * y2 * 0.5 + z};
    s.vertical_fields = {combine("V1", e[0], -1.0, e[2]), combine("V2", e[1], -1.0, e[3])};
    s.horizontal_fields = {combine("H1", e[0], 1.0, e[2]), combine("H2", e[1], 1.0, e[3]), e[4]};
    s.horizontal_fields[2].name = "H3";
    s.xi_position = XiPosition::horizontal;
    s.xi_field = 2;
    const Expr s1 = x1 + y1, s2 = x2 + y2;
    s.sampling_guard = {s1 * s1 + s2 * s2 - Expr(2.5)};
    s.validate();
    return s;
}

// ---- per-point analysis ---------------------------------------------------

namespace {

constexpr double kPivotTolerance = 1e-10;

JetVector scaled(const JetVector& v, const ScalarJet& s) {
    JetVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] * s;
    return out;
}

void axpy(JetVector& y, const ScalarJet& a, const JetVector& x) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] -= a * x[k];
}

JetVector vertical_projection(const LocalGeometry& geo, const std::vector<JetVector>& frame, int r,
                              const JetVector& w) {
    JetVector out(w.size(), ScalarJet::constant(0.0, geo.dim));
    for (int a = 0; a < r; ++a) {
        const ScalarJet c = inner(geo, w, frame[a]);
        for (std::size_t k = 0; k < w.size(); ++k) out[k] += c * frame[a][k];
    }
    return out;
}

JetVector difference(const JetVector& a, const JetVector& b) {
    JetVector out = a;
    for (std::size_t k = 0; k < a.size(); ++k) out[k] -= b[k];
    return out;
}

// Modified Gram-Schmidt of `candidates` against `basis` (already orthonormal).
// Each accepted vector is appended to basis.  When pivoting is on, the
// candidate with the largest remaining norm is taken at every step.
void orthonormalize(const LocalGeometry& geo, std::vector<JetVector> candidates, std::size_t want, bool pivoting,
                    std::vector<JetVector>& basis, std::vector<JetVector>& accepted) {
    while (accepted.size() < want) {
        if (candidates.empty()) throw GeometryError(ErrorKind::degenerate_frame, "not enough independent fields");
        std::size_t pick = 0;
        ScalarJet best_norm2;
        JetVector best;
        double best_ratio = -1.0;
        const std::size_t limit = pivoting ? candidates.size() : 1;
        for (std::size_t c = 0; c < limit; ++c) {
            JetVector u = candidates[c];
            const double n0 = std::sqrt(std::max(inner(geo, u, u).value(), 0.0));
            for (const JetVector& e : basis) axpy(u, inner(geo, u, e), e);
            const ScalarJet n2 = inner(geo, u, u);
            const double ratio = n0 > 0.0 ? std::sqrt(std::max(n2.value(), 0.0)) / n0 : 0.0;
            if (ratio > best_ratio) {
                best_ratio = ratio;
                pick = c;
                best = std::move(u);
                best_norm2 = n2;
            }
        }
        if (!(best_ratio >= kPivotTolerance)) {
            throw GeometryError(ErrorKind::degenerate_frame, "frame fields are linearly dependent at the point");
        }
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
        JetVector e = scaled(best, reciprocal(sqrt(best_norm2)));
        basis.push_back(e);
        accepted.push_back(std::move(e));
    }
}

std::vector<JetVector> analytic_block(const LocalGeometry& geo, const std::vector<VectorField>& fields, int xi_field,
                                      std::vector<JetVector>& basis) {
    std::vector<JetVector> order;
    if (xi_field >= 0) order.push_back(fields[xi_field].eval(geo.point));
    for (int k = 0; k < static_cast<int>(fields.size()); ++k) {
        if (k != xi_field) order.push_back(fields[k].eval(geo.point));
    }
    std::vector<JetVector> accepted;
    orthonormalize(geo, order, order.size(), false, basis, accepted);
    if (xi_field >= 0) std::rotate(accepted.begin(), accepted.begin() + 1, accepted.end());
    return accepted;
}

// Horizontal projector g^{-1} J^T (J g^{-1} J^T)^{-1} J as first-order jets.
std::vector<JetVector> horizontal_projector(const SubmersionModel& model, const LocalGeometry& geo) {
    const int d = geo.dim;
    const int b = model.b();
    std::vector<JetVector> J(b, JetVector(d));
    for (int a = 0; a < b; ++a) {
        const ScalarJet f = jet_eval(model.map[a], geo.point);
        for (int i = 0; i < d; ++i) J[a][i] = f.partial(i);
    }
    // K = g^{-1} J^T  (d x b)
    std::vector<JetVector> K(d, JetVector(b, ScalarJet::constant(0.0, d)));
    for (int i = 0; i < d; ++i) {
        for (int a = 0; a < b; ++a) {
            for (int l = 0; l < d; ++l) K[i][a] += geo.g_inv[i * d + l] * J[a][l];
        }
    }
    // M = J K (b x b), then M^{-1} by Gauss-Jordan with value pivoting
    std::vector<JetVector> M(b, JetVector(b, ScalarJet::constant(0.0, d)));
    for (int a = 0; a < b; ++a) {
        for (int c = 0; c < b; ++c) {
            for (int i = 0; i < d; ++i) M[a][c] += J[a][i] * K[i][c];
        }
    }
    std::vector<JetVector> Minv(b, JetVector(b, ScalarJet::constant(0.0, d)));
    for (int a = 0; a < b; ++a) Minv[a][a] = ScalarJet::constant(1.0, d);
    for (int c = 0; c < b; ++c) {
        int piv = c;
        for (int rr = c + 1; rr < b; ++rr) {
            if (std::abs(M[rr][c].value()) > std::abs(M[piv][c].value())) piv = rr;
        }
        if (std::abs(M[piv][c].value()) < kPivotTolerance) {
            throw GeometryError(ErrorKind::degenerate_frame, "differential of the map is rank deficient");
        }
        std::swap(M[piv], M[c]);
        std::swap(Minv[piv], Minv[c]);
        const ScalarJet inv = reciprocal(M[c][c]);
        for (int k = 0; k < b; ++k) {
            M[c][k] = M[c][k] * inv;
            Minv[c][k] = Minv[c][k] * inv;
        }
        for (int rr = 0; rr < b; ++rr) {
            if (rr == c) continue;
            const ScalarJet f = M[rr][c];
            for (int k = 0; k < b; ++k) {
                M[rr][k] -= f * M[c][k];
                Minv[rr][k] -= f * Minv[c][k];
            }
        }
    }
    std::vector<JetVector> P(d, JetVector(d, ScalarJet::constant(0.0, d)));
    for (int i = 0; i < d; ++i) {
        for (int a = 0; a < b; ++a) {
            ScalarJet ka = ScalarJet::constant(0.0, d);
            for (int c = 0; c < b; ++c) ka += K[i][c] * Minv[c][a];
            for (int j = 0; j < d; ++j) P[i][j] += ka * J[a][j];
        }
    }
    return P;
}

std::vector<JetVector> derived_frame(const SubmersionModel& model, const LocalGeometry& geo) {
    const int d = geo.dim;
    const std::vector<JetVector> P = horizontal_projector(model, geo);
    std::vector<JetVector> hc, vc;
    for (int j = 0; j < d; ++j) {
        JetVector h(d), v(d);
        for (int i = 0; i < d; ++i) {
            h[i] = P[i][j];
            v[i] = ScalarJet::constant(i == j ? 1.0 : 0.0, d) - P[i][j];
        }
        hc.push_back(std::move(h));
        vc.push_back(std::move(v));
    }
    const JetVector xi = model.total.structure.xi.eval(geo.point);
    std::vector<JetVector> basis, vertical, horizontal;
    auto block = [&](std::vector<JetVector>& cand, std::size_t want, bool has_xi, std::vector<JetVector>& out) {
        if (has_xi) {
            std::vector<JetVector> first{xi};
            orthonormalize(geo, first, 1, false, basis, out);
        }
        orthonormalize(geo, cand, want, true, basis, out);
        if (has_xi) std::rotate(out.begin(), out.begin() + 1, out.end());
    };
    block(vc, static_cast<std::size_t>(model.r()), model.xi_position == XiPosition::vertical, vertical);
    block(hc, static_cast<std::size_t>(model.n()), model.xi_position == XiPosition::horizontal, horizontal);
    std::vector<JetVector> frame = std::move(vertical);
    for (auto& h : horizontal) frame.push_back(std::move(h));
    return frame;
}

int order_of(const JetVector& v) {
    int o = 2;
    for (const ScalarJet& s : v) o = std::min(o, s.order());
    return o;
}

std::vector<double> values(const JetVector& v) {
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].value();
    return out;
}

}  // namespace

FramedPoint analyze_point(const SubmersionModel& model, std::span<const double> p) {
    if (static_cast<int>(p.size()) != model.dim()) {
        throw GeometryError(ErrorKind::rejected_input, "point dimension does not match model '" + model.name + "'");
    }
    if (!model.admits(p)) throw GeometryError(ErrorKind::out_of_domain, "point outside the model domain");

    FramedPoint fp;
    fp.point.assign(p.begin(), p.end());
    fp.geo = local_geometry(model.total.manifold, p);
    const LocalGeometry& geo = fp.geo;
    const int d = geo.dim;
    const int r = model.r();
    const int n = model.n();

    if (model.analytic_frames()) {
        std::vector<JetVector> basis;
        const bool xv = model.xi_position == XiPosition::vertical;
        std::vector<JetVector> vb = analytic_block(geo, model.vertical_fields, xv ? model.xi_field : -1, basis);
        std::vector<JetVector> hb = analytic_block(geo, model.horizontal_fields, xv ? -1 : model.xi_field, basis);
        fp.frame = std::move(vb);
        for (auto& h : hb) fp.frame.push_back(std::move(h));
        double worst = 0.0;
        for (const VectorField& V : model.vertical_fields) {
            const JetVector vj = V.eval(geo.point);
            const double nv = std::sqrt(inner(geo, vj, vj).value());
            for (const VectorField& H : model.horizontal_fields) {
                const JetVector hj = H.eval(geo.point);
                const double nh = std::sqrt(inner(geo, hj, hj).value());
                worst = std::max(worst, std::abs(inner(geo, vj, hj).value()) / (nv * nh));
            }
        }
        fp.field_orthogonality = worst;
    } else {
        fp.frame = derived_frame(model, geo);
    }
    fp.frame_order = 2;
    for (const JetVector& e : fp.frame) fp.frame_order = std::min(fp.frame_order, order_of(e));

    const int xi_slot = model.xi_position == XiPosition::vertical ? r - 1 : d - 1;
    {
        const std::vector<double> xi = model.total.structure.xi.eval(p);
        double res = 0.0;
        for (int k = 0; k < d; ++k) res = std::max(res, std::abs(fp.frame[xi_slot][k].value() - xi[k]));
        fp.xi_slot_residual = res;
    }

    std::vector<std::vector<double>> ev(d);
    for (int a = 0; a < d; ++a) ev[a] = values(fp.frame[a]);
    const std::vector<double> gval = geo.metric_values();
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            fp.gram_residual = std::max(fp.gram_residual, std::abs(inner(gval, ev[a], ev[b]) - (a == b ? 1.0 : 0.0)));
        }
    }

    // nabla_{e_a} e_b, then T and A as fields
    std::vector<std::vector<JetVector>> D(d, std::vector<JetVector>(d));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) D[a][b] = covariant_derivative(geo, fp.frame[a], fp.frame[b]);
    }
    const JetVector zero(d, ScalarJet::constant(0.0, d));
    std::vector<std::vector<JetVector>> Tf(d, std::vector<JetVector>(d, zero));
    std::vector<std::vector<JetVector>> Af(d, std::vector<JetVector>(d, zero));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            const JetVector v = vertical_projection(geo, fp.frame, r, D[a][b]);
            const JetVector h = difference(D[a][b], v);
            const bool fv = b < r;
            if (a < r) Tf[a][b] = fv ? h : v;
            else Af[a][b] = fv ? h : v;
        }
    }

    FrameTensors& t = fp.tensors;
    t.r = r;
    t.n = n;
    t.c = model.total.c;
    t.xi_position = model.xi_position;
    t.xi_slot = xi_slot;

    // Riemann tensor in the frame, one index at a time.
    const RiemannValue& R = geo.riemann;
    std::vector<double> cur(R.data), next(R.data.size());
    for (int slot = 0; slot < 4; ++slot) {
        // contract the leading index of cur with the frame, rotate it to the back
        for (int a = 0; a < d; ++a) {
            for (int rest = 0; rest < d * d * d; ++rest) {
                double s = 0.0;
                for (int i = 0; i < d; ++i) s += ev[a][i] * cur[i * d * d * d + rest];
                next[rest * d + a] = s;
            }
        }
        std::swap(cur, next);
    }
    t.R = cur;

    t.T.assign(static_cast<std::size_t>(d) * d * d, 0.0);
    t.A.assign(static_cast<std::size_t>(d) * d * d, 0.0);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                t.T[(a * d + b) * d + c] = inner(geo, Tf[a][b], fp.frame[c]).value();
                t.A[(a * d + b) * d + c] = inner(geo, Af[a][b], fp.frame[c]).value();
            }
        }
    }

    const StructureValues sv = structure_values(model.total, p);
    t.phi.assign(static_cast<std::size_t>(d) * d, 0.0);
    t.eta.assign(d, 0.0);
    for (int b = 0; b < d; ++b) {
        const std::vector<double> pb = sv.apply_phi(ev[b]);
        for (int a = 0; a < d; ++a) t.phi[a * d + b] = inner(gval, pb, ev[a]);
        t.eta[b] = std::inner_product(sv.eta.begin(), sv.eta.end(), ev[b].begin(), 0.0);
    }

    // Covariant derivatives of T and A need the fields to first order.
    bool derivable = true;
    for (int a = 0; a < d && derivable; ++a) {
        for (int b = 0; b < d; ++b) {
            if (order_of(Tf[a][b]) < 1 || order_of(Af[a][b]) < 1) {
                derivable = false;
                break;
            }
        }
    }
    t.has_derivatives = derivable;
    if (derivable) {
        // connection coefficients w[a][b][c] = g(nabla_{e_a} e_b, e_c)
        std::vector<double> w(static_cast<std::size_t>(d) * d * d);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                const std::vector<double> dv = values(D[a][b]);
                for (int c = 0; c < d; ++c) w[(a * d + b) * d + c] = inner(gval, dv, ev[c]);
            }
        }
        t.nablaT.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
        t.nablaA.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
        auto fill = [&](const std::vector<std::vector<JetVector>>& F, const std::vector<double>& coeff,
                        std::vector<double>& out) {
            for (int b = 0; b < d; ++b) {
                for (int c = 0; c < d; ++c) {
                    for (int a = 0; a < d; ++a) {
                        const std::vector<double> dv = values(covariant_derivative(geo, fp.frame[a], F[b][c]));
                        for (int e = 0; e < d; ++e) {
                            double s = inner(gval, dv, ev[e]);
                            for (int k = 0; k < d; ++k) {
                                s -= w[(a * d + b) * d + k] * coeff[(k * d + c) * d + e];
                                s -= w[(a * d + c) * d + k] * coeff[(b * d + k) * d + e];
                            }
                            out[((a * d + b) * d + c) * d + e] = s;
                        }
                    }
                }
            }
        };
        fill(Tf, t.T, t.nablaT);
        fill(Af, t.A, t.nablaA);
    }
    return fp;
}

std::vector<std::vector<double>> differential_at(const SubmersionModel& model, std::span<const double> p) {
    if (!model.admits(p)) throw GeometryError(ErrorKind::out_of_domain, "point outside the model domain");
    const JetPoint jp = seed(p);
    std::vector<std::vector<double>> J;
    for (const Expr& e : model.map) J.push_back(jet_eval(e, jp).gradient_vector());
    return J;
}

SubmersionResiduals verify_riemannian_submersion(const SubmersionModel& model, const FramedPoint& fp) {
    SubmersionResiduals res;
    const int r = model.r();
    const int n = model.n();
    const int b = model.b();
    const auto J = differential_at(model, fp.point);
    auto push = [&](const JetVector& v) {
        std::vector<double> out(b, 0.0);
        for (int a = 0; a < b; ++a) {
            for (int i = 0; i < model.dim(); ++i) out[a] += J[a][i] * v[i].value();
        }
        return out;
    };
    for (int a = 0; a < r; ++a) res.vertical_kernel = std::max(res.vertical_kernel, max_abs(push(fp.frame[a])));
    const std::vector<double> u = model.project(fp.point);
    res.base_in_domain = model.base.admits(u);
    std::vector<double> gb(static_cast<std::size_t>(b) * b);
    for (int k = 0; k < b * b; ++k) gb[k] = model.base.metric[k].eval(u);
    res.base_positive_definite = is_positive_definite(gb, b);
    std::vector<std::vector<double>> px;
    for (int i = 0; i < n; ++i) px.push_back(push(fp.frame[r + i]));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = inner(gb, px[i], px[j]);
            if (i == j) res.length = std::max(res.length, std::abs(v - 1.0));
            else res.orthogonality = std::max(res.orthogonality, std::abs(v));
        }
    }
    return res;
}

SubmersionResiduals verify_riemannian_submersion(const SubmersionModel& model, std::span<const double> p) {
    return verify_riemannian_submersion(model, analyze_point(model, p));
}

// ---- frame-level views ----------------------------------------------------

namespace {

std::vector<double> to_coords(const FramedPoint& fp, std::span<const double> fv) {
    const int d = static_cast<int>(fp.frame.size());
    std::vector<double> out(d, 0.0);
    for (int a = 0; a < d; ++a) {
        if (fv[a] == 0.0) continue;
        for (int k = 0; k < d; ++k) out[k] += fv[a] * fp.frame[a][k].value();
    }
    return out;
}

// Orthonormal basis (frame coordinates) of the span of `vectors`, dropping
// directions whose residual norm falls under tol.
std::vector<FrameVector> span_basis(const std::vector<FrameVector>& vectors, double tol) {
    std::vector<FrameVector> basis;
    for (FrameVector v : vectors) {
        for (const FrameVector& e : basis) {
            const double c = dot(v, e);
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * e[k];
        }
        const double nv = std::sqrt(dot(v, v));
        if (nv < tol) continue;
        for (double& x : v) x /= nv;
        basis.push_back(std::move(v));
    }
    return basis;
}

FrameVector project_onto(const std::vector<FrameVector>& basis, std::span<const double> v) {
    FrameVector out(v.size(), 0.0);
    for (const FrameVector& e : basis) {
        const double c = dot(v, e);
        for (std::size_t k = 0; k < v.size(); ++k) out[k] += c * e[k];
    }
    return out;
}

}  // namespace

AdaptedFrame adapted_frame(const FramedPoint& fp, XiPosition xi_position) {
    const FrameTensors& t = fp.tensors;
    const int r = t.r;
    const int n = t.n;
    const int d = r + n;
    AdaptedFrame f;
    f.point = fp.point;
    f.xi_position = xi_position;
    f.xi_index = xi_position == XiPosition::vertical ? r - 1 : n - 1;
    for (int a = 0; a < d; ++a) {
        std::vector<double> v = values(fp.frame[a]);
        (a < r ? f.U : f.X).push_back(std::move(v));
    }
    f.gram_residual = fp.gram_residual;

    constexpr double rank_tol = 1e-8;
    std::vector<FrameVector> images;
    for (int a = 0; a < r; ++a) images.push_back(t.horizontal_part(t.apply_phi(t.basis(a))));
    const std::vector<FrameVector> phiV = span_basis(images, rank_tol);
    std::vector<FrameVector> hcand;
    for (int s = 0; s < n; ++s) {
        FrameVector e = t.basis(r + s);
        const FrameVector pr = project_onto(phiV, e);
        for (int k = 0; k < d; ++k) e[k] -= pr[k];
        hcand.push_back(std::move(e));
    }
    const std::vector<FrameVector> mu = span_basis(hcand, rank_tol);

    double res = 0.0;
    if (static_cast<int>(phiV.size() + mu.size()) != n) res = 1.0;
    // phi(V) must be horizontal (anti-invariance) and mu must be phi-invariant
    for (int a = 0; a < r; ++a) res = std::max(res, max_abs(t.vertical_part(t.apply_phi(t.basis(a)))));
    std::vector<FrameVector> phimu;
    for (const FrameVector& m : mu) {
        const FrameVector pm = t.apply_phi(m);
        FrameVector off = pm;
        const FrameVector pr = project_onto(mu, pm);
        for (int k = 0; k < d; ++k) off[k] -= pr[k];
        res = std::max(res, max_abs(off));
        phimu.push_back(pm);
    }
    if (xi_position == XiPosition::horizontal) {
        const FrameVector xi = t.eta;
        FrameVector off = xi;
        const FrameVector pr = project_onto(mu, xi);
        for (int k = 0; k < d; ++k) off[k] -= pr[k];
        res = std::max(res, max_abs(off));
        // mu = phi(mu) + {xi}: phi kills exactly the xi direction
        const std::size_t rank = span_basis(phimu, rank_tol).size();
        if (rank + 1 != mu.size()) res = std::max(res, 1.0);
    }
    f.decomposition_residual = res;
    for (const FrameVector& v : phiV) f.phiV.push_back(to_coords(fp, v));
    for (const FrameVector& v : mu) f.mu.push_back(to_coords(fp, v));
    return f;
}

AdaptedFrame adapted_frame_at(const SubmersionModel& model, std::span<const double> p) {
    return adapted_frame(analyze_point(model, p), model.xi_position);
}

ONeillTensors oneill_tensors(const FrameTensors& t) {
    const int r = t.r;
    const int n = t.n;
    ONeillTensors o;
    o.r = r;
    o.n = n;
    o.T_vv.assign(static_cast<std::size_t>(r) * r * n, 0.0);
    o.A_hh.assign(static_cast<std::size_t>(n) * n * r, 0.0);
    o.T_vh.assign(static_cast<std::size_t>(r) * n * r, 0.0);
    o.A_hv.assign(static_cast<std::size_t>(n) * r * n, 0.0);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            for (int s = 0; s < n; ++s) o.T_vv[(i * r + j) * n + s] = t.Tv(i, j, r + s);
        }
        for (int s = 0; s < n; ++s) {
            for (int a = 0; a < r; ++a) o.T_vh[(i * n + s) * r + a] = t.Tv(i, r + s, a);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int a = 0; a < r; ++a) o.A_hh[(i * n + j) * r + a] = t.Av(r + i, r + j, a);
        }
        for (int k = 0; k < r; ++k) {
            for (int s = 0; s < n; ++s) o.A_hv[(i * r + k) * n + s] = t.Av(r + i, k, r + s);
        }
    }
    o.N.assign(n, 0.0);
    for (int s = 0; s < n; ++s) {
        for (int j = 0; j < r; ++j) o.N[s] += o.T(j, j, s);
    }
    o.H = o.N;
    for (double& h : o.H) h /= r;
    for (int i = 0; i < n; ++i) {
        const FrameVector x = t.basis(r + i);
        const BCDecomposition bc = bc_decompose(t, x);
        o.trace_phiB += dot(t.apply_phi(bc.B), x);
    }
    return o;
}

ONeillTensors oneill_tensors_at(const SubmersionModel& model, std::span<const double> p) {
    return oneill_tensors(analyze_point(model, p).tensors);
}

BCDecomposition bc_decompose(const FrameTensors& t, std::span<const double> x) {
    const FrameVector px = t.apply_phi(x);
    return {t.vertical_part(px), t.horizontal_part(px)};
}

LemmaResiduals verify_structure_lemmas(const FrameTensors& t) {
    const int r = t.r;
    const int n = t.n;
    const int d = r + n;
    LemmaResiduals res;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            for (int s = r; s < d; ++s) res.t_symmetry = std::max(res.t_symmetry, std::abs(t.Tv(i, j, s) - t.Tv(j, i, s)));
            res.anti_invariance = std::max(res.anti_invariance, std::abs(t.phi[j * d + i]));
        }
    }
    for (int i = r; i < d; ++i) {
        for (int j = r; j < d; ++j) {
            for (int a = 0; a < r; ++a) res.a_alternation = std::max(res.a_alternation, std::abs(t.Av(i, j, a) + t.Av(j, i, a)));
        }
    }
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                res.t_skew = std::max(res.t_skew, std::abs(t.Tv(a, b, c) + t.Tv(a, c, b)));
                res.a_skew = std::max(res.a_skew, std::abs(t.Av(a, b, c) + t.Av(a, c, b)));
            }
        }
    }
    for (int s = r; s < d; ++s) {
        const FrameVector x = t.basis(s);
        const BCDecomposition bc = bc_decompose(t, x);
        const FrameVector c2 = t.horizontal_part(t.apply_phi(bc.C));
        const FrameVector pb = t.apply_phi(bc.B);
        const double ex = t.eta_of(x);
        FrameVector resid(d);
        for (int k = 0; k < d; ++k) {
            resid[k] = c2[k] + x[k] + pb[k];
            // xi in frame coordinates is the eta row, since g is the identity there
            if (t.xi_position == XiPosition::horizontal) resid[k] -= ex * t.eta[k];
        }
        res.c_squared = std::max(res.c_squared, max_abs(resid));
    }
    return res;
}

LemmaResiduals verify_structure_lemmas(const SubmersionModel& model, std::span<const double> p) {
    return verify_structure_lemmas(analyze_point(model, p).tensors);
}

}  // namespace oneill
