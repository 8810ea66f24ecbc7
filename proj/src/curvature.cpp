#include "oneill/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace oneill {

namespace {

bool is_vertical(const FrameTensors& t, std::span<const double> v) {
    for (int a = t.r; a < t.dim(); ++a) {
        if (std::abs(v[a]) > 1e-10) return false;
    }
    return true;
}

bool is_horizontal(const FrameTensors& t, std::span<const double> v) {
    for (int a = 0; a < t.r; ++a) {
        if (std::abs(v[a]) > 1e-10) return false;
    }
    return true;
}

void require(bool ok, const char* what) {
    if (!ok) throw GeometryError(ErrorKind::rejected_input, what);
}

double square_norm(std::span<const double> v) { return dot(v, v); }

}  // namespace

double space_form_frame(const FrameTensors& t, std::span<const double> x, std::span<const double> y,
                        std::span<const double> z, std::span<const double> w) {
    const FrameVector px = t.apply_phi(x);
    const FrameVector py = t.apply_phi(y);
    const FrameVector pz = t.apply_phi(z);
    const double ex = t.eta_of(x), ey = t.eta_of(y), ez = t.eta_of(z), ew = t.eta_of(w);
    const double first = dot(y, z) * dot(x, w) - dot(x, z) * dot(y, w);
    const double second = ex * ez * dot(y, w) - ey * ez * dot(x, w) + dot(x, z) * ey * ew - dot(y, z) * ex * ew +
                          dot(py, z) * dot(px, w) - dot(px, z) * dot(py, w) - 2.0 * dot(px, y) * dot(pz, w);
    return (t.c + 3.0) / 4.0 * first + (t.c - 1.0) / 4.0 * second;
}

double fiber_curvature_hat(const FrameTensors& t, std::span<const double> u, std::span<const double> v,
                           std::span<const double> f, std::span<const double> w) {
    require(is_vertical(t, u) && is_vertical(t, v) && is_vertical(t, f) && is_vertical(t, w),
            "R-hat takes vertical arguments");
    return t.curvature(u, v, f, w) - dot(t.apply_T(u, w), t.apply_T(v, f)) + dot(t.apply_T(v, w), t.apply_T(u, f));
}

double horizontal_curvature_star(const FrameTensors& t, std::span<const double> x, std::span<const double> y,
                                 std::span<const double> z, std::span<const double> h) {
    require(is_horizontal(t, x) && is_horizontal(t, y) && is_horizontal(t, z) && is_horizontal(t, h),
            "R-star takes horizontal arguments");
    return t.curvature(x, y, z, h) + 2.0 * dot(t.apply_A(x, y), t.apply_A(z, h)) -
           dot(t.apply_A(y, z), t.apply_A(x, h)) + dot(t.apply_A(x, z), t.apply_A(y, h));
}

namespace {

double contract4(const std::vector<double>& q, int d, std::span<const double> a, std::span<const double> b,
                 std::span<const double> c, std::span<const double> e) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        if (a[i] == 0.0) continue;
        for (int j = 0; j < d; ++j) {
            if (b[j] == 0.0) continue;
            for (int k = 0; k < d; ++k) {
                if (c[k] == 0.0) continue;
                for (int l = 0; l < d; ++l) s += a[i] * b[j] * c[k] * e[l] * q[((i * d + j) * d + k) * d + l];
            }
        }
    }
    return s;
}

double mixed_rhs(const FrameTensors& t, std::span<const double> x, std::span<const double> v,
                 std::span<const double> y, std::span<const double> w) {
    const int d = t.dim();
    return contract4(t.nablaT, d, x, v, w, y) + contract4(t.nablaA, d, v, x, y, w) -
           dot(t.apply_T(v, x), t.apply_T(w, y)) + dot(t.apply_A(y, w), t.apply_A(x, v));
}

}  // namespace

double mixed_gauss_residual(const FrameTensors& t, std::span<const double> x, std::span<const double> v,
                            std::span<const double> y, std::span<const double> w) {
    require(is_horizontal(t, x) && is_horizontal(t, y) && is_vertical(t, v) && is_vertical(t, w),
            "mixed relation takes (horizontal, vertical, horizontal, vertical)");
    if (!t.has_derivatives) {
        throw GeometryError(ErrorKind::unsupported_computation,
                            "derivatives of T and A need analytic frame fields");
    }
    return std::abs(t.curvature(x, v, w, y) - mixed_rhs(t, x, v, y, w));
}

double ric_hat(const FrameTensors& t, std::span<const double> u) {
    double s = 0.0;
    for (int j = 0; j < t.r; ++j) {
        const FrameVector e = t.basis(j);
        s += fiber_curvature_hat(t, u, e, e, u);
    }
    return s;
}

double ric_star(const FrameTensors& t, std::span<const double> x) {
    double s = 0.0;
    for (int j = t.r; j < t.dim(); ++j) {
        const FrameVector e = t.basis(j);
        s += horizontal_curvature_star(t, x, e, e, x);
    }
    return s;
}

double delta_N(const FrameTensors& t) {
    if (!t.has_derivatives) {
        throw GeometryError(ErrorKind::unsupported_computation, "delta(N) needs analytic frame fields");
    }
    double s = 0.0;
    for (int i = t.r; i < t.dim(); ++i) {
        for (int k = 0; k < t.r; ++k) s += t.nT(i, k, k, i);
    }
    return s;
}

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names = {"T1", "T4", "S1", "S2", "S3", "R1", "R2", "gauss3"};
    return names;
}

double identity_tolerance(const std::string& name, const Tolerances& tol) {
    if (name == "T1") return tol.d1;
    if (name == "R1" || name == "R2") return tol.curv;
    return tol.d2curv;
}

double space_form_residual(const FrameTensors& t) {
    const int d = t.dim();
    double worst = 0.0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                for (int e = 0; e < d; ++e) {
                    const double sf = space_form_frame(t, t.basis(a), t.basis(b), t.basis(c), t.basis(e));
                    worst = std::max(worst, std::abs(t.Rv(a, b, c, e) - sf));
                }
            }
        }
    }
    return worst;
}

CurvaturePacket scalar_invariants(const FrameTensors& t) {
    const int r = t.r;
    const int n = t.n;
    const int d = r + n;
    const double c = t.c;
    const double cp = (c + 3.0) / 4.0;
    const double cm = (c - 1.0) / 4.0;
    CurvaturePacket k;
    k.r = r;
    k.n = n;

    std::vector<FrameVector> e(d);
    for (int a = 0; a < d; ++a) e[a] = t.basis(a);

    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) k.tau_hat += fiber_curvature_hat(t, e[i], e[j], e[j], e[i]);
    }
    for (int i = r; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) k.tau_star += horizontal_curvature_star(t, e[i], e[j], e[j], e[i]);
    }
    for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) k.tau_total += t.Rv(a, b, b, a);
    }
    for (int i = 0; i < r; ++i) k.ric_hat.push_back(ric_hat(t, e[i]));
    for (int i = r; i < d; ++i) k.ric_star.push_back(ric_star(t, e[i]));

    const ONeillTensors o = oneill_tensors(t);
    k.trace_phiB = o.trace_phiB;
    k.norm_N_sq = square_norm(o.N);
    for (double v : o.T_vv) k.norm_T_sq += v * v;
    for (double v : o.A_hh) k.norm_A_sq += v * v;
    for (int i = r; i < d; ++i) {
        for (int kk = 0; kk < r; ++kk) {
            k.norm_TV_sq += square_norm(t.apply_T(e[kk], e[i]));
            k.norm_AH_sq += square_norm(t.apply_A(e[i], e[kk]));
        }
    }
    k.has_delta_N = t.has_derivatives;
    if (k.has_delta_N) k.delta_N = delta_N(t);

    auto& id = k.identity_residuals;
    const double two_tau = 2.0 * k.tau_total;

    // T1: frame decomposition of sum (T_ij^s)^2 around U_1
    {
        double rhs = 0.5 * k.norm_N_sq;
        for (int s = 0; s < n; ++s) {
            double diff = o.T(0, 0, s);
            for (int j = 1; j < r; ++j) diff -= o.T(j, j, s);
            rhs += 0.5 * diff * diff;
            for (int j = 1; j < r; ++j) rhs += 2.0 * o.T(0, j, s) * o.T(0, j, s);
            for (int i = 1; i < r; ++i) {
                for (int j = i + 1; j < r; ++j) rhs -= 2.0 * (o.T(i, i, s) * o.T(j, j, s) - o.T(i, j, s) * o.T(i, j, s));
            }
        }
        id["T1"] = std::abs(k.norm_T_sq - rhs);
    }
    // T4: pair-summed 2 tau-hat against its closed form
    {
        double closed = cp * r * (r - 1) - k.norm_N_sq + k.norm_T_sq;
        if (t.xi_position == XiPosition::vertical) closed -= 2.0 * cm * (r - 1);
        id["T4"] = std::abs(2.0 * k.tau_hat - closed);
    }
    // S1: 2 tau against the space-form closed form for the xi-case
    const double base_part = cp * (r * (r - 1) + n * (n - 1) + 2 * n * r);
    {
        const double tail = t.xi_position == XiPosition::vertical ? 4.0 * (r - 1) + n + 3.0 * k.trace_phiB
                                                                  : n + 3.0 * k.trace_phiB + 4.0 * r - 7.0;
        id["S1"] = std::abs(two_tau - (base_part + cm * tail));
        k.findings["S1_space_form"] = std::abs(two_tau - (cp * d * (d - 1) + cm * (d - 1)));
    }
    // S2: four block sums
    {
        double blocks = 0.0;
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) blocks += t.Rv(a, b, b, a);
        }
        id["S2"] = std::abs(blocks - two_tau);
    }
    // S3 needs delta(N)
    if (k.has_delta_N) {
        const double rhs = 2.0 * k.tau_hat + 2.0 * k.tau_star + k.norm_N_sq - k.norm_T_sq + 3.0 * k.norm_A_sq +
                           2.0 * k.delta_N + 2.0 * (k.norm_AH_sq - k.norm_TV_sq);
        id["S3"] = std::abs(two_tau - rhs);
        const double alt = 2.0 * k.tau_hat + 2.0 * k.tau_star + k.norm_N_sq + k.norm_T_sq + 3.0 * k.norm_A_sq -
                               2.0 * k.delta_N + 2.0 * (k.norm_TV_sq - k.norm_AH_sq);
        k.findings["S3_alt_mixed_signs"] = std::abs(two_tau - alt);
    } else {
        k.unsupported.push_back("S3");
    }
    // R1 and R2: Gauss relations against the space-form expansion
    {
        double r1 = 0.0;
        for (int a = 0; a < r; ++a) {
            for (int b = 0; b < r; ++b) {
                for (int f = 0; f < r; ++f) {
                    for (int w = 0; w < r; ++w) {
                        const double lit = space_form_frame(t, e[a], e[b], e[f], e[w]) -
                                           dot(t.apply_T(e[a], e[w]), t.apply_T(e[b], e[f])) +
                                           dot(t.apply_T(e[b], e[w]), t.apply_T(e[a], e[f]));
                        r1 = std::max(r1, std::abs(fiber_curvature_hat(t, e[a], e[b], e[f], e[w]) - lit));
                    }
                }
            }
        }
        id["R1"] = r1;
        double r2 = 0.0;
        for (int a = r; a < d; ++a) {
            for (int b = r; b < d; ++b) {
                for (int z = r; z < d; ++z) {
                    for (int h = r; h < d; ++h) {
                        const double lit = space_form_frame(t, e[a], e[b], e[z], e[h]) +
                                           2.0 * dot(t.apply_A(e[a], e[b]), t.apply_A(e[z], e[h])) -
                                           dot(t.apply_A(e[b], e[z]), t.apply_A(e[a], e[h])) +
                                           dot(t.apply_A(e[a], e[z]), t.apply_A(e[b], e[h]));
                        r2 = std::max(r2, std::abs(horizontal_curvature_star(t, e[a], e[b], e[z], e[h]) - lit));
                    }
                }
            }
        }
        id["R2"] = r2;
    }
    if (t.has_derivatives) {
        double g3 = 0.0;
        double swapped = 0.0;
        for (int x = r; x < d; ++x) {
            for (int v = 0; v < r; ++v) {
                for (int y = r; y < d; ++y) {
                    for (int w = 0; w < r; ++w) {
                        g3 = std::max(g3, mixed_gauss_residual(t, e[x], e[v], e[y], e[w]));
                        swapped = std::max(swapped, std::abs(t.Rv(x, v, y, w) - mixed_rhs(t, e[x], e[v], e[y], e[w])));
                    }
                }
            }
        }
        id["gauss3"] = g3;
        k.findings["gauss3_pairing_XVYW"] = swapped;
    } else {
        k.unsupported.push_back("gauss3");
    }
    return k;
}

CurvaturePacket scalar_invariants(const SubmersionModel& model, std::span<const double> p) {
    return scalar_invariants(analyze_point(model, p).tensors);
}

TensorCoefficients tensor_coefficients(const FrameTensors& t) {
    const ONeillTensors o = oneill_tensors(t);
    return {o.r, o.n, o.T_vv, o.A_hh};
}

TensorCoefficients tensor_coefficients(const SubmersionModel& model, std::span<const double> p) {
    return tensor_coefficients(analyze_point(model, p).tensors);
}

}  // namespace oneill
