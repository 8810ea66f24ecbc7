#include "oneill/contact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oneill {

SasakianSpaceForm build_r2m1(int m) {
    if (m < 1) throw GeometryError(ErrorKind::rejected_input, "r2m1 needs m >= 1");
    const int d = 2 * m + 1;
    if (d > kMaxDim) {
        throw GeometryError(ErrorKind::rejected_input,
                            "r2m1:" + std::to_string(m) + " exceeds the jet capacity of " + std::to_string(kMaxDim));
    }
    // index layout: x_i -> i, y_i -> m + i, z -> 2m
    auto x = [&](int i) { return i; };
    auto y = [&](int i) { return m + i; };
    const int z = 2 * m;

    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < m; ++i) names.push_back("y" + std::to_string(i + 1));
    names.push_back("z");

    // eta = 1/2 (dz - sum y_i dx_i)
    std::vector<Expr> eta(d, Expr(0.0));
    eta[z] = Expr(0.5);
    for (int i = 0; i < m; ++i) eta[x(i)] = Expr(-0.5) * Expr::variable(y(i));

    // g = eta (x) eta + 1/4 sum (dx_i^2 + dy_i^2)
    std::vector<Expr> g(static_cast<std::size_t>(d) * d, Expr(0.0));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) g[a * d + b] = eta[a] * eta[b];
    }
    for (int i = 0; i < m; ++i) {
        g[x(i) * d + x(i)] = g[x(i) * d + x(i)] + Expr(0.25);
        g[y(i) * d + y(i)] = g[y(i) * d + y(i)] + Expr(0.25);
    }

    SasakianSpaceForm s;
    s.m = m;
    s.c = -3.0;
    s.manifold = make_manifold("r2m1:" + std::to_string(m), names, g);
    s.structure.eta = eta;

    // phi d/dx_i = -d/dy_i, phi d/dy_i = d/dx_i + y_i d/dz, phi d/dz = 0
    std::vector<Expr> phi(static_cast<std::size_t>(d) * d, Expr(0.0));
    for (int i = 0; i < m; ++i) {
        phi[x(i) * d + y(i)] = Expr(1.0);
        phi[y(i) * d + x(i)] = Expr(-1.0);
        phi[z * d + y(i)] = Expr::variable(y(i));
    }
    s.structure.phi = phi;

    VectorField xi{"xi", std::vector<Expr>(d, Expr(0.0))};
    xi.components[z] = Expr(2.0);
    s.structure.xi = xi;

    for (int i = 0; i < m; ++i) {
        VectorField e{"E" + std::to_string(i + 1), std::vector<Expr>(d, Expr(0.0))};
        e.components[y(i)] = Expr(2.0);
        s.reference_frame.push_back(e);
    }
    for (int i = 0; i < m; ++i) {
        VectorField e{"E" + std::to_string(m + i + 1), std::vector<Expr>(d, Expr(0.0))};
        e.components[x(i)] = Expr(2.0);
        e.components[z] = Expr(2.0) * Expr::variable(y(i));
        s.reference_frame.push_back(e);
    }
    s.reference_frame.push_back(xi);
    return s;
}

std::vector<double> StructureValues::apply_phi(std::span<const double> v) const {
    std::vector<double> out(dim, 0.0);
    for (int r = 0; r < dim; ++r) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += phi[r * dim + c] * v[c];
        out[r] = s;
    }
    return out;
}

StructureValues structure_values(const SasakianSpaceForm& spec, std::span<const double> p) {
    const int d = spec.dim();
    StructureValues s;
    s.dim = d;
    s.g.resize(static_cast<std::size_t>(d) * d);
    s.phi.resize(static_cast<std::size_t>(d) * d);
    for (int k = 0; k < d * d; ++k) {
        s.g[k] = spec.manifold.metric[k].eval(p);
        s.phi[k] = spec.structure.phi[k].eval(p);
    }
    s.eta.resize(d);
    for (int k = 0; k < d; ++k) s.eta[k] = spec.structure.eta[k].eval(p);
    s.xi = spec.structure.xi.eval(p);
    return s;
}

double SasakianResiduals::almost_contact() const { return std::max({eta_xi, phi_squared, phi_skew, eta_metric}); }

SasakianResiduals verify_sasakian(const SasakianSpaceForm& spec, std::span<const double> p) {
    return verify_sasakian(spec, local_geometry(spec.manifold, p));
}

SasakianResiduals verify_sasakian(const SasakianSpaceForm& spec, const LocalGeometry& geo) {
    const int d = spec.dim();
    const JetPoint& jp = geo.point;
    JetVector phi(static_cast<std::size_t>(d) * d);
    for (int k = 0; k < d * d; ++k) phi[k] = jet_eval(spec.structure.phi[k], jp);
    const JetVector xi = spec.structure.xi.eval(jp);
    std::vector<double> eta(d);
    for (int k = 0; k < d; ++k) eta[k] = spec.structure.eta[k].eval(jp.coords());
    const std::vector<double> g = geo.metric_values();

    SasakianResiduals r;
    // (a) nabla_{d_i} xi + phi d_i
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            double v = xi[k].gradient(i) + phi[k * d + i].value();
            for (int j = 0; j < d; ++j) v += geo.gamma(k, i, j).value() * xi[j].value();
            r.xi_parallel = std::max(r.xi_parallel, std::abs(v));
        }
    }
    // (b) (nabla_i phi)^k_j = d_i phi^k_j + Gamma^k_il phi^l_j - phi^k_l Gamma^l_ij
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                double v = phi[k * d + j].gradient(i);
                for (int l = 0; l < d; ++l) {
                    v += geo.gamma(k, i, l).value() * phi[l * d + j].value() -
                         phi[k * d + l].value() * geo.gamma(l, i, j).value();
                }
                const double expected = g[i * d + j] * xi[k].value() - eta[j] * (k == i ? 1.0 : 0.0);
                r.phi_derivative = std::max(r.phi_derivative, std::abs(v - expected));
            }
        }
    }
    double ex = 0.0;
    for (int k = 0; k < d; ++k) ex += eta[k] * xi[k].value();
    r.eta_xi = std::abs(ex - 1.0);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            double sq = 0.0;
            for (int l = 0; l < d; ++l) sq += phi[a * d + l].value() * phi[l * d + b].value();
            sq += (a == b ? 1.0 : 0.0) - xi[a].value() * eta[b];
            r.phi_squared = std::max(r.phi_squared, std::abs(sq));
            // g(phi d_a, d_b) + g(d_a, phi d_b)
            double sk = 0.0;
            for (int l = 0; l < d; ++l) sk += phi[l * d + a].value() * g[l * d + b] + g[a * d + l] * phi[l * d + b].value();
            r.phi_skew = std::max(r.phi_skew, std::abs(sk));
        }
        double gx = 0.0;
        for (int l = 0; l < d; ++l) gx += g[a * d + l] * xi[l].value();
        r.eta_metric = std::max(r.eta_metric, std::abs(eta[a] - gx));
    }
    return r;
}

double space_form_curvature(double c, const StructureValues& s, std::span<const double> x, std::span<const double> y,
                            std::span<const double> z, std::span<const double> w) {
    auto g = [&](std::span<const double> a, std::span<const double> b) { return inner(s.g, a, b); };
    auto eta = [&](std::span<const double> a) {
        double v = 0.0;
        for (int k = 0; k < s.dim; ++k) v += s.eta[k] * a[k];
        return v;
    };
    const std::vector<double> px = s.apply_phi(x);
    const std::vector<double> py = s.apply_phi(y);
    const std::vector<double> pz = s.apply_phi(z);
    const double a = (c + 3.0) / 4.0;
    const double b = (c - 1.0) / 4.0;
    const double first = g(y, z) * g(x, w) - g(x, z) * g(y, w);
    const double second = eta(x) * eta(z) * g(y, w) - eta(y) * eta(z) * g(x, w) + g(x, z) * eta(y) * eta(w) -
                          g(y, z) * eta(x) * eta(w) + g(py, z) * g(px, w) - g(px, z) * g(py, w) -
                          2.0 * g(px, y) * g(pz, w);
    return a * first + b * second;
}

double phi_sectional(const LocalGeometry& geo, const StructureValues& s, std::span<const double> x) {
    double ex = 0.0;
    for (int k = 0; k < s.dim; ++k) ex += s.eta[k] * x[k];
    const double norm = inner(s.g, x, x);
    if (std::abs(ex) > 1e-10 || std::abs(norm - 1.0) > 1e-10) {
        throw GeometryError(ErrorKind::rejected_input, "phi-section needs a unit vector orthogonal to xi");
    }
    const std::vector<double> px = s.apply_phi(x);
    return sectional_curvature(geo, x, px);
}

double phi_sectional(const SasakianSpaceForm& spec, std::span<const double> p, std::span<const double> x) {
    const LocalGeometry geo = local_geometry(spec.manifold, p);
    return phi_sectional(geo, structure_values(spec, p), x);
}

}  // namespace oneill
