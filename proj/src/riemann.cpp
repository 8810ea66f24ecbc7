#include "oneill/riemann.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace oneill {

JetVector VectorField::eval(const JetPoint& p) const {
    JetVector out;
    out.reserve(components.size());
    for (const Expr& c : components) out.push_back(jet_eval(c, p));
    return out;
}

std::vector<double> VectorField::eval(std::span<const double> p) const {
    std::vector<double> out;
    out.reserve(components.size());
    for (const Expr& c : components) out.push_back(c.eval(p));
    return out;
}

bool ManifoldModel::admits(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (double c : p) {
        if (!std::isfinite(c)) return false;
    }
    for (const Expr& guard : domain_guard) {
        if (!(guard.eval(p) > 0.0)) return false;
    }
    return true;
}

void ManifoldModel::validate() const {
    const int d = dim();
    if (d < 1 || d > kMaxDim) {
        throw GeometryError(ErrorKind::rejected_input, "model '" + name + "' has unsupported dimension");
    }
    if (static_cast<int>(metric.size()) != d * d) {
        throw GeometryError(ErrorKind::rejected_input, "model '" + name + "' metric is not dim x dim");
    }
    for (const Expr& e : metric) {
        if (e.max_variable() >= d) {
            throw GeometryError(ErrorKind::rejected_input, "model '" + name + "' metric uses unknown coordinates");
        }
    }
}

ManifoldModel make_manifold(std::string name, std::vector<std::string> coordinates,
                            const std::vector<Expr>& metric_row_major, std::vector<Expr> domain_guard) {
    ManifoldModel m;
    m.name = std::move(name);
    m.coordinates = std::move(coordinates);
    m.domain_guard = std::move(domain_guard);
    const int d = m.dim();
    if (static_cast<int>(metric_row_major.size()) != d * d) {
        throw GeometryError(ErrorKind::rejected_input, "metric for '" + m.name + "' is not dim x dim");
    }
    m.metric.resize(metric_row_major.size());
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            m.metric[i * d + j] = metric_row_major[i * d + j];
            m.metric[j * d + i] = metric_row_major[i * d + j];
        }
    }
    m.validate();
    return m;
}

std::vector<double> LocalGeometry::metric_values() const {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) v[k] = g[k].value();
    return v;
}

bool is_positive_definite(std::span<const double> m, int dim) {
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) a(i, j) = m[i * dim + j];
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    if (ldlt.info() != Eigen::Success) return false;
    const double scale = a.cwiseAbs().maxCoeff();
    const auto d = ldlt.vectorD();
    for (int i = 0; i < dim; ++i) {
        if (!(d(i) > 1e-14 * scale)) return false;
    }
    return true;
}

namespace {

void check_point(const ManifoldModel& model, std::span<const double> p) {
    if (static_cast<int>(p.size()) != model.dim()) {
        throw GeometryError(ErrorKind::rejected_input, "point dimension does not match model '" + model.name + "'");
    }
    if (!model.admits(p)) {
        throw GeometryError(ErrorKind::out_of_domain, "point outside the domain of '" + model.name + "'");
    }
}

JetVector metric_jets(const ManifoldModel& model, const JetPoint& jp) {
    const int d = model.dim();
    JetVector g(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            g[i * d + j] = jet_eval(model.metric_component(i, j), jp);
            if (j != i) g[j * d + i] = g[i * d + j];
        }
    }
    std::vector<double> values(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) values[k] = g[k].value();
    if (!is_positive_definite(values, d)) {
        throw GeometryError(ErrorKind::degenerate_metric, "metric of '" + model.name + "' is not positive definite");
    }
    return g;
}

// Gauss-Jordan on jets.  The matrix is already known to be positive definite,
// so the diagonal pivots stay positive and no row exchange is needed.
JetVector invert(const JetVector& a, int d) {
    JetVector m = a;
    JetVector inv(a.size(), ScalarJet::constant(0.0, a.front().dim()));
    for (int i = 0; i < d; ++i) inv[i * d + i] = ScalarJet::constant(1.0, a.front().dim());
    for (int c = 0; c < d; ++c) {
        const ScalarJet r = reciprocal(m[c * d + c]);
        for (int k = 0; k < d; ++k) {
            m[c * d + k] = m[c * d + k] * r;
            inv[c * d + k] = inv[c * d + k] * r;
        }
        for (int row = 0; row < d; ++row) {
            if (row == c) continue;
            const ScalarJet f = m[row * d + c];
            for (int k = 0; k < d; ++k) {
                m[row * d + k] -= f * m[c * d + k];
                inv[row * d + k] -= f * inv[c * d + k];
            }
        }
    }
    return inv;
}

ChristoffelSymbols christoffel_from(const JetVector& g, const JetVector& g_inv, int d) {
    // dg[(l*d + i)*d + j] = d_l g_ij  (first-order jets)
    JetVector dg(static_cast<std::size_t>(d) * d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            for (int l = 0; l < d; ++l) {
                dg[(l * d + i) * d + j] = g[i * d + j].partial(l);
                dg[(l * d + j) * d + i] = dg[(l * d + i) * d + j];
            }
        }
    }
    const int jd = g.front().dim();
    ChristoffelSymbols gamma;
    gamma.dim = d;
    gamma.data.assign(static_cast<std::size_t>(d) * d * d, ScalarJet::constant(0.0, jd));
    JetVector first_kind(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            for (int l = 0; l < d; ++l) {
                first_kind[l] = (dg[(i * d + j) * d + l] + dg[(j * d + i) * d + l] - dg[(l * d + i) * d + j]) * 0.5;
            }
            for (int k = 0; k < d; ++k) {
                ScalarJet s = ScalarJet::constant(0.0, jd).truncated(1);
                for (int l = 0; l < d; ++l) s += g_inv[k * d + l] * first_kind[l];
                gamma.data[(k * d + i) * d + j] = s;
                gamma.data[(k * d + j) * d + i] = s;
            }
        }
    }
    return gamma;
}

RiemannValue riemann_from(const ChristoffelSymbols& gamma, const JetVector& g, int d) {
    // Rup[((l*d + i)*d + j)*d + k] = R^l_{ijk}
    std::vector<double> rup(static_cast<std::size_t>(d) * d * d * d, 0.0);
    for (int l = 0; l < d; ++l) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                for (int k = 0; k < d; ++k) {
                    double v = gamma(l, j, k).gradient(i) - gamma(l, i, k).gradient(j);
                    for (int m = 0; m < d; ++m) {
                        v += gamma(l, i, m).value() * gamma(m, j, k).value() -
                             gamma(l, j, m).value() * gamma(m, i, k).value();
                    }
                    rup[((l * d + i) * d + j) * d + k] = v;
                }
            }
        }
    }
    RiemannValue r;
    r.dim = d;
    r.data.assign(rup.size(), 0.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    double v = 0.0;
                    for (int m = 0; m < d; ++m) v += g[l * d + m].value() * rup[((m * d + i) * d + j) * d + k];
                    r(i, j, k, l) = v;
                }
            }
        }
    }
    return r;
}

}  // namespace

JetVector metric_at(const ManifoldModel& model, std::span<const double> p) {
    check_point(model, p);
    return metric_jets(model, seed(p));
}

ChristoffelSymbols christoffel_at(const ManifoldModel& model, std::span<const double> p) {
    check_point(model, p);
    const JetPoint jp = seed(p);
    const JetVector g = metric_jets(model, jp);
    return christoffel_from(g, invert(g, model.dim()), model.dim());
}

LocalGeometry local_geometry(const ManifoldModel& model, std::span<const double> p) {
    check_point(model, p);
    LocalGeometry geo;
    geo.point = seed(p);
    geo.dim = model.dim();
    geo.g = metric_jets(model, geo.point);
    geo.g_inv = invert(geo.g, geo.dim);
    geo.gamma = christoffel_from(geo.g, geo.g_inv, geo.dim);
    geo.riemann = riemann_from(geo.gamma, geo.g, geo.dim);
    return geo;
}

RiemannValue riemann_at(const ManifoldModel& model, std::span<const double> p) {
    return local_geometry(model, p).riemann;
}

double inner(std::span<const double> g, std::span<const double> a, std::span<const double> b) {
    const std::size_t d = a.size();
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) row += g[i * d + j] * b[j];
        s += a[i] * row;
    }
    return s;
}

ScalarJet inner(const LocalGeometry& geo, const JetVector& a, const JetVector& b) {
    const int d = geo.dim;
    ScalarJet s = ScalarJet::constant(0.0, d);
    for (int i = 0; i < d; ++i) {
        ScalarJet row = ScalarJet::constant(0.0, d);
        for (int j = 0; j < d; ++j) row += geo.g[i * d + j] * b[j];
        s += a[i] * row;
    }
    return s;
}

double contract(const RiemannValue& r, std::span<const double> x, std::span<const double> y,
                std::span<const double> z, std::span<const double> w) {
    const int d = r.dim;
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < d; ++j) {
            if (y[j] == 0.0) continue;
            for (int k = 0; k < d; ++k) {
                if (z[k] == 0.0) continue;
                double t = 0.0;
                for (int l = 0; l < d; ++l) t += r(i, j, k, l) * w[l];
                s += x[i] * y[j] * z[k] * t;
            }
        }
    }
    return s;
}

double sectional_curvature(const LocalGeometry& geo, std::span<const double> x, std::span<const double> y) {
    const std::vector<double> g = geo.metric_values();
    const double xx = inner(g, x, x);
    const double yy = inner(g, y, y);
    const double xy = inner(g, x, y);
    const double den = xx * yy - xy * xy;
    if (!(den >= 1e-12)) throw GeometryError(ErrorKind::degenerate_plane, "vectors span a degenerate plane");
    return contract(geo.riemann, x, y, y, x) / den;
}

double sectional_curvature(const ManifoldModel& model, std::span<const double> p, std::span<const double> x,
                           std::span<const double> y) {
    return sectional_curvature(local_geometry(model, p), x, y);
}

JetVector covariant_derivative(const LocalGeometry& geo, const JetVector& direction, const JetVector& field) {
    const int d = geo.dim;
    JetVector out(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        ScalarJet s = ScalarJet::constant(0.0, d);
        for (int i = 0; i < d; ++i) s += direction[i] * field[k].partial(i);
        for (int i = 0; i < d; ++i) {
            ScalarJet t = ScalarJet::constant(0.0, d);
            for (int j = 0; j < d; ++j) t += geo.gamma(k, i, j) * field[j];
            s += direction[i] * t;
        }
        out[k] = s;
    }
    return out;
}

std::vector<double> covariant_derivative(const ManifoldModel& model, const VectorField& field,
                                         const VectorField& direction, std::span<const double> p) {
    if (static_cast<int>(field.components.size()) != model.dim() ||
        static_cast<int>(direction.components.size()) != model.dim()) {
        throw GeometryError(ErrorKind::rejected_input, "vector field does not match model dimension");
    }
    const LocalGeometry geo = local_geometry(model, p);
    const JetVector v = covariant_derivative(geo, direction.eval(geo.point), field.eval(geo.point));
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].value();
    return out;
}

}  // namespace oneill
