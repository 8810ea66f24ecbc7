// Coordinate-chart Riemannian geometry: metric jets, Levi-Civita connection,
// Riemann tensor and covariant derivatives of analytic fields.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "oneill/expr.hpp"
#include "oneill/jet.hpp"

namespace oneill {

using JetVector = std::vector<ScalarJet>;

struct VectorField {
    std::string name;
    std::vector<Expr> components;

    JetVector eval(const JetPoint& p) const;
    std::vector<double> eval(std::span<const double> p) const;
};

struct ManifoldModel {
    std::string name;
    std::vector<std::string> coordinates;
    std::vector<Expr> metric;        // dim x dim, row-major, symmetric
    std::vector<Expr> domain_guard;  // admissible iff every entry is > 0

    int dim() const { return static_cast<int>(coordinates.size()); }
    const Expr& metric_component(int i, int j) const { return metric[i * dim() + j]; }
    bool admits(std::span<const double> p) const;
    // Throws rejected_input when shapes or symmetry are inconsistent.
    void validate() const;
};

// Builds a model from the upper triangle of a symmetric expression matrix.
ManifoldModel make_manifold(std::string name, std::vector<std::string> coordinates,
                            const std::vector<Expr>& metric_row_major, std::vector<Expr> domain_guard = {});

struct RiemannValue {
    int dim = 0;
    std::vector<double> data;  // R_{ijkl} = g(R(d_i, d_j) d_k, d_l)

    double operator()(int i, int j, int k, int l) const { return data[((i * dim + j) * dim + k) * dim + l]; }
    double& operator()(int i, int j, int k, int l) { return data[((i * dim + j) * dim + k) * dim + l]; }
};

struct ChristoffelSymbols {
    int dim = 0;
    JetVector data;  // Gamma^k_{ij} at [(k*dim + i)*dim + j], first-order jets

    const ScalarJet& operator()(int k, int i, int j) const { return data[(k * dim + i) * dim + j]; }
};

// Everything the connection-level code needs at one point, computed once.
struct LocalGeometry {
    JetPoint point;
    int dim = 0;
    JetVector g;      // order 2
    JetVector g_inv;  // order 2
    ChristoffelSymbols gamma;
    RiemannValue riemann;

    const ScalarJet& metric(int i, int j) const { return g[i * dim + j]; }
    std::vector<double> metric_values() const;
};

JetVector metric_at(const ManifoldModel& model, std::span<const double> p);
ChristoffelSymbols christoffel_at(const ManifoldModel& model, std::span<const double> p);
RiemannValue riemann_at(const ManifoldModel& model, std::span<const double> p);
LocalGeometry local_geometry(const ManifoldModel& model, std::span<const double> p);

double sectional_curvature(const ManifoldModel& model, std::span<const double> p, std::span<const double> x,
                           std::span<const double> y);
double sectional_curvature(const LocalGeometry& geo, std::span<const double> x, std::span<const double> y);

std::vector<double> covariant_derivative(const ManifoldModel& model, const VectorField& field,
                                         const VectorField& direction, std::span<const double> p);

// Jet-level building blocks.  Result order is one below the field's order.
JetVector covariant_derivative(const LocalGeometry& geo, const JetVector& direction, const JetVector& field);
ScalarJet inner(const LocalGeometry& geo, const JetVector& a, const JetVector& b);
double inner(std::span<const double> g, std::span<const double> a, std::span<const double> b);

// R(x, y, z, w) for coordinate vectors.
double contract(const RiemannValue& r, std::span<const double> x, std::span<const double> y,
                std::span<const double> z, std::span<const double> w);

// Pivoted LDL^T test on a symmetric row-major matrix.
bool is_positive_definite(std::span<const double> m, int dim);

}  // namespace oneill
