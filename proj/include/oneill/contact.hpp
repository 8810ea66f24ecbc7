// Almost contact metric structures and Sasakian space forms.
#pragma once

#include <span>
#include <vector>

#include "oneill/riemann.hpp"

namespace oneill {

struct ContactStructure {
    std::vector<Expr> phi;  // phi[row * dim + col]: (phi v)^row = phi[row][col] v^col
    VectorField xi;
    std::vector<Expr> eta;  // covector components
};

struct SasakianSpaceForm {
    ManifoldModel manifold;
    ContactStructure structure;
    double c = 0.0;
    int m = 0;
    // Orthonormal reference frame when the builder knows one (E_1..E_2m, xi).
    std::vector<VectorField> reference_frame;

    int dim() const { return manifold.dim(); }
};

// R^{2m+1}(-3) in chart (x_1..x_m, y_1..y_m, z).
SasakianSpaceForm build_r2m1(int m);

// Values of (g, phi, eta, xi) at a point; the inputs space_form_curvature needs.
struct StructureValues {
    int dim = 0;
    std::vector<double> g;    // row-major
    std::vector<double> phi;  // row-major (row = output component)
    std::vector<double> eta;
    std::vector<double> xi;

    std::vector<double> apply_phi(std::span<const double> v) const;
};

StructureValues structure_values(const SasakianSpaceForm& spec, std::span<const double> p);

struct SasakianResiduals {
    double xi_parallel = 0.0;     // max |nabla_i xi + phi d_i|
    double phi_derivative = 0.0;  // max |(nabla_i phi) d_j - g_ij xi + eta_j d_i|
    double eta_xi = 0.0;          // |eta(xi) - 1|
    double phi_squared = 0.0;     // max |phi^2 + I - xi (x) eta|
    double phi_skew = 0.0;        // max |g(phi d_i, d_j) + g(d_i, phi d_j)|
    double eta_metric = 0.0;      // max |eta_j - g(xi, d_j)|

    double almost_contact() const;
    double sasakian() const { return xi_parallel > phi_derivative ? xi_parallel : phi_derivative; }
};

SasakianResiduals verify_sasakian(const SasakianSpaceForm& spec, std::span<const double> p);
SasakianResiduals verify_sasakian(const SasakianSpaceForm& spec, const LocalGeometry& geo);

// g(R(X,Y)Z, W) from the literal space-form expansion.
double space_form_curvature(double c, const StructureValues& s, std::span<const double> x, std::span<const double> y,
                            std::span<const double> z, std::span<const double> w);

// Sectional curvature of span{X, phi X}; X must be unit and orthogonal to xi.
double phi_sectional(const SasakianSpaceForm& spec, std::span<const double> p, std::span<const double> x);
double phi_sectional(const LocalGeometry& geo, const StructureValues& s, std::span<const double> x);

}  // namespace oneill
