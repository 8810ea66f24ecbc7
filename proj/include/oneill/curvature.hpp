// Gauss-Codazzi assembly on frame tensors: R-hat, R-star, the mixed
// relation, scalar curvatures, Ricci curvatures of both distributions and
// the named identity residuals.
#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "oneill/frame_tensors.hpp"
#include "oneill/submersion.hpp"
#include "oneill/tolerances.hpp"

namespace oneill {

// Literal space-form curvature g(R(x,y)z, w) on frame-coordinate vectors.
double space_form_frame(const FrameTensors& t, std::span<const double> x, std::span<const double> y,
                        std::span<const double> z, std::span<const double> w);

// R-hat(U,V,F,W) = R(U,V,F,W) - g(T_U W, T_V F) + g(T_V W, T_U F)
double fiber_curvature_hat(const FrameTensors& t, std::span<const double> u, std::span<const double> v,
                           std::span<const double> f, std::span<const double> w);
// R-star(X,Y,Z,H) = R(X,Y,Z,H) + 2g(A_X Y, A_Z H) - g(A_Y Z, A_X H) + g(A_X Z, A_Y H)
double horizontal_curvature_star(const FrameTensors& t, std::span<const double> x, std::span<const double> y,
                                 std::span<const double> z, std::span<const double> h);
// |R(X,V,W,Y) - g((nabla_X T)_V W, Y) - g((nabla_V A)_X Y, W) + g(T_V X, T_W Y) - g(A_Y W, A_X V)|.
// Throws unsupported_computation when the frame has no derivatives.
double mixed_gauss_residual(const FrameTensors& t, std::span<const double> x, std::span<const double> v,
                            std::span<const double> y, std::span<const double> w);

double ric_hat(const FrameTensors& t, std::span<const double> u);
double ric_star(const FrameTensors& t, std::span<const double> x);
double delta_N(const FrameTensors& t);

struct CurvaturePacket {
    int r = 0;
    int n = 0;
    double tau_hat = 0.0;    // sum_{i<j} R-hat(U_i,U_j,U_j,U_i)
    double tau_star = 0.0;   // sum_{i<j} R-star(X_i,X_j,X_j,X_i)
    double tau_total = 0.0;  // sum_{a<b} R(e_a,e_b,e_b,e_a)
    std::vector<double> ric_hat;
    std::vector<double> ric_star;
    bool has_delta_N = false;
    double delta_N = 0.0;
    double norm_TV_sq = 0.0;  // sum |T_{U_k} X_i|^2
    double norm_AH_sq = 0.0;  // sum |A_{X_i} U_k|^2
    double norm_T_sq = 0.0;   // sum (T_ij^s)^2
    double norm_A_sq = 0.0;   // sum (A_ij^alpha)^2
    double norm_N_sq = 0.0;
    double trace_phiB = 0.0;
    std::map<std::string, double> identity_residuals;
    std::vector<std::string> unsupported;       // identities that need derivatives
    std::map<std::string, double> findings;     // reported, never part of a verdict
};

CurvaturePacket scalar_invariants(const FrameTensors& t);
CurvaturePacket scalar_invariants(const SubmersionModel& model, std::span<const double> p);

// Identity names in report order, and the tolerance tier each is held to.
const std::vector<std::string>& identity_names();
double identity_tolerance(const std::string& name, const Tolerances& tol);

struct TensorCoefficients {
    int r = 0;
    int n = 0;
    std::vector<double> T;  // [(i*r + j)*n + s]
    std::vector<double> A;  // [(i*n + j)*r + alpha]
};

TensorCoefficients tensor_coefficients(const FrameTensors& t);
TensorCoefficients tensor_coefficients(const SubmersionModel& model, std::span<const double> p);

// Agreement of the ambient curvature with the space-form expansion over all
// frame 4-tuples.
double space_form_residual(const FrameTensors& t);

}  // namespace oneill
