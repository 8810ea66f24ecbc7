// Submersion models, adapted frames and the O'Neill tensors T and A.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "oneill/contact.hpp"
#include "oneill/frame_tensors.hpp"

namespace oneill {

struct SubmersionModel {
    std::string name;
    SasakianSpaceForm total;
    ManifoldModel base;
    std::vector<Expr> map;  // pi, one expression per base coordinate
    // Analytic frame fields.  When vertical_fields is empty the frame is
    // derived pointwise from ker(d pi); derivatives of T and A are then
    // unavailable.
    std::vector<VectorField> vertical_fields;
    std::vector<VectorField> horizontal_fields;
    XiPosition xi_position = XiPosition::vertical;
    int xi_field = -1;  // index of xi inside its declared block
    std::vector<Expr> sampling_guard;

    int dim() const { return total.dim(); }
    int m() const { return total.m; }
    int b() const { return base.dim(); }
    int r() const { return dim() - b(); }
    int n() const { return b(); }
    bool analytic_frames() const { return !vertical_fields.empty(); }

    std::vector<double> project(std::span<const double> p) const;
    // Total-space guard and base guard at the image.
    bool admits(std::span<const double> p) const;
    bool sampling_admits(std::span<const double> p) const;
    void validate() const;
};

SubmersionModel build_vertical_xi_example();
SubmersionModel build_horizontal_xi_example();

struct AdaptedFrame {
    std::vector<double> point;
    std::vector<std::vector<double>> U;  // coordinate components
    std::vector<std::vector<double>> X;
    int xi_index = -1;  // position of xi inside its block
    XiPosition xi_position = XiPosition::vertical;
    std::vector<std::vector<double>> phiV;  // orthonormal basis, coordinates
    std::vector<std::vector<double>> mu;
    double gram_residual = 0.0;
    double decomposition_residual = 0.0;
};

struct ONeillTensors {
    int r = 0;
    int n = 0;
    std::vector<double> T_vv;  // [(i*r + j)*n + s] = g(T_{U_i} U_j, X_s)
    std::vector<double> A_hh;  // [(i*n + j)*r + a] = g(A_{X_i} X_j, U_a)
    std::vector<double> T_vh;  // [(k*n + i)*r + a] = g(T_{U_k} X_i, U_a)
    std::vector<double> A_hv;  // [(i*r + k)*n + s] = g(A_{X_i} U_k, X_s)
    std::vector<double> N;     // horizontal frame components
    std::vector<double> H;     // N / r
    double trace_phiB = 0.0;

    double T(int i, int j, int s) const { return T_vv[(i * r + j) * n + s]; }
    double A(int i, int j, int a) const { return A_hh[(i * n + j) * r + a]; }
};

struct SubmersionResiduals {
    double length = 0.0;          // max_i |g'(dpi X_i, dpi X_i) - 1|
    double orthogonality = 0.0;   // max_{i != j} |g'(dpi X_i, dpi X_j)|
    double vertical_kernel = 0.0; // max |dpi U_a|
    bool base_positive_definite = true;
    bool base_in_domain = true;

    double preservation() const { return length > orthogonality ? length : orthogonality; }
};

struct LemmaResiduals {
    double t_symmetry = 0.0;
    double a_alternation = 0.0;
    double t_skew = 0.0;
    double a_skew = 0.0;
    double anti_invariance = 0.0;
    double c_squared = 0.0;
};

struct BCDecomposition {
    std::vector<double> B;  // frame components (vertical part)
    std::vector<double> C;  // frame components (horizontal part)
};

// Full per-point analysis.  All public per-point operations are thin views of
// this; scans build it once per point.
struct FramedPoint {
    std::vector<double> point;
    LocalGeometry geo;
    int frame_order = 2;
    std::vector<JetVector> frame;  // r + n orthonormal fields (vertical first)
    FrameTensors tensors;
    double gram_residual = 0.0;
    double xi_slot_residual = 0.0;
    double field_orthogonality = 0.0;
};

FramedPoint analyze_point(const SubmersionModel& model, std::span<const double> p);

std::vector<std::vector<double>> differential_at(const SubmersionModel& model, std::span<const double> p);
SubmersionResiduals verify_riemannian_submersion(const SubmersionModel& model, std::span<const double> p);
SubmersionResiduals verify_riemannian_submersion(const SubmersionModel& model, const FramedPoint& fp);
AdaptedFrame adapted_frame_at(const SubmersionModel& model, std::span<const double> p);
AdaptedFrame adapted_frame(const FramedPoint& fp, XiPosition xi_position);
ONeillTensors oneill_tensors_at(const SubmersionModel& model, std::span<const double> p);
ONeillTensors oneill_tensors(const FrameTensors& t);
BCDecomposition bc_decompose(const FrameTensors& t, std::span<const double> x);
LemmaResiduals verify_structure_lemmas(const SubmersionModel& model, std::span<const double> p);
LemmaResiduals verify_structure_lemmas(const FrameTensors& t);

}  // namespace oneill
