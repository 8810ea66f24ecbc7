// Point values of the geometric tensors expressed in an orthonormal adapted
// frame (vertical vectors first, then horizontal).  In these coordinates the
// metric is the identity, so everything downstream is plain linear algebra.
#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace oneill {

enum class XiPosition { vertical, horizontal };

std::string_view to_string(XiPosition x);

using FrameVector = std::vector<double>;

struct FrameTensors {
    int r = 0;
    int n = 0;
    double c = 0.0;
    XiPosition xi_position = XiPosition::vertical;
    int xi_slot = -1;  // frame index of xi

    std::vector<double> R;    // [a][b][c][d] = R(e_a, e_b, e_c, e_d)
    std::vector<double> T;    // [a][b][c]    = g(T_{e_a} e_b, e_c)
    std::vector<double> A;    // [a][b][c]    = g(A_{e_a} e_b, e_c)
    std::vector<double> phi;  // [a][b]       = g(phi e_b, e_a)
    std::vector<double> eta;  // [a]          = eta(e_a)

    // (nabla_{e_a} T)(e_b, e_c) paired with e_d, and likewise for A.  Empty
    // when the frame has no analytic extension.
    bool has_derivatives = false;
    std::vector<double> nablaT;
    std::vector<double> nablaA;

    int dim() const { return r + n; }
    bool vertical(int a) const { return a < r; }

    double Rv(int a, int b, int c, int d) const { return R[((a * dim() + b) * dim() + c) * dim() + d]; }
    double Tv(int a, int b, int c) const { return T[(a * dim() + b) * dim() + c]; }
    double Av(int a, int b, int c) const { return A[(a * dim() + b) * dim() + c]; }
    double nT(int a, int b, int c, int d) const { return nablaT[((a * dim() + b) * dim() + c) * dim() + d]; }
    double nA(int a, int b, int c, int d) const { return nablaA[((a * dim() + b) * dim() + c) * dim() + d]; }

    // Tensorial evaluation on arbitrary frame-coordinate vectors.
    double curvature(std::span<const double> x, std::span<const double> y, std::span<const double> z,
                     std::span<const double> w) const;
    FrameVector apply_T(std::span<const double> e, std::span<const double> f) const;
    FrameVector apply_A(std::span<const double> e, std::span<const double> f) const;
    FrameVector apply_phi(std::span<const double> v) const;
    double eta_of(std::span<const double> v) const;
    FrameVector vertical_part(std::span<const double> v) const;
    FrameVector horizontal_part(std::span<const double> v) const;
    FrameVector basis(int a) const;
};

double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);

}  // namespace oneill
