#include "oneill/frame_tensors.hpp"

#include <cmath>

namespace oneill {

std::string_view to_string(XiPosition x) { return x == XiPosition::vertical ? "vertical" : "horizontal"; }

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double FrameTensors::curvature(std::span<const double> x, std::span<const double> y, std::span<const double> z,
                               std::span<const double> w) const {
    const int d = dim();
    double s = 0.0;
    for (int a = 0; a < d; ++a) {
        if (x[a] == 0.0) continue;
        for (int b = 0; b < d; ++b) {
            if (y[b] == 0.0) continue;
            const double xy = x[a] * y[b];
            for (int c = 0; c < d; ++c) {
                if (z[c] == 0.0) continue;
                const double xyz = xy * z[c];
                for (int e = 0; e < d; ++e) s += xyz * w[e] * Rv(a, b, c, e);
            }
        }
    }
    return s;
}

namespace {

FrameVector bilinear(const std::vector<double>& t, int d, std::span<const double> e, std::span<const double> f) {
    FrameVector out(d, 0.0);
    for (int a = 0; a < d; ++a) {
        if (e[a] == 0.0) continue;
        for (int b = 0; b < d; ++b) {
            const double ef = e[a] * f[b];
            if (ef == 0.0) continue;
            for (int c = 0; c < d; ++c) out[c] += ef * t[(a * d + b) * d + c];
        }
    }
    return out;
}

}  // namespace

FrameVector FrameTensors::apply_T(std::span<const double> e, std::span<const double> f) const {
    return bilinear(T, dim(), e, f);
}

FrameVector FrameTensors::apply_A(std::span<const double> e, std::span<const double> f) const {
    return bilinear(A, dim(), e, f);
}

FrameVector FrameTensors::apply_phi(std::span<const double> v) const {
    const int d = dim();
    FrameVector out(d, 0.0);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) out[a] += phi[a * d + b] * v[b];
    }
    return out;
}

double FrameTensors::eta_of(std::span<const double> v) const { return dot(eta, v); }

FrameVector FrameTensors::vertical_part(std::span<const double> v) const {
    FrameVector out(v.begin(), v.end());
    for (int a = r; a < dim(); ++a) out[a] = 0.0;
    return out;
}

FrameVector FrameTensors::horizontal_part(std::span<const double> v) const {
    FrameVector out(v.begin(), v.end());
    for (int a = 0; a < r; ++a) out[a] = 0.0;
    return out;
}

FrameVector FrameTensors::basis(int a) const {
    FrameVector e(dim(), 0.0);
    e[a] = 1.0;
    return e;
}

}  // namespace oneill
