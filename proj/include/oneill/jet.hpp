// Second-order forward-mode jets: value, gradient and symmetric Hessian of a
// scalar function of chart coordinates, propagated through arithmetic.
#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "oneill/error.hpp"

namespace oneill {

inline constexpr int kMaxDim = 9;
inline constexpr int kHessianSlots = kMaxDim * (kMaxDim + 1) / 2;
inline constexpr double kSingularThreshold = 1e-300;

// Packed upper-triangle slot for (i, j); symmetric by construction.
constexpr int hessian_slot(int i, int j) {
    if (i > j) {
        const int t = i;
        i = j;
        j = t;
    }
    return j * (j + 1) / 2 + i;
}

// A truncated Taylor expansion.  order() tells how many derivative levels are
// meaningful: 2 for anything built from expressions, 1 after one partial,
// 0 after two.  Products and sums take the minimum order of their operands.
class ScalarJet {
public:
    ScalarJet() = default;

    static ScalarJet constant(double v, int dim) {
        ScalarJet j;
        j.dim_ = dim;
        j.value_ = v;
        return j;
    }

    static ScalarJet variable(double v, int index, int dim) {
        ScalarJet j = constant(v, dim);
        j.grad_[index] = 1.0;
        return j;
    }

    // Builds a jet from raw Taylor data.  hess is read as a full dim x dim
    // row-major matrix; only the upper triangle is stored.
    static ScalarJet from_parts(double v, std::span<const double> grad, std::span<const double> hess,
                                int order = 2);

    double value() const { return value_; }
    double gradient(int i) const { return grad_[i]; }
    double hessian(int i, int j) const { return hess_[hessian_slot(i, j)]; }
    int dim() const { return dim_; }
    int order() const { return order_; }

    std::vector<double> gradient_vector() const { return {grad_.begin(), grad_.begin() + dim_}; }
    std::vector<double> hessian_matrix() const;

    // d/dx_i, one order lower.  Calling this on an order-0 jet is a logic error.
    ScalarJet partial(int i) const;

    ScalarJet truncated(int order) const;

    ScalarJet operator-() const;
    ScalarJet& operator+=(const ScalarJet& o);
    ScalarJet& operator-=(const ScalarJet& o);
    ScalarJet& operator*=(double s);
    ScalarJet& operator+=(double s) {
        value_ += s;
        return *this;
    }

    friend ScalarJet operator+(ScalarJet a, const ScalarJet& b) { return a += b; }
    friend ScalarJet operator-(ScalarJet a, const ScalarJet& b) { return a -= b; }
    friend ScalarJet operator*(const ScalarJet& a, const ScalarJet& b);
    friend ScalarJet operator*(ScalarJet a, double s) { return a *= s; }
    friend ScalarJet operator*(double s, ScalarJet a) { return a *= s; }
    friend ScalarJet operator+(ScalarJet a, double s) { return a += s; }
    friend ScalarJet operator-(ScalarJet a, double s) { return a += -s; }
    friend ScalarJet operator/(const ScalarJet& a, const ScalarJet& b);
    friend ScalarJet operator/(ScalarJet a, double s);

    friend ScalarJet reciprocal(const ScalarJet& a);
    friend ScalarJet sqrt(const ScalarJet& a);

private:
    // f(a) given f(a0), f'(a0), f''(a0).
    ScalarJet compose(double f0, double f1, double f2) const;

    int dim_ = 0;
    int order_ = 2;
    double value_ = 0.0;
    std::array<double, kMaxDim> grad_{};
    std::array<double, kHessianSlots> hess_{};
};

class JetPoint {
public:
    JetPoint() = default;
    explicit JetPoint(std::vector<double> coords);

    const std::vector<double>& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    ScalarJet variable(int i) const { return ScalarJet::variable(coords_[i], i, dim()); }
    ScalarJet constant(double v) const { return ScalarJet::constant(v, dim()); }

private:
    std::vector<double> coords_;
};

// Throws RejectedInput on empty, oversized or non-finite coordinates.
JetPoint seed(std::span<const double> coords);

// ---- inline arithmetic ----------------------------------------------------

inline ScalarJet ScalarJet::operator-() const {
    ScalarJet r = *this;
    r.value_ = -r.value_;
    for (int i = 0; i < dim_; ++i) r.grad_[i] = -r.grad_[i];
    const int nh = dim_ * (dim_ + 1) / 2;
    for (int k = 0; k < nh; ++k) r.hess_[k] = -r.hess_[k];
    return r;
}

inline ScalarJet& ScalarJet::operator+=(const ScalarJet& o) {
    value_ += o.value_;
    for (int i = 0; i < dim_; ++i) grad_[i] += o.grad_[i];
    const int nh = dim_ * (dim_ + 1) / 2;
    for (int k = 0; k < nh; ++k) hess_[k] += o.hess_[k];
    if (o.order_ < order_) order_ = o.order_;
    return *this;
}

inline ScalarJet& ScalarJet::operator-=(const ScalarJet& o) {
    value_ -= o.value_;
    for (int i = 0; i < dim_; ++i) grad_[i] -= o.grad_[i];
    const int nh = dim_ * (dim_ + 1) / 2;
    for (int k = 0; k < nh; ++k) hess_[k] -= o.hess_[k];
    if (o.order_ < order_) order_ = o.order_;
    return *this;
}

inline ScalarJet& ScalarJet::operator*=(double s) {
    value_ *= s;
    for (int i = 0; i < dim_; ++i) grad_[i] *= s;
    const int nh = dim_ * (dim_ + 1) / 2;
    for (int k = 0; k < nh; ++k) hess_[k] *= s;
    return *this;
}

inline ScalarJet operator*(const ScalarJet& a, const ScalarJet& b) {
    ScalarJet r;
    r.dim_ = a.dim_;
    r.order_ = a.order_ < b.order_ ? a.order_ : b.order_;
    r.value_ = a.value_ * b.value_;
    const int d = a.dim_;
    for (int i = 0; i < d; ++i) r.grad_[i] = a.grad_[i] * b.value_ + a.value_ * b.grad_[i];
    if (r.order_ >= 2) {
        for (int j = 0; j < d; ++j) {
            for (int i = 0; i <= j; ++i) {
                const int s = hessian_slot(i, j);
                r.hess_[s] = a.hess_[s] * b.value_ + a.value_ * b.hess_[s] + a.grad_[i] * b.grad_[j] +
                             a.grad_[j] * b.grad_[i];
            }
        }
    }
    return r;
}

inline ScalarJet ScalarJet::compose(double f0, double f1, double f2) const {
    ScalarJet r;
    r.dim_ = dim_;
    r.order_ = order_;
    r.value_ = f0;
    for (int i = 0; i < dim_; ++i) r.grad_[i] = f1 * grad_[i];
    if (order_ >= 2) {
        for (int j = 0; j < dim_; ++j) {
            for (int i = 0; i <= j; ++i) {
                const int s = hessian_slot(i, j);
                r.hess_[s] = f1 * hess_[s] + f2 * grad_[i] * grad_[j];
            }
        }
    }
    return r;
}

inline ScalarJet reciprocal(const ScalarJet& a) {
    if (!(std::abs(a.value_) >= kSingularThreshold)) {
        throw GeometryError(ErrorKind::singular_evaluation, "division by a vanishing jet");
    }
    const double inv = 1.0 / a.value_;
    return a.compose(inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline ScalarJet operator/(const ScalarJet& a, const ScalarJet& b) { return a * reciprocal(b); }

inline ScalarJet operator/(ScalarJet a, double s) {
    if (!(std::abs(s) >= kSingularThreshold)) {
        throw GeometryError(ErrorKind::singular_evaluation, "division by a vanishing constant");
    }
    return a *= (1.0 / s);
}

inline ScalarJet sqrt(const ScalarJet& a) {
    if (!(a.value_ > kSingularThreshold)) {
        throw GeometryError(ErrorKind::singular_evaluation, "square root of a non-positive jet");
    }
    const double s = std::sqrt(a.value_);
    return a.compose(s, 0.5 / s, -0.25 / (s * a.value_));
}

}  // namespace oneill
