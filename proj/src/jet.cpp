#include "oneill/jet.hpp"

#include <string>

namespace oneill {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::rejected_input: return "rejected-input";
        case ErrorKind::singular_evaluation: return "singular-evaluation";
        case ErrorKind::out_of_domain: return "out-of-domain";
        case ErrorKind::degenerate_metric: return "degenerate-metric";
        case ErrorKind::degenerate_plane: return "degenerate-plane";
        case ErrorKind::degenerate_frame: return "degenerate-frame";
        case ErrorKind::unsupported_computation: return "unsupported-computation";
    }
    return "unknown";
}

ScalarJet ScalarJet::from_parts(double v, std::span<const double> grad, std::span<const double> hess,
                                int order) {
    const int d = static_cast<int>(grad.size());
    if (d > kMaxDim || hess.size() != grad.size() * grad.size()) {
        throw GeometryError(ErrorKind::rejected_input, "jet parts have inconsistent sizes");
    }
    ScalarJet j = constant(v, d);
    j.order_ = order;
    for (int i = 0; i < d; ++i) j.grad_[i] = grad[i];
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r <= c; ++r) j.hess_[hessian_slot(r, c)] = hess[r * d + c];
    }
    return j;
}

std::vector<double> ScalarJet::hessian_matrix() const {
    std::vector<double> h(static_cast<std::size_t>(dim_) * dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) h[i * dim_ + j] = hessian(i, j);
    }
    return h;
}

ScalarJet ScalarJet::partial(int i) const {
    if (order_ < 1) {
        throw std::logic_error("partial derivative of an order-0 jet");
    }
    ScalarJet r = constant(grad_[i], dim_);
    r.order_ = order_ - 1;
    if (r.order_ >= 1) {
        for (int k = 0; k < dim_; ++k) r.grad_[k] = hess_[hessian_slot(i, k)];
    }
    return r;
}

ScalarJet ScalarJet::truncated(int order) const {
    ScalarJet r = *this;
    if (order >= r.order_) return r;
    r.order_ = order;
    if (order < 2) r.hess_.fill(0.0);
    if (order < 1) r.grad_.fill(0.0);
    return r;
}

JetPoint::JetPoint(std::vector<double> coords) : coords_(std::move(coords)) {}

JetPoint seed(std::span<const double> coords) {
    if (coords.empty()) throw GeometryError(ErrorKind::rejected_input, "cannot seed an empty point");
    if (coords.size() > static_cast<std::size_t>(kMaxDim)) {
        throw GeometryError(ErrorKind::rejected_input,
                            "chart dimension " + std::to_string(coords.size()) + " exceeds jet capacity");
    }
    for (double c : coords) {
        if (!std::isfinite(c)) throw GeometryError(ErrorKind::rejected_input, "non-finite coordinate");
    }
    return JetPoint(std::vector<double>(coords.begin(), coords.end()));
}

}  // namespace oneill
