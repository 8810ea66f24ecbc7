#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oneill {

enum class ErrorKind {
    rejected_input,
    singular_evaluation,
    out_of_domain,
    degenerate_metric,
    degenerate_plane,
    degenerate_frame,
    unsupported_computation,
};

std::string_view to_string(ErrorKind kind);

class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace oneill
