// Model selection: builtin names and the custom-model JSON format.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oneill/submersion.hpp"

namespace oneill {

class ModelLoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A total space with an optional submersion on top of it.
struct LabModel {
    std::string name;
    std::string source;  // "builtin" or the file path
    SasakianSpaceForm total;
    std::optional<SubmersionModel> submersion;
    std::vector<Expr> sampling_guard;  // total-space-only models

    int dim() const { return total.dim(); }
    bool sampling_admits(std::span<const double> p) const;
};

std::vector<std::string> builtin_model_names();

// "vertical-xi", "horizontal-xi", "r2m1:<m>", or a path to a JSON file.
LabModel load_model(const std::string& spec);
LabModel parse_model_json(const std::string& text, const std::string& source = "<string>");

}  // namespace oneill
