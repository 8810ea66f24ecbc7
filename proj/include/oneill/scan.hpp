// Seeded sampling and the per-point evaluation kernel.  The OpenMP loop and
// the serial loop run the same per-point function and write into the same
// pre-indexed slots, so their results are bit-identical.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oneill/contact.hpp"
#include "oneill/model_io.hpp"
#include "oneill/theorems.hpp"

namespace oneill {

class EmptySampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Interval = std::pair<double, double>;

struct Sample {
    std::vector<std::vector<double>> points;
    std::size_t requested = 0;
    std::size_t attempts = 0;
};

// Uniform box sampling with rejection by the model's sampling guard; at most
// 10 x points draws.  An empty box list means [-2, 2] per coordinate; a
// single interval is applied to every coordinate.
Sample draw_sample(const LabModel& model, std::size_t points, std::uint64_t seed, std::vector<Interval> box = {});

struct ProbeMode {
    enum class Kind { first, all, random } kind = Kind::first;
    int count = 0;  // random:<count>

    static ProbeMode parse(const std::string& text);  // throws std::invalid_argument
    std::string to_string() const;
};

// Probe vectors for one theorem at one point.
std::vector<Probe> probes_for(const TheoremSpec& spec, const FrameTensors& t, const ProbeMode& mode,
                              std::uint64_t point_seed);

struct EvalOptions {
    Tolerances tol;
    bool identities = true;
    std::vector<TheoremId> theorems;
    ProbeMode probe;
    std::uint64_t seed = 42;
};

struct PointResult {
    std::size_t index = 0;
    std::vector<double> point;
    bool ok = true;
    std::string error_kind;
    std::string error_message;

    // total space
    SasakianResiduals sasakian;
    double space_form = 0.0;  // max |R - space-form expansion| over frame 4-tuples
    double phi_sectional_min = 0.0;
    double phi_sectional_max = 0.0;
    int phi_sections = 0;

    // submersion
    bool has_submersion = false;
    SubmersionResiduals submersion;
    LemmaResiduals lemmas;
    double anti_invariance = 0.0;
    double field_orthogonality = 0.0;
    double gram = 0.0;
    double xi_slot = 0.0;
    double decomposition = 0.0;
    bool hypotheses = false;  // Riemannian submersion hypotheses hold here
    double trace_phiB = 0.0;
    std::optional<CurvaturePacket> packet;
    std::vector<InequalityRecord> records;
};

// Gate used for the theorem and identity suites.
bool hypotheses_hold(const PointResult& r, const Tolerances& tol);

PointResult evaluate_point(const LabModel& model, std::size_t index, const std::vector<double>& p,
                           const EvalOptions& opts);
std::vector<PointResult> evaluate_points_serial(const LabModel& model, const std::vector<std::vector<double>>& pts,
                                                const EvalOptions& opts);
std::vector<PointResult> evaluate_points_parallel(const LabModel& model, const std::vector<std::vector<double>>& pts,
                                                  const EvalOptions& opts);

std::uint64_t point_seed(std::uint64_t seed, std::size_t index);

}  // namespace oneill
