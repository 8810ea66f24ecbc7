#include "oneill/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <map>

namespace oneill {

std::string_view to_string(Command c) {
    switch (c) {
        case Command::verify: return "verify";
        case Command::theorems: return "theorems";
        case Command::report: return "report";
    }
    return "report";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::pass_with_flags: return "pass-with-flags";
    }
    return "fail";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::pass: return 0;
        case Verdict::fail: return 1;
        case Verdict::pass_with_flags: return 3;
    }
    return 1;
}

std::vector<TheoremId> selected_theorems(const RunConfig& config, const LabModel& model) {
    if (config.command == Command::verify) return {};
    if (!model.submersion) {
        if (!config.all_theorems && !config.theorems.empty()) {
            throw GeometryError(ErrorKind::rejected_input, "model '" + model.name + "' has no submersion to scan");
        }
        return {};
    }
    const XiPosition xi = model.submersion->xi_position;
    if (config.all_theorems) return theorems_for(xi);
    for (TheoremId id : config.theorems) {
        if (theorem_spec(id).xi_case != xi) {
            throw GeometryError(ErrorKind::rejected_input, std::string(to_string(id)) + " needs xi " +
                                                               std::string(to_string(theorem_spec(id).xi_case)) +
                                                               "; model '" + model.name + "' has xi " +
                                                               std::string(to_string(xi)));
        }
    }
    return config.theorems;
}

namespace {

double finite_or_inf(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

struct Max {
    double value = 0.0;
    std::size_t count = 0;
    void add(double v) {
        value = std::max(value, finite_or_inf(std::abs(v)));
        ++count;
    }
};

// Maximum kept separately over hypothesis-valid and flagged points.
struct Gated {
    Max valid;
    Max flagged;
    void add(double v, bool at_valid) { (at_valid ? valid : flagged).add(v); }
};

class Ledger {
public:
    std::vector<std::string> failures;
    std::vector<std::string> flags;

    std::string ungated(const std::string& what, const Max& m, double tol) {
        if (m.value > tol) {
            failures.push_back(what + " exceeds " + fmt(tol));
            return "fail";
        }
        return "pass";
    }

    std::string gated(const std::string& what, const Gated& g, double tol) {
        if (g.valid.value > tol) {
            failures.push_back(what + " exceeds " + fmt(tol) + " at hypothesis-valid points");
            return "fail";
        }
        if (g.flagged.value > tol) {
            flags.push_back(what + " exceeds " + fmt(tol) + " at flagged points");
            return "flagged";
        }
        return "pass";
    }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }
};

Json max_entry(const Max& m, double tol, const std::string& status) {
    Json j;
    j["max"] = m.value;
    j["tolerance"] = tol;
    j["status"] = status;
    return j;
}

Json gated_entry(const Gated& g, double tol, const std::string& status) {
    Json j;
    j["max_valid"] = g.valid.value;
    j["max_flagged"] = g.flagged.value;
    j["valid_points"] = g.valid.count;
    j["flagged_points"] = g.flagged.count;
    j["tolerance"] = tol;
    j["status"] = status;
    return j;
}

Json tolerances_json(const Tolerances& t) {
    Json j;
    j["alg"] = t.alg;
    j["d1"] = t.d1;
    j["curv"] = t.curv;
    j["d2curv"] = t.d2curv;
    j["equality"] = t.equality;
    j["sharpness"] = t.sharpness;
    return j;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct TheoremTally {
    std::size_t records = 0, valid_records = 0, flagged_records = 0;
    std::size_t violations = 0, flagged_violations = 0;
    std::size_t condition_hits = 0, flagged_condition_hits = 0;
    std::size_t sharpness_failures = 0, flagged_sharpness_failures = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    double min_slack_flagged = std::numeric_limits<double>::infinity();
    std::size_t argmin_index = 0;
    std::vector<double> argmin_point;
    std::string argmin_probe;
    double dropped_max = 0.0;
    bool has_dropped = false;
    struct Variant {
        std::size_t violations = 0, flagged_violations = 0;
        double min_slack = std::numeric_limits<double>::infinity();
    };
    std::map<std::string, Variant> variants;
    std::vector<std::string> variant_order;
};

Json slack_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

RunResult run(const RunConfig& config, const LabModel& model) {
    const std::vector<TheoremId> ids = selected_theorems(config, model);
    const bool analytic = model.submersion && model.submersion->analytic_frames();
    std::vector<TheoremId> evaluated;
    std::vector<TheoremId> unsupported;
    for (TheoremId id : ids) {
        (theorem_spec(id).needs_derivatives && !analytic ? unsupported : evaluated).push_back(id);
    }

    const Sample sample = draw_sample(model, config.points, config.seed, config.box);
    EvalOptions opts;
    opts.tol = config.tol;
    opts.identities = config.command != Command::theorems;
    opts.theorems = evaluated;
    opts.probe = config.probe;
    opts.seed = config.seed;
    const std::vector<PointResult> results = config.serial ? evaluate_points_serial(model, sample.points, opts)
                                                           : evaluate_points_parallel(model, sample.points, opts);
    const Tolerances& tol = config.tol;
    Ledger ledger;

    Json rep;
    rep["schema"] = "oneill-lab-report/1";
    if (config.timestamp) rep["timestamp"] = utc_timestamp();

    Json cfg;
    cfg["command"] = std::string(to_string(config.command));
    cfg["model"] = config.model;
    cfg["points"] = config.points;
    cfg["seed"] = config.seed;
    Json box = Json::array();
    {
        std::vector<Interval> b = config.box;
        if (b.empty()) b.assign(model.dim(), {-2.0, 2.0});
        if (b.size() == 1) b.assign(model.dim(), b.front());
        for (const auto& [lo, hi] : b) box.push_back(Json::array({lo, hi}));
    }
    cfg["box"] = box;
    cfg["tolerances"] = tolerances_json(tol);
    Json tl = Json::array();
    for (TheoremId id : ids) tl.push_back(std::string(to_string(id)));
    cfg["theorems"] = tl;
    cfg["probe"] = config.probe.to_string();
    rep["config"] = cfg;

    Json mj;
    mj["name"] = model.name;
    mj["source"] = model.source;
    mj["dim"] = model.dim();
    mj["m"] = model.total.m;
    mj["c"] = model.total.c;
    if (model.submersion) {
        const SubmersionModel& s = *model.submersion;
        mj["kind"] = "submersion";
        mj["b"] = s.b();
        mj["r"] = s.r();
        mj["n"] = s.n();
        mj["xi_position"] = std::string(to_string(s.xi_position));
        mj["frames"] = analytic ? "analytic" : "derived";
    } else {
        mj["kind"] = "total-space";
    }
    rep["model"] = mj;

    // ---- sample and errors
    std::size_t ok_points = 0, valid_points = 0;
    Json errors = Json::array();
    for (const PointResult& r : results) {
        if (!r.ok) {
            Json e;
            e["index"] = r.index;
            e["point"] = r.point;
            e["kind"] = r.error_kind;
            e["message"] = r.error_message;
            errors.push_back(e);
            continue;
        }
        ++ok_points;
        if (r.hypotheses) ++valid_points;
    }
    Json sj;
    sj["requested"] = sample.requested;
    sj["admissible"] = sample.points.size();
    sj["attempts"] = sample.attempts;
    sj["evaluated"] = ok_points;
    sj["errors"] = errors;
    rep["sample"] = sj;
    if (ok_points == 0) ledger.failures.push_back("no sample point could be evaluated");
    else if (!errors.empty()) ledger.flags.push_back(std::to_string(errors.size()) + " sample points raised errors");
    if (sample.points.size() < sample.requested) {
        ledger.flags.push_back("only " + std::to_string(sample.points.size()) + " of " +
                               std::to_string(sample.requested) + " requested points were admissible");
    }

    // ---- structure
    Json st;
    {
        Max xi_par, phi_der, almost, space_form, phi_dev, gram, xi_slot;
        double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
        std::size_t sections = 0;
        for (const PointResult& r : results) {
            if (!r.ok) continue;
            xi_par.add(r.sasakian.xi_parallel);
            phi_der.add(r.sasakian.phi_derivative);
            almost.add(r.sasakian.almost_contact());
            space_form.add(r.space_form);
            if (r.phi_sections > 0) {
                phi_dev.add(std::max(std::abs(r.phi_sectional_min - model.total.c),
                                     std::abs(r.phi_sectional_max - model.total.c)));
                kmin = std::min(kmin, r.phi_sectional_min);
                kmax = std::max(kmax, r.phi_sectional_max);
                sections += static_cast<std::size_t>(r.phi_sections);
            }
            if (r.has_submersion) {
                gram.add(r.gram);
                xi_slot.add(r.xi_slot);
            }
        }
        Json sas;
        sas["xi_parallel"] = max_entry(xi_par, tol.d1, ledger.ungated("Sasakian residual nabla xi + phi", xi_par, tol.d1));
        sas["phi_derivative"] = max_entry(phi_der, tol.d1, ledger.ungated("Sasakian residual nabla phi", phi_der, tol.d1));
        sas["almost_contact"] = max_entry(almost, tol.alg, ledger.ungated("almost contact residual", almost, tol.alg));
        st["sasakian"] = sas;
        st["space_form_agreement"] =
            max_entry(space_form, tol.curv, ledger.ungated("space-form curvature agreement", space_form, tol.curv));
        Json ps = max_entry(phi_dev, tol.curv, ledger.ungated("phi-sectional curvature", phi_dev, tol.curv));
        ps["expected"] = model.total.c;
        ps["K_min"] = slack_json(kmin);
        ps["K_max"] = slack_json(kmax);
        ps["sections"] = sections;
        st["phi_sectional"] = ps;

        if (model.submersion) {
            Max length, orth, vk, field_orth;
            std::size_t pd_fail = 0;
            Gated t_sym, a_alt, t_skew, a_skew, c_sq, decomp;
            Max anti;
            double trmin = std::numeric_limits<double>::infinity(), trmax = -trmin;
            Json pts = Json::array();
            for (const PointResult& r : results) {
                if (!r.ok) continue;
                length.add(r.submersion.length);
                orth.add(r.submersion.orthogonality);
                vk.add(r.submersion.vertical_kernel);
                field_orth.add(r.field_orthogonality);
                anti.add(r.anti_invariance);
                if (!r.submersion.base_positive_definite) ++pd_fail;
                const bool v = r.hypotheses;
                t_sym.add(r.lemmas.t_symmetry, v);
                a_alt.add(r.lemmas.a_alternation, v);
                t_skew.add(r.lemmas.t_skew, v);
                a_skew.add(r.lemmas.a_skew, v);
                c_sq.add(r.lemmas.c_squared, v);
                decomp.add(r.decomposition, v);
                trmin = std::min(trmin, r.trace_phiB);
                trmax = std::max(trmax, r.trace_phiB);
                Json p;
                p["index"] = r.index;
                p["point"] = r.point;
                p["hypotheses"] = v;
                p["length"] = r.submersion.length;
                p["orthogonality"] = r.submersion.orthogonality;
                p["vertical_kernel"] = r.submersion.vertical_kernel;
                p["base_positive_definite"] = r.submersion.base_positive_definite;
                p["anti_invariance"] = r.anti_invariance;
                p["field_orthogonality"] = r.field_orthogonality;
                p["trace_phiB"] = r.trace_phiB;
                pts.push_back(p);
            }
            Json sub;
            sub["hypotheses"] = "length and orthogonality preservation, vertical kernel, base metric positive "
                                "definite, anti-invariance, field orthogonality; all within tolerance d1";
            sub["hypothesis_valid_points"] = valid_points;
            sub["flagged_points"] = ok_points - valid_points;
            sub["max_length"] = length.value;
            sub["max_orthogonality"] = orth.value;
            sub["max_vertical_kernel"] = vk.value;
            sub["max_field_orthogonality"] = field_orth.value;
            sub["max_anti_invariance"] = anti.value;
            sub["base_not_positive_definite"] = pd_fail;
            sub["tolerance"] = tol.d1;
            if (ok_points > valid_points) {
                ledger.flags.push_back(std::to_string(ok_points - valid_points) + " of " + std::to_string(ok_points) +
                                       " points fail the Riemannian submersion hypotheses");
            }
            sub["points"] = pts;
            st["submersion"] = sub;

            Json lem;
            lem["t_symmetry"] = gated_entry(t_sym, tol.d1, ledger.gated("lemma T symmetry", t_sym, tol.d1));
            lem["a_alternation"] = gated_entry(a_alt, tol.d1, ledger.gated("lemma A alternation", a_alt, tol.d1));
            lem["t_skew"] = gated_entry(t_skew, tol.d1, ledger.gated("lemma T skew", t_skew, tol.d1));
            lem["a_skew"] = gated_entry(a_skew, tol.d1, ledger.gated("lemma A skew", a_skew, tol.d1));
            lem["c_squared"] = gated_entry(c_sq, tol.d1, ledger.gated("lemma C squared", c_sq, tol.d1));
            st["lemmas"] = lem;

            Json fr;
            fr["gram"] = max_entry(gram, tol.alg, ledger.ungated("frame Gram residual", gram, tol.alg));
            fr["xi_slot"] = max_entry(xi_slot, tol.alg, ledger.ungated("xi slot residual", xi_slot, tol.alg));
            fr["decomposition"] = gated_entry(decomp, tol.d1, ledger.gated("phi(V) + mu decomposition", decomp, tol.d1));
            fr["trace_phiB_min"] = slack_json(trmin);
            fr["trace_phiB_max"] = slack_json(trmax);
            st["frame"] = fr;
        }
    }
    rep["structure"] = st;

    // ---- identities
    if (opts.identities && model.submersion) {
        Json idj;
        std::map<std::string, Gated> acc;
        std::map<std::string, Gated> findings;
        std::map<std::string, bool> unsupported_id;
        for (const PointResult& r : results) {
            if (!r.ok || !r.packet) continue;
            for (const auto& [name, v] : r.packet->identity_residuals) acc[name].add(v, r.hypotheses);
            for (const auto& [name, v] : r.packet->findings) findings[name].add(v, r.hypotheses);
            for (const std::string& name : r.packet->unsupported) unsupported_id[name] = true;
        }
        for (const std::string& name : identity_names()) {
            const double t = identity_tolerance(name, tol);
            if (unsupported_id.count(name) && !acc.count(name)) {
                Json u;
                u["tolerance"] = t;
                u["status"] = "unsupported";
                idj[name] = u;
                continue;
            }
            const Gated& g = acc[name];
            idj[name] = gated_entry(g, t, ledger.gated("identity " + name, g, t));
        }
        Json fj;
        for (const auto& [name, g] : findings) {
            Json f;
            f["max_valid"] = g.valid.value;
            f["max_flagged"] = g.flagged.value;
            f["note"] = "reported only; not part of the verdict";
            fj[name] = f;
        }
        idj["findings"] = fj;
        rep["identities"] = idj;
    }

    // ---- theorems
    if (!ids.empty()) {
        std::map<TheoremId, TheoremTally> tally;
        for (const PointResult& r : results) {
            if (!r.ok) continue;
            for (const InequalityRecord& rec : r.records) {
                TheoremTally& t = tally[rec.id];
                const bool v = r.hypotheses;
                ++t.records;
                ++(v ? t.valid_records : t.flagged_records);
                if (!rec.holds) ++(v ? t.violations : t.flagged_violations);
                if (rec.condition_hit) ++(v ? t.condition_hits : t.flagged_condition_hits);
                if (!rec.sharp) ++(v ? t.sharpness_failures : t.flagged_sharpness_failures);
                if (v && rec.slack < t.min_slack) {
                    t.min_slack = rec.slack;
                    t.argmin_index = r.index;
                    t.argmin_point = r.point;
                    t.argmin_probe = rec.probe;
                }
                if (!v) t.min_slack_flagged = std::min(t.min_slack_flagged, rec.slack);
                if (rec.dropped_term) {
                    t.has_dropped = true;
                    t.dropped_max = std::max(t.dropped_max, *rec.dropped_term);
                }
                for (const VariantSlack& vs : rec.variants) {
                    if (!t.variants.count(vs.name)) t.variant_order.push_back(vs.name);
                    auto& var = t.variants[vs.name];
                    if (!vs.holds) ++(v ? var.violations : var.flagged_violations);
                    if (v) var.min_slack = std::min(var.min_slack, vs.slack);
                }
            }
        }
        Json th;
        for (TheoremId id : ids) {
            const TheoremSpec& spec = theorem_spec(id);
            const std::string name(spec.name);
            Json j;
            j["xi_case"] = std::string(to_string(spec.xi_case));
            j["direction"] = spec.direction == Direction::at_least ? ">=" : "<=";
            j["equality_condition"] = std::string(to_string(spec.condition));
            if (std::find(unsupported.begin(), unsupported.end(), id) != unsupported.end()) {
                j["status"] = "unsupported";
                j["reason"] = "needs delta(N), which needs analytic frame fields";
                th[name] = j;
                continue;
            }
            const TheoremTally& t = tally[id];
            j["records"] = t.records;
            j["valid_records"] = t.valid_records;
            j["flagged_records"] = t.flagged_records;
            j["violations"] = t.violations;
            j["flagged_violations"] = t.flagged_violations;
            j["min_slack"] = slack_json(t.min_slack);
            j["min_slack_flagged"] = slack_json(t.min_slack_flagged);
            if (t.valid_records > 0) {
                Json a;
                a["index"] = t.argmin_index;
                a["point"] = t.argmin_point;
                a["probe"] = t.argmin_probe;
                j["argmin"] = a;
            }
            j["condition_hits"] = t.condition_hits;
            j["flagged_condition_hits"] = t.flagged_condition_hits;
            j["sharpness_failures"] = t.sharpness_failures;
            j["flagged_sharpness_failures"] = t.flagged_sharpness_failures;
            if (t.has_dropped) j["dropped_term_max"] = t.dropped_max;

            std::string status = "pass";
            if (!t.variants.empty()) {
                Json vj;
                Json survivors = Json::array();
                std::size_t violated = 0;
                for (const std::string& vn : t.variant_order) {
                    const auto& var = t.variants.at(vn);
                    Json x;
                    x["violations"] = var.violations;
                    x["flagged_violations"] = var.flagged_violations;
                    x["min_slack"] = slack_json(var.min_slack);
                    vj[vn] = x;
                    if (var.violations == 0) survivors.push_back(vn);
                    else ++violated;
                }
                j["variants"] = vj;
                j["surviving_variants"] = survivors;
                if (violated == t.variants.size()) {
                    status = "fail";
                    ledger.failures.push_back(name + ": every coefficient variant is violated");
                } else if (violated > 0) {
                    status = "flagged";
                    ledger.flags.push_back(name + ": " + std::to_string(violated) + " coefficient variant(s) violated");
                }
            } else if (t.violations > 0) {
                status = "fail";
                ledger.failures.push_back(name + ": " + std::to_string(t.violations) +
                                          " violations at hypothesis-valid points");
            }
            if (t.sharpness_failures > 0) {
                status = "fail";
                ledger.failures.push_back(name + ": equality condition holds but slack is not zero (" +
                                          std::to_string(t.sharpness_failures) + " records)");
            }
            if (status == "pass" && (t.flagged_violations > 0 || t.flagged_sharpness_failures > 0)) {
                status = "flagged";
                ledger.flags.push_back(name + ": deviations at flagged points");
            }
            j["status"] = status;
            th[name] = j;
        }
        rep["theorems"] = th;
    }

    RunResult out;
    out.failures = ledger.failures;
    out.flags = ledger.flags;
    out.verdict = !out.failures.empty() ? Verdict::fail : !out.flags.empty() ? Verdict::pass_with_flags : Verdict::pass;
    rep["failures"] = out.failures;
    rep["flags"] = out.flags;
    rep["verdict"] = std::string(to_string(out.verdict));
    out.report = std::move(rep);
    return out;
}

RunResult run(const RunConfig& config) { return run(config, load_model(config.model)); }

namespace {

void write(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(it.key()).dump() + ": ";
                write(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            bool scalars = true;
            for (const Json& v : j) scalars = scalars && !v.is_structured();
            if (scalars) {
                out += "[";
                for (std::size_t k = 0; k < j.size(); ++k) {
                    if (k) out += ", ";
                    write(j[k], out, indent + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) out += ",\n";
                out += inner;
                write(j[k], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string to_json_text(const Json& j) {
    std::string out;
    write(j, out, 0);
    out += "\n";
    return out;
}

}  // namespace oneill
