#include "oneill/model_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace oneill {

using nlohmann::json;

bool LabModel::sampling_admits(std::span<const double> p) const {
    if (submersion) return submersion->sampling_admits(p);
    if (!total.manifold.admits(p)) return false;
    for (const Expr& g : sampling_guard) {
        if (!(g.eval(p) > 0.0)) return false;
    }
    return true;
}

std::vector<std::string> builtin_model_names() { return {"vertical-xi", "horizontal-xi", "r2m1:<m>"}; }

namespace {

LabModel from_submersion(SubmersionModel s) {
    LabModel m;
    m.name = s.name;
    m.source = "builtin";
    m.total = s.total;
    m.submersion = std::move(s);
    return m;
}

[[noreturn]] void fail(const std::string& what) { throw ModelLoadError(what); }

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
    return j.at(key);
}

Expr expr_of(const json& j, const std::vector<std::string>& names, const std::string& where) {
    if (j.is_number()) return Expr(j.get<double>());
    if (!j.is_string()) fail(where + ": expected an expression string or a number");
    try {
        return parse_expr(j.get<std::string>(), names);
    } catch (const GeometryError& e) {
        fail(where + ": " + e.what());
    }
}

std::vector<Expr> expr_list(const json& j, const std::vector<std::string>& names, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array");
    std::vector<Expr> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(expr_of(j[k], names, where + "[" + std::to_string(k) + "]"));
    return out;
}

std::vector<Expr> matrix(const json& j, std::size_t d, const std::vector<std::string>& names, const std::string& where) {
    if (!j.is_array() || j.size() != d) fail(where + ": expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    std::vector<Expr> out;
    for (std::size_t r = 0; r < d; ++r) {
        std::vector<Expr> row = expr_list(j[r], names, where + "[" + std::to_string(r) + "]");
        if (row.size() != d) fail(where + ": row " + std::to_string(r) + " has the wrong length");
        for (auto& e : row) out.push_back(std::move(e));
    }
    return out;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array of names");
    std::vector<std::string> out;
    for (const json& v : j) {
        if (!v.is_string()) fail(where + ": expected an array of names");
        out.push_back(v.get<std::string>());
    }
    return out;
}

SasakianSpaceForm builtin_total(const std::string& name) {
    if (name.rfind("r2m1:", 0) != 0) fail("unknown builtin total space '" + name + "'");
    int m = 0;
    const char* b = name.data() + 5;
    const char* e = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(b, e, m);
    if (ec != std::errc() || ptr != e) fail("bad dimension in '" + name + "'");
    try {
        return build_r2m1(m);
    } catch (const GeometryError& err) {
        fail(err.what());
    }
}

SasakianSpaceForm parse_total(const json& j) {
    if (j.is_object() && j.contains("builtin")) return builtin_total(j.at("builtin").get<std::string>());
    const std::vector<std::string> names = string_list(need(j, "coordinates", "total"), "total.coordinates");
    const std::size_t d = names.size();
    SasakianSpaceForm s;
    const std::vector<Expr> g = matrix(need(j, "metric", "total"), d, names, "total.metric");
    std::vector<Expr> guard;
    if (j.contains("domain")) guard = expr_list(j.at("domain"), names, "total.domain");
    try {
        s.manifold = make_manifold(j.value("name", std::string("custom-total")), names, g, guard);
        s.manifold.validate();
    } catch (const GeometryError& e) {
        fail(std::string("total: ") + e.what());
    }
    s.structure.phi = matrix(need(j, "phi", "total"), d, names, "total.phi");
    s.structure.xi = {"xi", expr_list(need(j, "xi", "total"), names, "total.xi")};
    s.structure.eta = expr_list(need(j, "eta", "total"), names, "total.eta");
    if (s.structure.xi.components.size() != d || s.structure.eta.size() != d) fail("total: xi and eta need one entry per coordinate");
    s.c = need(j, "c", "total").get<double>();
    s.m = static_cast<int>((d - 1) / 2);
    if (d % 2 == 0) fail("total: a contact manifold has odd dimension");
    if (j.contains("frame")) {
        for (const json& f : j.at("frame")) {
            const std::string fname = need(f, "name", "total.frame").get<std::string>();
            s.reference_frame.push_back({fname, expr_list(need(f, "components", "total.frame"), names, "total.frame." + fname)});
        }
    }
    return s;
}

VectorField parse_field(const json& f, const SasakianSpaceForm& total, const std::string& where) {
    const std::string name = need(f, "name", where).get<std::string>();
    const std::vector<std::string>& names = total.manifold.coordinates;
    if (f.contains("components")) {
        VectorField v{name, expr_list(f.at("components"), names, where + "." + name)};
        if (static_cast<int>(v.components.size()) != total.dim()) fail(where + "." + name + ": wrong number of components");
        return v;
    }
    if (!f.contains("combination")) fail(where + "." + name + ": needs \"components\" or \"combination\"");
    VectorField v{name, std::vector<Expr>(total.dim(), Expr(0.0))};
    for (const auto& [key, coeff] : f.at("combination").items()) {
        const VectorField* base = nullptr;
        if (key == "xi") base = &total.structure.xi;
        for (const VectorField& e : total.reference_frame) {
            if (e.name == key) base = &e;
        }
        if (!base) fail(where + "." + name + ": unknown frame field '" + key + "'");
        const Expr a = expr_of(coeff, names, where + "." + name + "." + key);
        for (int k = 0; k < total.dim(); ++k) v.components[k] = v.components[k] + a * base->components[k];
    }
    return v;
}

}  // namespace

LabModel parse_model_json(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(source + ": " + e.what());
    }
    try {
        if (j.value("schema", std::string()) != "oneill-lab-model/1") fail(source + ": schema must be \"oneill-lab-model/1\"");
        LabModel m;
        m.name = j.value("name", std::string("custom"));
        m.source = source;
        m.total = parse_total(need(j, "total", source));
        const std::vector<std::string>& names = m.total.manifold.coordinates;
        if (j.contains("sampling_guard")) m.sampling_guard = expr_list(j.at("sampling_guard"), names, "sampling_guard");
        if (!j.contains("base")) return m;

        SubmersionModel s;
        s.name = m.name;
        s.total = m.total;
        const json& b = j.at("base");
        const std::vector<std::string> bnames = string_list(need(b, "coordinates", "base"), "base.coordinates");
        const std::vector<Expr> bg = matrix(need(b, "metric", "base"), bnames.size(), bnames, "base.metric");
        std::vector<Expr> bguard;
        if (b.contains("domain")) bguard = expr_list(b.at("domain"), bnames, "base.domain");
        s.base = make_manifold(b.value("name", std::string("base")), bnames, bg, bguard);
        s.map = expr_list(need(j, "map", source), names, "map");
        const std::string xp = need(j, "xi_position", source).get<std::string>();
        if (xp == "vertical") s.xi_position = XiPosition::vertical;
        else if (xp == "horizontal") s.xi_position = XiPosition::horizontal;
        else fail("xi_position must be \"vertical\" or \"horizontal\"");
        if (j.contains("vertical_fields") || j.contains("horizontal_fields")) {
            for (const json& f : need(j, "vertical_fields", source)) s.vertical_fields.push_back(parse_field(f, s.total, "vertical_fields"));
            for (const json& f : need(j, "horizontal_fields", source)) s.horizontal_fields.push_back(parse_field(f, s.total, "horizontal_fields"));
            s.xi_field = need(j, "xi_index", source).get<int>();
        }
        s.sampling_guard = m.sampling_guard;
        s.validate();
        m.submersion = std::move(s);
        return m;
    } catch (const GeometryError& e) {
        fail(source + ": " + e.what());
    } catch (const json::exception& e) {
        fail(source + ": " + e.what());
    }
}

LabModel load_model(const std::string& spec) {
    if (spec == "vertical-xi") return from_submersion(build_vertical_xi_example());
    if (spec == "horizontal-xi") return from_submersion(build_horizontal_xi_example());
    if (spec.rfind("r2m1:", 0) == 0) {
        LabModel m;
        m.name = spec;
        m.source = "builtin";
        m.total = builtin_total(spec);
        return m;
    }
    std::ifstream in(spec);
    if (!in) fail("cannot open model '" + spec + "' (builtins: vertical-xi, horizontal-xi, r2m1:<m>)");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_json(ss.str(), spec);
}

}  // namespace oneill
