#include "oneill/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

namespace oneill {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t k = text.find(sep, start);
        out.push_back(text.substr(start, k == std::string::npos ? std::string::npos : k - start));
        if (k == std::string::npos) break;
        start = k + 1;
    }
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (s.empty() || ec != std::errc() || ptr != e) throw UsageError(what + ": not a number: '" + s + "'");
    return v;
}

// "lo:hi" for every coordinate, or "lo:hi,lo:hi,..." one per coordinate.
std::vector<Interval> parse_box(const std::string& text) {
    std::vector<Interval> box;
    for (const std::string& part : split(text, ',')) {
        const std::vector<std::string> ends = split(part, ':');
        if (ends.size() != 2) throw UsageError("--box: expected lo:hi, got '" + part + "'");
        const double lo = parse_double(ends[0], "--box");
        const double hi = parse_double(ends[1], "--box");
        if (!(lo < hi)) throw UsageError("--box: empty interval '" + part + "'");
        box.emplace_back(lo, hi);
    }
    return box;
}

void parse_theorem_list(const std::string& text, RunConfig& c) {
    if (text == "all") {
        c.all_theorems = true;
        c.theorems.clear();
        return;
    }
    c.all_theorems = false;
    c.theorems.clear();
    if (text == "none") return;
    for (const std::string& name : split(text, ',')) {
        const auto id = parse_theorem_id(name);
        if (!id) throw UsageError("--theorems: unknown theorem id '" + name + "'");
        if (std::find(c.theorems.begin(), c.theorems.end(), *id) == c.theorems.end()) c.theorems.push_back(*id);
    }
}

}  // namespace

RunConfig parse_command_line(const std::vector<std::string>& args) {
    CLI::App app{"Sasakian space forms and Riemannian submersions: numerical verification"};
    app.name("oneill_lab");
    app.require_subcommand(1, 1);

    RunConfig c;
    std::string box, theorems = "all", probe = "first";
    double tol_alg = c.tol.alg, tol_d1 = c.tol.d1, tol_curv = c.tol.curv, tol_d2 = c.tol.d2curv;
    bool no_timestamp = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", c.model, "vertical-xi, horizontal-xi, r2m1:<m> or a model JSON file");
        sub->add_option("--points", c.points, "number of sample points")->check(CLI::PositiveNumber);
        sub->add_option("--seed", c.seed, "sampling seed");
        sub->add_option("--box", box, "lo:hi, or lo:hi,lo:hi,... per coordinate (default -2:2)");
        sub->add_option("--tol-alg", tol_alg, "algebraic tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--tol-d1", tol_d1, "first-derivative tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--tol-curv", tol_curv, "curvature tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--tol-d2curv", tol_d2, "tolerance for identities with derivatives of T, A")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", c.out, "report path (default stdout)");
        sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
        sub->add_flag("--serial", c.serial, "use the serial reference loop");
    };
    auto add_scan = [&](CLI::App* sub) {
        sub->add_option("--theorems", theorems, "all, none or a comma list such as V1,CRH1");
        sub->add_option("--probe", probe, "first, all or random:<k>");
    };

    CLI::App* verify = app.add_subcommand("verify", "structure and identity checks");
    CLI::App* scan = app.add_subcommand("theorems", "theorem scans");
    CLI::App* report = app.add_subcommand("report", "structure, identities and theorem scans");
    add_common(verify);
    add_common(scan);
    add_common(report);
    add_scan(scan);
    add_scan(report);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (verify->parsed()) c.command = Command::verify;
    else if (scan->parsed()) c.command = Command::theorems;
    else c.command = Command::report;

    if (!box.empty()) c.box = parse_box(box);
    if (c.command != Command::verify) parse_theorem_list(theorems, c);
    else {
        c.all_theorems = false;
        c.theorems.clear();
    }
    try {
        c.probe = ProbeMode::parse(probe);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--probe: ") + e.what());
    }
    c.tol.alg = tol_alg;
    c.tol.d1 = tol_d1;
    c.tol.curv = tol_curv;
    c.tol.d2curv = tol_d2;
    c.timestamp = !no_timestamp;
    return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_command_line(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        err << "oneill_lab: " << e.what() << "\n";
        return kExitUsage;
    }

    RunResult result;
    try {
        const LabModel model = load_model(config.model);
        result = run(config, model);
    } catch (const ModelLoadError& e) {
        err << "oneill_lab: model load failed: " << e.what() << "\n";
        return kExitModelLoad;
    } catch (const EmptySampleError& e) {
        err << "oneill_lab: " << e.what() << "\n";
        return kExitEmptySample;
    } catch (const GeometryError& e) {
        if (e.kind() == ErrorKind::rejected_input) {
            err << "oneill_lab: " << e.what() << "\n";
            return kExitUsage;
        }
        err << "oneill_lab: model load failed: " << e.what() << "\n";
        return kExitModelLoad;
    } catch (const std::invalid_argument& e) {
        err << "oneill_lab: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string text = to_json_text(result.report);
    if (config.out.empty()) {
        out << text;
    } else {
        std::ofstream f(config.out, std::ios::binary);
        if (f) f << text;
        if (!f || !f.flush()) {
            err << "oneill_lab: cannot write report to '" << config.out << "'\n";
            return kExitFileWrite;
        }
        out << "verdict: " << to_string(result.verdict) << " (" << result.failures.size() << " failures, "
            << result.flags.size() << " flags) -> " << config.out << "\n";
    }
    for (const std::string& f : result.failures) err << "FAIL: " << f << "\n";
    for (const std::string& f : result.flags) err << "FLAG: " << f << "\n";
    return exit_code(result.verdict);
}

}  // namespace oneill
