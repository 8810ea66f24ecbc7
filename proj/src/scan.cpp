#include "oneill/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "oneill/curvature.hpp"

namespace oneill {

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Sample draw_sample(const LabModel& model, std::size_t points, std::uint64_t seed, std::vector<Interval> box) {
    const int d = model.dim();
    if (box.empty()) box.assign(d, {-2.0, 2.0});
    if (box.size() == 1) box.assign(d, box.front());
    if (static_cast<int>(box.size()) != d) {
        throw std::invalid_argument("box needs one interval or one per coordinate (" + std::to_string(d) + ")");
    }
    Sample s;
    s.requested = points;
    std::mt19937_64 rng(seed);
    const std::size_t cap = 10 * points;
    std::vector<double> p(d);
    while (s.points.size() < points && s.attempts < cap) {
        ++s.attempts;
        for (int k = 0; k < d; ++k) p[k] = box[k].first + (box[k].second - box[k].first) * unit_draw(rng);
        if (model.sampling_admits(p)) s.points.push_back(p);
    }
    if (s.points.empty()) {
        throw EmptySampleError("no admissible point in " + std::to_string(s.attempts) + " draws for model '" +
                               model.name + "'");
    }
    return s;
}

ProbeMode ProbeMode::parse(const std::string& text) {
    ProbeMode m;
    if (text == "first") return m;
    if (text == "all") {
        m.kind = Kind::all;
        return m;
    }
    const std::string prefix = "random:";
    if (text.rfind(prefix, 0) == 0) {
        const char* b = text.data() + prefix.size();
        const char* e = text.data() + text.size();
        int k = 0;
        auto [ptr, ec] = std::from_chars(b, e, k);
        if (ec == std::errc() && ptr == e && k > 0) {
            m.kind = Kind::random;
            m.count = k;
            return m;
        }
    }
    throw std::invalid_argument("probe must be first, all or random:<k>, got '" + text + "'");
}

std::string ProbeMode::to_string() const {
    switch (kind) {
        case Kind::first: return "first";
        case Kind::all: return "all";
        case Kind::random: return "random:" + std::to_string(count);
    }
    return "first";
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
    // splitmix64 finalizer over (seed, index)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

FrameVector random_unit(std::mt19937_64& rng, int d, int lo, int hi) {
    FrameVector v(d, 0.0);
    double n2 = 0.0;
    while (n2 < 1e-4) {
        n2 = 0.0;
        for (int k = lo; k < hi; ++k) {
            v[k] = 2.0 * unit_draw(rng) - 1.0;
            n2 += v[k] * v[k];
        }
    }
    const double nv = std::sqrt(n2);
    for (double& x : v) x /= nv;
    return v;
}

}  // namespace

std::vector<Probe> probes_for(const TheoremSpec& spec, const FrameTensors& t, const ProbeMode& mode,
                              std::uint64_t seed) {
    const int r = t.r;
    const int d = t.dim();
    if (spec.probe == ProbeKind::none || mode.kind == ProbeMode::Kind::first) return {Probe{}};
    std::vector<Probe> out;
    if (mode.kind == ProbeMode::Kind::all) {
        const bool wants_u = spec.probe == ProbeKind::vertical || spec.probe == ProbeKind::both;
        const bool wants_x = spec.probe == ProbeKind::horizontal || spec.probe == ProbeKind::both;
        const int nu = wants_u ? r : 1;
        const int nx = wants_x ? d - r : 1;
        for (int a = 0; a < nu; ++a) {
            for (int s = 0; s < nx; ++s) {
                Probe p;
                p.label.clear();
                if (wants_u) {
                    p.u = t.basis(a);
                    p.label += "U" + std::to_string(a + 1);
                }
                if (wants_x) {
                    p.x = t.basis(r + s);
                    p.label += "X" + std::to_string(s + 1);
                }
                out.push_back(std::move(p));
            }
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    for (int k = 0; k < mode.count; ++k) {
        Probe p;
        p.label = "random" + std::to_string(k + 1);
        p.u = random_unit(rng, d, 0, r);
        p.x = random_unit(rng, d, r, d);
        out.push_back(std::move(p));
    }
    return out;
}

bool hypotheses_hold(const PointResult& r, const Tolerances& tol) {
    if (!r.ok || !r.has_submersion) return false;
    return r.submersion.length <= tol.d1 && r.submersion.orthogonality <= tol.d1 &&
           r.submersion.vertical_kernel <= tol.d1 && r.submersion.base_positive_definite &&
           r.submersion.base_in_domain && r.anti_invariance <= tol.d1 && r.field_orthogonality <= tol.d1;
}

namespace {

// Orthonormal frame of the total space alone: the builder's reference frame
// when it has one, else Gram-Schmidt on the coordinate basis with xi first.
FrameTensors total_space_tensors(const SasakianSpaceForm& total, const LocalGeometry& geo) {
    const int d = geo.dim;
    const std::vector<double> g = geo.metric_values();
    std::vector<std::vector<double>> cand;
    if (!total.reference_frame.empty()) {
        for (const VectorField& f : total.reference_frame) cand.push_back(f.eval(geo.point.coords()));
    } else {
        cand.push_back(total.structure.xi.eval(geo.point.coords()));
        for (int i = 0; i < d; ++i) {
            std::vector<double> e(d, 0.0);
            e[i] = 1.0;
            cand.push_back(std::move(e));
        }
    }
    std::vector<std::vector<double>> frame;
    for (auto v : cand) {
        for (const auto& e : frame) {
            const double c = inner(g, v, e);
            for (int k = 0; k < d; ++k) v[k] -= c * e[k];
        }
        const double nv = std::sqrt(std::max(inner(g, v, v), 0.0));
        if (nv < 1e-8) continue;
        for (double& x : v) x /= nv;
        frame.push_back(std::move(v));
        if (static_cast<int>(frame.size()) == d) break;
    }
    if (static_cast<int>(frame.size()) != d) throw GeometryError(ErrorKind::degenerate_frame, "total-space frame");

    StructureValues sv = structure_values(total, geo.point.coords());
    FrameTensors t;
    t.r = 0;
    t.n = d;
    t.c = total.c;
    t.xi_position = XiPosition::horizontal;
    t.R.resize(static_cast<std::size_t>(d) * d * d * d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                for (int e = 0; e < d; ++e) {
                    t.R[((a * d + b) * d + c) * d + e] = contract(geo.riemann, frame[a], frame[b], frame[c], frame[e]);
                }
            }
        }
    }
    t.phi.resize(static_cast<std::size_t>(d) * d);
    t.eta.resize(d);
    for (int b = 0; b < d; ++b) {
        const std::vector<double> pb = sv.apply_phi(frame[b]);
        for (int a = 0; a < d; ++a) t.phi[a * d + b] = inner(g, pb, frame[a]);
        double ev = 0.0;
        for (int k = 0; k < d; ++k) ev += sv.eta[k] * frame[b][k];
        t.eta[b] = ev;
    }
    t.T.assign(static_cast<std::size_t>(d) * d * d, 0.0);
    t.A = t.T;
    return t;
}

void phi_sections(const FrameTensors& t, std::uint64_t seed, PointResult& out) {
    const int d = t.dim();
    std::vector<double> ks;
    auto section = [&](const FrameVector& x) {
        const FrameVector px = t.apply_phi(x);
        const double den = dot(x, x) * dot(px, px) - dot(x, px) * dot(x, px);
        ks.push_back(t.curvature(x, px, px, x) / den);
    };
    for (int a = 0; a < d; ++a) {
        if (std::abs(t.eta[a]) < 1e-10) section(t.basis(a));
    }
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    FrameVector x = random_unit(rng, d, 0, d);
    const double ex = dot(x, t.eta);
    for (int k = 0; k < d; ++k) x[k] -= ex * t.eta[k];
    const double nx = std::sqrt(dot(x, x));
    if (nx > 1e-6) {
        for (double& v : x) v /= nx;
        section(x);
    }
    out.phi_sections = static_cast<int>(ks.size());
    if (!ks.empty()) {
        out.phi_sectional_min = *std::min_element(ks.begin(), ks.end());
        out.phi_sectional_max = *std::max_element(ks.begin(), ks.end());
    }
}

}  // namespace

PointResult evaluate_point(const LabModel& model, std::size_t index, const std::vector<double>& p,
                           const EvalOptions& opts) {
    PointResult r;
    r.index = index;
    r.point = p;
    const std::uint64_t seed = point_seed(opts.seed, index);
    try {
        if (!model.submersion) {
            const LocalGeometry geo = local_geometry(model.total.manifold, p);
            r.sasakian = verify_sasakian(model.total, geo);
            const FrameTensors t = total_space_tensors(model.total, geo);
            r.space_form = space_form_residual(t);
            phi_sections(t, seed, r);
            return r;
        }
        const SubmersionModel& sub = *model.submersion;
        const FramedPoint fp = analyze_point(sub, p);
        const FrameTensors& t = fp.tensors;
        r.has_submersion = true;
        r.sasakian = verify_sasakian(sub.total, fp.geo);
        r.space_form = space_form_residual(t);
        phi_sections(t, seed, r);
        r.submersion = verify_riemannian_submersion(sub, fp);
        r.lemmas = verify_structure_lemmas(t);
        r.anti_invariance = r.lemmas.anti_invariance;
        r.field_orthogonality = fp.field_orthogonality;
        r.gram = fp.gram_residual;
        r.xi_slot = fp.xi_slot_residual;
        r.decomposition = adapted_frame(fp, sub.xi_position).decomposition_residual;
        r.trace_phiB = oneill_tensors(t).trace_phiB;
        r.hypotheses = hypotheses_hold(r, opts.tol);
        if (opts.identities) r.packet = scalar_invariants(t);
        for (TheoremId id : opts.theorems) {
            const TheoremSpec& spec = theorem_spec(id);
            for (const Probe& probe : probes_for(spec, t, opts.probe, seed)) {
                r.records.push_back(evaluate_theorem(t, id, probe, opts.tol));
            }
        }
    } catch (const GeometryError& e) {
        r.ok = false;
        r.hypotheses = false;
        r.error_kind = std::string(to_string(e.kind()));
        r.error_message = e.what();
        r.packet.reset();
        r.records.clear();
    }
    return r;
}

std::vector<PointResult> evaluate_points_serial(const LabModel& model, const std::vector<std::vector<double>>& pts,
                                                const EvalOptions& opts) {
    std::vector<PointResult> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = evaluate_point(model, i, pts[i], opts);
    return out;
}

std::vector<PointResult> evaluate_points_parallel(const LabModel& model, const std::vector<std::vector<double>>& pts,
                                                  const EvalOptions& opts) {
    std::vector<PointResult> out(pts.size());
    const auto count = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        out[i] = evaluate_point(model, static_cast<std::size_t>(i), pts[i], opts);
    }
    return out;
}

}  // namespace oneill
