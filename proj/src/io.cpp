#include "ilap/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace ilap {
namespace io {

namespace {

Vertex parse_vertex_key(const std::string& key) {
    try {
        std::size_t pos = 0;
        Vertex v = std::stoll(key, &pos);
        if (pos != key.size()) {
            throw std::invalid_argument(key);
        }
        return v;
    } catch (const std::exception&) {
        throw InputError("bad vertex key '" + key + "'");
    }
}

ScalarField field_from_object(const json& j, const char* what) {
    if (!j.is_object()) {
        throw InputError(std::string(what) + " must be an object of {vertex: value}");
    }
    ScalarField f;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number()) {
            throw InputError(std::string(what) + " value at key '" + it.key() +
                             "' is not a number");
        }
        f.set(parse_vertex_key(it.key()), it.value().get<double>());
    }
    return f;
}

}  // namespace

json graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = g.vertices();
    json edges = json::array();
    for (Vertex v : g.vertices()) {
        for (Vertex w : g.neighbors(v)) {
            if (v < w) {
                edges.push_back({v, w});
            }
        }
    }
    j["edges"] = std::move(edges);
    if (g.has_incomplete()) {
        j["incomplete"] = g.incomplete_vertices();
    }
    return j;
}

std::shared_ptr<const Graph> graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
        throw InputError("graph JSON needs 'vertices' and 'edges'");
    }
    std::vector<Vertex> vertices;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_number_integer()) {
            throw InputError("graph vertices must be integers");
        }
        vertices.push_back(v.get<Vertex>());
    }
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
            throw InputError("graph edges must be [a, b] integer pairs");
        }
        edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    std::vector<Vertex> incomplete;
    if (j.contains("incomplete")) {
        for (const auto& v : j.at("incomplete")) {
            incomplete.push_back(v.get<Vertex>());
        }
    }
    // Edge endpoints must be declared vertices.
    std::unordered_set<Vertex> declared(vertices.begin(), vertices.end());
    for (const auto& [a, b] : edges) {
        if (!declared.count(a) || !declared.count(b)) {
            throw InputError("edge endpoint not in the vertex list");
        }
    }
    if (j.contains("labels") && !j.at("labels").is_object()) {
        throw InputError("graph labels must be an object");
    }
    if (incomplete.empty()) {
        return std::make_shared<Graph>(Graph::materialized(edges, vertices));
    }
    return std::make_shared<Graph>(Graph::truncation(edges, incomplete, std::nullopt, vertices));
}

json problem_to_json(const DirichletProblem& p) {
    json j;
    j["graph"] = graph_to_json(p.graph_ref());
    j["X"] = p.partition.interior;
    j["f"] = field_to_json(p.f);
    j["g"] = field_to_json(p.g);
    if (p.partition.width_bound && p.graph_ref().has_incomplete()) {
        // On truncations the width cannot be recomputed from the file alone;
        // persist the caller's certified witness.
        j["width_bound"] = *p.partition.width_bound;
    }
    return j;
}

DirichletProblem problem_from_json(const json& j) {
    if (!j.is_object() || !j.contains("graph") || !j.contains("X")) {
        throw InputError("problem JSON needs 'graph' and 'X'");
    }
    auto graph = graph_from_json(j.at("graph"));
    std::vector<Vertex> interior;
    for (const auto& v : j.at("X")) {
        interior.push_back(v.get<Vertex>());
    }
    ScalarField f = j.contains("f") ? field_from_object(j.at("f"), "f") : ScalarField{};
    ScalarField g = j.contains("g") ? field_from_object(j.at("g"), "g") : ScalarField{};
    // Missing entries of f default to zero on the interior.
    for (Vertex x : interior) {
        if (!f.defined_at(x)) {
            f.set(x, 0.0);
        }
    }
    std::optional<int> width;
    if (j.contains("width_bound")) {
        width = j.at("width_bound").get<int>();
    }
    return make_problem(std::move(graph), std::move(interior), std::move(f), std::move(g), width);
}

json game_to_json(const GameConfig& cfg) {
    json j;
    j["graph"] = graph_to_json(*cfg.graph);
    j["X"] = cfg.partition.interior;
    j["r"] = field_to_json(cfg.running);
    j["g"] = field_to_json(cfg.terminal);
    j["start"] = cfg.start;
    j["max_rounds"] = cfg.max_rounds;
    return j;
}

GameConfig game_from_json(const json& j) {
    if (!j.is_object() || !j.contains("graph") || !j.contains("X") || !j.contains("start")) {
        throw InputError("game JSON needs 'graph', 'X' and 'start'");
    }
    auto graph = graph_from_json(j.at("graph"));
    std::vector<Vertex> interior;
    for (const auto& v : j.at("X")) {
        interior.push_back(v.get<Vertex>());
    }
    ScalarField r = j.contains("r") ? field_from_object(j.at("r"), "r") : ScalarField{};
    for (Vertex x : interior) {
        if (!r.defined_at(x)) {
            r.set(x, 0.0);
        }
    }
    ScalarField g = j.contains("g") ? field_from_object(j.at("g"), "g") : ScalarField{};
    std::int64_t max_rounds = j.value("max_rounds", std::int64_t{1'000'000});
    return make_game(std::move(graph), std::move(interior), std::move(r), std::move(g),
                     j.at("start").get<Vertex>(), max_rounds);
}

json field_to_json(const ScalarField& f) {
    json j = json::object();
    for (Vertex v : f.domain_sorted()) {
        j[std::to_string(v)] = f.at(v);
    }
    return j;
}

ScalarField field_from_json(const json& j) {
    return field_from_object(j, "field");
}

std::string field_to_csv(const ScalarField& f) {
    std::string out = "vertex,value\n";
    for (Vertex v : f.domain_sorted()) {
        out += std::to_string(v);
        out += ',';
        out += format_double(f.at(v));
        out += '\n';
    }
    return out;
}

json fnspec_to_json(const euclid::FnSpec& f) {
    using Kind = euclid::FnSpec::Kind;
    json j;
    switch (f.kind) {
        case Kind::Zero:
            j["kind"] = "zero";
            break;
        case Kind::Constant:
            j["kind"] = "constant";
            j["value"] = f.value;
            break;
        case Kind::Linear:
            j["kind"] = "linear";
            j["wx"] = f.wx;
            j["wy"] = f.wy;
            j["w0"] = f.w0;
            break;
        case Kind::Cone:
            j["kind"] = "cone";
            j["center"] = {f.center.x, f.center.y};
            j["a"] = f.a;
            j["slope"] = f.slope;
            break;
        case Kind::Poly1d:
            j["kind"] = "poly1d";
            j["coeffs"] = f.coeffs;
            break;
    }
    return j;
}

euclid::FnSpec fnspec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) {
        throw InputError("function spec needs a 'kind'");
    }
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") {
        return euclid::FnSpec::zero();
    }
    if (kind == "constant") {
        return euclid::FnSpec::constant(j.at("value").get<double>());
    }
    if (kind == "linear") {
        return euclid::FnSpec::linear(j.value("wx", 0.0), j.value("wy", 0.0),
                                      j.value("w0", 0.0));
    }
    if (kind == "cone") {
        const auto& c = j.at("center");
        return euclid::FnSpec::cone({c.at(0).get<double>(), c.at(1).get<double>()},
                                    j.value("a", 0.0), j.at("slope").get<double>());
    }
    if (kind == "poly1d") {
        return euclid::FnSpec::poly1d(j.at("coeffs").get<std::vector<double>>());
    }
    throw InputError("unknown function kind '" + kind + "'");
}

json domain_to_json(const euclid::DomainSpec& d) {
    using Shape = euclid::DomainSpec::Shape;
    json j;
    j["dim"] = d.dim;
    switch (d.shape) {
        case Shape::Box:
            j["shape"] = d.dim == 1 ? "interval" : "box";
            if (d.dim == 1) {
                j["lo"] = d.lo.x;
                j["hi"] = d.hi.x;
            } else {
                j["lo"] = {d.lo.x, d.lo.y};
                j["hi"] = {d.hi.x, d.hi.y};
            }
            break;
        case Shape::Annulus:
            j["shape"] = "annulus";
            j["center"] = {d.center.x, d.center.y};
            j["r_in"] = d.r_in;
            j["r_out"] = d.r_out;
            break;
        case Shape::LShape:
            j["shape"] = "l_shape";
            j["lo"] = {d.lo.x, d.lo.y};
            j["hi"] = {d.hi.x, d.hi.y};
            j["cut"] = {d.cut_x, d.cut_y};
            break;
        case Shape::Slab:
            j["shape"] = "slab";
            j["curve_lo"] = d.curve_lo;
            j["curve_hi"] = d.curve_hi;
            j["period"] = d.period;
            break;
        case Shape::PuncturedBox:
            j["shape"] = "punctured_box";
            j["period"] = d.period;
            j["spacing"] = d.spacing;
            break;
    }
    j["f"] = fnspec_to_json(d.f);
    j["g"] = fnspec_to_json(d.g);
    if (d.exact) {
        j["exact"] = fnspec_to_json(*d.exact);
    }
    return j;
}

euclid::DomainSpec domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("shape")) {
        throw InputError("domain JSON needs a 'shape'");
    }
    std::string shape = j.at("shape").get<std::string>();
    euclid::DomainSpec d;
    if (shape == "interval") {
        d = euclid::DomainSpec::interval(j.at("lo").get<double>(), j.at("hi").get<double>());
    } else if (shape == "box") {
        const auto& lo = j.at("lo");
        const auto& hi = j.at("hi");
        d = euclid::DomainSpec::box2d({lo.at(0).get<double>(), lo.at(1).get<double>()},
                                      {hi.at(0).get<double>(), hi.at(1).get<double>()});
    } else if (shape == "annulus") {
        const auto& c = j.at("center");
        d = euclid::DomainSpec::annulus({c.at(0).get<double>(), c.at(1).get<double>()},
                                        j.at("r_in").get<double>(),
                                        j.at("r_out").get<double>());
    } else if (shape == "l_shape") {
        const auto& lo = j.at("lo");
        const auto& hi = j.at("hi");
        const auto& cut = j.at("cut");
        d = euclid::DomainSpec::l_shape({lo.at(0).get<double>(), lo.at(1).get<double>()},
                                        {hi.at(0).get<double>(), hi.at(1).get<double>()},
                                        cut.at(0).get<double>(), cut.at(1).get<double>());
    } else if (shape == "slab") {
        d = euclid::DomainSpec::slab(j.at("curve_lo").get<std::vector<double>>(),
                                     j.at("curve_hi").get<std::vector<double>>(),
                                     j.at("period").get<double>());
    } else if (shape == "punctured_box") {
        d = euclid::DomainSpec::punctured_box(j.at("period").get<double>(),
                                              j.at("spacing").get<double>());
    } else {
        throw InputError("unknown domain shape '" + shape + "'");
    }
    if (j.contains("f")) {
        d.f = fnspec_from_json(j.at("f"));
    }
    if (j.contains("g")) {
        d.g = fnspec_from_json(j.at("g"));
    }
    if (j.contains("exact")) {
        d.exact = fnspec_from_json(j.at("exact"));
    }
    return d;
}

json outcome_to_json(const SolveOutcome& o) {
    json j;
    j["converged"] = o.converged;
    j["residual"] = o.residual_sup;
    j["iterations"] = o.iterations;
    switch (o.init_used) {
        case InitKind::UpperBarrier:
            j["init"] = "upper";
            break;
        case InitKind::LowerBarrier:
            j["init"] = "lower";
            break;
        case InitKind::Custom:
            j["init"] = "custom";
            break;
    }
    json hist = json::array();
    for (const auto& h : o.history) {
        hist.push_back({{"sweep", h.sweep}, {"sup_change", h.sup_change}});
    }
    j["history"] = std::move(hist);
    j["u"] = field_to_json(o.u);
    return j;
}

json estimate_to_json(const ValueEstimate& e) {
    json j;
    j["mean"] = e.mean;
    j["stderr"] = e.stderr_;
    j["capped"] = e.capped;
    j["n"] = e.n;
    j["completed"] = e.completed;
    return j;
}

json comparison_to_json(const ComparisonReport& r) {
    json j;
    j["sup_diff_interior"] = r.sup_diff_interior;
    j["sup_diff_boundary"] = r.sup_diff_boundary;
    j["verdict"] = r.verdict;
    j["hypotheses_met"] = r.hypotheses_met;
    if (!r.hypothesis_note.empty()) {
        j["note"] = r.hypothesis_note;
    }
    if (r.interior_witness) {
        j["interior_witness"] = *r.interior_witness;
    }
    if (r.boundary_witness) {
        j["boundary_witness"] = *r.boundary_witness;
    }
    return j;
}

json convergence_to_json(const euclid::ConvergenceReport& r) {
    json j;
    j["schedule"] = r.schedule;
    json probes = json::array();
    for (const auto& p : r.probes) {
        probes.push_back({p.x, p.y});
    }
    j["probes"] = std::move(probes);
    json bprobes = json::array();
    for (const auto& p : r.boundary_probes) {
        bprobes.push_back({p.x, p.y});
    }
    j["boundary_probes"] = std::move(bprobes);
    j["warnings"] = r.warnings;
    json levels = json::array();
    for (const auto& lv : r.levels) {
        json l;
        l["eps"] = lv.eps;
        l["h"] = lv.h;
        l["samples"] = lv.samples;
        l["w_hops"] = lv.w_hops;
        l["residual"] = lv.residual;
        l["iterations"] = lv.iterations;
        l["converged"] = lv.converged;
        l["sup_u"] = lv.sup_u;
        l["bound"] = lv.bound;
        l["bound_ok"] = lv.bound_ok;
        json lips = json::array();
        for (const auto& [rr, c] : lv.lipschitz) {
            lips.push_back({{"r", rr}, {"c", c}});
        }
        l["lipschitz"] = std::move(lips);
        json mods = json::array();
        for (const auto& [rr, dd, c] : lv.modulus) {
            mods.push_back({{"r", rr}, {"delta", dd}, {"c", c}});
        }
        l["modulus"] = std::move(mods);
        l["boundary_delta"] = lv.boundary_delta;
        l["boundary_attainment"] = lv.boundary_attainment;
        if (lv.exact_error) {
            l["exact_error"] = *lv.exact_error;
        }
        if (lv.cauchy) {
            l["cauchy"] = *lv.cauchy;
        }
        if (!lv.failure.empty()) {
            l["failure"] = lv.failure;
        }
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    return j;
}

std::string convergence_to_csv(const euclid::ConvergenceReport& r) {
    std::string out =
        "eps,h,samples,w_hops,residual,iterations,converged,sup_u,bound,bound_ok";
    if (!r.levels.empty()) {
        for (const auto& [rr, c] : r.levels.front().lipschitz) {
            out += ",lipschitz_r=" + format_double(rr);
        }
        for (const auto& [rr, dd, c] : r.levels.front().modulus) {
            out += ",modulus_r=" + format_double(rr) + "_d=" + format_double(dd / r.levels.front().eps) + "eps";
        }
    }
    out += ",boundary_delta,boundary_attainment,exact_error,cauchy,failure\n";
    for (const auto& lv : r.levels) {
        out += format_double(lv.eps);
        out += ',' + format_double(lv.h);
        out += ',' + std::to_string(lv.samples);
        out += ',' + std::to_string(lv.w_hops);
        out += ',' + format_double(lv.residual);
        out += ',' + std::to_string(lv.iterations);
        out += lv.converged ? ",1" : ",0";
        out += ',' + format_double(lv.sup_u);
        out += ',' + format_double(lv.bound);
        out += lv.bound_ok ? ",1" : ",0";
        for (const auto& [rr, c] : lv.lipschitz) {
            out += ',' + format_double(c);
        }
        for (const auto& [rr, dd, c] : lv.modulus) {
            out += ',' + format_double(c);
        }
        out += ',' + format_double(lv.boundary_delta);
        out += ',' + format_double(lv.boundary_attainment);
        out += ',';
        if (lv.exact_error) {
            out += format_double(*lv.exact_error);
        }
        out += ',';
        if (lv.cauchy) {
            out += format_double(*lv.cauchy);
        }
        out += ',';
        out += lv.failure;
        out += '\n';
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

json make_manifest(const std::string& command, const std::vector<std::string>& args,
                   std::string_view input_bytes, std::uint64_t seed, bool has_seed) {
    json j;
    j["command"] = command;
    j["args"] = args;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(input_bytes)));
    j["input_fnv1a64"] = buf;
    if (has_seed) {
        j["seed"] = seed;
    }
    j["version"] = kToolVersion;
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << content;
}

}  // namespace io
}  // namespace ilap
