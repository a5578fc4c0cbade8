#include "cyclocode/report.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace cyclocode {

std::string version() { return "0.1.0"; }

std::uint64_t budget_from_env(std::uint64_t fallback) {
    const char* raw = std::getenv("CYCLOCODE_BUDGET");
    if (raw == nullptr || *raw == '\0') return fallback;
    std::uint64_t value = 0;
    const char* end = raw + std::strlen(raw);
    const auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc() || ptr != end || value == 0) return fallback;
    return value;
}

namespace {

Json rational_json(const Rational& r) {
    Json j;
    j["exact"] = boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str() : r.str();
    j["approx"] = to_double(r);
    return j;
}

Json real_json(const BigFloat& v) {
    Json j;
    j["value"] = format_real(v);
    j["approx"] = v.convert_to<double>();
    return j;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const RunManifest& m) {
    Json j;
    j["command"] = m.command;
    j["params"] = m.params;
    j["seed"] = optional_json(m.seed);
    j["version"] = version();
    j["generator"] = optional_json(m.generator);
    j["timing"] = {{"elapsed_ms", m.elapsed_ms}};
    return j;
}

Json to_json(const BoundReport& report) {
    Json j;
    const auto& p = report.params;
    Json params;
    params["n"] = p.n;
    params["q"] = p.q;
    params["d"] = optional_json(p.d);
    params["w"] = optional_json(p.w);
    params["lambda"] = optional_json(p.lambda);
    params["kappa"] = optional_json(p.kappa);
    params["eps"] = optional_json(p.eps);
    params["tau"] = optional_json(p.tau);
    params["p"] = optional_json(p.p);
    j["params"] = params;
    Json rows = Json::array();
    for (const auto& e : report.entries) {
        Json row;
        row["key"] = e.key;
        row["formula"] = e.formula;
        if (e.exact) row["exact"] = rational_json(*e.exact);
        if (e.real) row["real"] = real_json(*e.real);
        row["vacuous"] = e.vacuous;
        row["note"] = e.note;
        rows.push_back(row);
    }
    j["entries"] = rows;
    Json terms = Json::array();
    for (const auto& [i, tail] : report.mcdiarmid_terms) terms.push_back({{"shift", i}, {"tail", tail}});
    j["mcdiarmid_terms"] = terms;
    return j;
}

Json to_json(const SetCount& c) {
    Json j;
    j["n"] = c.n;
    j["q"] = c.q;
    j["weight"] = optional_json(c.weight);
    j["eps"] = c.eps;
    j["threshold"] = c.threshold;
    j["count"] = c.count;
    j["total"] = c.total;
    j["bound"] = real_json(c.bound);
    j["vacuous"] = c.vacuous;
    j["holds"] = c.holds;
    return j;
}

Json to_json(const TailEstimate& e) {
    Json j;
    j["n"] = e.n;
    j["q"] = e.q;
    j["mode"] = to_string(e.mode.kind);
    if (e.mode.kind == SamplingMode::Kind::Bernoulli) j["p"] = e.mode.p;
    if (e.mode.kind == SamplingMode::Kind::WeightSlice) j["weight"] = e.mode.weight;
    j["threshold"] = e.threshold;
    j["samples"] = e.samples;
    j["seed"] = e.seed;
    j["hits"] = e.hits;
    j["p_hat"] = e.p_hat;
    j["std_error"] = e.std_error;
    j["per_shift_tail"] = optional_json(e.per_shift_tail);
    j["union_bound"] = optional_json(e.union_bound);
    j["stirling_factor"] = optional_json(e.stirling_factor);
    j["generator"] = e.generator;
    return j;
}

Json to_json(const DecayTable& t) {
    Json j;
    j["n"] = t.n;
    j["q"] = t.q;
    j["t"] = t.t;
    j["weight"] = optional_json(t.weight);
    j["volume"] = t.volume.str();
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"separation", r.separation}, {"intersection", r.intersection.str()}, {"ratio", rational_json(r.ratio)}});
    }
    j["rows"] = rows;
    j["nonincreasing"] = t.nonincreasing;
    return j;
}

Json to_json(const DegreeStats& s) {
    Json j;
    j["vertices"] = s.vertex_count;
    j["edges"] = s.edge_count;
    j["max_degree"] = s.max_degree;
    j["mean_degree"] = s.mean_degree;
    j["degree_bound"] = s.degree_bound.str();
    j["within_bound"] = s.within_bound;
    Json hist = Json::array();
    for (const auto& [deg, count] : s.histogram) hist.push_back({{"degree", deg}, {"count", count}});
    j["histogram"] = hist;
    return j;
}

Json to_json(const SparsityDiagnostics& d, bool per_vertex) {
    Json j;
    j["tau"] = d.tau;
    j["split"] = d.split;
    j["degree_bound"] = d.degree_bound;
    j["max_neighborhood_edges"] = d.max_neighborhood_edges;
    j["k_hat"] = d.k_hat;
    j["k_hat_edgeless"] = d.max_neighborhood_edges == 0;
    j["max_s"] = d.max_s;
    if (per_vertex) {
        Json rows = Json::array();
        for (const auto& v : d.per_vertex) rows.push_back({{"s", v.s_size}, {"t", v.t_size}, {"neighborhood_edges", v.neighborhood_edges}});
        j["per_vertex"] = rows;
    }
    return j;
}

Json to_json(const SolveReport& r) {
    Json j;
    j["size"] = r.size;
    j["vertices"] = r.vertex_count;
    j["max_degree"] = r.max_degree;
    j["greedy_floor"] = r.greedy_floor;
    j["sparsity_reference"] = optional_json(r.sparsity_reference);
    j["exact_size"] = optional_json(r.exact_size);
    j["set"] = r.set;
    return j;
}

Json to_json(const Witness& w) {
    Json j;
    Json words = Json::array();
    for (const Word& x : w.words) words.push_back(x.to_string());
    j["words"] = words;
    j["shift"] = optional_json(w.shift);
    j["length"] = optional_json(w.length);
    j["distance"] = optional_json(w.distance);
    j["detail"] = w.detail;
    return j;
}

Json to_json(const Verdict& v) {
    Json j;
    j["pass"] = v.pass;
    j["failed_check"] = v.failed_check;
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    j["words"] = v.word_count;
    j["classes"] = v.class_count;
    j["min_distance"] = optional_json(v.min_distance);
    j["warnings"] = v.warnings;
    return j;
}

Json to_json(const CorrelationReport& r) {
    Json j;
    j["sequences"] = r.sequences;
    j["max_auto"] = optional_json(r.max_auto);
    j["max_cross"] = optional_json(r.max_cross);
    j["lambda_achieved"] = r.lambda_achieved;
    return j;
}

Json to_json(const CodeArtifact& c, bool with_words) {
    Json j;
    j["kind"] = to_string(c.kind);
    j["n"] = c.n;
    j["q"] = c.q;
    j["d"] = c.d;
    j["weight"] = optional_json(c.weight);
    j["lambda"] = optional_json(c.lambda);
    j["kappa"] = optional_json(c.kappa);
    j["size"] = c.size();
    j["provenance"] = Json(c.provenance);
    if (with_words) {
        Json words = Json::array();
        for (const Word& w : c.words) words.push_back(w.to_string());
        j["words"] = words;
    }
    return j;
}

Json to_json(const ConstructResult& r) {
    Json j;
    j["graph"] = to_json(r.degrees);
    j["graph"]["neighbor_mode"] = r.graph.built_with == NeighborMode::Ball ? "ball" : "pairwise";
    j["graph"]["edges_stored"] = r.edges_stored;
    j["sparsity"] = r.sparsity ? to_json(*r.sparsity) : Json(nullptr);
    Json solve = to_json(r.solve);
    solve.erase("set");
    j["solver"] = solve;
    j["code"] = to_json(r.code);
    j["verdict"] = to_json(r.verdict);
    j["bounds"] = r.bounds ? to_json(*r.bounds) : Json(nullptr);
    j["notes"] = r.notes;
    return j;
}

std::string render(OutputFormat format, const std::string& table, const Json& document) {
    if (format == OutputFormat::Machine) return document.dump(2) + "\n";
    std::string out = table;
    if (!out.empty() && out.back() != '\n') out += '\n';
    out += "\n## machine\n";
    out += document.dump(2);
    out += '\n';
    return out;
}

}  // namespace cyclocode
