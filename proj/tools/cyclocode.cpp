#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cyclocode/class_graph.hpp"
#include "cyclocode/code.hpp"
#include "cyclocode/concentration.hpp"
#include "cyclocode/errors.hpp"
#include "cyclocode/is_solver.hpp"
#include "cyclocode/pipeline.hpp"
#include "cyclocode/report.hpp"
#include "cyclocode/volume.hpp"

using namespace cyclocode;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCapacity = 3 };

struct Options {
    std::optional<std::size_t> n;
    int q = 2;
    std::optional<std::size_t> d;
    std::optional<std::size_t> weight;
    std::optional<double> eps;
    std::optional<double> tau;
    std::optional<double> p;
    std::optional<std::size_t> lambda;
    std::optional<std::size_t> kappa;
    std::optional<std::size_t> t;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::optional<std::uint64_t> budget;
    std::optional<std::string> out;
    std::string in;
    std::string format = "text";
    std::string solver = "gv-greedy";
    std::size_t restarts = 8;
    std::uint64_t samples = 100000;
    std::string mode = "uniform";
    std::string kind;
    bool per_vertex = false;
    std::size_t exact_limit = 0;
};

std::size_t need(const std::optional<std::size_t>& v, const char* flag) {
    if (!v) throw DomainError(std::string("missing required flag ") + flag);
    return *v;
}

double need(const std::optional<double>& v, const char* flag) {
    if (!v) throw DomainError(std::string("missing required flag ") + flag);
    return *v;
}

template <class T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

class Clock {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

OutputFormat format_of(const Options& o) { return o.format == "machine" ? OutputFormat::Machine : OutputFormat::Text; }

void emit(const Options& o, const std::string& table, const RunManifest& manifest, Json body) {
    Json doc;
    doc["manifest"] = to_json(manifest);
    for (auto& [key, value] : body.items()) doc[key] = value;
    std::cout << render(format_of(o), table, doc);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << text;
}

std::string row(const std::string& key, const std::string& value) {
    std::ostringstream s;
    s << std::left << std::setw(28) << key << value << '\n';
    return s.str();
}

std::string num(double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
}

std::string verdict_table(const Verdict& v) {
    std::string t = row("verdict", v.pass ? "PASS" : "FAIL (" + v.failed_check + ")");
    t += row("words", std::to_string(v.word_count));
    t += row("classes", std::to_string(v.class_count));
    if (v.min_distance) t += row("min distance", std::to_string(*v.min_distance));
    if (v.witness) {
        std::string words;
        for (const Word& w : v.witness->words) words += (words.empty() ? "" : " ") + w.to_string();
        t += row("witness", words);
        if (v.witness->shift) t += row("witness shift", std::to_string(*v.witness->shift));
        if (v.witness->length) t += row("witness length", std::to_string(*v.witness->length));
        if (v.witness->distance) t += row("witness distance", std::to_string(*v.witness->distance));
        t += row("witness detail", v.witness->detail);
    }
    for (const auto& w : v.warnings) t += row("warning", w);
    return t;
}

// ---- verbs -----------------------------------------------------------------

int cmd_bounds(const Options& o) {
    Clock clock;
    BoundParams bp;
    bp.n = need(o.n, "--n");
    bp.q = o.q;
    bp.d = o.d;
    bp.w = o.weight;
    bp.lambda = o.lambda;
    bp.kappa = o.kappa;
    bp.eps = o.eps;
    bp.tau = o.tau;
    bp.p = o.p;
    const BoundReport report = evaluate_bounds(bp);
    RunManifest m{"bounds", {{"n", bp.n}, {"q", bp.q}, {"d", opt(o.d)}, {"weight", opt(o.weight)}, {"lambda", opt(o.lambda)},
                             {"kappa", opt(o.kappa)}, {"eps", opt(o.eps)}, {"tau", opt(o.tau)}, {"p", opt(o.p)}}};
    m.elapsed_ms = clock.elapsed_ms();
    emit(o, to_key_value(report), m, {{"bounds", to_json(report)}});
    return kPass;
}

SolverConfig solver_config(const Options& o) {
    SolverConfig c;
    c.strategy = parse_strategy(o.solver);
    c.seed = o.seed;
    c.restarts = o.restarts;
    c.threads = o.threads;
    return c;
}

int cmd_construct(const Options& o) {
    Clock clock;
    ConstructParams cp;
    cp.n = need(o.n, "--n");
    cp.q = o.q;
    cp.d = need(o.d, "--d");
    cp.weight = o.weight;
    cp.eps = o.eps;
    cp.tau = o.tau;
    cp.solver = solver_config(o);
    const std::uint64_t budget = o.budget.value_or(budget_from_env(kDefaultWorkBudget));
    cp.graph_budget.max_work = budget;
    cp.graph_budget.threads = o.threads;
    cp.verify.budget = budget;
    cp.verify.threads = o.threads;
    cp.sparsity_budget = budget;
    cp.exact_limit = o.exact_limit;
    const ConstructResult r = construct_code(cp);
    if (o.out) write_file(*o.out, write_code(r.code));

    std::string t;
    t += row("kind", to_string(r.code.kind));
    t += row("n q d", std::to_string(cp.n) + " " + std::to_string(cp.q) + " " + std::to_string(cp.d));
    if (cp.weight) t += row("weight", std::to_string(*cp.weight));
    t += row("|V|", std::to_string(r.degrees.vertex_count));
    t += row("edges", std::to_string(r.degrees.edge_count));
    t += row("max degree", std::to_string(r.degrees.max_degree));
    t += row("D", r.degrees.degree_bound.str());
    if (r.sparsity) t += row("K_hat", num(r.sparsity->k_hat));
    t += row("solver", to_string(cp.solver.strategy));
    t += row("independent set", std::to_string(r.solve.size));
    t += row("greedy floor", num(r.solve.greedy_floor));
    if (r.solve.sparsity_reference) t += row("local sparsity reference", num(*r.solve.sparsity_reference));
    if (r.solve.exact_size) t += row("exact independence number", std::to_string(*r.solve.exact_size));
    t += row("M", std::to_string(r.code.size()));
    t += verdict_table(r.verdict);
    for (const auto& note : r.notes) t += row("note", note);
    if (r.bounds) t += "\n" + to_key_value(*r.bounds);
    if (o.out) t += row("written", *o.out);

    RunManifest m{"construct", {{"n", cp.n}, {"q", cp.q}, {"d", cp.d}, {"weight", opt(o.weight)}, {"eps", opt(o.eps)},
                                {"tau", opt(o.tau)}, {"solver", o.solver}, {"restarts", o.restarts}, {"threads", o.threads},
                                {"budget", budget}, {"out", opt(o.out)}}};
    m.seed = o.seed;
    m.elapsed_ms = clock.elapsed_ms();
    emit(o, t, m, {{"construct", to_json(r)}});
    return r.verdict.pass ? kPass : kFail;
}

int cmd_verify(const Options& o) {
    Clock clock;
    const CodeArtifact code = read_code(read_file(o.in));
    VerifyOptions vo;
    vo.budget = o.budget.value_or(budget_from_env(kDefaultVerifyBudget));
    vo.threads = o.threads;
    Verdict v = verify_artifact(code, vo);
    const auto expect = [&](const char* what, bool ok) {
        if (v.pass && !ok) {
            v.pass = false;
            v.failed_check = "header";
            v.witness = Witness{{}, {}, {}, {}, std::string("header ") + what + " differs from the expected value"};
        }
    };
    if (!o.kind.empty()) expect("kind", parse_kind(o.kind) == code.kind);
    if (o.n) expect("n", *o.n == code.n);
    if (o.d) expect("d", *o.d <= code.d);
    if (o.weight) expect("w", code.weight == o.weight);
    if (o.lambda) expect("lambda", code.lambda && *code.lambda <= *o.lambda);
    if (o.kappa) expect("kappa", code.kappa && *code.kappa <= *o.kappa);

    std::string t = row("file", o.in) + row("header", to_string(code.kind) + " n=" + std::to_string(code.n) + " q=" +
                                                          std::to_string(code.q) + " d=" + std::to_string(code.d));
    t += verdict_table(v);
    RunManifest m{"verify", {{"in", o.in}, {"kind", o.kind.empty() ? Json(nullptr) : Json(o.kind)}, {"n", opt(o.n)},
                             {"d", opt(o.d)}, {"weight", opt(o.weight)}, {"lambda", opt(o.lambda)}, {"kappa", opt(o.kappa)}}};
    m.elapsed_ms = clock.elapsed_ms();
    emit(o, t, m, {{"code", to_json(code)}, {"verdict", to_json(v)}});
    return v.pass ? kPass : kFail;
}

int cmd_fhs(const Options& o) {
    Clock clock;
    const CodeArtifact hcc = read_code(read_file(o.in));
    VerifyOptions vo;
    vo.budget = o.budget.value_or(budget_from_env(kDefaultVerifyBudget));
    vo.threads = o.threads;
    const FhsResult r = derive_fhs(hcc, vo);
    if (o.out) write_file(*o.out, write_code(r.fhs));
    std::string t = row("sequences", std::to_string(r.fhs.size()));
    t += row("lambda (n - d)", std::to_string(*r.fhs.lambda));
    if (r.correlations.max_auto) t += row("max auto correlation", std::to_string(*r.correlations.max_auto));
    if (r.correlations.max_cross) t += row("max cross correlation", std::to_string(*r.correlations.max_cross));
    t += row("lambda achieved", std::to_string(r.correlations.lambda_achieved));
    if (o.out) t += row("written", *o.out);
    RunManifest m{"fhs", {{"in", o.in}, {"out", opt(o.out)}}};
    m.elapsed_ms = clock.elapsed_ms();
    emit(o, t, m, {{"code", to_json(r.fhs)}, {"correlations", to_json(r.correlations)}});
    return kPass;
}

int cmd_wmuc(const Options& o) {
    Clock clock;
    const CodeArtifact hcc = read_code(read_file(o.in));
    VerifyOptions vo;
    vo.budget = o.budget.value_or(budget_from_env(kDefaultVerifyBudget));
    vo.threads = o.threads;
    const std::size_t kappa = o.kappa.value_or(hcc.d <= hcc.n ? hcc.n - hcc.d + 1 : 1);
    const CodeArtifact w = derive_wmuc(hcc, kappa, vo);
    const Verdict v = verify_artifact(w, vo);
    if (o.out) write_file(*o.out, write_code(w));
    std::string t = row("kappa", std::to_string(kappa)) + row("codewords", std::to_string(w.size()));
    t += verdict_table(v);
    if (o.out) t += row("written", *o.out);
    RunManifest m{"wmuc", {{"in", o.in}, {"kappa", kappa}, {"out", opt(o.out)}}};
    m.elapsed_ms = clock.elapsed_ms();
    emit(o, t, m, {{"code", to_json(w)}, {"verdict", to_json(v)}});
    return v.pass ? kPass : kFail;
}

int cmd_graph_stats(const Options& o) {
    Clock clock;
    GraphParams gp;
    gp.n = need(o.n, "--n");
    gp.q = o.q;
    gp.d = need(o.d, "--d");
    gp.mode = o.weight ? GraphMode::Ooc : GraphMode::Hcc;
    gp.weight = o.weight;
    GraphBudget gb;
    gb.max_work = o.budget.value_or(budget_from_env(kDefaultWorkBudget));
    gb.threads = o.threads;
    const ClassGraph g = build_graph(gp, gb);
    const DegreeStats s = degree_stats(g);
    std::string t = row("|V|", std::to_string(s.vertex_count)) + row("edges", std::to_string(s.edge_count));
    t += row("max degree", std::to_string(s.max_degree)) + row("mean degree", num(s.mean_degree));
    t += row("D", s.degree_bound.str());
    for (const auto& [deg, count] : s.histogram) t += row("degree " + std::to_string(deg), std::to_string(count));
    RunManifest m{"graph-stats", {{"n", gp.n}, {"q", gp.q}, {"d", gp.d}, {"weight", opt(o.weight)}, {"budget", gb.max_work}}};
    m.elapsed_ms = clock.elapsed_ms();
    Json stats = to_json(s);
    stats["neighbor_mode"] = g.built_with == NeighborMode::Ball ? "ball" : "pairwise";
    emit(o, t, m, {{"graph", stats}});
    return kPass;
}

int cmd_experiment(const std::string& kind, const Options& o) {
    Clock clock;
    RunManifest m;
    m.command = "experiment " + kind;
    const std::uint64_t budget = o.budget.value_or(budget_from_env(kDefaultEnumerationBudget));
    std::string t;
    Json body;
    int status = kPass;
    if (kind == "setA") {
        const std::size_t n = need(o.n, "--n");
        const double eps = need(o.eps, "--eps");
        const SetCount c = exact_set_A(n, o.q, eps, budget);
        m.params = {{"n", n}, {"q", o.q}, {"eps", eps}, {"budget", budget}};
        t = row("|A|", std::to_string(c.count)) + row("q^n", std::to_string(c.total)) + row("threshold", num(c.threshold));
        t += row("bound", format_real(c.bound)) + row("vacuous", c.vacuous ? "yes" : "no") + row("holds", c.holds ? "yes" : "no");
        body["set"] = to_json(c);
        status = c.holds ? kPass : kFail;
    } else if (kind == "setB") {
        const std::size_t n = need(o.n, "--n");
        const double p = o.p.value_or(0.5);
        const double eps = need(o.eps, "--eps");
        const SetCount c = exact_set_B(n, p, eps, budget);
        m.params = {{"n", n}, {"p", p}, {"eps", eps}, {"budget", budget}};
        t = row("|B|", std::to_string(c.count)) + row("C(n,pn)", std::to_string(c.total)) + row("threshold", num(c.threshold));
        t += row("bound", format_real(c.bound)) + row("vacuous", c.vacuous ? "yes" : "no") + row("holds", c.holds ? "yes" : "no");
        body["set"] = to_json(c);
        status = c.holds ? kPass : kFail;
    } else if (kind == "mc-tail") {
        const std::size_t n = need(o.n, "--n");
        const double eps = need(o.eps, "--eps");
        SamplingMode mode;
        double theta = 0;
        if (o.mode == "uniform") {
            theta = set_A_threshold(n, o.q, eps);
        } else if (o.mode == "bernoulli" || o.mode == "weight-slice") {
            const double p = o.p.value_or(0.5);
            theta = set_B_threshold(n, p, eps);
            mode = o.mode == "bernoulli" ? SamplingMode::bernoulli(p) : SamplingMode::weight_slice(integral_weight(n, p));
        } else {
            throw DomainError("unknown sampling mode '" + o.mode + "'");
        }
        const TailEstimate e = mc_tail(n, o.q, theta, o.samples, o.seed, mode, o.threads);
        m.params = {{"n", n}, {"q", o.q}, {"eps", eps}, {"p", opt(o.p)}, {"mode", o.mode}, {"samples", o.samples}};
        m.seed = o.seed;
        m.generator = e.generator;
        t = row("threshold", num(e.threshold)) + row("hits", std::to_string(e.hits)) + row("p_hat", num(e.p_hat));
        t += row("std error", num(e.std_error));
        body["tail"] = to_json(e);
        if (e.union_bound) {
            const bool consistent = e.p_hat <= *e.union_bound + 3 * e.std_error;
            t += row("union bound", num(*e.union_bound)) + row("consistent", consistent ? "yes" : "no");
            body["consistent"] = consistent;
            status = consistent ? kPass : kFail;
        } else {
            t += row("union bound", "n/a (threshold not below the mean)");
            body["consistent"] = nullptr;
        }
    } else if (kind == "intersection-decay") {
        const std::size_t n = need(o.n, "--n");
        const std::size_t radius = need(o.t, "--t");
        const DecayTable table = intersection_decay_table(n, o.q, radius, o.weight, budget);
        m.params = {{"n", n}, {"q", o.q}, {"t", radius}, {"weight", opt(o.weight)}, {"budget", budget}};
        t = row("volume", table.volume.str());
        for (const auto& r : table.rows) {
            t += row("separation " + std::to_string(r.separation), r.intersection.str() + "  ratio " + format_rational(r.ratio));
        }
        t += row("nonincreasing", table.nonincreasing ? "yes" : "no");
        body["decay"] = to_json(table);
    } else if (kind == "sparsity") {
        GraphParams gp;
        gp.n = need(o.n, "--n");
        gp.q = o.q;
        gp.d = need(o.d, "--d");
        gp.mode = o.weight ? GraphMode::Ooc : GraphMode::Hcc;
        gp.weight = o.weight;
        GraphBudget gb;
        gb.max_work = o.budget.value_or(budget_from_env(kDefaultWorkBudget));
        gb.threads = o.threads;
        const ClassGraph g = build_graph(gp, gb);
        const SparsityDiagnostics s = sparsity_diagnostics(g, o.tau, gb.max_work, gb.threads);
        m.params = {{"n", gp.n}, {"q", gp.q}, {"d", gp.d}, {"weight", opt(o.weight)}, {"tau", opt(o.tau)}};
        t = row("|V|", std::to_string(g.vertices.size())) + row("tau", num(s.tau)) + row("split", num(s.split));
        t += row("D", num(s.degree_bound)) + row("max e(N(v))", std::to_string(s.max_neighborhood_edges));
        t += row("K_hat", num(s.k_hat)) + row("max |S|", std::to_string(s.max_s));
        body["sparsity"] = to_json(s, o.per_vertex);
    } else {
        throw DomainError("unknown experiment '" + kind + "'");
    }
    m.elapsed_ms = clock.elapsed_ms();
    emit(o, t, m, body);
    return status;
}

void add_common(CLI::App* app, Options& o) {
    app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    app->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    app->add_option("--budget", o.budget, "Work budget (overrides CYCLOCODE_BUDGET)");
}

void add_shape(CLI::App* app, Options& o) {
    app->add_option("--n", o.n, "Code length");
    app->add_option("--q", o.q, "Alphabet size")->check(CLI::Range(2, kMaxAlphabet));
    app->add_option("--d", o.d, "Minimum distance");
    app->add_option("--weight", o.weight, "Constant weight (binary)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclic hopping codes: bounds, constructions, verification and experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());
    Options o;

    auto* bounds = app.add_subcommand("bounds", "Evaluate the bound table");
    add_shape(bounds, o);
    add_common(bounds, o);
    bounds->add_option("--eps", o.eps);
    bounds->add_option("--tau", o.tau);
    bounds->add_option("--p", o.p);
    bounds->add_option("--lambda", o.lambda);
    bounds->add_option("--kappa", o.kappa);

    auto* construct = app.add_subcommand("construct", "Build the class graph, solve, assemble and verify a code");
    add_shape(construct, o);
    add_common(construct, o);
    construct->add_option("--eps", o.eps);
    construct->add_option("--tau", o.tau);
    construct->add_option("--seed", o.seed);
    construct->add_option("--solver", o.solver)->check(CLI::IsMember({"gv-greedy", "min-degree-greedy", "random-restart"}));
    construct->add_option("--restarts", o.restarts)->check(CLI::PositiveNumber);
    construct->add_option("--exact-limit", o.exact_limit, "Compare with the exact independence number up to this many vertices");
    construct->add_option("--out", o.out, "Code file to write");

    auto* verify = app.add_subcommand("verify", "Verify a code file");
    verify->add_option("--in,in", o.in, "Code file")->required();
    verify->add_option("--kind", o.kind, "Expected kind")->check(CLI::IsMember({"HCC", "OOC", "FHS", "WMUC"}));
    verify->add_option("--n", o.n);
    verify->add_option("--d", o.d, "Expected minimum distance (header may claim more)");
    verify->add_option("--weight", o.weight);
    verify->add_option("--lambda", o.lambda);
    verify->add_option("--kappa", o.kappa);
    add_common(verify, o);

    auto* fhs = app.add_subcommand("fhs", "Derive frequency hopping sequences from an HCC file");
    fhs->add_option("--in,in", o.in, "HCC code file")->required();
    fhs->add_option("--out", o.out);
    add_common(fhs, o);

    auto* wmuc = app.add_subcommand("wmuc", "Derive a weakly mutually uncorrelated code from an HCC file");
    wmuc->add_option("--in,in", o.in, "HCC code file")->required();
    wmuc->add_option("--kappa", o.kappa, "Defaults to n - d + 1");
    wmuc->add_option("--out", o.out);
    add_common(wmuc, o);

    auto* stats = app.add_subcommand("graph-stats", "Degree statistics of a class graph");
    add_shape(stats, o);
    add_common(stats, o);

    std::string experiment_kind;
    auto* experiment = app.add_subcommand("experiment", "Exact counts, Monte Carlo tails, decay tables, sparsity");
    experiment->add_option("kind", experiment_kind)
        ->required()
        ->check(CLI::IsMember({"setA", "setB", "mc-tail", "intersection-decay", "sparsity"}));
    add_shape(experiment, o);
    add_common(experiment, o);
    experiment->add_option("--eps", o.eps);
    experiment->add_option("--tau", o.tau);
    experiment->add_option("--p", o.p);
    experiment->add_option("--t", o.t, "Ball radius");
    experiment->add_option("--seed", o.seed);
    experiment->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
    experiment->add_option("--mode", o.mode)->check(CLI::IsMember({"uniform", "bernoulli", "weight-slice"}));
    experiment->add_flag("--per-vertex", o.per_vertex, "Include per-vertex sparsity rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*bounds) return cmd_bounds(o);
        if (*construct) return cmd_construct(o);
        if (*verify) return cmd_verify(o);
        if (*fhs) return cmd_fhs(o);
        if (*wmuc) return cmd_wmuc(o);
        if (*stats) return cmd_graph_stats(o);
        if (*experiment) return cmd_experiment(experiment_kind, o);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kCapacity;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const ContractViolation& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kFail;
    } catch (const Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
