#include "cyclocode/pipeline.hpp"

#include "cyclocode/errors.hpp"

namespace cyclocode {

ConstructResult construct_code(const ConstructParams& params) {
    ConstructResult result;
    GraphParams gp;
    gp.n = params.n;
    gp.q = params.q;
    gp.d = params.d;
    gp.mode = params.weight ? GraphMode::Ooc : GraphMode::Hcc;
    gp.weight = params.weight;
    GraphBudget budget = params.graph_budget;
    budget.threads = std::max(budget.threads, params.solver.threads);
    try {
        result.graph = build_graph(gp, budget);
    } catch (const CapacityError& e) {
        if (e.stage() != "adjacency storage" || params.solver.strategy != Strategy::GvGreedy) throw;
        result.edges_stored = false;
        result.notes.push_back(std::string("edges not stored, gv-greedy streamed: ") + e.what());
    }

    if (!result.edges_stored) {
        DegreeScan scan = scan_degrees(gp, budget);
        result.degrees = degree_stats(scan);
        result.solve = solve_report(scan);
        result.code = assemble(scan.params, scan.vertices, result.solve.set);
        result.graph.params = scan.params;
        result.graph.built_with = scan.scanned_with;
        result.graph.vertices = std::move(scan.vertices);
        result.graph.adjacency = AdjacencyGraph(std::vector<std::vector<std::uint32_t>>(result.graph.vertices.size()));
        result.notes.push_back("sparsity diagnostics skipped: edges not stored");
    } else {
        result.degrees = degree_stats(result.graph);
        if (result.graph.vertices.empty()) result.notes.push_back("empty vertex set");

        std::optional<double> k_hat;
        if (params.sparsity && !result.graph.vertices.empty()) {
            try {
                result.sparsity = sparsity_diagnostics(result.graph, params.tau, params.sparsity_budget, params.graph_budget.threads);
                k_hat = result.sparsity->k_hat;
            } catch (const CapacityError& e) {
                result.notes.push_back(std::string("sparsity diagnostics skipped: ") + e.what());
            }
        }
        const std::optional<std::size_t> exact =
            params.exact_limit > 0 ? std::optional<std::size_t>(params.exact_limit) : std::nullopt;
        result.solve = solve_report(result.graph, params.solver, k_hat, exact);
        result.code = assemble(result.graph, result.solve.set);
    }

    auto& prov = result.code.provenance;
    prov["solver"] = to_string(params.solver.strategy);
    prov["seed"] = std::to_string(params.solver.seed);
    if (params.solver.strategy == Strategy::RandomRestart) prov["restarts"] = std::to_string(params.solver.restarts);
    prov["graph"] = gp.mode == GraphMode::Ooc ? "OOC" : "HCC";
    prov["vertices"] = std::to_string(result.graph.vertices.size());
    result.verdict = verify_artifact(result.code, params.verify);

    if (params.d <= params.n) {
        BoundParams bp;
        bp.n = params.n;
        bp.q = params.q;
        bp.d = params.d;
        if (params.weight && params.d <= 2 * *params.weight) bp.w = params.weight;
        if (params.eps && *params.eps > 0 && *params.eps < 1.0 - 1.0 / params.q) bp.eps = params.eps;
        result.bounds = evaluate_bounds(bp);
    } else {
        result.notes.push_back("bounds not evaluated: d exceeds n");
    }
    return result;
}

}  // namespace cyclocode
