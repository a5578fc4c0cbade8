#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclocode/class_graph.hpp"
#include "cyclocode/code.hpp"
#include "cyclocode/is_solver.hpp"
#include "cyclocode/volume.hpp"

namespace cyclocode {

struct ConstructParams {
    std::size_t n = 0;
    int q = 2;
    std::size_t d = 1;
    std::optional<std::size_t> weight;  ///< OOC mode when set
    std::optional<double> eps;          ///< adds the eps-dependent bound rows
    std::optional<double> tau;
    SolverConfig solver;
    GraphBudget graph_budget;
    VerifyOptions verify;
    bool sparsity = true;
    std::uint64_t sparsity_budget = kDefaultWorkBudget;
    std::size_t exact_limit = 0;  ///< compare with the exact independence number up to this many vertices
};

struct ConstructResult {
    ClassGraph graph;
    DegreeStats degrees;
    std::optional<SparsityDiagnostics> sparsity;
    SolveReport solve;
    CodeArtifact code;
    Verdict verdict;
    std::optional<BoundReport> bounds;
    std::vector<std::string> notes;
    bool edges_stored = true;  ///< false when the graph exceeded the edge budget and gv-greedy ran streamed
};

/// Graph, independent set, assembled code and its verification in one call.
ConstructResult construct_code(const ConstructParams& params);

}  // namespace cyclocode
