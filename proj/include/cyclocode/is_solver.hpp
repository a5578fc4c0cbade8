#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclocode/class_graph.hpp"

namespace cyclocode {

inline constexpr std::size_t kDefaultExactLimit = 40;

enum class Strategy { GvGreedy, MinDegreeGreedy, RandomRestart };

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& text);

struct SolverConfig {
    Strategy strategy = Strategy::GvGreedy;
    std::uint64_t seed = 0;
    std::size_t restarts = 8;  ///< random-restart only; must be >= 1
    unsigned threads = 1;
};

/// Vertex indices in ascending order.
using VertexSet = std::vector<std::uint32_t>;

/// Maximal independent set. gv-greedy scans vertices in canonical order;
/// min-degree-greedy repeatedly takes a vertex of least remaining degree;
/// random-restart keeps the best of the gv-greedy pass and `restarts`
/// greedy passes over seeded random orders.
VertexSet greedy_independent_set(const AdjacencyGraph& graph, const SolverConfig& config = {});

/// gv-greedy without stored edges: keeps a vertex when its class distance to
/// every kept vertex is at least d. Same result as gv-greedy on the built graph.
VertexSet gv_greedy_streamed(const std::vector<CyclicClass>& vertices, std::size_t n, int q, std::size_t d);

/// Maximum independent set by branch and bound; CapacityError above `limit` vertices (at most 64).
VertexSet exact_mis(const AdjacencyGraph& graph, std::size_t limit = kDefaultExactLimit);

bool is_independent(const AdjacencyGraph& graph, const VertexSet& set);
bool is_maximal(const AdjacencyGraph& graph, const VertexSet& set);

struct SolveReport {
    VertexSet set;
    std::size_t size = 0;
    std::size_t vertex_count = 0;
    std::size_t max_degree = 0;
    double greedy_floor = 0;  ///< |V| / (max degree + 1)
    /// (|V|/D) ln(min{D, K}); reported only, never asserted.
    std::optional<double> sparsity_reference;
    std::optional<std::size_t> exact_size;
};

/// Solves and checks independence, maximality and the greedy floor (ContractViolation on failure).
/// k_hat enables the reference value; exact_limit enables the exact comparison for small graphs.
SolveReport solve_report(const ClassGraph& graph, const SolverConfig& config, std::optional<double> k_hat = std::nullopt,
                         std::optional<std::size_t> exact_limit = std::nullopt);

/// Report for a streamed gv-greedy run. Independence is left to code verification.
SolveReport solve_report(const DegreeScan& scan);

}  // namespace cyclocode
