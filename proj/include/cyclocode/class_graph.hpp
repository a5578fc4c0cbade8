#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyclocode/numeric.hpp"
#include "cyclocode/word.hpp"

namespace cyclocode {

inline constexpr std::uint64_t kDefaultClassBudget = 4'000'000;
/// Default cap on the work units of a single graph build or diagnostics pass.
inline constexpr std::uint64_t kDefaultWorkBudget = 20'000'000'000ULL;
/// Default cap on stored adjacency entries (two per edge, six bytes each).
inline constexpr std::uint64_t kDefaultEdgeBudget = std::uint64_t{1} << 28;

/// Undirected simple graph in compressed adjacency form. Neighbor lists are
/// sorted ascending; vertex order is the caller's (canonical) order.
class AdjacencyGraph {
public:
    AdjacencyGraph() = default;
    /// Builds from per-vertex neighbor lists; sorts them and checks symmetry.
    explicit AdjacencyGraph(std::vector<std::vector<std::uint32_t>> lists);
    /// Takes already sorted, symmetric lists in compressed form.
    AdjacencyGraph(std::vector<std::size_t> offsets, std::vector<std::uint32_t> neighbors);
    static AdjacencyGraph from_edges(std::size_t vertex_count, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
    std::span<const std::uint32_t> neighbors(std::size_t v) const noexcept {
        return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    std::size_t degree(std::size_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    std::size_t offset(std::size_t v) const noexcept { return offsets_[v]; }
    std::size_t max_degree() const noexcept;
    bool adjacent(std::size_t u, std::size_t v) const noexcept;

private:
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> neighbors_;
};

enum class GraphMode { Hcc, Ooc };

/// How neighbors are found. Both produce identical graphs.
enum class NeighborMode {
    Auto,      ///< cheaper of the two by a cost estimate
    Pairwise,  ///< class_distance over all vertex pairs
    Ball,      ///< enumerate B(rep, d-1) and map members to their classes
};

struct GraphParams {
    std::size_t n = 0;
    int q = 2;
    std::size_t d = 1;
    GraphMode mode = GraphMode::Hcc;
    std::optional<std::size_t> weight;  ///< required for Ooc
};

struct GraphBudget {
    std::uint64_t max_classes = kDefaultClassBudget;
    std::uint64_t max_work = kDefaultWorkBudget;
    std::uint64_t max_edges = kDefaultEdgeBudget;  ///< stored adjacency entries; CapacityError "adjacency storage" beyond
    NeighborMode neighbor_mode = NeighborMode::Auto;
    unsigned threads = 1;
};

/// G_HCC / G_OOC: vertices are full-period classes with d(x) >= d (and weight
/// w for OOC); two classes are adjacent when their class distance is <= d-1.
struct ClassGraph {
    GraphParams params;
    std::vector<CyclicClass> vertices;
    AdjacencyGraph adjacency;
    /// Class distance of each adjacency entry, flat and parallel to the neighbor lists.
    std::vector<std::uint16_t> edge_distance;
    NeighborMode built_with = NeighborMode::Pairwise;

    /// D: Vol_q(n, d-1) for HCC, Vol(n, d-1; w) for OOC.
    BigInt degree_bound() const;
    std::size_t max_degree() const noexcept { return adjacency.max_degree(); }
    std::size_t edge_count() const noexcept { return adjacency.edge_count(); }
    std::span<const std::uint16_t> neighbor_distances(std::size_t v) const noexcept {
        return {edge_distance.data() + adjacency.offset(v), adjacency.degree(v)};
    }
};

/// min over rotation pairs of d(x_i, y_j), computed as min_i d(rep(a), pi_i(rep(b))).
std::size_t class_distance(const CyclicClass& a, const CyclicClass& b);
std::size_t class_distance(const Word& a, const Word& b);

/// D: Vol_q(n, d-1) for HCC, Vol(n, d-1; w) for OOC.
BigInt degree_bound(const GraphParams& params);

ClassGraph build_graph(const GraphParams& params, const GraphBudget& budget = {});

/// Vertex set and degree sequence of G without storing its edges, for graphs
/// whose adjacency does not fit the edge budget.
struct DegreeScan {
    GraphParams params;
    std::vector<CyclicClass> vertices;
    std::vector<std::uint32_t> degrees;
    NeighborMode scanned_with = NeighborMode::Pairwise;
};

DegreeScan scan_degrees(const GraphParams& params, const GraphBudget& budget = {});

struct DegreeStats {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::size_t max_degree = 0;
    double mean_degree = 0;
    std::map<std::size_t, std::size_t> histogram;  ///< degree -> vertex count
    BigInt degree_bound;
    bool within_bound = true;
};

/// Degree statistics; throws ContractViolation if the maximum degree exceeds D.
DegreeStats degree_stats(const ClassGraph& graph);
DegreeStats degree_stats(const DegreeScan& scan);

struct VertexSparsity {
    std::size_t s_size = 0;  ///< neighbors at class distance <= d - tau n / 2
    std::size_t t_size = 0;  ///< remaining neighbors
    std::uint64_t neighborhood_edges = 0;  ///< e(N(v))
};

struct SparsityDiagnostics {
    double tau = 0;
    double split = 0;  ///< d - tau n / 2
    std::vector<VertexSparsity> per_vertex;
    std::uint64_t max_neighborhood_edges = 0;
    double degree_bound = 0;  ///< D
    /// D^2 / max e(N(v)); D^2 + 1 when every neighborhood is edgeless.
    double k_hat = 0;
    std::size_t max_s = 0;
};

/// tau defaults to d / n when not given.
SparsityDiagnostics sparsity_diagnostics(const ClassGraph& graph, std::optional<double> tau = std::nullopt,
                                         std::uint64_t work_budget = kDefaultWorkBudget, unsigned threads = 1);

}  // namespace cyclocode
