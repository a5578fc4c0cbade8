#include "cyclocode/class_graph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_map>

#include "cyclocode/errors.hpp"
#include "cyclocode/packed.hpp"
#include "cyclocode/volume.hpp"
#include "detail/parallel.hpp"

namespace cyclocode {

AdjacencyGraph::AdjacencyGraph(std::vector<std::vector<std::uint32_t>> lists) {
    const std::size_t n = lists.size();
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        auto& list = lists[v];
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end()) throw ContractViolation("duplicate edge");
        for (std::uint32_t u : list) {
            if (u >= n) throw ContractViolation("neighbor index out of range");
            if (u == v) throw ContractViolation("self loop");
        }
        offsets_[v + 1] = offsets_[v] + list.size();
    }
    neighbors_.reserve(offsets_[n]);
    for (const auto& list : lists) neighbors_.insert(neighbors_.end(), list.begin(), list.end());
    for (std::size_t v = 0; v < n; ++v) {
        for (std::uint32_t u : neighbors(v)) {
            if (!adjacent(u, v)) throw ContractViolation("adjacency is not symmetric");
        }
    }
}

AdjacencyGraph::AdjacencyGraph(std::vector<std::size_t> offsets, std::vector<std::uint32_t> neighbors)
    : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {
    if (offsets_.empty() || offsets_.back() != neighbors_.size()) throw ContractViolation("malformed adjacency offsets");
}

AdjacencyGraph AdjacencyGraph::from_edges(std::size_t vertex_count,
                                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::vector<std::uint32_t>> lists(vertex_count);
    for (const auto& [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) throw ContractViolation("edge endpoint out of range");
        lists[u].push_back(v);
        lists[v].push_back(u);
    }
    return AdjacencyGraph(std::move(lists));
}

std::size_t AdjacencyGraph::max_degree() const noexcept {
    std::size_t best = 0;
    for (std::size_t v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
    return best;
}

bool AdjacencyGraph::adjacent(std::size_t u, std::size_t v) const noexcept {
    if (u >= vertex_count()) return false;
    const auto list = neighbors(u);
    return std::binary_search(list.begin(), list.end(), static_cast<std::uint32_t>(v));
}

BigInt ClassGraph::degree_bound() const { return cyclocode::degree_bound(params); }

std::size_t class_distance(const Word& a, const Word& b) {
    require_same_shape(a, b);
    const std::size_t n = a.size();
    std::size_t best = n;
    for (std::size_t i = 0; i < n && best > 0; ++i) {
        std::size_t d = 0;
        for (std::size_t j = 0; j < n && d < best; ++j) d += a[j] != b[(j + i) % n];
        best = std::min(best, d);
    }
    return best;
}

std::size_t class_distance(const CyclicClass& a, const CyclicClass& b) {
    return class_distance(a.representative, b.representative);
}

namespace {

constexpr std::uint64_t kDenseTableLimit = std::uint64_t{1} << 25;
constexpr std::uint32_t kNoVertex = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint16_t kUnset = std::numeric_limits<std::uint16_t>::max();

struct Neighbor {
    std::uint32_t vertex;
    std::uint16_t distance;
};

using NeighborLists = std::vector<std::vector<Neighbor>>;

// Saturating product for cost estimates.
std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

// Compressed adjacency under construction; entries counts both directions of each edge.
struct CsrBuilder {
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> neighbors;
    std::vector<std::uint16_t> distances;
    std::uint64_t max_entries = 0;

    void check(std::uint64_t entries) const {
        if (entries > max_entries) throw CapacityError("adjacency storage", entries, max_entries);
    }
};

// Packed rotations of every vertex representative, n per vertex.
std::vector<std::uint64_t> packed_rotations(const std::vector<CyclicClass>& vertices, const PackedCodec& codec) {
    const std::size_t n = codec.length();
    std::vector<std::uint64_t> rotations(vertices.size() * n);
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        const std::uint64_t rep = codec.pack(vertices[v].representative);
        for (std::size_t i = 0; i < n; ++i) rotations[v * n + i] = codec.rotate(rep, i);
    }
    return rotations;
}

void pairwise_neighbors(const std::vector<CyclicClass>& vertices, std::size_t n, int q, std::size_t d, unsigned threads,
                        CsrBuilder& csr) {
    const std::size_t count = vertices.size();
    NeighborLists upper(count);
    const std::size_t radius = d - 1;
    std::atomic<std::uint64_t> stored{0};
    const auto full = [&](std::size_t) { return stored.load(std::memory_order_relaxed) > csr.max_entries; };
    if (PackedCodec::fits(n, q)) {
        const PackedCodec codec(n, q);
        const std::vector<std::uint64_t> rotations = packed_rotations(vertices, codec);
        detail::run_parallel(count, threads, [&](std::size_t u) {
            if (full(u)) return;
            const std::uint64_t rep = rotations[u * n];
            for (std::size_t v = u + 1; v < count; ++v) {
                unsigned best = static_cast<unsigned>(n);
                for (std::size_t i = 0; i < n; ++i) best = std::min(best, codec.distance(rep, rotations[v * n + i]));
                if (best <= radius) upper[u].push_back({static_cast<std::uint32_t>(v), static_cast<std::uint16_t>(best)});
            }
            stored.fetch_add(2 * upper[u].size(), std::memory_order_relaxed);
        });
    } else {
        detail::run_parallel(count, threads, [&](std::size_t u) {
            if (full(u)) return;
            for (std::size_t v = u + 1; v < count; ++v) {
                const std::size_t best = class_distance(vertices[u], vertices[v]);
                if (best <= radius) upper[u].push_back({static_cast<std::uint32_t>(v), static_cast<std::uint16_t>(best)});
            }
            stored.fetch_add(2 * upper[u].size(), std::memory_order_relaxed);
        });
    }
    if (stored.load() > csr.max_entries) throw CapacityError("adjacency storage", stored.load(), csr.max_entries);
    std::vector<std::size_t> degree(count, 0);
    std::uint64_t entries = 0;
    for (std::size_t u = 0; u < count; ++u) {
        degree[u] += upper[u].size();
        for (const Neighbor& e : upper[u]) ++degree[e.vertex];
        entries += 2 * upper[u].size();
    }
    csr.check(entries);
    csr.offsets.assign(count + 1, 0);
    for (std::size_t v = 0; v < count; ++v) csr.offsets[v + 1] = csr.offsets[v] + degree[v];
    csr.neighbors.resize(entries);
    csr.distances.resize(entries);
    // Lower neighbors of v arrive in increasing order before v's own upper list, so rows stay sorted.
    std::vector<std::size_t> fill(csr.offsets.begin(), csr.offsets.end() - 1);
    for (std::size_t u = 0; u < count; ++u) {
        for (const Neighbor& e : upper[u]) {
            csr.neighbors[fill[u]] = e.vertex;
            csr.distances[fill[u]++] = e.distance;
            csr.neighbors[fill[e.vertex]] = static_cast<std::uint32_t>(u);
            csr.distances[fill[e.vertex]++] = e.distance;
        }
        std::vector<Neighbor>().swap(upper[u]);
    }
}

// Maps base-q word indices to vertex indices for every rotation of every vertex.
class RotationIndex {
public:
    RotationIndex(const std::vector<CyclicClass>& vertices, std::size_t n, const std::vector<std::uint64_t>& powers,
                  std::uint64_t space) {
        if (space <= kDenseTableLimit) {
            dense_.assign(space, kNoVertex);
        } else {
            sparse_.reserve(vertices.size() * n);
        }
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            const auto rep = vertices[v].representative.symbols();
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t index = 0;
                for (std::size_t j = 0; j < n; ++j) index += rep[(j + i) % n] * powers[j];
                if (dense_.empty()) {
                    sparse_.emplace(index, static_cast<std::uint32_t>(v));
                } else {
                    dense_[index] = static_cast<std::uint32_t>(v);
                }
            }
        }
    }

    std::uint32_t find(std::uint64_t index) const {
        if (!dense_.empty()) return dense_[index];
        const auto it = sparse_.find(index);
        return it == sparse_.end() ? kNoVertex : it->second;
    }

private:
    std::vector<std::uint32_t> dense_;
    std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
};

// Walks B(rep(v), d-1) for every vertex v and hands the sorted neighbor list of
// each vertex to `emit(v, list)` in increasing order of v.
template <class Emit>
void ball_walk(const std::vector<CyclicClass>& vertices, std::size_t n, int q, std::size_t d, unsigned threads, Emit&& emit) {
    const std::size_t count = vertices.size();
    std::vector<std::uint64_t> powers(n);
    std::uint64_t space = 1;
    for (std::size_t j = n; j-- > 0;) {
        powers[j] = space;
        space *= static_cast<std::uint64_t>(q);
    }
    const RotationIndex index(vertices, n, powers, space);
    const std::size_t radius = d - 1;

    const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));
    std::vector<std::vector<std::uint16_t>> best_by_worker(workers, std::vector<std::uint16_t>(count, kUnset));
    constexpr std::size_t kBlock = 256;
    NeighborLists block(kBlock);
    for (std::size_t first = 0; first < count; first += kBlock) {
        const std::size_t size = std::min(kBlock, count - first);
        detail::run_parallel(workers, workers, [&](std::size_t worker) {
            auto& best = best_by_worker[worker];
            std::vector<std::uint32_t> touched;
            for (std::size_t k = worker; k < size; k += workers) {
                const std::size_t v = first + k;
                const auto rep = vertices[v].representative.symbols();
                std::uint64_t center = 0;
                for (std::size_t j = 0; j < n; ++j) center += rep[j] * powers[j];
                touched.clear();
                const auto record = [&](std::uint64_t idx, std::size_t depth) {
                    const std::uint32_t u = index.find(idx);
                    if (u == kNoVertex || u == v) return;
                    if (best[u] == kUnset) {
                        touched.push_back(u);
                        best[u] = static_cast<std::uint16_t>(depth);
                    } else if (depth < best[u]) {
                        best[u] = static_cast<std::uint16_t>(depth);
                    }
                };
                // Depth-first walk over B(rep, radius), changing positions in increasing order.
                const auto walk = [&](auto&& self, std::size_t start, std::uint64_t idx, std::size_t depth) -> void {
                    record(idx, depth);
                    if (depth == radius) return;
                    for (std::size_t j = start; j < n; ++j) {
                        const std::uint64_t base = idx - rep[j] * powers[j];
                        for (int s = 0; s < q; ++s) {
                            if (s == rep[j]) continue;
                            self(self, j + 1, base + static_cast<std::uint64_t>(s) * powers[j], depth + 1);
                        }
                    }
                };
                walk(walk, 0, center, 0);
                std::sort(touched.begin(), touched.end());
                auto& out = block[k];
                out.clear();
                out.reserve(touched.size());
                for (std::uint32_t u : touched) {
                    out.push_back({u, best[u]});
                    best[u] = kUnset;
                }
            }
        });
        for (std::size_t k = 0; k < size; ++k) {
            emit(first + k, block[k]);
            std::vector<Neighbor>().swap(block[k]);
        }
    }
}

void ball_neighbors(const std::vector<CyclicClass>& vertices, std::size_t n, int q, std::size_t d, unsigned threads,
                    CsrBuilder& csr) {
    csr.offsets.assign(1, 0);
    csr.offsets.reserve(vertices.size() + 1);
    ball_walk(vertices, n, q, d, threads, [&](std::size_t, const std::vector<Neighbor>& list) {
        csr.check(csr.neighbors.size() + list.size());
        for (const Neighbor& e : list) {
            csr.neighbors.push_back(e.vertex);
            csr.distances.push_back(e.distance);
        }
        csr.offsets.push_back(csr.neighbors.size());
    });
}

// Ball walks cost far more per step than packed pairwise comparisons.
constexpr std::uint64_t kBallStepWeight = 12;

struct NeighborPlan {
    NeighborMode mode = NeighborMode::Pairwise;
    std::uint64_t cost = 0;
};

NeighborPlan plan_neighbors(std::size_t count, std::size_t n, int q, std::size_t d, const BigInt& words, const GraphBudget& budget) {
    const bool ball_possible = words <= BigInt(std::numeric_limits<std::uint64_t>::max() / 2) &&
                               power(static_cast<std::uint64_t>(q), n) <= BigInt(std::uint64_t{1} << 62);
    const std::uint64_t pairwise_cost = mul_sat(mul_sat(count, count) / 2, n);
    const std::uint64_t ball_cost =
        ball_possible ? mul_sat(count, saturate_u64(ball_volume(n, q, d - 1))) : std::numeric_limits<std::uint64_t>::max();
    NeighborPlan plan;
    plan.mode = budget.neighbor_mode;
    if (plan.mode == NeighborMode::Auto) {
        plan.mode = mul_sat(ball_cost, kBallStepWeight) < pairwise_cost ? NeighborMode::Ball : NeighborMode::Pairwise;
    }
    if (plan.mode == NeighborMode::Ball && !ball_possible) throw UnsupportedError("ball neighbor mode needs q^n < 2^62");
    plan.cost = plan.mode == NeighborMode::Ball ? ball_cost : pairwise_cost;
    if (plan.cost > budget.max_work) throw CapacityError("graph edges", plan.cost, budget.max_work);
    return plan;
}

struct VertexScan {
    GraphParams params;
    std::vector<CyclicClass> vertices;
    BigInt words;
};

VertexScan scan_vertices(const GraphParams& params, const GraphBudget& budget) {
    const std::size_t n = params.n;
    const int q = params.q;
    const std::size_t d = params.d;
    if (n < 2) throw DomainError("class graphs need n >= 2");
    if (q < 2 || q > kMaxAlphabet) throw DomainError("q must be in [2, 256]");
    if (d < 1) throw DomainError("d must be at least 1");
    if (d > std::numeric_limits<std::uint16_t>::max()) throw UnsupportedError("d too large");
    if (params.mode == GraphMode::Ooc) {
        if (q != 2) throw DomainError("OOC mode requires q = 2");
        if (!params.weight) throw DomainError("OOC mode requires a weight");
        if (*params.weight > n) throw DomainError("weight exceeds n");
    }
    VertexScan scan;
    scan.params = params;
    if (params.mode == GraphMode::Hcc) scan.params.weight.reset();
    if (d > n) return scan;

    scan.words = params.mode == GraphMode::Ooc ? binomial(n, *params.weight) : power(static_cast<std::uint64_t>(q), n);
    if (scan.words > budget.max_work) throw CapacityError("class enumeration", saturate_u64(scan.words), budget.max_work);
    ClassFilter filter;
    filter.full_period_only = true;
    filter.min_auto_distance = d;
    if (params.mode == GraphMode::Ooc) filter.weight = params.weight;
    std::uint64_t seen = 0;
    for_each_class(n, q, filter, [&](const CyclicClass& c) {
        if (++seen > budget.max_classes) throw CapacityError("graph vertices", seen, budget.max_classes);
        scan.vertices.push_back(c);
        return true;
    });
    if (scan.vertices.size() > kNoVertex) throw CapacityError("graph vertices", scan.vertices.size(), kNoVertex);
    return scan;
}

}  // namespace

BigInt degree_bound(const GraphParams& params) {
    if (params.d == 0) return 0;
    if (params.mode == GraphMode::Ooc) {
        const std::size_t w = params.weight.value_or(0);
        return cw_ball_volume(params.n, w, std::min(params.d - 1, 2 * w));
    }
    return ball_volume(params.n, params.q, std::min(params.d - 1, params.n));
}

ClassGraph build_graph(const GraphParams& params, const GraphBudget& budget) {
    VertexScan scan = scan_vertices(params, budget);
    ClassGraph graph;
    graph.params = scan.params;
    graph.vertices = std::move(scan.vertices);
    graph.built_with = budget.neighbor_mode == NeighborMode::Auto ? NeighborMode::Pairwise : budget.neighbor_mode;
    const std::size_t count = graph.vertices.size();
    const std::size_t n = params.n;
    const int q = params.q;
    const std::size_t d = params.d;

    CsrBuilder csr;
    csr.max_entries = budget.max_edges;
    if (d > n || d == 1 || count < 2) {
        csr.offsets.assign(count + 1, 0);
    } else {
        const NeighborPlan plan = plan_neighbors(count, n, q, d, scan.words, budget);
        graph.built_with = plan.mode;
        if (plan.mode == NeighborMode::Ball) {
            ball_neighbors(graph.vertices, n, q, d, budget.threads, csr);
        } else {
            pairwise_neighbors(graph.vertices, n, q, d, budget.threads, csr);
        }
    }
    graph.edge_distance = std::move(csr.distances);
    graph.adjacency = AdjacencyGraph(std::move(csr.offsets), std::move(csr.neighbors));
    return graph;
}

DegreeScan scan_degrees(const GraphParams& params, const GraphBudget& budget) {
    VertexScan scan = scan_vertices(params, budget);
    DegreeScan out;
    out.params = scan.params;
    out.vertices = std::move(scan.vertices);
    const std::size_t count = out.vertices.size();
    out.degrees.assign(count, 0);
    const std::size_t n = params.n;
    const int q = params.q;
    const std::size_t d = params.d;
    out.scanned_with = budget.neighbor_mode == NeighborMode::Auto ? NeighborMode::Pairwise : budget.neighbor_mode;
    if (d > n || d == 1 || count < 2) return out;

    const NeighborPlan plan = plan_neighbors(count, n, q, d, scan.words, budget);
    out.scanned_with = plan.mode;
    if (plan.mode == NeighborMode::Ball) {
        ball_walk(out.vertices, n, q, d, budget.threads, [&](std::size_t v, const std::vector<Neighbor>& list) {
            out.degrees[v] = static_cast<std::uint32_t>(list.size());
        });
        return out;
    }
    const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(budget.threads, count)));
    std::vector<std::vector<std::uint32_t>> partial(workers, std::vector<std::uint32_t>(count, 0));
    const std::size_t radius = d - 1;
    if (PackedCodec::fits(n, q)) {
        const PackedCodec codec(n, q);
        const std::vector<std::uint64_t> rotations = packed_rotations(out.vertices, codec);
        detail::run_parallel(workers, workers, [&](std::size_t worker) {
            auto& deg = partial[worker];
            for (std::size_t u = worker; u < count; u += workers) {
                const std::uint64_t rep = rotations[u * n];
                for (std::size_t v = u + 1; v < count; ++v) {
                    for (std::size_t i = 0; i < n; ++i) {
                        if (codec.distance(rep, rotations[v * n + i]) <= radius) {
                            ++deg[u];
                            ++deg[v];
                            break;
                        }
                    }
                }
            }
        });
    } else {
        detail::run_parallel(workers, workers, [&](std::size_t worker) {
            auto& deg = partial[worker];
            for (std::size_t u = worker; u < count; u += workers) {
                for (std::size_t v = u + 1; v < count; ++v) {
                    if (class_distance(out.vertices[u], out.vertices[v]) <= radius) {
                        ++deg[u];
                        ++deg[v];
                    }
                }
            }
        });
    }
    for (const auto& deg : partial) {
        for (std::size_t v = 0; v < count; ++v) out.degrees[v] += deg[v];
    }
    return out;
}

namespace {

DegreeStats stats_from(const GraphParams& params, std::size_t vertex_count, std::uint64_t degree_sum,
                       const std::function<std::size_t(std::size_t)>& degree) {
    DegreeStats stats;
    stats.vertex_count = vertex_count;
    stats.edge_count = degree_sum / 2;
    stats.degree_bound = degree_bound(params);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        const std::size_t deg = degree(v);
        ++stats.histogram[deg];
        stats.max_degree = std::max(stats.max_degree, deg);
    }
    if (vertex_count > 0) stats.mean_degree = static_cast<double>(degree_sum) / static_cast<double>(vertex_count);
    stats.within_bound = BigInt(stats.max_degree) <= stats.degree_bound;
    if (!stats.within_bound) {
        throw ContractViolation("maximum degree " + std::to_string(stats.max_degree) + " exceeds the ball volume bound " +
                                stats.degree_bound.str());
    }
    return stats;
}

}  // namespace

DegreeStats degree_stats(const ClassGraph& graph) {
    const AdjacencyGraph& g = graph.adjacency;
    return stats_from(graph.params, g.vertex_count(), 2 * static_cast<std::uint64_t>(g.edge_count()),
                      [&](std::size_t v) { return g.degree(v); });
}

DegreeStats degree_stats(const DegreeScan& scan) {
    std::uint64_t sum = 0;
    for (std::uint32_t deg : scan.degrees) sum += deg;
    return stats_from(scan.params, scan.degrees.size(), sum, [&](std::size_t v) { return scan.degrees[v]; });
}

SparsityDiagnostics sparsity_diagnostics(const ClassGraph& graph, std::optional<double> tau, std::uint64_t work_budget,
                                         unsigned threads) {
    const AdjacencyGraph& g = graph.adjacency;
    const std::size_t count = g.vertex_count();
    const double n = static_cast<double>(graph.params.n);
    SparsityDiagnostics out;
    out.tau = tau.value_or(n > 0 ? static_cast<double>(graph.params.d) / n : 0.0);
    if (!(out.tau > 0)) throw DomainError("tau must be positive");
    out.split = static_cast<double>(graph.params.d) - out.tau * n / 2;
    out.degree_bound = to_double(Rational(graph.degree_bound()));

    std::uint64_t work = 0;
    for (std::size_t v = 0; v < count; ++v) {
        for (std::uint32_t u : g.neighbors(v)) work += g.degree(u) + g.degree(v);
        if (work > work_budget) throw CapacityError("sparsity diagnostics", work, work_budget);
    }

    out.per_vertex.resize(count);
    const auto workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));
    detail::run_parallel(workers, workers, [&](std::size_t worker) {
        std::vector<char> in_neighborhood(count, 0);
        for (std::size_t v = worker; v < count; v += workers) {
            VertexSparsity& row = out.per_vertex[v];
            const auto nv = g.neighbors(v);
            const auto dist = graph.neighbor_distances(v);
            for (std::size_t k = 0; k < nv.size(); ++k) {
                if (static_cast<double>(dist[k]) <= out.split) {
                    ++row.s_size;
                } else {
                    ++row.t_size;
                }
            }
            for (std::uint32_t u : nv) in_neighborhood[u] = 1;
            std::uint64_t edges = 0;
            for (std::uint32_t u : nv) {
                const auto nu = g.neighbors(u);
                for (auto it = std::upper_bound(nu.begin(), nu.end(), u); it != nu.end(); ++it) edges += in_neighborhood[*it];
            }
            for (std::uint32_t u : nv) in_neighborhood[u] = 0;
            row.neighborhood_edges = edges;
        }
    });
    for (const VertexSparsity& row : out.per_vertex) {
        out.max_neighborhood_edges = std::max(out.max_neighborhood_edges, row.neighborhood_edges);
        out.max_s = std::max(out.max_s, row.s_size);
    }
    const double d2 = out.degree_bound * out.degree_bound;
    out.k_hat = out.max_neighborhood_edges == 0 ? d2 + 1 : d2 / static_cast<double>(out.max_neighborhood_edges);
    return out;
}

}  // namespace cyclocode
