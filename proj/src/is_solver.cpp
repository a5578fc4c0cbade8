#include "cyclocode/is_solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "cyclocode/concentration.hpp"
#include "cyclocode/errors.hpp"
#include "cyclocode/packed.hpp"
#include "cyclocode/volume.hpp"

namespace cyclocode {

std::string to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::GvGreedy: return "gv-greedy";
        case Strategy::MinDegreeGreedy: return "min-degree-greedy";
        case Strategy::RandomRestart: return "random-restart";
    }
    return "unknown";
}

Strategy parse_strategy(const std::string& text) {
    if (text == "gv-greedy") return Strategy::GvGreedy;
    if (text == "min-degree-greedy") return Strategy::MinDegreeGreedy;
    if (text == "random-restart") return Strategy::RandomRestart;
    throw DomainError("unknown solver strategy '" + text + "'");
}

namespace {

VertexSet greedy_in_order(const AdjacencyGraph& graph, const std::vector<std::uint32_t>& order) {
    std::vector<char> blocked(graph.vertex_count(), 0);
    VertexSet chosen;
    for (std::uint32_t v : order) {
        if (blocked[v]) continue;
        chosen.push_back(v);
        blocked[v] = 1;
        for (std::uint32_t u : graph.neighbors(v)) blocked[u] = 1;
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

VertexSet min_degree_greedy(const AdjacencyGraph& graph) {
    const std::size_t count = graph.vertex_count();
    std::vector<std::size_t> degree(count);
    std::vector<char> removed(count, 0);
    std::set<std::pair<std::size_t, std::uint32_t>> queue;
    for (std::uint32_t v = 0; v < count; ++v) {
        degree[v] = graph.degree(v);
        queue.emplace(degree[v], v);
    }
    const auto remove = [&](std::uint32_t v) {
        removed[v] = 1;
        queue.erase({degree[v], v});
    };
    VertexSet chosen;
    while (!queue.empty()) {
        const std::uint32_t v = queue.begin()->second;
        chosen.push_back(v);
        remove(v);
        std::vector<std::uint32_t> dropped;
        for (std::uint32_t u : graph.neighbors(v)) {
            if (removed[u]) continue;
            remove(u);
            dropped.push_back(u);
        }
        for (std::uint32_t u : dropped) {
            for (std::uint32_t w : graph.neighbors(u)) {
                if (removed[w]) continue;
                queue.erase({degree[w], w});
                --degree[w];
                queue.emplace(degree[w], w);
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

bool better(const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

VertexSet random_restart(const AdjacencyGraph& graph, const SolverConfig& config) {
    if (config.restarts < 1) throw DomainError("random-restart needs at least one restart");
    std::vector<std::uint32_t> identity(graph.vertex_count());
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<VertexSet> results(config.restarts);
    const auto pass = [&](std::size_t r) {
        std::vector<std::uint32_t> order = identity;
        std::mt19937_64 rng(derive_seed(config.seed, r));
        std::shuffle(order.begin(), order.end(), rng);
        results[r] = greedy_in_order(graph, order);
    };
    const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(config.threads, config.restarts)));
    if (workers == 1) {
        for (std::size_t r = 0; r < config.restarts; ++r) pass(r);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < config.restarts; r += workers) pass(r);
            });
        }
    }
    VertexSet best = greedy_in_order(graph, identity);
    for (const VertexSet& candidate : results) {
        if (better(candidate, best)) best = candidate;
    }
    return best;
}

class ExactSolver {
public:
    explicit ExactSolver(const AdjacencyGraph& graph) : adj_(graph.vertex_count(), 0) {
        for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
            for (std::uint32_t u : graph.neighbors(v)) adj_[v] |= std::uint64_t{1} << u;
        }
    }

    std::uint64_t solve() {
        const std::size_t n = adj_.size();
        const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        search(all, 0);
        return best_;
    }

private:
    void search(std::uint64_t candidates, std::uint64_t current) {
        if (std::popcount(current) + std::popcount(candidates) <= std::popcount(best_) && best_count_set_) return;
        if (candidates == 0) {
            best_ = current;
            best_count_set_ = true;
            return;
        }
        int low_vertex = -1;
        int low_degree = 65;
        int high_vertex = -1;
        int high_degree = -1;
        for (std::uint64_t rest = candidates; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const int deg = std::popcount(adj_[v] & candidates);
            if (deg < low_degree) {
                low_degree = deg;
                low_vertex = v;
            }
            if (deg > high_degree) {
                high_degree = deg;
                high_vertex = v;
            }
        }
        // A vertex of degree <= 1 belongs to some maximum independent set of the remaining graph.
        if (low_degree <= 1) {
            const std::uint64_t bit = std::uint64_t{1} << low_vertex;
            search(candidates & ~bit & ~adj_[low_vertex], current | bit);
            return;
        }
        const std::uint64_t bit = std::uint64_t{1} << high_vertex;
        search(candidates & ~bit & ~adj_[high_vertex], current | bit);
        search(candidates & ~bit, current);
    }

    std::vector<std::uint64_t> adj_;
    std::uint64_t best_ = 0;
    bool best_count_set_ = false;
};

}  // namespace

VertexSet greedy_independent_set(const AdjacencyGraph& graph, const SolverConfig& config) {
    switch (config.strategy) {
        case Strategy::GvGreedy: {
            std::vector<std::uint32_t> order(graph.vertex_count());
            std::iota(order.begin(), order.end(), 0);
            return greedy_in_order(graph, order);
        }
        case Strategy::MinDegreeGreedy: return min_degree_greedy(graph);
        case Strategy::RandomRestart: return random_restart(graph, config);
    }
    throw DomainError("unknown solver strategy");
}

VertexSet exact_mis(const AdjacencyGraph& graph, std::size_t limit) {
    limit = std::min<std::size_t>(limit, 64);
    if (graph.vertex_count() > limit) throw CapacityError("exact independent set", graph.vertex_count(), limit);
    const std::uint64_t mask = ExactSolver(graph).solve();
    VertexSet out;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) out.push_back(static_cast<std::uint32_t>(std::countr_zero(rest)));
    return out;
}

bool is_independent(const AdjacencyGraph& graph, const VertexSet& set) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            if (graph.adjacent(set[i], set[j])) return false;
        }
    }
    return true;
}

bool is_maximal(const AdjacencyGraph& graph, const VertexSet& set) {
    std::vector<char> covered(graph.vertex_count(), 0);
    for (std::uint32_t v : set) {
        covered[v] = 1;
        for (std::uint32_t u : graph.neighbors(v)) covered[u] = 1;
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

SolveReport solve_report(const ClassGraph& graph, const SolverConfig& config, std::optional<double> k_hat,
                         std::optional<std::size_t> exact_limit) {
    const AdjacencyGraph& g = graph.adjacency;
    SolveReport report;
    report.set = greedy_independent_set(g, config);
    report.size = report.set.size();
    report.vertex_count = g.vertex_count();
    report.max_degree = g.max_degree();
    report.greedy_floor = static_cast<double>(report.vertex_count) / static_cast<double>(report.max_degree + 1);

    std::vector<char> member(g.vertex_count(), 0);
    for (std::uint32_t v : report.set) member[v] = 1;
    for (std::uint32_t v : report.set) {
        for (std::uint32_t u : g.neighbors(v)) {
            if (member[u]) throw ContractViolation("solver returned a non-independent set");
        }
    }
    if (!is_maximal(g, report.set)) throw ContractViolation("solver returned a non-maximal set");
    if (report.size * (report.max_degree + 1) < report.vertex_count) throw ContractViolation("solver fell below the greedy floor");

    if (k_hat && report.vertex_count > 0) {
        const double d = to_double(Rational(graph.degree_bound()));
        if (d >= 1) report.sparsity_reference = independence_lower_bound(static_cast<double>(report.vertex_count), d,
                                                                    std::clamp(*k_hat, 1.0, d * d + 1));
    }
    if (exact_limit && report.vertex_count <= *exact_limit) {
        report.exact_size = exact_mis(g, *exact_limit).size();
        if (report.size > *report.exact_size) throw ContractViolation("solver exceeded the exact independence number");
    }
    return report;
}

VertexSet gv_greedy_streamed(const std::vector<CyclicClass>& vertices, std::size_t n, int q, std::size_t d) {
    VertexSet kept;
    if (vertices.empty()) return kept;
    if (!PackedCodec::fits(n, q)) {
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            const bool free = std::all_of(kept.begin(), kept.end(),
                                          [&](std::uint32_t u) { return class_distance(vertices[u], vertices[v]) >= d; });
            if (free) kept.push_back(static_cast<std::uint32_t>(v));
        }
        return kept;
    }
    const PackedCodec codec(n, q);
    std::vector<std::uint64_t> rotations;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        const std::uint64_t rep = codec.pack(vertices[v].representative);
        bool free = true;
        for (std::size_t k = 0; free && k < rotations.size(); ++k) free = codec.distance(rep, rotations[k]) >= d;
        if (!free) continue;
        kept.push_back(static_cast<std::uint32_t>(v));
        for (std::size_t i = 0; i < n; ++i) rotations.push_back(codec.rotate(rep, i));
    }
    return kept;
}

SolveReport solve_report(const DegreeScan& scan) {
    SolveReport report;
    report.set = gv_greedy_streamed(scan.vertices, scan.params.n, scan.params.q, scan.params.d);
    report.size = report.set.size();
    report.vertex_count = scan.vertices.size();
    for (std::uint32_t deg : scan.degrees) report.max_degree = std::max<std::size_t>(report.max_degree, deg);
    report.greedy_floor = static_cast<double>(report.vertex_count) / static_cast<double>(report.max_degree + 1);
    if (report.size * (report.max_degree + 1) < report.vertex_count) throw ContractViolation("solver fell below the greedy floor");
    return report;
}

}  // namespace cyclocode
