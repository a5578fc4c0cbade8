#include <doctest.h>

#include <set>

#include "cyclocode/class_graph.hpp"
#include "cyclocode/errors.hpp"
#include "cyclocode/volume.hpp"
#include "oracles.hpp"

using namespace cyclocode;

namespace {

using Lists = std::vector<std::vector<std::uint32_t>>;

oracle::Vec to_vec(const Word& w) { return oracle::Vec(w.symbols().begin(), w.symbols().end()); }

std::vector<oracle::Vec> oracle_vertices(std::size_t n, int q, std::size_t d, std::optional<std::size_t> w) {
    std::set<oracle::Vec> reps;
    for (const auto& x : oracle::all_words(n, q)) {
        if (w && oracle::weight(x) != *w) continue;
        if (oracle::distinct_rotations(x) == n && oracle::auto_dist(x) >= d) reps.insert(oracle::min_rotation(x));
    }
    return {reps.begin(), reps.end()};
}

void check_against_oracle(const GraphParams& p, bool check_edges) {
    const auto reps = oracle_vertices(p.n, p.q, p.d, p.weight);
    GraphBudget pairwise;
    pairwise.neighbor_mode = NeighborMode::Pairwise;
    GraphBudget ball;
    ball.neighbor_mode = NeighborMode::Ball;
    ball.threads = 3;
    const ClassGraph a = build_graph(p, pairwise);
    const ClassGraph b = build_graph(p, ball);
    REQUIRE(a.vertices.size() == reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) REQUIRE(to_vec(a.vertices[i].representative) == reps[i]);
    REQUIRE(b.vertices.size() == reps.size());
    CHECK(b.built_with == NeighborMode::Ball);
    for (std::size_t v = 0; v < reps.size(); ++v) {
        const auto na = a.adjacency.neighbors(v);
        const auto nb = b.adjacency.neighbors(v);
        REQUIRE(std::vector<std::uint32_t>(na.begin(), na.end()) == std::vector<std::uint32_t>(nb.begin(), nb.end()));
        const auto da = a.neighbor_distances(v);
        const auto db = b.neighbor_distances(v);
        REQUIRE(std::vector<std::uint16_t>(da.begin(), da.end()) == std::vector<std::uint16_t>(db.begin(), db.end()));
        for (std::uint32_t u : na) REQUIRE(a.adjacency.adjacent(u, v));
        REQUIRE_FALSE(a.adjacency.adjacent(v, v));
    }
    if (check_edges) {
        for (std::size_t u = 0; u < reps.size(); ++u) {
            for (std::size_t v = 0; v < reps.size(); ++v) {
                if (u == v) continue;
                const std::size_t cd = oracle::class_dist(reps[u], reps[v]);
                REQUIRE(a.adjacency.adjacent(u, v) == (cd + 1 <= p.d));
            }
            const auto nd = a.neighbor_distances(u);
            const auto nn = a.adjacency.neighbors(u);
            for (std::size_t k = 0; k < nn.size(); ++k) REQUIRE(nd[k] == oracle::class_dist(reps[u], reps[nn[k]]));
        }
    }
    const DegreeStats stats = degree_stats(a);
    CHECK(stats.within_bound);
    CHECK(BigInt(stats.max_degree) <= a.degree_bound());
}

}  // namespace

TEST_CASE("class distance examples") {
    CHECK(class_distance(Word::parse("001", 2), Word::parse("011", 2)) == 1);
    CHECK(class_distance(Word::parse("0001", 2), Word::parse("0111", 2)) == 2);
    CHECK(class_distance(class_of(Word::parse("0001", 2)), class_of(Word::parse("0111", 2))) == 2);
    CHECK(class_distance(Word::parse("011", 2), Word::parse("001", 2)) == 1);
    CHECK_THROWS_AS(class_distance(Word::parse("01", 2), Word::parse("011", 2)), DimensionError);
}

TEST_CASE("collapsed minimum equals the double minimum") {
    for (int q = 2; q <= 3; ++q) {
        const std::size_t max_n = q == 2 ? 8 : 5;
        for (std::size_t n = 2; n <= max_n; ++n) {
            std::set<oracle::Vec> reps;
            for (const auto& x : oracle::all_words(n, q)) reps.insert(oracle::min_rotation(x));
            const std::vector<oracle::Vec> r(reps.begin(), reps.end());
            for (const auto& a : r) {
                for (const auto& b : r) {
                    const Word wa(std::vector<Symbol>(a.begin(), a.end()), q);
                    const Word wb(std::vector<Symbol>(b.begin(), b.end()), q);
                    REQUIRE(class_distance(wa, wb) == oracle::class_dist(a, b));
                }
            }
        }
    }
}

TEST_CASE("adjacency graph construction") {
    const AdjacencyGraph g(Lists{{1, 2}, {0}, {0}});
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.max_degree() == 2);
    CHECK(g.adjacent(0, 2));
    CHECK_FALSE(g.adjacent(1, 2));
    CHECK_THROWS_AS(AdjacencyGraph(Lists{{1}, {}}), ContractViolation);
    CHECK_THROWS_AS(AdjacencyGraph(Lists{{0}}), ContractViolation);
    CHECK_THROWS_AS(AdjacencyGraph(Lists{{1, 1}, {0, 0}}), ContractViolation);
    const AdjacencyGraph e = AdjacencyGraph::from_edges(4, {{0, 3}, {2, 1}});
    CHECK(e.edge_count() == 2);
    CHECK(e.adjacent(3, 0));
    CHECK(e.adjacent(1, 2));
    CHECK(AdjacencyGraph().max_degree() == 0);
}

TEST_CASE("HCC graphs match brute force") {
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::size_t d = 1; d <= n; ++d) check_against_oracle({n, 2, d, GraphMode::Hcc, std::nullopt}, n <= 8);
    }
    for (std::size_t n = 2; n <= 6; ++n) {
        for (std::size_t d = 1; d <= n; ++d) check_against_oracle({n, 3, d, GraphMode::Hcc, std::nullopt}, true);
    }
}

TEST_CASE("OOC graphs match brute force") {
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::size_t w = 0; w <= n; ++w) {
            for (std::size_t d = 1; d <= n; ++d) check_against_oracle({n, 2, d, GraphMode::Ooc, w}, n <= 8);
        }
    }
    const ClassGraph g = build_graph({7, 2, 3, GraphMode::Ooc, 3});
    CHECK(g.vertices.size() == oracle_vertices(7, 2, 3, 3).size());
    CHECK(g.degree_bound() == cw_ball_volume(7, 3, 2));
}

TEST_CASE("graph build edge cases") {
    CHECK(build_graph({5, 2, 6, GraphMode::Hcc, std::nullopt}).vertices.empty());
    const ClassGraph one = build_graph({6, 2, 1, GraphMode::Hcc, std::nullopt});
    CHECK(one.edge_count() == 0);
    CHECK(one.vertices.size() == 9);
    CHECK(degree_stats(build_graph({5, 2, 6, GraphMode::Hcc, std::nullopt})).max_degree == 0);
    CHECK_THROWS_AS(build_graph({1, 2, 1, GraphMode::Hcc, std::nullopt}), DomainError);
    CHECK_THROWS_AS(build_graph({5, 3, 2, GraphMode::Ooc, 2}), DomainError);
    CHECK_THROWS_AS(build_graph({5, 2, 2, GraphMode::Ooc, std::nullopt}), DomainError);
    GraphBudget tiny;
    tiny.max_classes = 3;
    CHECK_THROWS_AS(build_graph({8, 2, 2, GraphMode::Hcc, std::nullopt}, tiny), CapacityError);
    GraphBudget no_work;
    no_work.max_work = 10;
    CHECK_THROWS_AS(build_graph({8, 2, 2, GraphMode::Hcc, std::nullopt}, no_work), CapacityError);
}

TEST_CASE("degree histogram regression n=6 q=2 d=2") {
    const ClassGraph g = build_graph({6, 2, 2, GraphMode::Hcc, std::nullopt});
    const DegreeStats s = degree_stats(g);
    CHECK(s.vertex_count == 9);
    CHECK(s.edge_count == 16);
    CHECK(s.max_degree == 4);
    CHECK(s.histogram == std::map<std::size_t, std::size_t>{{2, 2}, {4, 7}});
    CHECK(s.degree_bound == 7);
    CHECK(s.mean_degree == doctest::Approx(32.0 / 9));
}

TEST_CASE("sparsity diagnostics regression n=8 q=2 d=3 tau=0.25") {
    const ClassGraph g = build_graph({8, 2, 3, GraphMode::Hcc, std::nullopt});
    const SparsityDiagnostics s = sparsity_diagnostics(g, 0.25);
    CHECK(s.split == doctest::Approx(2.0));
    CHECK(s.degree_bound == 37);
    const std::vector<std::array<std::size_t, 3>> expect{{6, 0, 9}, {6, 0, 9}, {7, 0, 15}, {7, 0, 15}, {7, 0, 15},
                                                         {7, 0, 15}, {7, 0, 15}, {6, 0, 9}, {7, 0, 15}, {6, 0, 9}};
    REQUIRE(s.per_vertex.size() == expect.size());
    for (std::size_t v = 0; v < expect.size(); ++v) {
        CHECK(s.per_vertex[v].s_size == expect[v][0]);
        CHECK(s.per_vertex[v].t_size == expect[v][1]);
        CHECK(s.per_vertex[v].neighborhood_edges == expect[v][2]);
    }
    CHECK(s.max_neighborhood_edges == 15);
    CHECK(s.k_hat == doctest::Approx(1369.0 / 15));
    CHECK(s.max_s == 7);
}

TEST_CASE("neighborhood edge counts match brute force") {
    for (std::size_t n = 4; n <= 9; ++n) {
        for (std::size_t d = 2; d <= n; ++d) {
            const ClassGraph g = build_graph({n, 2, d, GraphMode::Hcc, std::nullopt});
            const SparsityDiagnostics s = sparsity_diagnostics(g);
            CHECK(s.tau == doctest::Approx(static_cast<double>(d) / n));
            std::uint64_t max_e = 0;
            for (std::size_t v = 0; v < g.vertices.size(); ++v) {
                const auto nb = g.adjacency.neighbors(v);
                std::uint64_t e = 0;
                for (std::size_t i = 0; i < nb.size(); ++i) {
                    for (std::size_t j = i + 1; j < nb.size(); ++j) e += g.adjacency.adjacent(nb[i], nb[j]);
                }
                REQUIRE(s.per_vertex[v].neighborhood_edges == e);
                REQUIRE(s.per_vertex[v].s_size + s.per_vertex[v].t_size == nb.size());
                std::size_t close = 0;
                for (std::uint16_t dist : g.neighbor_distances(v)) close += dist <= s.split;
                REQUIRE(s.per_vertex[v].s_size == close);
                max_e = std::max(max_e, e);
            }
            CHECK(s.max_neighborhood_edges == max_e);
            const double dd = s.degree_bound * s.degree_bound;
            if (max_e == 0) {
                CHECK(s.k_hat == doctest::Approx(dd + 1));
            } else {
                CHECK(s.k_hat == doctest::Approx(dd / static_cast<double>(max_e)));
            }
        }
    }
    const ClassGraph g = build_graph({6, 2, 2, GraphMode::Hcc, std::nullopt});
    CHECK_THROWS_AS(sparsity_diagnostics(g, 0.0), DomainError);
    CHECK_THROWS_AS(sparsity_diagnostics(g, std::nullopt, 1), CapacityError);
}

TEST_CASE("edge budget and degree scans") {
    const GraphParams p{9, 3, 4, GraphMode::Hcc, std::nullopt};
    for (NeighborMode mode : {NeighborMode::Pairwise, NeighborMode::Ball}) {
        GraphBudget b;
        b.neighbor_mode = mode;
        const ClassGraph g = build_graph(p, b);
        const DegreeScan scan = scan_degrees(p, b);
        REQUIRE(scan.vertices.size() == g.vertices.size());
        for (std::size_t v = 0; v < g.vertices.size(); ++v) REQUIRE(scan.degrees[v] == g.adjacency.degree(v));
        const DegreeStats a = degree_stats(g);
        const DegreeStats s = degree_stats(scan);
        CHECK(a.edge_count == s.edge_count);
        CHECK(a.histogram == s.histogram);

        b.max_edges = 2 * g.edge_count();
        CHECK(build_graph(p, b).edge_count() == g.edge_count());
        b.max_edges = 2 * g.edge_count() - 1;
        try {
            build_graph(p, b);
            FAIL("expected CapacityError");
        } catch (const CapacityError& e) {
            CHECK(e.stage() == "adjacency storage");
        }
    }
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::size_t w = 0; w <= n; ++w) {
            for (std::size_t d = 1; d <= n; ++d) {
                const GraphParams o{n, 2, d, GraphMode::Ooc, w};
                const ClassGraph g = build_graph(o);
                const DegreeScan scan = scan_degrees(o);
                for (std::size_t v = 0; v < g.vertices.size(); ++v) REQUIRE(scan.degrees[v] == g.adjacency.degree(v));
            }
        }
    }
}
