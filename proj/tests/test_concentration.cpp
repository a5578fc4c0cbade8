#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "cyclocode/concentration.hpp"
#include "cyclocode/errors.hpp"
#include "oracles.hpp"

using namespace cyclocode;

namespace {

// Exact Pr[d(X) <= theta] under a product measure on binary words.
double exact_tail_binary(std::size_t n, double theta, double p) {
    double total = 0;
    for (const auto& x : oracle::all_words(n, 2)) {
        if (static_cast<double>(oracle::auto_dist(x)) > theta) continue;
        const auto w = static_cast<double>(oracle::weight(x));
        total += std::pow(p, w) * std::pow(1 - p, static_cast<double>(n) - w);
    }
    return total;
}

}  // namespace

TEST_CASE("thresholds and cutoffs") {
    CHECK(set_A_threshold(10, 2, 0.3) == 2.0);
    CHECK(set_A_threshold(9, 3, 0.1) == doctest::Approx(5.1));
    CHECK(set_B_threshold(20, 0.5, 0.2) == 4.0);
    CHECK(tail_cutoff(2.0) == 2);
    CHECK(tail_cutoff(2.7) == 2);
    CHECK(tail_cutoff(0.0) == 0);
    CHECK(tail_cutoff(-0.5) == -1);
}

TEST_CASE("derived seeds") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    CHECK(generator_id() == "mt19937_64+splitmix64-substreams/chunk4096");
}

TEST_CASE("set A counts match enumeration and dominate the bound") {
    for (int q = 2; q <= 3; ++q) {
        const std::size_t max_n = q == 2 ? 12 : 7;
        for (std::size_t n = 2; n <= max_n; ++n) {
            const auto words = oracle::all_words(n, q);
            for (double eps : {0.05, 0.1, 0.2, 0.3, 1.0 / 3}) {
                if (!(eps < 1.0 - 1.0 / q)) continue;
                const SetCount c = exact_set_A(n, q, eps);
                std::uint64_t expect = 0;
                for (const auto& x : words) expect += static_cast<double>(oracle::auto_dist(x)) > c.threshold;
                REQUIRE(c.count == expect);
                CHECK(c.total == words.size());
                CHECK(c.holds);
                CHECK(BigFloat(c.count) >= c.bound);
            }
        }
    }
    CHECK_THROWS_AS(exact_set_A(1, 2, 0.1), DomainError);
    CHECK_THROWS_AS(exact_set_A(30, 2, 0.1, 1000), CapacityError);
}

TEST_CASE("set B counts match enumeration and dominate the bound") {
    for (std::size_t n = 4; n <= 16; n += 2) {
        for (double p : {0.25, 0.5}) {
            const double pn = p * static_cast<double>(n);
            if (pn != std::floor(pn)) continue;
            const auto slice = oracle::weight_slice(n, static_cast<std::size_t>(pn));
            for (double eps : {0.05, 0.1, 0.3, 0.5}) {
                const SetCount c = exact_set_B(n, p, eps);
                std::uint64_t expect = 0;
                for (const auto& x : slice) expect += static_cast<double>(oracle::auto_dist(x)) > c.threshold;
                REQUIRE(c.count == expect);
                CHECK(c.total == slice.size());
                CHECK(c.holds);
            }
        }
    }
    CHECK_THROWS_AS(exact_set_B(10, 0.25, 0.1), DomainError);
}

TEST_CASE("tail estimates are reproducible across thread counts") {
    const TailEstimate one = mc_tail(40, 2, 12, 50000, 99, SamplingMode::uniform(), 1);
    for (unsigned threads : {2u, 3u, 8u}) {
        const TailEstimate many = mc_tail(40, 2, 12, 50000, 99, SamplingMode::uniform(), threads);
        CHECK(many.hits == one.hits);
        CHECK(many.p_hat == one.p_hat);
    }
    CHECK(mc_tail(40, 2, 12, 50000, 99).hits == one.hits);
    const TailEstimate slice1 = mc_tail(30, 2, 10, 20000, 5, SamplingMode::weight_slice(10), 1);
    const TailEstimate slice4 = mc_tail(30, 2, 10, 20000, 5, SamplingMode::weight_slice(10), 4);
    CHECK(slice1.hits == slice4.hits);
    CHECK(one.generator == generator_id());
}

TEST_CASE("tail estimates agree with exact probabilities") {
    const std::size_t n = 10;
    const std::uint64_t samples = 200000;
    for (double theta : {1.0, 2.0, 3.0, 4.0}) {
        const double exact = exact_tail_binary(n, theta, 0.5);
        const TailEstimate u = mc_tail(n, 2, theta, samples, 17, SamplingMode::uniform(), 4);
        CHECK(std::abs(u.p_hat - exact) <= 5 * std::sqrt(exact * (1 - exact) / samples) + 1e-12);

        const double exact_b = exact_tail_binary(n, theta, 0.3);
        const TailEstimate b = mc_tail(n, 2, theta, samples, 23, SamplingMode::bernoulli(0.3), 4);
        CHECK(std::abs(b.p_hat - exact_b) <= 5 * std::sqrt(exact_b * (1 - exact_b) / samples) + 1e-12);
    }
    const auto slice = oracle::weight_slice(n, 4);
    std::size_t low = 0;
    for (const auto& x : slice) low += oracle::auto_dist(x) <= 4;
    const double exact_s = static_cast<double>(low) / static_cast<double>(slice.size());
    const TailEstimate s = conditional_tail_weight_slice(n, 0.4, 4, samples, 31, 2);
    CHECK(std::abs(s.p_hat - exact_s) <= 5 * std::sqrt(exact_s * (1 - exact_s) / samples));

    CHECK(mc_tail(8, 3, 8, 1000, 1).p_hat == 1.0);
    CHECK(mc_tail(8, 3, -1, 1000, 1).p_hat == 0.0);
}

TEST_CASE("union bound fields") {
    const TailEstimate e = mc_tail(200, 2, 60, 1000, 3);
    REQUIRE(e.per_shift_tail.has_value());
    CHECK(*e.per_shift_tail == doctest::Approx(std::exp(-2.0 * 40 * 40 / (4.0 * 200))));
    CHECK(*e.union_bound == doctest::Approx(199 * *e.per_shift_tail));
    CHECK_FALSE(e.stirling_factor.has_value());
    CHECK_FALSE(mc_tail(200, 2, 100, 1000, 3).per_shift_tail.has_value());
    const TailEstimate s = mc_tail(100, 2, 30, 1000, 3, SamplingMode::weight_slice(50));
    REQUIRE(s.stirling_factor.has_value());
    CHECK(*s.union_bound == doctest::Approx(99 * *s.per_shift_tail * *s.stirling_factor));
}

TEST_CASE("tail estimation errors") {
    CHECK_THROWS_AS(mc_tail(1, 2, 0, 10, 1), DomainError);
    CHECK_THROWS_AS(mc_tail(10, 2, 0, 0, 1), DomainError);
    CHECK_THROWS_AS(mc_tail(10, 3, 0, 10, 1, SamplingMode::bernoulli(0.5)), UnsupportedError);
    CHECK_THROWS_AS(mc_tail(10, 2, 0, 10, 1, SamplingMode::bernoulli(1.0)), DomainError);
    CHECK_THROWS_AS(mc_tail(10, 2, 0, 10, 1, SamplingMode::weight_slice(11)), DomainError);
    CHECK_THROWS_AS(conditional_tail_weight_slice(10, 0.25, 2, 10, 1), DomainError);
}

TEST_CASE("weight-slice sampler is uniform") {
    const std::size_t n = 6, w = 3;
    const int draws = 200000;
    std::mt19937_64 rng(2024);
    std::map<std::vector<Symbol>, int> counts;
    std::vector<Symbol> buf;
    for (int i = 0; i < draws; ++i) {
        sample_weight_slice(buf, n, w, rng);
        REQUIRE(std::count(buf.begin(), buf.end(), Symbol{1}) == static_cast<long>(w));
        ++counts[buf];
    }
    REQUIRE(counts.size() == 20);
    const double expected = draws / 20.0;
    double chi2 = 0;
    for (const auto& [word, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 19 degrees of freedom, upper 0.1% point
    CHECK(chi2 < 43.82);
}
