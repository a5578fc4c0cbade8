#include <doctest.h>

#include <cmath>
#include <map>

#include "cyclocode/errors.hpp"
#include "cyclocode/volume.hpp"
#include "oracles.hpp"

using namespace cyclocode;

namespace {

Word to_word(const oracle::Vec& v, int q) { return Word(std::vector<Symbol>(v.begin(), v.end()), q); }

bool close(const BigFloat& got, const char* expected, double rel = 1e-12) {
    const BigFloat want(expected);
    return boost::multiprecision::abs(got - want) <= boost::multiprecision::abs(want) * rel;
}

}  // namespace

TEST_CASE("ball volume examples") {
    CHECK(ball_volume(9, 3, 0) == 1);
    CHECK(ball_volume(7, 2, 1) == 8);
    CHECK(ball_volume(4, 3, 2) == 33);
    CHECK(ball_volume(7, 2, 2) == 29);
    CHECK(ball_volume(5, 4, 5) == 1024);
    CHECK_THROWS_AS(ball_volume(4, 2, 5), DomainError);
}

TEST_CASE("ball volume matches enumeration") {
    for (int q = 2; q <= 3; ++q) {
        for (std::size_t n = 1; n <= 10; ++n) {
            BigInt previous = 0;
            for (std::size_t t = 0; t <= n; ++t) {
                const BigInt v = ball_volume(n, q, t);
                REQUIRE(v == oracle::ball_count(n, q, t));
                REQUIRE(v >= previous);
                previous = v;
            }
            CHECK(previous == power(static_cast<std::uint64_t>(q), n));
        }
    }
}

TEST_CASE("constant-weight ball volume") {
    CHECK(cw_ball_volume(7, 3, 0) == 1);
    CHECK(cw_ball_volume(7, 3, 1) == 1);
    CHECK(cw_ball_volume(6, 3, 2) == 10);
    CHECK(cw_ball_volume(8, 2, 4) == oracle::cw_ball_count(8, 2, 4));
    CHECK_THROWS_AS(cw_ball_volume(5, 6, 0), DomainError);
    CHECK_THROWS_AS(cw_ball_volume(6, 2, 5), DomainError);
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::size_t w = 0; w <= n; ++w) {
            for (std::size_t t = 0; t <= 2 * w; ++t) REQUIRE(cw_ball_volume(n, w, t) == oracle::cw_ball_count(n, w, t));
        }
    }
    for (std::size_t n = 1; n <= 20; ++n) {
        for (std::size_t w = 0; w <= n; ++w) CHECK(cw_ball_volume(n, w, 2 * std::min(w, n - w)) == binomial(n, w));
    }
}

TEST_CASE("intersection volume examples") {
    const Word x = Word::parse("000", 2);
    CHECK(ball_intersection_volume(x, Word::parse("011", 2), 1) == 2);
    CHECK(ball_intersection_volume(x, x, 2) == ball_volume(3, 2, 2));
    CHECK(ball_intersection_volume(Word::parse("00000", 2), Word::parse("11111", 2), 2) == 0);
    CHECK_THROWS_AS(ball_intersection_volume(x, Word::parse("01", 2), 1), DimensionError);
    CHECK_THROWS_AS(ball_intersection_volume(Word::zeros(10, 3), Word::zeros(10, 3), 10, std::nullopt, 1000), CapacityError);
}

TEST_CASE("intersection volume matches enumeration and depends only on separation") {
    for (int q = 2; q <= 3; ++q) {
        const std::size_t max_n = q == 2 ? 6 : 4;
        for (std::size_t n = 1; n <= max_n; ++n) {
            const auto words = oracle::all_words(n, q);
            for (std::size_t t = 0; t <= n; ++t) {
                std::map<std::size_t, BigInt> by_sep;
                for (const auto& a : words) {
                    for (const auto& b : words) {
                        std::uint64_t expect = 0;
                        for (const auto& z : words) expect += oracle::dist(z, a) <= t && oracle::dist(z, b) <= t;
                        const BigInt got = ball_intersection_volume(to_word(a, q), to_word(b, q), t);
                        REQUIRE(got == expect);
                        const auto [it, fresh] = by_sep.emplace(oracle::dist(a, b), got);
                        if (!fresh) REQUIRE(it->second == got);
                    }
                }
            }
        }
    }
}

TEST_CASE("weight-slice intersection matches enumeration") {
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::size_t w = 1; w < n; ++w) {
            const auto slice = oracle::weight_slice(n, w);
            for (std::size_t t = 0; t <= 2 * std::min(w, n - w); ++t) {
                for (const auto& b : slice) {
                    const auto& a = slice.front();
                    std::uint64_t expect = 0;
                    for (const auto& z : slice) expect += oracle::dist(z, a) <= t && oracle::dist(z, b) <= t;
                    REQUIRE(ball_intersection_volume(to_word(a, 2), to_word(b, 2), t, w) == expect);
                }
            }
        }
    }
}

TEST_CASE("decay table regression n=8 q=2 t=3") {
    const DecayTable table = intersection_decay_table(8, 2, 3);
    CHECK(table.volume == 93);
    const std::vector<int> expect{93, 58, 58, 38, 38, 20, 20, 0, 0};
    REQUIRE(table.rows.size() == expect.size());
    for (std::size_t s = 0; s < expect.size(); ++s) {
        CHECK(table.rows[s].separation == s);
        CHECK(table.rows[s].intersection == expect[s]);
        CHECK(table.rows[s].ratio == Rational(expect[s], 93));
    }
    CHECK(table.rows.front().ratio == 1);
    CHECK(table.nonincreasing);

    const DecayTable slice = intersection_decay_table(8, 2, 4, 4);
    CHECK(slice.rows.front().ratio == 1);
    for (const auto& row : slice.rows) {
        if (row.separation > 4 * 2) CHECK(row.ratio == 0);
    }
}

TEST_CASE("GV and Levenshtein bounds") {
    CHECK(gv_bound(7, 2, 3) == Rational(128, 29));
    CHECK(gv_bound(6, 3, 1) == 729);
    for (std::size_t n = 1; n <= 8; ++n) {
        const BigInt qn = power(3, n);
        CHECK(gv_bound(n, 3, n) == Rational(qn, qn - power(2, n)));
    }
    CHECK_THROWS_AS(gv_bound(5, 2, 0), DomainError);
    CHECK_THROWS_AS(gv_bound(5, 2, 6), DomainError);
    CHECK(levenshtein_bound(6, 3, 3) == 2);
    CHECK(levenshtein_bound(8, 4, 3) == Rational(70, 17));
    CHECK(levenshtein_bound(9, 4, 1) == binomial(9, 4));
    CHECK_THROWS_AS(levenshtein_bound(6, 2, 5), DomainError);
}

TEST_CASE("NXY bounds") {
    CHECK_THROWS_AS(nxy_hcc_bound(10, 2, 1, 0.1), DomainError);
    CHECK_THROWS_AS(nxy_hcc_bound(10, 2, 3, 0.5), DomainError);
    const RealBound small = nxy_hcc_bound(20, 2, 3, 0.2);
    CHECK(small.vacuous);
    CHECK(small.value < 0);

    // frozen, evaluated independently with 60-digit arithmetic
    const RealBound eq3 = nxy_hcc_bound(10000, 2, 1000, 0.1);
    CHECK(eq3.vacuous);
    CHECK(close(eq3.value, "-1.119946211562210724191686e+1609"));
    const RealBound large = nxy_hcc_bound(100000, 2, 10000, 0.4);
    CHECK_FALSE(large.vacuous);
    CHECK(close(large.value, "1.118783635830355620009633e+15988"));
    const RealBound eq7 = fhs_nxy_bound(10000, 2, 6000, 0.05);
    CHECK(eq7.vacuous);
    CHECK(close(eq7.value, "-1.526494890824709520007177e+93"));

    for (std::size_t lambda : {1u, 5u, 10u}) {
        const BigFloat lhs = fhs_nxy_bound(16, 3, lambda, 0.3).value;
        const BigFloat rhs = nxy_hcc_bound(16, 3, 16 - lambda, 0.3).value / 16;
        CHECK(boost::multiprecision::abs(lhs - rhs) <= boost::multiprecision::abs(rhs) * 1e-40);
    }
    CHECK_THROWS_AS(fhs_nxy_bound(10, 2, 9, 0.1), DomainError);
    CHECK_THROWS_AS(fhs_nxy_bound(10, 2, 10, 0.1), DomainError);

    const BigFloat deficit = nxy_deficit(100, 0.3);
    CHECK(std::abs(deficit.convert_to<double>() - 1e4 * std::exp(-0.09 * 8 / 2)) < 1e-6);
}

TEST_CASE("independence and McDiarmid helpers") {
    CHECK(independence_lower_bound(1000, 50, 1) == 0);
    CHECK(independence_lower_bound(1000, 50, 60) == doctest::Approx(20 * std::log(50.0)));
    CHECK(independence_lower_bound(1000, 50, 20) == doctest::Approx(59.9146).epsilon(1e-5));
    CHECK_THROWS_AS(independence_lower_bound(10, 3, 0.5), DomainError);
    CHECK_THROWS_AS(independence_lower_bound(10, 3, 11), DomainError);
    CHECK_THROWS_AS(independence_lower_bound(10, 0.5, 1), DomainError);

    CHECK(mcdiarmid_tail(1e-9, std::vector<double>(10, 2.0)) == doctest::Approx(1.0));
    CHECK(mcdiarmid_tail(0.2 * 50, std::vector<double>(50, 2.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(mcdiarmid_tail(0.2 * 50, std::vector<double>(50, 2.0)) == doctest::Approx(0.36788).epsilon(1e-5));
    for (std::size_t n : {10u, 64u, 300u}) {
        const double eps = 0.15;
        CHECK(mcdiarmid_tail(eps * n, std::vector<double>(n, 2.0)) == doctest::Approx(std::exp(-eps * eps * n / 2)));
    }
    CHECK_THROWS_AS(mcdiarmid_tail(0, {1.0}), DomainError);
    CHECK_THROWS_AS(mcdiarmid_tail(1, {}), DomainError);
}

TEST_CASE("set A and set B bounds") {
    const LemmaABound a = lemma_A_bound(100, 2, 0.3);
    const BigFloat expect = BigFloat(power(2, 100)) * (1 - 99 * boost::multiprecision::exp(BigFloat(-4.5)));
    CHECK(boost::multiprecision::abs(a.value - expect) <= boost::multiprecision::abs(expect) * 1e-12);
    CHECK(a.vacuous);
    const LemmaABound a4 = lemma_A_bound(100, 2, 0.4);
    CHECK_FALSE(a4.vacuous);
    CHECK(a4.value.convert_to<double>() == doctest::Approx(std::ldexp(1.0, 100) * (1 - 99 * std::exp(-8.0))));
    CHECK(a.per_shift_tail == doctest::Approx(std::exp(-4.5)));
    CHECK(a.union_factor == 99);
    CHECK(a.value == BigFloat(a.total) * (1 - a.failure_probability));
    CHECK(lemma_A_bound(10, 2, 0.1).vacuous);
    CHECK_THROWS_AS(lemma_A_bound(10, 2, 0.5), DomainError);

    const LemmaBBound b = lemma_B_bound(16, 0.5, 0.3);
    CHECK(b.weight == 8);
    CHECK(b.total == 12870);
    CHECK(b.per_shift_tail == doctest::Approx(std::exp(-1.69 * 0.0625 * 16 / 2)));
    CHECK(b.stirling_sqrt == doctest::Approx(std::sqrt(2 * M_PI * 16 * 0.25)));
    CHECK(b.stirling_ell == doctest::Approx(std::exp(-1.0 / 193 + 1.0 / 96 + 1.0 / 96)));
    const double product = b.union_factor * b.per_shift_tail * b.stirling_sqrt * b.stirling_ell;
    CHECK(b.failure_probability.convert_to<double>() == doctest::Approx(product).epsilon(1e-12));
    CHECK(b.vacuous == (b.value <= 0));
    CHECK_THROWS_AS(lemma_B_bound(7, 0.5, 0.2), DomainError);
    CHECK(integral_weight(10, 0.3) == 3);
    CHECK_THROWS_AS(integral_weight(10, 0.25), DomainError);
}

TEST_CASE("bound report") {
    BoundParams p;
    p.n = 7;
    p.q = 2;
    p.d = 3;
    const BoundReport r = evaluate_bounds(p);
    REQUIRE(r.find("gv") != nullptr);
    CHECK(*r.find("gv")->exact == Rational(128, 29));
    CHECK(to_key_value(r).find("gv = 128/29 (≈ 4.413793103)") != std::string::npos);

    BoundParams lw;
    lw.n = 6;
    lw.d = 3;
    lw.w = 3;
    const BoundReport l = evaluate_bounds(lw);
    CHECK(*l.find("levenshtein")->exact == 2);
    CHECK(l.find("cyclic_cw_prior")->note.find("not specified") != std::string::npos);

    BoundParams one;
    one.n = 8;
    one.d = 1;
    one.eps = 0.1;
    const BoundReport o = evaluate_bounds(one);
    REQUIRE(o.find("nxy_hcc") != nullptr);
    CHECK_FALSE(o.find("nxy_hcc")->real.has_value());
    CHECK(o.find("nxy_hcc")->note.find("division domain") != std::string::npos);
    CHECK(o.mcdiarmid_terms.size() == 7);

    BoundParams fhs;
    fhs.n = 12;
    fhs.q = 3;
    fhs.lambda = 6;
    fhs.eps = 0.2;
    CHECK(evaluate_bounds(fhs).find("fhs_nxy") != nullptr);

    BoundParams kappa;
    kappa.n = 9;
    kappa.kappa = 4;
    const BoundReport k = evaluate_bounds(kappa);
    CHECK(*k.params.d == 6);
    CHECK(k.find("wmuc_graph_scale") != nullptr);

    BoundParams bad;
    bad.n = 5;
    bad.d = 6;
    CHECK_THROWS_AS(evaluate_bounds(bad), DomainError);
    bad.d = 3;
    bad.q = 3;
    bad.w = 2;
    CHECK_THROWS_AS(evaluate_bounds(bad), DomainError);
    BoundParams clash;
    clash.n = 9;
    clash.d = 3;
    clash.kappa = 4;
    CHECK_THROWS_AS(evaluate_bounds(clash), DomainError);
}
