#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "cyclocode/errors.hpp"
#include "cyclocode/packed.hpp"
#include "cyclocode/word.hpp"
#include "oracles.hpp"

using namespace cyclocode;

namespace {

Word to_word(const oracle::Vec& v, int q) {
    std::vector<Symbol> s(v.begin(), v.end());
    return Word(s, q);
}

oracle::Vec to_vec(const Word& w) { return oracle::Vec(w.symbols().begin(), w.symbols().end()); }

}  // namespace

TEST_CASE("word construction and text form") {
    CHECK(Word::parse("00101", 2).to_string() == "00101");
    CHECK(Word::parse("0,7,12", 13).to_string() == "0,7,12");
    CHECK(Word::parse("0,7,12", 13)[2] == 12);
    CHECK_THROWS_AS(Word({0, 2}, 2), DomainError);
    CHECK_THROWS_AS(Word({}, 2), DomainError);
    CHECK_THROWS_AS(Word({0}, 1), DomainError);
    CHECK_THROWS_AS(Word::parse("012", 2), ParseError);
    CHECK_THROWS_AS(Word::parse("0,,1", 11), ParseError);
    CHECK(Word::parse("01", 2) != Word::parse("01", 3));
}

TEST_CASE("cyclic shift") {
    const Word x = Word::parse("012", 3);
    CHECK(cyclic_shift(x, 1) == Word::parse("120", 3));
    CHECK(cyclic_shift(x, 0) == x);
    CHECK(cyclic_shift(x, 3) == x);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) CHECK(cyclic_shift(cyclic_shift(x, i), j) == cyclic_shift(x, (i + j) % 3));
    }
}

TEST_CASE("hamming distance and weight") {
    CHECK(hamming_distance(Word::parse("011", 2), Word::parse("110", 2)) == 2);
    CHECK_THROWS_AS(hamming_distance(Word::parse("01", 2), Word::parse("011", 2)), DimensionError);
    CHECK_THROWS_AS(hamming_distance(Word::parse("01", 2), Word::parse("01", 3)), DimensionError);
    CHECK(weight(Word::parse("0110", 2)) == 2);
    CHECK(weight(Word::zeros(5, 3)) == 0);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const int q = 2 + static_cast<int>(rng() % 4);
        oracle::Vec a(n), b(n), c(n);
        for (std::size_t j = 0; j < n; ++j) {
            a[j] = static_cast<int>(rng() % q);
            b[j] = static_cast<int>(rng() % q);
            c[j] = static_cast<int>(rng() % q);
        }
        const Word x = to_word(a, q), y = to_word(b, q), z = to_word(c, q);
        CHECK(hamming_distance(x, y) == oracle::dist(a, b));
        CHECK(hamming_distance(x, y) == hamming_distance(y, x));
        CHECK(hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z));
        CHECK((hamming_distance(x, y) == 0) == (x == y));
        const std::size_t k = rng() % n;
        CHECK(hamming_distance(cyclic_shift(x, k), cyclic_shift(y, k)) == hamming_distance(x, y));
        if (q == 2) CHECK(weight(x) == hamming_distance(x, Word::zeros(n, 2)));
    }
}

TEST_CASE("period and auto-distance examples") {
    CHECK(period(Word::zeros(6, 2)) == 1);
    CHECK(period(Word::parse("0101", 2)) == 2);
    CHECK(period(Word::parse("001", 2)) == 3);
    CHECK(min_cyclic_autodistance(Word::zeros(4, 2)) == 0);
    CHECK(min_cyclic_autodistance(Word::parse("01", 2)) == 2);
    CHECK(min_cyclic_autodistance(Word::parse("001", 2)) == 2);
    CHECK_THROWS_AS(min_cyclic_autodistance(Word::parse("1", 2)), DomainError);
    CHECK(autocorrelation_distance(Word::zeros(5, 2), 3) == 0);
    CHECK(autocorrelation_distance(Word::parse("01", 2), 1) == 2);
    CHECK_THROWS_AS(autocorrelation_distance(Word::parse("011", 2), 0), DomainError);
    CHECK_THROWS_AS(autocorrelation_distance(Word::parse("011", 2), 3), DomainError);
}

TEST_CASE("exhaustive agreement with brute force") {
    for (int q = 2; q <= 3; ++q) {
        const std::size_t max_n = q == 2 ? 10 : 7;
        for (std::size_t n = 1; n <= max_n; ++n) {
            for (const oracle::Vec& v : oracle::all_words(n, q)) {
                const Word x = to_word(v, q);
                const std::size_t distinct = oracle::distinct_rotations(v);
                REQUIRE(period(x) == distinct);
                REQUIRE(to_vec(canonical_rotation(x)) == oracle::min_rotation(v));
                REQUIRE(canonical_rotation(x) == canonical_rotation_naive(x));
                REQUIRE(cyclic_shift(x, least_rotation_offset(x)) == canonical_rotation(x));
                if (n >= 2) {
                    const std::size_t d = min_cyclic_autodistance(x);
                    REQUIRE(d == oracle::auto_dist(v));
                    REQUIRE((d == 0) == (distinct < n));
                    for (std::size_t i = 1; i < n; ++i) {
                        REQUIRE(autocorrelation_distance(x, i) == hamming_distance(x, cyclic_shift(x, i)));
                    }
                }
            }
        }
    }
}

TEST_CASE("class_of") {
    const CyclicClass c = class_of(Word::parse("011", 2));
    CHECK(c.n_distinct == 3);
    CHECK(c.full_period());
    CHECK(c.representative == Word::parse("011", 2));
    const CyclicClass p = class_of(Word::parse("0101", 2));
    CHECK(p.n_distinct == 2);
    CHECK(p.auto_distance == std::optional<std::size_t>(0));
    CHECK_FALSE(class_of(Word::parse("1", 2)).auto_distance.has_value());
    const Word x = Word::parse("0120112", 3);
    for (std::size_t i = 0; i < 7; ++i) CHECK(class_of(cyclic_shift(x, i)) == class_of(x));
    CHECK(canonical_rotation(Word::parse("100", 2)) == Word::parse("001", 2));
}

TEST_CASE("class enumeration examples") {
    ClassFilter full;
    full.full_period_only = true;
    const auto three = enumerate_classes(3, 2, full);
    REQUIRE(three.size() == 2);
    CHECK(three[0].representative == Word::parse("001", 2));
    CHECK(three[1].representative == Word::parse("011", 2));
    const auto two = enumerate_classes(2, 2, full);
    REQUIRE(two.size() == 1);
    CHECK(two[0].representative == Word::parse("01", 2));
    CHECK(enumerate_classes(1, 2, full).size() == 2);

    ClassFilter weighted;
    weighted.weight = 2;
    CHECK_THROWS_AS(enumerate_classes(4, 3, weighted), UnsupportedError);
}

TEST_CASE("class enumeration matches the brute-force partition") {
    for (int q = 2; q <= 3; ++q) {
        const std::size_t max_n = q == 2 ? 10 : 6;
        for (std::size_t n = 1; n <= max_n; ++n) {
            std::set<oracle::Vec> reps;
            for (const oracle::Vec& v : oracle::all_words(n, q)) reps.insert(oracle::min_rotation(v));
            const auto classes = enumerate_classes(n, q);
            REQUIRE(classes.size() == reps.size());
            std::size_t covered = 0;
            auto it = reps.begin();
            for (const CyclicClass& c : classes) {
                REQUIRE(to_vec(c.representative) == *it++);
                covered += c.n_distinct;
            }
            std::size_t total = 1;
            for (std::size_t j = 0; j < n; ++j) total *= static_cast<std::size_t>(q);
            CHECK(covered == total);

            if (n < 2) continue;
            for (std::size_t d = 1; d <= n; ++d) {
                ClassFilter f;
                f.full_period_only = true;
                f.min_auto_distance = d;
                std::vector<oracle::Vec> expect;
                for (const oracle::Vec& r : reps) {
                    if (oracle::distinct_rotations(r) == n && oracle::auto_dist(r) >= d) expect.push_back(r);
                }
                const auto got = enumerate_classes(n, q, f);
                REQUIRE(got.size() == expect.size());
                for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(to_vec(got[i].representative) == expect[i]);
            }
            if (q == 2) {
                for (std::size_t w = 0; w <= n; ++w) {
                    ClassFilter f;
                    f.full_period_only = true;
                    f.weight = w;
                    std::size_t expect = 0;
                    for (const oracle::Vec& r : reps) expect += oracle::weight(r) == w && oracle::distinct_rotations(r) == n;
                    REQUIRE(enumerate_classes(n, 2, f).size() == expect);
                }
            }
        }
    }
}

TEST_CASE("word visitors") {
    std::vector<std::string> seen;
    for_each_word(2, 3, [&](const Word& w) { seen.push_back(w.to_string()); });
    CHECK(seen == std::vector<std::string>{"00", "01", "02", "10", "11", "12", "20", "21", "22"});
    seen.clear();
    for_each_weight_word(4, 2, [&](const Word& w) { seen.push_back(w.to_string()); });
    CHECK(seen == std::vector<std::string>{"0011", "0101", "0110", "1001", "1010", "1100"});
}

TEST_CASE("packed codec agrees with the word operations") {
    std::mt19937_64 rng(11);
    for (int q : {2, 3, 4, 5, 16, 17}) {
        for (std::size_t n = 1; n <= 20; ++n) {
            if (!PackedCodec::fits(n, q)) continue;
            const PackedCodec codec(n, q);
            for (int trial = 0; trial < 40; ++trial) {
                std::vector<Symbol> a(n), b(n);
                for (auto& s : a) s = static_cast<Symbol>(rng() % q);
                for (auto& s : b) s = static_cast<Symbol>(rng() % q);
                const Word x(a, q), y(b, q);
                const std::uint64_t px = codec.pack(x), py = codec.pack(y);
                REQUIRE(codec.unpack(px) == x);
                REQUIRE(codec.distance(px, py) == hamming_distance(x, y));
                REQUIRE(codec.weight(px) == weight(x));
                REQUIRE(codec.period(px) == period(x));
                REQUIRE(codec.unpack(codec.canonical(px)) == canonical_rotation(x));
                REQUIRE((px < py) == (x < y));
                for (std::size_t i = 0; i < n; ++i) REQUIRE(codec.unpack(codec.rotate(px, i)) == cyclic_shift(x, i));
                if (n >= 2) REQUIRE(codec.min_autodistance(px) == min_cyclic_autodistance(x));
            }
        }
    }
    CHECK(PackedCodec::fits(64, 2));
    CHECK_FALSE(PackedCodec::fits(65, 2));
    CHECK(PackedCodec::fits(32, 3));
    CHECK_FALSE(PackedCodec::fits(33, 3));
}

TEST_CASE("binary rotation windows at long lengths") {
    std::mt19937_64 rng(5);
    for (std::size_t n : {2u, 63u, 64u, 65u, 127u, 128u, 129u, 200u}) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Symbol> bits(n);
            for (auto& b : bits) b = static_cast<Symbol>(rng() & 1);
            const Word x(bits, 2);
            const BinaryRotations rot(bits);
            std::size_t best = n;
            for (std::size_t i = 1; i < n; ++i) {
                const std::size_t d = hamming_distance(x, cyclic_shift(x, i));
                REQUIRE(rot.shift_distance(i) == d);
                best = std::min(best, d);
            }
            CHECK(rot.min_autodistance() == best);
            CHECK(rot.has_shift_within(best));
            if (best > 0) CHECK_FALSE(rot.has_shift_within(best - 1));
        }
    }
}
