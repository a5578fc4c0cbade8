#include "cyclocode/concentration.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "cyclocode/errors.hpp"
#include "cyclocode/packed.hpp"

namespace cyclocode {

std::string generator_id() { return "mt19937_64+splitmix64-substreams/chunk4096"; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    const auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

namespace {

double snap(long double value) {
    const long double rounded = std::round(value);
    if (std::fabs(value - rounded) < 1e-9L) return static_cast<double>(rounded);
    return static_cast<double>(value);
}

}  // namespace

double set_A_threshold(std::size_t n, int q, double eps) {
    return snap(static_cast<long double>(n) * (1.0L - 1.0L / q - static_cast<long double>(eps)));
}

double set_B_threshold(std::size_t n, double p, double eps) {
    const long double pp = p;
    return snap((1.0L - static_cast<long double>(eps)) * static_cast<long double>(n) * pp * (1.0L - pp));
}

long long tail_cutoff(double theta) {
    if (theta < 0) return -1;
    return static_cast<long long>(std::floor(theta));
}

namespace {

// True when d(x) <= cutoff, i.e. some nontrivial shift lies within cutoff.
bool generic_shift_within(std::span<const Symbol> x, long long cutoff) {
    if (cutoff < 0) return false;
    const std::size_t n = x.size();
    const auto limit = static_cast<std::size_t>(cutoff);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t d = 0;
        for (std::size_t j = 0; j < n && d <= limit; ++j) d += x[j] != x[(j + i) % n];
        if (d <= limit) return true;
    }
    return false;
}

bool packed_shift_within(const PackedCodec& codec, std::uint64_t v, long long cutoff) {
    if (cutoff < 0) return false;
    const auto limit = static_cast<unsigned>(cutoff);
    for (std::size_t i = 1; i < codec.length(); ++i) {
        if (codec.distance(v, codec.rotate(v, i)) <= limit) return true;
    }
    return false;
}

}  // namespace

SetCount exact_set_A(std::size_t n, int q, double eps, std::uint64_t budget) {
    if (n < 2) throw DomainError("set A needs n >= 2 (d(x) is undefined for n = 1)");
    const LemmaABound bound = lemma_A_bound(n, q, eps);
    const BigInt total = power(static_cast<std::uint64_t>(q), n);
    if (total > budget) throw CapacityError("exact_set_A enumeration", saturate_u64(total), budget);

    SetCount result;
    result.n = n;
    result.q = q;
    result.eps = eps;
    result.threshold = set_A_threshold(n, q, eps);
    result.total = static_cast<std::uint64_t>(total);
    const long long cutoff = tail_cutoff(result.threshold);

    std::uint64_t outside = 0;
    if (PackedCodec::fits(n, q)) {
        const PackedCodec codec(n, q);
        std::vector<Symbol> digits(n, 0);
        for (;;) {
            outside += packed_shift_within(codec, codec.pack(digits), cutoff);
            std::size_t j = n;
            while (j > 0 && digits[j - 1] == q - 1) digits[--j] = 0;
            if (j == 0) break;
            ++digits[j - 1];
        }
    } else {
        for_each_word(n, q, [&](const Word& x) { outside += generic_shift_within(x.symbols(), cutoff); });
    }
    result.count = result.total - outside;
    result.bound = bound.value;
    result.vacuous = bound.vacuous;
    result.holds = BigFloat(result.count) >= bound.value;
    return result;
}

SetCount exact_set_B(std::size_t n, double p, double eps, std::uint64_t budget) {
    if (n < 2) throw DomainError("set B needs n >= 2");
    const LemmaBBound bound = lemma_B_bound(n, p, eps);
    const std::size_t w = bound.weight;
    if (bound.total > budget) throw CapacityError("exact_set_B enumeration", saturate_u64(bound.total), budget);

    SetCount result;
    result.n = n;
    result.q = 2;
    result.weight = w;
    result.eps = eps;
    result.threshold = set_B_threshold(n, static_cast<double>(w) / static_cast<double>(n), eps);
    result.total = static_cast<std::uint64_t>(bound.total);
    const long long cutoff = tail_cutoff(result.threshold);

    std::uint64_t outside = 0;
    if (n <= 64) {
        const PackedCodec codec(n, 2);
        if (w == 0) {
            outside += packed_shift_within(codec, 0, cutoff);
        } else {
            // Gosper's hack walks weight-w integers in increasing (= lexicographic) order.
            std::uint64_t v = (w == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
            const std::uint64_t limit_bit = n == 64 ? 0 : std::uint64_t{1} << n;
            for (;;) {
                outside += packed_shift_within(codec, v, cutoff);
                const std::uint64_t c = v & (~v + 1);
                const std::uint64_t r = v + c;
                if (r == 0 || (limit_bit != 0 && r >= limit_bit)) break;
                const std::uint64_t next = (((r ^ v) >> 2) / c) | r;
                if (limit_bit != 0 && next >= limit_bit) break;
                v = next;
            }
        }
    } else {
        for_each_weight_word(n, w, [&](const Word& x) {
            outside += cutoff >= 0 && BinaryRotations(x.symbols()).has_shift_within(static_cast<std::size_t>(cutoff));
        });
    }
    result.count = result.total - outside;
    result.bound = bound.value;
    result.vacuous = bound.vacuous;
    result.holds = BigFloat(result.count) >= bound.value;
    return result;
}

std::string to_string(SamplingMode::Kind kind) {
    switch (kind) {
        case SamplingMode::Kind::Uniform: return "uniform";
        case SamplingMode::Kind::Bernoulli: return "bernoulli";
        case SamplingMode::Kind::WeightSlice: return "weight-slice";
    }
    return "unknown";
}

namespace {

std::uint64_t count_chunk(std::size_t n, int q, long long cutoff, const SamplingMode& mode, std::uint64_t chunk_seed,
                          std::uint64_t chunk_samples) {
    std::mt19937_64 rng(chunk_seed);
    std::vector<Symbol> x(n);
    std::uniform_int_distribution<int> symbol(0, q - 1);
    std::bernoulli_distribution coin(mode.p);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < chunk_samples; ++s) {
        switch (mode.kind) {
            case SamplingMode::Kind::Uniform:
                if (q == 2) {
                    std::uint64_t bits = 0;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j % 64 == 0) bits = rng();
                        x[j] = static_cast<Symbol>(bits & 1);
                        bits >>= 1;
                    }
                } else {
                    for (auto& v : x) v = static_cast<Symbol>(symbol(rng));
                }
                break;
            case SamplingMode::Kind::Bernoulli:
                for (auto& v : x) v = coin(rng) ? 1 : 0;
                break;
            case SamplingMode::Kind::WeightSlice:
                sample_weight_slice(x, n, mode.weight, rng);
                break;
        }
        if (cutoff < 0) continue;
        if (q == 2) {
            hits += BinaryRotations(x).has_shift_within(static_cast<std::size_t>(cutoff));
        } else {
            hits += generic_shift_within(x, cutoff);
        }
    }
    return hits;
}

}  // namespace

TailEstimate mc_tail(std::size_t n, int q, double theta, std::uint64_t samples, std::uint64_t seed,
                     SamplingMode mode, unsigned threads) {
    if (n < 2) throw DomainError("tail estimation needs n >= 2");
    if (q < 2 || q > kMaxAlphabet) throw DomainError("q must be in [2, 256]");
    if (samples < 1) throw DomainError("samples must be at least 1");
    if (mode.kind != SamplingMode::Kind::Uniform && q != 2) throw UnsupportedError("Bernoulli and weight-slice modes are binary");
    if (mode.kind == SamplingMode::Kind::Bernoulli && !(mode.p > 0 && mode.p < 1)) throw DomainError("Bernoulli mode needs 0 < p < 1");
    if (mode.kind == SamplingMode::Kind::WeightSlice && mode.weight > n) throw DomainError("weight exceeds n");

    TailEstimate est;
    est.n = n;
    est.q = q;
    est.mode = mode;
    est.threshold = theta;
    est.samples = samples;
    est.seed = seed;
    est.generator = generator_id();

    const long long cutoff = tail_cutoff(theta);
    const std::uint64_t chunks = (samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
    const auto chunk_size = [&](std::uint64_t c) { return std::min(kSamplesPerChunk, samples - c * kSamplesPerChunk); };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(chunks, 1024))));
    std::vector<std::uint64_t> partial(workers, 0);
    const auto run = [&](unsigned worker) {
        for (std::uint64_t c = worker; c < chunks; c += workers) {
            partial[worker] += count_chunk(n, q, cutoff, mode, derive_seed(seed, c), chunk_size(c));
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    for (std::uint64_t h : partial) est.hits += h;

    est.p_hat = static_cast<double>(est.hits) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.p_hat * (1 - est.p_hat) / static_cast<double>(samples));

    const double nn = static_cast<double>(n);
    double mean = 0;
    switch (mode.kind) {
        case SamplingMode::Kind::Uniform: mean = nn * (1.0 - 1.0 / q); break;
        case SamplingMode::Kind::Bernoulli: mean = 2 * nn * mode.p * (1 - mode.p); break;
        case SamplingMode::Kind::WeightSlice: {
            const double p = static_cast<double>(mode.weight) / nn;
            mean = 2 * nn * p * (1 - p);
            break;
        }
    }
    const double deviation = mean - theta;
    if (deviation > 0) {
        // d(x, pi_i x) changes by at most 2 per coordinate
        est.per_shift_tail = mcdiarmid_tail(deviation, std::vector<double>(n, 2.0));
        est.union_bound = (nn - 1) * *est.per_shift_tail;
        if (mode.kind == SamplingMode::Kind::WeightSlice && mode.weight > 0 && mode.weight < n) {
            const double p = static_cast<double>(mode.weight) / nn;
            const double ell = std::exp(-1 / (12 * nn + 1) + 1 / (12 * p * nn) + 1 / (12 * (1 - p) * nn));
            est.stirling_factor = std::sqrt(2 * std::numbers::pi * nn * p * (1 - p)) * ell;
            *est.union_bound *= *est.stirling_factor;
        }
    }
    return est;
}

TailEstimate conditional_tail_weight_slice(std::size_t n, double p, double theta, std::uint64_t samples,
                                           std::uint64_t seed, unsigned threads) {
    if (!(p > 0 && p < 1)) throw DomainError("weight-slice sampling needs 0 < p < 1");
    return mc_tail(n, 2, theta, samples, seed, SamplingMode::weight_slice(integral_weight(n, p)), threads);
}

}  // namespace cyclocode
