#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclocode/numeric.hpp"
#include "cyclocode/volume.hpp"

namespace cyclocode {

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;
/// Samples per independently seeded substream; fixed so that results do not
/// depend on the number of worker threads.
inline constexpr std::uint64_t kSamplesPerChunk = 4096;

/// Identifier recorded in every experiment report.
std::string generator_id();

/// Seed of substream `index` derived from a master seed (SplitMix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Threshold n(1 - 1/q - eps), snapped to the nearest integer when within 1e-9
/// of it so that decimal inputs like eps = 0.3 do not shift strict comparisons.
double set_A_threshold(std::size_t n, int q, double eps);
/// Threshold (1 - eps) n p (1 - p), snapped the same way.
double set_B_threshold(std::size_t n, double p, double eps);

/// Largest integer distance that satisfies "d <= theta" (-1 when theta < 0).
long long tail_cutoff(double theta);

struct SetCount {
    std::size_t n = 0;
    int q = 2;
    std::optional<std::size_t> weight;
    double eps = 0;
    double threshold = 0;          ///< members satisfy d(x) > threshold
    std::uint64_t count = 0;       ///< exact |A| or |B|
    std::uint64_t total = 0;       ///< q^n or C(n, pn)
    BigFloat bound;                ///< guaranteed lower bound
    bool vacuous = false;
    bool holds = false;            ///< count >= bound
};

/// Exact |A| = |{x in [q]^n : d(x) > n(1-1/q-eps)}| by full enumeration.
SetCount exact_set_A(std::size_t n, int q, double eps, std::uint64_t budget = kDefaultEnumerationBudget);

/// Exact |B| over the weight-pn slice, compared with the conditional chain bound.
SetCount exact_set_B(std::size_t n, double p, double eps, std::uint64_t budget = kDefaultEnumerationBudget);

struct SamplingMode {
    enum class Kind { Uniform, Bernoulli, WeightSlice };
    Kind kind = Kind::Uniform;
    double p = 0.5;          ///< Bernoulli
    std::size_t weight = 0;  ///< WeightSlice

    static SamplingMode uniform() { return {}; }
    static SamplingMode bernoulli(double p) { return {Kind::Bernoulli, p, 0}; }
    static SamplingMode weight_slice(std::size_t w) { return {Kind::WeightSlice, 0.5, w}; }
};

std::string to_string(SamplingMode::Kind kind);

struct TailEstimate {
    std::size_t n = 0;
    int q = 2;
    SamplingMode mode;
    double threshold = 0;  ///< event is d(X) <= threshold
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t hits = 0;
    double p_hat = 0;
    double std_error = 0;
    /// McDiarmid per-shift tail at this threshold; absent when the threshold
    /// is not below the mean of d(X, pi_i X).
    std::optional<double> per_shift_tail;
    /// (n-1) * per_shift_tail, times the Stirling factor for weight-slice sampling.
    std::optional<double> union_bound;
    std::optional<double> stirling_factor;
    std::string generator;
};

/// Estimates Pr[d(X) <= theta]. Bit-for-bit reproducible for fixed
/// (parameters, samples, seed) regardless of `threads`.
TailEstimate mc_tail(std::size_t n, int q, double theta, std::uint64_t samples, std::uint64_t seed,
                     SamplingMode mode = SamplingMode::uniform(), unsigned threads = 1);

/// Pr[d(X) <= theta | wt(X) = pn] by uniform sampling from the weight slice.
TailEstimate conditional_tail_weight_slice(std::size_t n, double p, double theta, std::uint64_t samples,
                                           std::uint64_t seed, unsigned threads = 1);

/// Draws a uniform word of the weight-w slice by shuffling w ones and n-w zeros.
template <class Rng>
void sample_weight_slice(std::vector<Symbol>& out, std::size_t n, std::size_t w, Rng& rng) {
    out.assign(n, 0);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(w), Symbol{1});
    std::shuffle(out.begin(), out.end(), rng);
}

}  // namespace cyclocode
