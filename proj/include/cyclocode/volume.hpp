#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclocode/numeric.hpp"
#include "cyclocode/word.hpp"

namespace cyclocode {

inline constexpr std::uint64_t kDefaultIntersectionBudget = 100'000'000;

// ---- exact volumes ------------------------------------------------------

/// Vol_q(n, t) = sum_{i<=t} C(n,i) (q-1)^i.
BigInt ball_volume(std::size_t n, int q, std::size_t t);

/// Vol(n, t; w) = sum_{i<=floor(t/2)} C(w,i) C(n-w,i); requires w <= n and t <= 2w.
BigInt cw_ball_volume(std::size_t n, std::size_t w, std::size_t t);

/// |B(x,t) ∩ B(y,t)|, or its weight-slice analogue when `weight` is set.
/// Enumerates B(x,t) (or its slice) and tests membership in the other ball.
BigInt ball_intersection_volume(const Word& x, const Word& y, std::size_t t,
                                std::optional<std::size_t> weight = std::nullopt,
                                std::uint64_t budget = kDefaultIntersectionBudget);

struct DecayRow {
    std::size_t separation = 0;
    BigInt intersection;
    Rational ratio;
};

struct DecayTable {
    std::size_t n = 0;
    int q = 2;
    std::size_t t = 0;
    std::optional<std::size_t> weight;
    BigInt volume;
    std::vector<DecayRow> rows;
    bool nonincreasing = true;  ///< observation only; decay is claimed asymptotically
};

/// Exact |B∩B|/Vol for every achievable separation s.
DecayTable intersection_decay_table(std::size_t n, int q, std::size_t t,
                                    std::optional<std::size_t> weight = std::nullopt,
                                    std::uint64_t budget = kDefaultIntersectionBudget);

// ---- closed-form bounds -------------------------------------------------

/// A real-valued bound that may be negative (vacuous) at small n.
struct RealBound {
    BigFloat value;
    bool vacuous = false;  ///< value <= 0
};

/// q^n / Vol_q(n, d-1).
Rational gv_bound(std::size_t n, int q, std::size_t d);

/// Niu-Xing-Yuan HCC bound q^n (1 - n^2 e^{-eps^2 (sqrt n - 2)/2}) / (Vol_q(n,d-1) - 1).
/// Throws DomainError when Vol_q(n,d-1) = 1 (d = 1).
RealBound nxy_hcc_bound(std::size_t n, int q, std::size_t d, double eps);

/// Niu-Xing-Yuan subtracted term n^2 e^{-eps^2 (sqrt n - 2)/2}.
BigFloat nxy_deficit(std::size_t n, double eps);

/// C(n,w) / Vol(n, d-1; w).
Rational levenshtein_bound(std::size_t n, std::size_t w, std::size_t d);

/// FHS bound q^n (1 - n^2 e^{-eps^2 (sqrt n - 2)/2}) / (n (Vol_q(n, n-lambda-1) - 1)).
RealBound fhs_nxy_bound(std::size_t n, int q, std::size_t lambda, double eps);

/// (|V|/D) ln(min{D, K}) with the (1 - o(1)) factor dropped; a reporting
/// heuristic, not a guarantee at finite size. Requires D >= 1, 1 <= K <= D^2 + 1.
double independence_lower_bound(double num_vertices, double max_degree_bound, double k);

/// exp(-2 t^2 / sum c_i^2).
double mcdiarmid_tail(double t, const std::vector<double>& c);

/// Guaranteed lower bound on |A| = |{x : d(x) > n(1 - 1/q - eps)}|, with its factors.
struct LemmaABound {
    std::size_t n = 0;
    int q = 2;
    double eps = 0;
    double per_shift_tail = 0;   ///< exp(-eps^2 n / 2)
    double union_factor = 0;     ///< n - 1
    BigFloat failure_probability;  ///< union_factor * per_shift_tail
    BigInt total;                ///< q^n
    BigFloat value;              ///< total * (1 - failure_probability)
    bool vacuous = false;
};
LemmaABound lemma_A_bound(std::size_t n, int q, double eps);

/// Guaranteed lower bound on |B| = |{x in weight-pn slice : d(x) > (1-eps) n p (1-p)}|
/// following the conditional-probability chain with the Stirling correction.
struct LemmaBBound {
    std::size_t n = 0;
    std::size_t weight = 0;  ///< pn
    double p = 0;
    double eps = 0;
    double per_shift_tail = 0;  ///< exp(-(1+eps)^2 p^2 (1-p)^2 n / 2)
    double union_factor = 0;    ///< n - 1
    double stirling_sqrt = 0;   ///< sqrt(2 pi n p (1-p))
    double stirling_ell = 0;    ///< l(n) = exp(-1/(12n+1) + 1/(12pn) + 1/(12(1-p)n))
    BigFloat failure_probability;  ///< product of the four factors above
    BigInt total;               ///< C(n, pn)
    BigFloat value;             ///< total * (1 - failure_probability)
    bool vacuous = false;
};
LemmaBBound lemma_B_bound(std::size_t n, double p, double eps);

/// pn as an integer; throws DomainError when pn is not integral.
std::size_t integral_weight(std::size_t n, double p);

// ---- bound report -------------------------------------------------------

struct BoundParams {
    std::size_t n = 0;
    int q = 2;
    std::optional<std::size_t> d;
    std::optional<std::size_t> w;
    std::optional<std::size_t> lambda;
    std::optional<std::size_t> kappa;
    std::optional<double> eps;
    std::optional<double> tau;
    std::optional<double> p;
};

/// One row of a bound report. Exactly one of exact/real/note is the payload.
struct BoundEntry {
    std::string key;
    std::string formula;
    std::optional<Rational> exact;
    std::optional<BigFloat> real;
    bool vacuous = false;
    std::string note;  ///< domain condition or "constant unspecified"
};

struct BoundReport {
    BoundParams params;
    std::vector<BoundEntry> entries;
    std::vector<std::pair<std::size_t, double>> mcdiarmid_terms;

    const BoundEntry* find(const std::string& key) const;
};

/// Evaluates every bound whose parameters are present. Throws DomainError
/// naming the violated domain on inconsistent parameters.
BoundReport evaluate_bounds(const BoundParams& params);

/// One "key = value" line per metric.
std::string to_key_value(const BoundReport& report);

}  // namespace cyclocode
