#include "cyclocode/volume.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "cyclocode/errors.hpp"

namespace cyclocode {

namespace mp = boost::multiprecision;

BigInt ball_volume(std::size_t n, int q, std::size_t t) {
    if (q < 2) throw DomainError("alphabet size must be at least 2");
    if (t > n) throw DomainError("radius t=" + std::to_string(t) + " exceeds n=" + std::to_string(n));
    BigInt total = 0;
    BigInt term = 1;  // C(n,i) (q-1)^i
    for (std::size_t i = 0; i <= t; ++i) {
        if (i > 0) {
            term *= (n - i + 1) * static_cast<std::uint64_t>(q - 1);
            term /= i;
        }
        total += term;
    }
    return total;
}

BigInt cw_ball_volume(std::size_t n, std::size_t w, std::size_t t) {
    if (w > n) throw DomainError("weight w=" + std::to_string(w) + " exceeds n=" + std::to_string(n));
    if (t > 2 * w) throw DomainError("radius t=" + std::to_string(t) + " exceeds 2w=" + std::to_string(2 * w));
    BigInt total = 0;
    for (std::size_t i = 0; i <= t / 2; ++i) total += binomial(w, i) * binomial(n - w, i);
    return total;
}

namespace {

// Depth-first walk over B(center, t); every node is a ball element. Tracks
// the distance of the current word to `other` incrementally.
struct BallWalker {
    const Word& center;
    const Word& other;
    std::size_t t;
    std::size_t n;
    int q;
    std::uint64_t hits = 0;

    void walk(std::size_t start, std::size_t depth, std::size_t dist_other) {
        if (dist_other <= t) ++hits;
        if (depth == t) return;
        for (std::size_t j = start; j < n; ++j) {
            const bool was_diff = center[j] != other[j];
            for (int s = 0; s < q; ++s) {
                if (s == center[j]) continue;
                const bool now_diff = s != other[j];
                walk(j + 1, depth + 1, dist_other - was_diff + now_diff);
            }
        }
    }
};

// Walk over the weight slice B(center, t; w): swap k ones for k zeros, 2k <= t.
struct SliceWalker {
    const Word& other;
    std::size_t t;
    std::vector<std::size_t> ones;
    std::vector<std::size_t> zeros;
    std::uint64_t hits = 0;

    // Choose ones to clear (ascending), then the same number of zeros to set.
    void pick_ones(std::size_t start, std::size_t k, std::size_t dist_other) {
        pick_zeros(0, k, k, dist_other);
        if (2 * (k + 1) > t) return;
        for (std::size_t a = start; a < ones.size(); ++a) {
            const std::size_t j = ones[a];
            // center has 1 at j; flipping to 0
            const std::size_t d = dist_other - (other[j] != 1) + (other[j] != 0);
            pick_ones(a + 1, k + 1, d);
        }
    }

    void pick_zeros(std::size_t start, std::size_t remaining, std::size_t k, std::size_t dist_other) {
        (void)k;
        if (remaining == 0) {
            if (dist_other <= t) ++hits;
            return;
        }
        for (std::size_t b = start; b + remaining <= zeros.size(); ++b) {
            const std::size_t j = zeros[b];
            const std::size_t d = dist_other - (other[j] != 0) + (other[j] != 1);
            pick_zeros(b + 1, remaining - 1, k, d);
        }
    }
};

}  // namespace

BigInt ball_intersection_volume(const Word& x, const Word& y, std::size_t t, std::optional<std::size_t> weight,
                                std::uint64_t budget) {
    require_same_shape(x, y);
    const std::size_t n = x.size();
    if (t > n) throw DomainError("radius exceeds n");
    const std::size_t separation = hamming_distance(x, y);
    if (weight) {
        if (x.alphabet() != 2) throw UnsupportedError("weight-slice intersection requires q = 2");
        if (cyclocode::weight(x) != *weight || cyclocode::weight(y) != *weight) {
            throw DomainError("both centers must have weight " + std::to_string(*weight));
        }
        const std::size_t radius = std::min(t, 2 * std::min(*weight, n - *weight));
        const BigInt volume = cw_ball_volume(n, *weight, radius);
        if (volume > budget) throw CapacityError("ball_intersection_volume", saturate_u64(volume), budget);
        if (separation > 2 * t) return 0;
        SliceWalker walker{y, t, {}, {}, 0};
        for (std::size_t j = 0; j < n; ++j) (x[j] ? walker.ones : walker.zeros).push_back(j);
        walker.pick_ones(0, 0, separation);
        return walker.hits;
    }
    const BigInt volume = ball_volume(n, x.alphabet(), t);
    if (volume > budget) throw CapacityError("ball_intersection_volume", saturate_u64(volume), budget);
    if (separation > 2 * t) return 0;
    BallWalker walker{x, y, t, n, x.alphabet(), 0};
    walker.walk(0, 0, separation);
    return walker.hits;
}

DecayTable intersection_decay_table(std::size_t n, int q, std::size_t t, std::optional<std::size_t> weight,
                                    std::uint64_t budget) {
    if (t > n) throw DomainError("radius exceeds n");
    DecayTable table{n, q, t, weight, 0, {}, true};
    if (weight) {
        if (q != 2) throw UnsupportedError("weight-slice table requires q = 2");
        const std::size_t w = *weight;
        if (w > n) throw DomainError("weight exceeds n");
        const std::size_t max_swaps = std::min(w, n - w);
        table.volume = cw_ball_volume(n, w, std::min(t, 2 * max_swaps));
        std::vector<Symbol> base(n, 0);
        for (std::size_t j = 0; j < w; ++j) base[j] = 1;
        const Word x(base, 2);
        for (std::size_t k = 0; k <= max_swaps; ++k) {
            std::vector<Symbol> other = base;
            for (std::size_t j = 0; j < k; ++j) {
                other[j] = 0;
                other[w + j] = 1;
            }
            const BigInt inter = ball_intersection_volume(x, Word(other, 2), t, w, budget);
            table.rows.push_back({2 * k, inter, Rational(inter, table.volume)});
        }
    } else {
        table.volume = ball_volume(n, q, t);
        const Word x = Word::zeros(n, q);
        for (std::size_t s = 0; s <= n; ++s) {
            std::vector<Symbol> other(n, 0);
            for (std::size_t j = 0; j < s; ++j) other[j] = 1;
            const BigInt inter = ball_intersection_volume(x, Word(other, q), t, std::nullopt, budget);
            table.rows.push_back({s, inter, Rational(inter, table.volume)});
        }
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        if (table.rows[i].ratio > table.rows[i - 1].ratio) table.nonincreasing = false;
    }
    return table;
}

Rational gv_bound(std::size_t n, int q, std::size_t d) {
    if (d < 1 || d > n) throw DomainError("GV bound needs 1 <= d <= n");
    return Rational(power(static_cast<std::uint64_t>(q), n), ball_volume(n, q, d - 1));
}

BigFloat nxy_deficit(std::size_t n, double eps) {
    const BigFloat e(eps);
    const BigFloat nn(static_cast<double>(n));
    return nn * nn * mp::exp(-(e * e) * (mp::sqrt(nn) - 2) / 2);
}

namespace {

void require_nxy_eps(int q, double eps) {
    const double upper = 1.0 - 1.0 / q;
    if (!(eps > 0.0 && eps < upper)) {
        std::ostringstream out;
        out << "eps must satisfy 0 < eps < 1 - 1/q = " << upper << ", got " << eps;
        throw DomainError(out.str());
    }
}

RealBound finish(BigFloat value) {
    RealBound bound{std::move(value), false};
    bound.vacuous = bound.value <= 0;
    return bound;
}

}  // namespace

RealBound nxy_hcc_bound(std::size_t n, int q, std::size_t d, double eps) {
    if (d < 1 || d > n) throw DomainError("NXY bound needs 1 <= d <= n");
    require_nxy_eps(q, eps);
    const BigInt volume = ball_volume(n, q, d - 1);
    if (volume == 1) throw DomainError("division domain: Vol_q(n,d-1) - 1 = 0 (d = 1)");
    const BigFloat qn(power(static_cast<std::uint64_t>(q), n));
    return finish(qn * (1 - nxy_deficit(n, eps)) / BigFloat(volume - 1));
}

Rational levenshtein_bound(std::size_t n, std::size_t w, std::size_t d) {
    if (w > n) throw DomainError("Levenshtein bound needs w <= n");
    if (d < 1 || d > 2 * w) throw DomainError("Levenshtein bound needs 1 <= d <= 2w");
    return Rational(binomial(n, w), cw_ball_volume(n, w, d - 1));
}

RealBound fhs_nxy_bound(std::size_t n, int q, std::size_t lambda, double eps) {
    if (lambda + 1 > n) throw DomainError("FHS bound needs lambda <= n - 1");
    require_nxy_eps(q, eps);
    const BigInt volume = ball_volume(n, q, n - lambda - 1);
    if (volume == 1) throw DomainError("division domain: Vol_q(n,n-lambda-1) - 1 = 0 (lambda = n - 1)");
    const BigFloat qn(power(static_cast<std::uint64_t>(q), n));
    return finish(qn * (1 - nxy_deficit(n, eps)) / (BigFloat(static_cast<double>(n)) * BigFloat(volume - 1)));
}

double independence_lower_bound(double num_vertices, double max_degree_bound, double k) {
    if (!(max_degree_bound >= 1)) throw DomainError("independence bound needs D >= 1");
    if (!(k >= 1 && k <= max_degree_bound * max_degree_bound + 1)) {
        throw DomainError("independence bound needs 1 <= K <= D^2 + 1");
    }
    return num_vertices / max_degree_bound * std::log(std::min(max_degree_bound, k));
}

double mcdiarmid_tail(double t, const std::vector<double>& c) {
    if (!(t > 0)) throw DomainError("McDiarmid tail needs t > 0");
    if (c.empty()) throw DomainError("McDiarmid tail needs at least one coordinate");
    double sum = 0;
    for (double ci : c) {
        if (!(ci > 0)) throw DomainError("McDiarmid tail needs every c_i > 0");
        sum += ci * ci;
    }
    return std::exp(-2 * t * t / sum);
}

LemmaABound lemma_A_bound(std::size_t n, int q, double eps) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (q < 2) throw DomainError("alphabet size must be at least 2");
    const double upper = 1.0 - 1.0 / q;
    if (!(eps > 0 && eps < upper)) throw DomainError("set A bound needs 0 < eps < 1 - 1/q");
    LemmaABound b;
    b.n = n;
    b.q = q;
    b.eps = eps;
    const BigFloat e(eps);
    const BigFloat nn(static_cast<double>(n));
    const BigFloat tail = mp::exp(-(e * e) * nn / 2);
    b.per_shift_tail = static_cast<double>(tail);
    b.union_factor = static_cast<double>(n - 1);
    b.failure_probability = BigFloat(static_cast<double>(n - 1)) * tail;
    b.total = power(static_cast<std::uint64_t>(q), n);
    b.value = BigFloat(b.total) * (1 - b.failure_probability);
    b.vacuous = b.value <= 0;
    return b;
}

std::size_t integral_weight(std::size_t n, double p) {
    const double pn = p * static_cast<double>(n);
    const double rounded = std::round(pn);
    if (std::abs(pn - rounded) > 1e-9) {
        std::ostringstream out;
        out << "pn must be an integer, got p*n = " << pn;
        throw DomainError(out.str());
    }
    return static_cast<std::size_t>(rounded);
}

LemmaBBound lemma_B_bound(std::size_t n, double p, double eps) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (!(p > 0 && p < 1)) throw DomainError("set B bound needs 0 < p < 1");
    if (!(eps > 0)) throw DomainError("set B bound needs eps > 0");
    const std::size_t w = integral_weight(n, p);
    LemmaBBound b;
    b.n = n;
    b.weight = w;
    b.p = p;
    b.eps = eps;
    // p is taken as exactly pn / n from here on
    const BigFloat pp = BigFloat(static_cast<double>(w)) / static_cast<double>(n);
    const BigFloat nn(static_cast<double>(n));
    const BigFloat e(eps);
    const BigFloat spread = pp * (1 - pp);
    const BigFloat tail = mp::exp(-(1 + e) * (1 + e) * spread * spread * nn / 2);
    const BigFloat root = mp::sqrt(2 * boost::math::constants::pi<BigFloat>() * nn * spread);
    const BigFloat ell = mp::exp(-1 / (12 * nn + 1) + 1 / (12 * pp * nn) + 1 / (12 * (1 - pp) * nn));
    b.per_shift_tail = static_cast<double>(tail);
    b.union_factor = static_cast<double>(n - 1);
    b.stirling_sqrt = static_cast<double>(root);
    b.stirling_ell = static_cast<double>(ell);
    b.failure_probability = BigFloat(static_cast<double>(n - 1)) * tail * root * ell;
    b.total = binomial(n, w);
    b.value = BigFloat(b.total) * (1 - b.failure_probability);
    b.vacuous = b.value <= 0;
    return b;
}

// ---- report -------------------------------------------------------------

const BoundEntry* BoundReport::find(const std::string& key) const {
    for (const auto& e : entries) {
        if (e.key == key) return &e;
    }
    return nullptr;
}

namespace {

BoundEntry exact_entry(std::string key, std::string formula, Rational value, std::string note = {}) {
    BoundEntry e;
    e.key = std::move(key);
    e.formula = std::move(formula);
    e.exact = std::move(value);
    e.note = std::move(note);
    return e;
}

BoundEntry real_entry(std::string key, std::string formula, const RealBound& bound) {
    BoundEntry e;
    e.key = std::move(key);
    e.formula = std::move(formula);
    e.real = bound.value;
    e.vacuous = bound.vacuous;
    if (bound.vacuous) e.note = "vacuous (value <= 0)";
    return e;
}

BoundEntry note_entry(std::string key, std::string formula, std::string note) {
    BoundEntry e;
    e.key = std::move(key);
    e.formula = std::move(formula);
    e.note = std::move(note);
    return e;
}

}  // namespace

BoundReport evaluate_bounds(const BoundParams& input) {
    BoundParams params = input;
    if (params.n < 1) throw DomainError("n must be at least 1");
    if (params.q < 2 || params.q > kMaxAlphabet) throw DomainError("q must be in [2, 256]");
    if (params.kappa) {
        if (*params.kappa < 1 || *params.kappa > params.n) throw DomainError("kappa must satisfy 1 <= kappa <= n");
        const std::size_t implied = params.n - *params.kappa + 1;
        if (params.d && *params.d != implied) throw DomainError("kappa implies d = n - kappa + 1, which conflicts with d");
        params.d = implied;
    }
    if (params.d && (*params.d < 1 || *params.d > params.n)) throw DomainError("d must satisfy 1 <= d <= n");
    if (params.w && params.q != 2) throw DomainError("constant-weight bounds require q = 2");
    if (params.w && *params.w > params.n) throw DomainError("w must satisfy w <= n");
    if (params.p && params.w) {
        if (integral_weight(params.n, *params.p) != *params.w) throw DomainError("p conflicts with w (pn != w)");
    }
    if (params.p && !params.w && params.q == 2) params.w = integral_weight(params.n, *params.p);
    if (params.lambda && *params.lambda >= params.n) throw DomainError("lambda must satisfy lambda <= n - 1");
    if (params.tau && !(*params.tau > 0)) throw DomainError("tau must be positive");

    BoundReport report;
    report.params = params;
    const std::size_t n = params.n;
    const int q = params.q;
    const BigInt qn = power(static_cast<std::uint64_t>(q), n);

    if (params.d) {
        const std::size_t d = *params.d;
        const BigInt vol = ball_volume(n, q, d - 1);
        report.entries.push_back(exact_entry("gv", "q^n / Vol_q(n,d-1)", gv_bound(n, q, d)));
        if (params.eps) {
            if (vol == 1) {
                report.entries.push_back(note_entry("nxy_hcc", "q^n (1 - n^2 e^{-eps^2 (sqrt n - 2)/2}) / (Vol_q(n,d-1) - 1)",
                                                    "division domain: Vol_q(n,d-1) - 1 = 0"));
            } else {
                report.entries.push_back(real_entry("nxy_hcc", "q^n (1 - n^2 e^{-eps^2 (sqrt n - 2)/2}) / (Vol_q(n,d-1) - 1)",
                                                    nxy_hcc_bound(n, q, d, *params.eps)));
            }
        }
        report.entries.push_back(exact_entry("hcc_graph_scale", "M >= c n q^n / Vol_q(n,d-1)",
                                             Rational(qn * n, vol), "constant c unspecified; value shown at c = 1"));
        report.entries.push_back(exact_entry("generic_linear_gain_scale", "M = Omega(n q^n / Vol_q(n,d-1))",
                                             Rational(qn * n, vol), "hidden constant unspecified; value shown at 1"));
        if (params.kappa) {
            report.entries.push_back(exact_entry("wmuc_graph_scale", "M >= c q^n / Vol_q(n,n-kappa)",
                                                 Rational(qn, ball_volume(n, q, n - *params.kappa)),
                                                 "representatives of an (n, M', n-kappa+1)-HCC; constant c unspecified"));
        }
    }
    if (params.w && params.d) {
        const std::size_t w = *params.w;
        const std::size_t d = *params.d;
        if (d > 2 * w) throw DomainError("Levenshtein bound needs d <= 2w");
        const BigInt cvol = cw_ball_volume(n, w, d - 1);
        report.entries.push_back(exact_entry("levenshtein", "C(n,w) / Vol(n,d-1;w)", levenshtein_bound(n, w, d)));
        report.entries.push_back(exact_entry("ooc_graph_scale", "M >= c n C(n,w) / Vol(n,d-1;w)",
                                             Rational(binomial(n, w) * n, cvol), "constant c unspecified; value shown at c = 1"));
        report.entries.push_back(note_entry("cyclic_cw_prior", "M >= (C(n,w) - f(n,w,d)) / (n Vol(n,d-1;w))",
                                            "f(n,w,d) not specified; not evaluated"));
    }
    if (params.lambda && params.eps) {
        const std::size_t lambda = *params.lambda;
        if (ball_volume(n, q, n - lambda - 1) == 1) {
            report.entries.push_back(note_entry("fhs_nxy", "q^n (1 - n^2 e^{-eps^2 (sqrt n - 2)/2}) / (n (Vol_q(n,n-lambda-1) - 1))",
                                                "division domain: Vol_q(n,n-lambda-1) - 1 = 0"));
        } else {
            report.entries.push_back(real_entry("fhs_nxy", "q^n (1 - n^2 e^{-eps^2 (sqrt n - 2)/2}) / (n (Vol_q(n,n-lambda-1) - 1))",
                                                fhs_nxy_bound(n, q, lambda, *params.eps)));
        }
    }
    if (params.eps) {
        const double upper = 1.0 - 1.0 / q;
        if (*params.eps > 0 && *params.eps < upper) {
            const LemmaABound a = lemma_A_bound(n, q, *params.eps);
            report.entries.push_back(real_entry("set_A_lower", "q^n (1 - (n-1) exp(-eps^2 n / 2))", {a.value, a.vacuous}));
            report.entries.push_back(real_entry("nxy_set_lower", "q^n (1 - n^2 e^{-eps^2 (sqrt n - 2)/2})",
                                                finish(BigFloat(qn) * (1 - nxy_deficit(n, *params.eps)))));
            // c_i = 2 for every coordinate, deviation t = eps n
            const double tail = mcdiarmid_tail(*params.eps * static_cast<double>(n), std::vector<double>(n, 2.0));
            if (n <= 64) {
                for (std::size_t i = 1; i < n; ++i) report.mcdiarmid_terms.emplace_back(i, tail);
            }
        }
        if (params.w && q == 2 && *params.w > 0 && *params.w < n) {
            const LemmaBBound b = lemma_B_bound(n, static_cast<double>(*params.w) / static_cast<double>(n), *params.eps);
            report.entries.push_back(real_entry("set_B_lower", "C(n,pn) (1 - (n-1) tail sqrt(2 pi n p(1-p)) l(n))",
                                                {b.value, b.vacuous}));
        }
    }
    return report;
}

std::string to_key_value(const BoundReport& report) {
    std::ostringstream out;
    const auto& p = report.params;
    out << "n = " << p.n << '\n' << "q = " << p.q << '\n';
    if (p.d) out << "d = " << *p.d << '\n';
    if (p.w) out << "w = " << *p.w << '\n';
    if (p.lambda) out << "lambda = " << *p.lambda << '\n';
    if (p.kappa) out << "kappa = " << *p.kappa << '\n';
    if (p.eps) out << "eps = " << *p.eps << '\n';
    if (p.tau) out << "tau = " << *p.tau << '\n';
    if (p.p) out << "p = " << *p.p << '\n';
    for (const auto& e : report.entries) {
        out << e.key << " = ";
        if (e.exact) {
            out << format_rational(*e.exact);
        } else if (e.real) {
            out << format_real(*e.real);
        } else {
            out << "n/a";
        }
        if (!e.note.empty()) out << "  # " << e.note;
        out << '\n';
    }
    for (const auto& [i, tail] : report.mcdiarmid_terms) out << "mcdiarmid_tail[" << i << "] = " << tail << '\n';
    return out.str();
}

}  // namespace cyclocode
