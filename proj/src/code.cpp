#include "cyclocode/code.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cyclocode/errors.hpp"
#include "cyclocode/packed.hpp"
#include "cyclocode/volume.hpp"
#include "detail/parallel.hpp"

namespace cyclocode {

std::string to_string(CodeKind kind) {
    switch (kind) {
        case CodeKind::Hcc: return "HCC";
        case CodeKind::Ooc: return "OOC";
        case CodeKind::Fhs: return "FHS";
        case CodeKind::Wmuc: return "WMUC";
    }
    return "UNKNOWN";
}

CodeKind parse_kind(std::string_view text) {
    if (text == "HCC") return CodeKind::Hcc;
    if (text == "OOC") return CodeKind::Ooc;
    if (text == "FHS") return CodeKind::Fhs;
    if (text == "WMUC") return CodeKind::Wmuc;
    throw DomainError("unknown code kind '" + std::string(text) + "'");
}

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }

Verdict fail(Verdict v, std::string check, Witness witness) {
    v.pass = false;
    v.failed_check = std::move(check);
    v.witness = std::move(witness);
    return v;
}

// Shape check plus sorting; the first problem found in sorted order is reported.
std::optional<Verdict> prepare(std::vector<Word>& words, std::size_t n, int q, Verdict& base) {
    base.word_count = words.size();
    for (const Word& w : words) {
        if (w.size() != n || w.alphabet() != q) {
            return fail(base, "shape", Witness{{w}, {}, {}, {}, "word length or alphabet differs from the header"});
        }
    }
    std::sort(words.begin(), words.end());
    const auto dup = std::adjacent_find(words.begin(), words.end());
    if (dup != words.end()) return fail(base, "duplicate", Witness{{*dup}, {}, {}, {}, "word listed twice"});
    if (words.empty()) base.warnings.push_back("empty code: passes vacuously");
    return std::nullopt;
}

struct PairHit {
    std::size_t other = 0;
    std::size_t shift = 0;
    std::size_t distance = 0;
};

// For each representative a: minimum class distance to later representatives
// and the first later class (in order) closer than d.
struct PairScan {
    std::vector<std::size_t> min_per_row;
    std::vector<std::optional<PairHit>> first_hit;
};

PairScan scan_class_pairs(const std::vector<Word>& reps, std::size_t d, unsigned threads) {
    const std::size_t k = reps.size();
    PairScan scan{std::vector<std::size_t>(k, std::numeric_limits<std::size_t>::max()), std::vector<std::optional<PairHit>>(k)};
    if (k < 2) return scan;
    const std::size_t n = reps.front().size();
    const int q = reps.front().alphabet();
    if (PackedCodec::fits(n, q)) {
        const PackedCodec codec(n, q);
        std::vector<std::uint64_t> rot(k * n);
        for (std::size_t v = 0; v < k; ++v) {
            const std::uint64_t p = codec.pack(reps[v]);
            for (std::size_t i = 0; i < n; ++i) rot[v * n + i] = codec.rotate(p, i);
        }
        detail::run_parallel(k, threads, [&](std::size_t a) {
            const std::uint64_t x = rot[a * n];
            std::size_t row = std::numeric_limits<std::size_t>::max();
            for (std::size_t b = a + 1; b < k; ++b) {
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t dist = codec.distance(x, rot[b * n + i]);
                    row = std::min(row, dist);
                    if (dist < d && !scan.first_hit[a]) scan.first_hit[a] = PairHit{b, i, dist};
                }
            }
            scan.min_per_row[a] = row;
        });
    } else {
        detail::run_parallel(k, threads, [&](std::size_t a) {
            std::size_t row = std::numeric_limits<std::size_t>::max();
            for (std::size_t b = a + 1; b < k; ++b) {
                for (std::size_t i = 0; i < n; ++i) {
                    std::size_t dist = 0;
                    for (std::size_t j = 0; j < n; ++j) dist += reps[a][j] != reps[b][(j + i) % n];
                    row = std::min(row, dist);
                    if (dist < d && !scan.first_hit[a]) scan.first_hit[a] = PairHit{b, i, dist};
                }
            }
            scan.min_per_row[a] = row;
        });
    }
    return scan;
}

// Searches B(rep, d-1) of each representative for another codeword.
std::optional<std::pair<std::size_t, std::pair<std::uint64_t, std::size_t>>> ball_search(
    const std::vector<Word>& reps, const std::vector<Word>& code, std::size_t d, unsigned threads) {
    const std::size_t n = reps.front().size();
    const int q = reps.front().alphabet();
    const PackedCodec codec(n, q);
    const unsigned bits = PackedCodec::bits_for(q);
    std::unordered_set<std::uint64_t> members;
    members.reserve(code.size());
    for (const Word& w : code) members.insert(codec.pack(w));
    const std::size_t radius = d - 1;

    std::vector<std::optional<std::pair<std::uint64_t, std::size_t>>> found(reps.size());
    detail::run_parallel(reps.size(), threads, [&](std::size_t a) {
        const std::uint64_t center = codec.pack(reps[a]);
        const auto walk = [&](auto&& self, std::size_t start, std::uint64_t v, std::size_t depth) -> bool {
            if (depth > 0 && members.contains(v)) {
                found[a] = {v, depth};
                return true;
            }
            if (depth == radius) return false;
            for (std::size_t j = start; j < n; ++j) {
                const unsigned shift = static_cast<unsigned>((n - 1 - j) * bits);
                const std::uint64_t own = (center >> shift) & ((std::uint64_t{1} << bits) - 1);
                const std::uint64_t cleared = v & ~(((std::uint64_t{1} << bits) - 1) << shift);
                for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(q); ++s) {
                    if (s == own) continue;
                    if (self(self, j + 1, cleared | (s << shift), depth + 1)) return true;
                }
            }
            return false;
        };
        walk(walk, 0, center, 0);
    });
    for (std::size_t a = 0; a < reps.size(); ++a) {
        if (found[a]) return std::make_pair(a, *found[a]);
    }
    return std::nullopt;
}

std::vector<Word> representatives(const std::vector<Word>& words) {
    std::vector<Word> reps;
    for (const Word& w : words) {
        if (canonical_rotation(w) == w) reps.push_back(w);
    }
    return reps;
}

struct ShellHit {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t shift = 0;
    std::size_t distance = 0;
};

// Smallest d(x_a, pi_i x_b) over a != b by searching Hamming shells of growing
// radius around each sequence in an index of all rotations. Gives up (nullopt)
// once the shells cost more than `pair_cost`, or when two rotations coincide.
std::optional<ShellHit> nearest_cross(const std::vector<std::uint64_t>& rotations, const PackedCodec& codec, std::size_t k,
                                      std::uint64_t pair_cost, unsigned threads) {
    const std::size_t n = codec.length();
    const int q = codec.alphabet();
    const unsigned bits = PackedCodec::bits_for(q);
    const std::uint64_t symbol_mask = (std::uint64_t{1} << bits) - 1;
    std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> index;
    index.reserve(k * n);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!index.emplace(rotations[a * n + i], std::make_pair(a, i)).second) return std::nullopt;
        }
    }
    constexpr std::uint64_t kLookupWeight = 8;
    std::uint64_t spent = 0;
    std::vector<std::optional<ShellHit>> hits(k);
    for (std::size_t r = 1; r <= n; ++r) {
        spent = add_sat(spent, mul_sat(mul_sat(k, saturate_u64(binomial(n, r) * power(static_cast<std::uint64_t>(q - 1), r))),
                                       kLookupWeight));
        if (spent > pair_cost) return std::nullopt;
        detail::run_parallel(k, threads, [&](std::size_t a) {
            const std::uint64_t center = rotations[a * n];
            const auto walk = [&](auto&& self, std::size_t start, std::uint64_t v, std::size_t depth) -> bool {
                if (depth == r) {
                    const auto it = index.find(v);
                    if (it == index.end() || it->second.first == a) return false;
                    hits[a] = ShellHit{a, it->second.first, it->second.second, r};
                    return true;
                }
                for (std::size_t j = start; j + (r - depth) <= n; ++j) {
                    const unsigned shift = static_cast<unsigned>((n - 1 - j) * bits);
                    const std::uint64_t own = (center >> shift) & symbol_mask;
                    const std::uint64_t cleared = v & ~(symbol_mask << shift);
                    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(q); ++s) {
                        if (s == own) continue;
                        if (self(self, j + 1, cleared | (s << shift), depth + 1)) return true;
                    }
                }
                return false;
            };
            walk(walk, 0, center, 0);
        });
        for (const auto& hit : hits) {
            if (hit) return hit;
        }
    }
    return std::nullopt;
}

}  // namespace

CodeArtifact assemble(const ClassGraph& graph, const VertexSet& independent_set) {
    const AdjacencyGraph& g = graph.adjacency;
    for (std::uint32_t v : independent_set) {
        if (v >= g.vertex_count()) throw ContractViolation("vertex index out of range");
    }
    VertexSet sorted = independent_set;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ContractViolation("vertex listed twice");
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::uint32_t u : g.neighbors(sorted[i])) {
            if (std::binary_search(sorted.begin(), sorted.end(), u)) {
                throw ContractViolation("set is not independent: vertices " + std::to_string(sorted[i]) + " and " +
                                        std::to_string(u) + " are adjacent");
            }
        }
    }
    return assemble(graph.params, graph.vertices, sorted);
}

CodeArtifact assemble(const GraphParams& params, const std::vector<CyclicClass>& vertices, const VertexSet& chosen) {
    CodeArtifact code;
    code.kind = params.mode == GraphMode::Ooc ? CodeKind::Ooc : CodeKind::Hcc;
    code.n = params.n;
    code.q = params.q;
    code.d = params.d;
    code.weight = params.mode == GraphMode::Ooc ? params.weight : std::nullopt;
    code.words.reserve(chosen.size() * code.n);
    for (std::uint32_t v : chosen) {
        if (v >= vertices.size()) throw ContractViolation("vertex index out of range");
        const Word& rep = vertices[v].representative;
        for (std::size_t i = 0; i < code.n; ++i) code.words.push_back(cyclic_shift(rep, i));
    }
    return code;
}

Verdict verify_hcc(const std::vector<Word>& code, std::size_t n, int q, std::size_t d, const VerifyOptions& options) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (d < 1) throw DomainError("d must be at least 1");
    std::vector<Word> words = code;
    Verdict base;
    if (auto early = prepare(words, n, q, base)) return *early;

    for (const Word& w : words) {
        const std::size_t p = period(w);
        if (p != n) return fail(base, "period", Witness{{w}, p, {}, {}, "codeword has fewer than n distinct rotations"});
    }
    for (const Word& w : words) {
        const Word next = cyclic_shift(w, 1);
        if (!std::binary_search(words.begin(), words.end(), next)) {
            return fail(base, "closure", Witness{{w, next}, 1, {}, {}, "rotation missing from the code"});
        }
    }
    const std::vector<Word> reps = representatives(words);
    base.class_count = reps.size();
    if (words.size() < 2) return base;

    std::size_t within = std::numeric_limits<std::size_t>::max();
    if (n >= 2) {
        for (const Word& r : reps) {
            std::size_t best = n + 1;
            std::size_t best_shift = 0;
            for (std::size_t i = 1; i < n; ++i) {
                const std::size_t dist = autocorrelation_distance(r, i);
                if (dist < best) {
                    best = dist;
                    best_shift = i;
                }
            }
            if (best < d) {
                return fail(base, "distance", Witness{{r, cyclic_shift(r, best_shift)}, best_shift, {}, best,
                                                      "two rotations of one codeword are too close"});
            }
            within = std::min(within, best);
        }
    }

    const std::uint64_t k = reps.size();
    const std::uint64_t pair_cost = mul_sat(k * (k - 1) / 2, n);
    const bool ball_possible = PackedCodec::fits(n, q);
    const std::uint64_t ball_cost = ball_possible ? mul_sat(k, saturate_u64(ball_volume(n, q, std::min(d - 1, n)))) : kMax;
    const bool use_pairs = pair_cost <= options.budget && (pair_cost <= mul_sat(ball_cost, 8) || !ball_possible);
    if (use_pairs) {
        const PairScan scan = scan_class_pairs(reps, d, options.threads);
        for (std::size_t a = 0; a < k; ++a) {
            if (scan.first_hit[a]) {
                const PairHit& h = *scan.first_hit[a];
                return fail(base, "distance", Witness{{reps[a], cyclic_shift(reps[h.other], h.shift)}, h.shift, {}, h.distance,
                                                      "codewords from two classes are too close"});
            }
        }
        std::size_t best = within;
        for (std::size_t m : scan.min_per_row) best = std::min(best, m);
        base.min_distance = best;
        return base;
    }
    const PackedCodec codec(n, q);
    std::vector<std::uint64_t> rotations(k * n);
    for (std::size_t a = 0; a < k; ++a) {
        const std::uint64_t v = codec.pack(reps[a]);
        for (std::size_t i = 0; i < n; ++i) rotations[a * n + i] = codec.rotate(v, i);
    }
    const std::uint64_t shell_cap =
        std::min(options.budget, std::max(pair_cost, mul_sat(mul_sat(k, saturate_u64(ball_volume(n, q, std::min(d, n)))), 8)));
    if (const auto hit = nearest_cross(rotations, codec, k, shell_cap, options.threads)) {
        if (hit->distance < d) {
            return fail(base, "distance", Witness{{reps[hit->a], cyclic_shift(reps[hit->b], hit->shift)}, hit->shift, {}, hit->distance,
                                                  "codewords from two classes are too close"});
        }
        base.min_distance = std::min(within, hit->distance);
        return base;
    }
    if (ball_cost > options.budget) throw CapacityError("code verification", std::min(pair_cost, ball_cost), options.budget);
    if (const auto hit = ball_search(reps, words, d, options.threads)) {
        return fail(base, "distance", Witness{{reps[hit->first], codec.unpack(hit->second.first)}, {}, {}, hit->second.second,
                                              "codewords from two classes are too close"});
    }
    return base;
}

Verdict verify_ooc(const std::vector<Word>& code, std::size_t n, std::size_t w, std::size_t d, const VerifyOptions& options) {
    if (w > n) throw DomainError("weight exceeds n");
    std::vector<Word> words = code;
    Verdict base;
    if (auto early = prepare(words, n, 2, base)) return *early;
    for (const Word& x : words) {
        if (weight(x) != w) return fail(base, "weight", Witness{{x}, {}, {}, {}, "codeword weight is " + std::to_string(weight(x))});
    }
    return verify_hcc(code, n, 2, d, options);
}

std::size_t hamming_correlation(const Word& x, const Word& y, std::size_t i) {
    require_same_shape(x, y);
    return x.size() - hamming_distance(x, cyclic_shift(y, i));
}

namespace {

struct CorrelationScan {
    CorrelationReport report;
    std::optional<Witness> first_over;  ///< first (x, y, i) above the limit
};

CorrelationScan scan_correlations(std::vector<Word> seqs, std::optional<std::size_t> limit, const VerifyOptions& options) {
    CorrelationScan out;
    out.report.sequences = seqs.size();
    if (seqs.empty()) return out;
    for (const Word& w : seqs) require_same_shape(seqs.front(), w);
    std::sort(seqs.begin(), seqs.end());
    const std::size_t n = seqs.front().size();
    const std::uint64_t k = seqs.size();
    const std::uint64_t cost = mul_sat(mul_sat(k, k + 1) / 2, n);
    if (cost > options.budget) throw CapacityError("correlation scan", cost, options.budget);

    struct Row {
        std::optional<std::size_t> auto_max;
        std::optional<std::size_t> cross_max;
        std::optional<Witness> over;
    };
    std::vector<Row> rows(k);
    const int q = seqs.front().alphabet();
    const bool packed = PackedCodec::fits(n, q);
    std::vector<std::uint64_t> rotations;
    std::optional<PackedCodec> codec;
    if (packed) {
        codec.emplace(n, q);
        rotations.resize(k * n);
        for (std::size_t a = 0; a < k; ++a) {
            const std::uint64_t v = codec->pack(seqs[a]);
            for (std::size_t i = 0; i < n; ++i) rotations[a * n + i] = codec->rotate(v, i);
        }
    }
    const auto correlation = [&](std::size_t a, std::size_t b, std::size_t i) -> std::size_t {
        if (packed) return n - codec->distance(rotations[a * n], rotations[b * n + i]);
        std::size_t dist = 0;
        for (std::size_t j = 0; j < n; ++j) dist += seqs[a][j] != seqs[b][(j + i) % n];
        return n - dist;
    };
    if (packed && k >= 2) {
        if (const auto hit = nearest_cross(rotations, *codec, k, cost, options.threads)) {
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t i = 1; i < n; ++i) {
                    const std::size_t h = correlation(a, a, i);
                    out.report.max_auto = std::max(out.report.max_auto.value_or(0), h);
                    if (limit && h > *limit && !out.first_over) {
                        out.first_over = Witness{{seqs[a], seqs[a]}, i, {}, n - h, "correlation " + std::to_string(h) + " exceeds the limit"};
                    }
                }
            }
            const std::size_t h = n - hit->distance;
            out.report.max_cross = h;
            if (limit && h > *limit && !out.first_over) {
                out.first_over = Witness{{seqs[hit->a], seqs[hit->b]}, hit->shift, {}, hit->distance,
                                         "correlation " + std::to_string(h) + " exceeds the limit"};
            }
            out.report.lambda_achieved = std::max(out.report.max_auto.value_or(0), h);
            return out;
        }
    }
    detail::run_parallel(k, options.threads, [&](std::size_t a) {
        Row& row = rows[a];
        const auto note = [&](std::size_t b, std::size_t i, std::size_t h) {
            if (limit && h > *limit && !row.over) {
                row.over = Witness{{seqs[a], seqs[b]}, i, {}, n - h, "correlation " + std::to_string(h) + " exceeds the limit"};
            }
        };
        for (std::size_t i = 1; i < n; ++i) {
            const std::size_t h = correlation(a, a, i);
            row.auto_max = std::max(row.auto_max.value_or(0), h);
            note(a, i, h);
        }
        for (std::size_t b = a + 1; b < k; ++b) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t h = correlation(a, b, i);
                row.cross_max = std::max(row.cross_max.value_or(0), h);
                note(b, i, h);
            }
        }
    });
    for (Row& row : rows) {
        if (row.auto_max) out.report.max_auto = std::max(out.report.max_auto.value_or(0), *row.auto_max);
        if (row.cross_max) out.report.max_cross = std::max(out.report.max_cross.value_or(0), *row.cross_max);
        if (row.over && !out.first_over) out.first_over = std::move(row.over);
    }
    out.report.lambda_achieved = std::max(out.report.max_auto.value_or(0), out.report.max_cross.value_or(0));
    return out;
}

Verdict require_weight(Verdict base, const std::vector<Word>& words, std::optional<std::size_t> w) {
    if (!w) return base;
    for (const Word& x : words) {
        if (x.alphabet() != 2) return fail(base, "weight", Witness{{x}, {}, {}, {}, "weighted codes are binary"});
        if (weight(x) != *w) return fail(base, "weight", Witness{{x}, {}, {}, {}, "codeword weight is " + std::to_string(weight(x))});
    }
    return base;
}

}  // namespace

CorrelationReport correlation_report(const std::vector<Word>& sequences, const VerifyOptions& options) {
    return scan_correlations(sequences, std::nullopt, options).report;
}

FhsResult derive_fhs(const CodeArtifact& hcc, const VerifyOptions& options) {
    if (hcc.kind != CodeKind::Hcc && hcc.kind != CodeKind::Ooc) throw ContractViolation("FHS derivation needs an HCC or OOC");
    const Verdict verdict = verify_artifact(hcc, options);
    if (!verdict.pass) throw ContractViolation("input code does not verify (" + verdict.failed_check + ")");
    std::vector<Word> sorted = hcc.words;
    std::sort(sorted.begin(), sorted.end());

    FhsResult result;
    result.fhs.kind = CodeKind::Fhs;
    result.fhs.n = hcc.n;
    result.fhs.q = hcc.q;
    result.fhs.d = hcc.d;
    result.fhs.weight = hcc.weight;
    result.fhs.lambda = hcc.d <= hcc.n ? hcc.n - hcc.d : 0;
    result.fhs.words = representatives(sorted);
    result.fhs.provenance = hcc.provenance;
    result.fhs.provenance["derived_from"] = to_string(hcc.kind);
    result.correlations = correlation_report(result.fhs.words, options);
    if (!result.fhs.words.empty() && result.correlations.lambda_achieved > *result.fhs.lambda) {
        throw ContractViolation("derived sequences exceed the correlation bound n - d");
    }
    return result;
}

Verdict verify_wmuc(const std::vector<Word>& code, std::size_t kappa) {
    if (kappa < 1) throw DomainError("kappa must be at least 1");
    Verdict base;
    base.word_count = code.size();
    if (code.empty()) {
        base.warnings.push_back("empty code: passes vacuously");
        return base;
    }
    for (const Word& w : code) require_same_shape(code.front(), w);
    const std::size_t n = code.front().size();
    if (kappa > n) throw DomainError("kappa must be at most n");
    std::vector<Word> words = code;
    std::sort(words.begin(), words.end());
    base.class_count = words.size();

    const auto slice = [](const Word& w, std::size_t from, std::size_t len) {
        const auto s = w.symbols().subspan(from, len);
        return std::string(s.begin(), s.end());
    };
    for (std::size_t len = kappa; len < n; ++len) {
        std::unordered_map<std::string, std::size_t> prefixes;
        prefixes.reserve(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) prefixes.emplace(slice(words[i], 0, len), i);
        for (const Word& y : words) {
            const auto it = prefixes.find(slice(y, n - len, len));
            if (it != prefixes.end()) {
                return fail(base, "wmuc", Witness{{words[it->second], y}, {}, len, {}, "prefix of the first word equals a suffix of the second"});
            }
        }
    }
    return base;
}

CodeArtifact derive_wmuc(const CodeArtifact& hcc, std::size_t kappa, const VerifyOptions& options) {
    if (hcc.kind != CodeKind::Hcc && hcc.kind != CodeKind::Ooc) throw ContractViolation("WMUC derivation needs an HCC or OOC");
    if (kappa < 1 || kappa > hcc.n) throw DomainError("kappa must lie in [1, n]");
    if (hcc.d + kappa < hcc.n + 1) throw ContractViolation("WMUC derivation needs d >= n - kappa + 1");
    const Verdict verdict = verify_artifact(hcc, options);
    if (!verdict.pass) throw ContractViolation("input code does not verify (" + verdict.failed_check + ")");
    std::vector<Word> sorted = hcc.words;
    std::sort(sorted.begin(), sorted.end());

    CodeArtifact out;
    out.kind = CodeKind::Wmuc;
    out.n = hcc.n;
    out.q = hcc.q;
    out.d = hcc.d;
    out.weight = hcc.weight;
    out.kappa = kappa;
    out.words = representatives(sorted);
    out.provenance = hcc.provenance;
    out.provenance["derived_from"] = to_string(hcc.kind);
    const Verdict check = verify_wmuc(out.words, kappa);
    if (!check.pass) throw ContractViolation("derived representatives are not weakly mutually uncorrelated");
    return out;
}

std::optional<std::size_t> minimum_distance(const std::vector<Word>& code, std::uint64_t budget) {
    if (code.size() < 2) return std::nullopt;
    for (const Word& w : code) require_same_shape(code.front(), w);
    const std::uint64_t k = code.size();
    const std::size_t n = code.front().size();
    const std::uint64_t cost = mul_sat(k * (k - 1) / 2, n);
    if (cost > budget) throw CapacityError("minimum distance", cost, budget);
    std::size_t best = n;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) best = std::min(best, hamming_distance(code[a], code[b]));
    }
    return best;
}

Verdict verify_artifact(const CodeArtifact& artifact, const VerifyOptions& options) {
    switch (artifact.kind) {
        case CodeKind::Hcc: return verify_hcc(artifact.words, artifact.n, artifact.q, artifact.d, options);
        case CodeKind::Ooc:
            if (!artifact.weight) throw DomainError("OOC needs a weight");
            if (artifact.q != 2) throw DomainError("OOC needs q = 2");
            return verify_ooc(artifact.words, artifact.n, *artifact.weight, artifact.d, options);
        case CodeKind::Fhs: {
            if (!artifact.lambda) throw DomainError("FHS needs lambda");
            std::vector<Word> words = artifact.words;
            Verdict base;
            if (auto early = prepare(words, artifact.n, artifact.q, base)) return *early;
            base = require_weight(base, words, artifact.weight);
            if (!base.pass) return base;
            std::vector<Word> canon;
            for (const Word& w : words) {
                const std::size_t p = period(w);
                if (p != artifact.n) return fail(base, "period", Witness{{w}, p, {}, {}, "sequence is not full period"});
                canon.push_back(canonical_rotation(w));
            }
            std::vector<std::size_t> order(canon.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return canon[a] < canon[b]; });
            for (std::size_t i = 1; i < order.size(); ++i) {
                if (canon[order[i]] == canon[order[i - 1]]) {
                    return fail(base, "classes", Witness{{words[order[i - 1]], words[order[i]]}, {}, {}, {}, "two sequences are rotations of each other"});
                }
            }
            base.class_count = words.size();
            const CorrelationScan scan = scan_correlations(words, artifact.lambda, options);
            if (scan.first_over) return fail(base, "correlation", *scan.first_over);
            if (words.size() >= 2 || (artifact.n >= 2 && !words.empty())) base.min_distance = artifact.n - scan.report.lambda_achieved;
            return base;
        }
        case CodeKind::Wmuc: {
            if (!artifact.kappa) throw DomainError("WMUC needs kappa");
            std::vector<Word> words = artifact.words;
            Verdict base;
            if (auto early = prepare(words, artifact.n, artifact.q, base)) return *early;
            base = require_weight(base, words, artifact.weight);
            if (!base.pass) return base;
            Verdict wm = verify_wmuc(words, *artifact.kappa);
            if (!wm.pass) {
                wm.warnings = base.warnings;
                return wm;
            }
            base.class_count = words.size();
            base.min_distance = minimum_distance(words, options.budget);
            if (base.min_distance && *base.min_distance < artifact.d) {
                for (std::size_t a = 0; a < words.size(); ++a) {
                    for (std::size_t b = a + 1; b < words.size(); ++b) {
                        const std::size_t dist = hamming_distance(words[a], words[b]);
                        if (dist < artifact.d) {
                            return fail(base, "distance", Witness{{words[a], words[b]}, {}, {}, dist, "codewords are too close"});
                        }
                    }
                }
            }
            return base;
        }
    }
    throw DomainError("unknown code kind");
}

std::string write_code(const CodeArtifact& artifact) {
    std::ostringstream out;
    out << to_string(artifact.kind) << ' ' << artifact.n << ' ' << artifact.q << ' ' << artifact.d;
    switch (artifact.kind) {
        case CodeKind::Hcc: break;
        case CodeKind::Ooc:
            if (!artifact.weight) throw DomainError("OOC needs a weight");
            out << ' ' << *artifact.weight;
            break;
        case CodeKind::Fhs:
            if (!artifact.lambda) throw DomainError("FHS needs lambda");
            if (artifact.weight) out << ' ' << *artifact.weight;
            out << ' ' << *artifact.lambda;
            break;
        case CodeKind::Wmuc:
            if (!artifact.kappa) throw DomainError("WMUC needs kappa");
            if (artifact.weight) out << ' ' << *artifact.weight;
            out << ' ' << *artifact.kappa;
            break;
    }
    out << '\n';
    for (const auto& [key, value] : artifact.provenance) out << "# " << key << " = " << value << '\n';
    for (const Word& w : artifact.words) out << w.to_string() << '\n';
    return out.str();
}

namespace {

std::size_t parse_count(std::string_view token, std::size_t line, const char* name) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line, std::string("invalid ") + name + " '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_tokens(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < text.size() && text[i] != ' ') ++i;
        if (i > start) tokens.push_back(text.substr(start, i - start));
    }
    return tokens;
}

}  // namespace

CodeArtifact read_code(std::string_view text) {
    if (text.empty()) throw ParseError(1, "empty file");
    if (text.back() != '\n') {
        throw ParseError(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1, "missing trailing newline");
    }
    CodeArtifact code;
    bool header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = text.find('\n', pos);
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.front() == '#') {
            const std::string_view body = line.substr(1);
            const std::size_t eq = body.find(" = ");
            if (eq != std::string_view::npos) {
                auto key = body.substr(0, eq);
                while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
                code.provenance[std::string(key)] = std::string(body.substr(eq + 3));
            }
            continue;
        }
        if (line.empty()) throw ParseError(line_no, "empty line");
        if (!header) {
            const auto tokens = split_tokens(line);
            if (tokens.size() < 4) throw ParseError(line_no, "header needs at least KIND n q d");
            try {
                code.kind = parse_kind(tokens[0]);
            } catch (const DomainError& e) {
                throw ParseError(line_no, e.what());
            }
            code.n = parse_count(tokens[1], line_no, "n");
            const std::size_t q = parse_count(tokens[2], line_no, "q");
            code.d = parse_count(tokens[3], line_no, "d");
            if (code.n < 1) throw ParseError(line_no, "n must be at least 1");
            if (q < 2 || q > static_cast<std::size_t>(kMaxAlphabet)) throw ParseError(line_no, "q must be in [2, 256]");
            if (code.d < 1) throw ParseError(line_no, "d must be at least 1");
            code.q = static_cast<int>(q);
            const std::size_t extra = tokens.size() - 4;
            switch (code.kind) {
                case CodeKind::Hcc:
                    if (extra != 0) throw ParseError(line_no, "HCC header takes exactly KIND n q d");
                    break;
                case CodeKind::Ooc:
                    if (extra != 1) throw ParseError(line_no, "OOC header takes KIND n q d w");
                    if (code.q != 2) throw ParseError(line_no, "OOC codes are binary");
                    code.weight = parse_count(tokens[4], line_no, "w");
                    break;
                case CodeKind::Fhs:
                case CodeKind::Wmuc: {
                    if (extra != 1 && extra != 2) throw ParseError(line_no, "header takes KIND n q d [w] " +
                                                                     std::string(code.kind == CodeKind::Fhs ? "lambda" : "kappa"));
                    if (extra == 2) code.weight = parse_count(tokens[4], line_no, "w");
                    const std::size_t last = parse_count(tokens.back(), line_no, code.kind == CodeKind::Fhs ? "lambda" : "kappa");
                    if (code.kind == CodeKind::Fhs) {
                        code.lambda = last;
                    } else {
                        if (last < 1 || last > code.n) throw ParseError(line_no, "kappa must lie in [1, n]");
                        code.kappa = last;
                    }
                    break;
                }
            }
            if (code.weight && *code.weight > code.n) throw ParseError(line_no, "w exceeds n");
            header = true;
            continue;
        }
        Word w = [&] {
            try {
                return Word::parse(line, code.q);
            } catch (const Error& e) {
                throw ParseError(line_no, e.what());
            }
        }();
        if (w.size() != code.n) throw ParseError(line_no, "word length " + std::to_string(w.size()) + " differs from n");
        code.words.push_back(std::move(w));
    }
    if (!header) throw ParseError(line_no, "missing header line");
    return code;
}

}  // namespace cyclocode
