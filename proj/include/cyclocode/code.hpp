#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclocode/class_graph.hpp"
#include "cyclocode/is_solver.hpp"
#include "cyclocode/word.hpp"

namespace cyclocode {

inline constexpr std::uint64_t kDefaultVerifyBudget = 20'000'000'000ULL;

enum class CodeKind { Hcc, Ooc, Fhs, Wmuc };

std::string to_string(CodeKind kind);
CodeKind parse_kind(std::string_view text);

struct CodeArtifact {
    CodeKind kind = CodeKind::Hcc;
    std::size_t n = 0;
    int q = 2;
    std::size_t d = 1;  ///< claimed minimum distance
    std::optional<std::size_t> weight;
    std::optional<std::size_t> lambda;
    std::optional<std::size_t> kappa;
    /// HCC/OOC: every rotation of every class; FHS/WMUC: one representative per class.
    std::vector<Word> words;
    std::map<std::string, std::string> provenance;

    std::size_t size() const noexcept { return words.size(); }
};

struct Witness {
    std::vector<Word> words;
    std::optional<std::size_t> shift;
    std::optional<std::size_t> length;
    std::optional<std::size_t> distance;
    std::string detail;
};

/// Outcome of a verification. Failures are verdicts, not exceptions.
struct Verdict {
    bool pass = true;
    std::string failed_check;  ///< empty on pass
    std::optional<Witness> witness;
    std::size_t word_count = 0;
    std::size_t class_count = 0;
    /// Exact minimum distance when the pairwise scan ran to completion.
    std::optional<std::size_t> min_distance;
    std::vector<std::string> warnings;
};

struct VerifyOptions {
    std::uint64_t budget = kDefaultVerifyBudget;
    unsigned threads = 1;
};

/// Expands each chosen class into its n rotations. Throws ContractViolation
/// when the set is not independent in the graph.
CodeArtifact assemble(const ClassGraph& graph, const VertexSet& independent_set);
/// Expansion without an adjacency check, for sets chosen without stored edges.
CodeArtifact assemble(const GraphParams& params, const std::vector<CyclicClass>& vertices, const VertexSet& chosen);

/// Checks shift closure, full period of every codeword and minimum distance >= d.
Verdict verify_hcc(const std::vector<Word>& code, std::size_t n, int q, std::size_t d, const VerifyOptions& options = {});

/// verify_hcc over the binary alphabet plus constant weight w.
Verdict verify_ooc(const std::vector<Word>& code, std::size_t n, std::size_t w, std::size_t d,
                   const VerifyOptions& options = {});

/// H_{x,y}(i) = n - d(x, pi_i(y)).
std::size_t hamming_correlation(const Word& x, const Word& y, std::size_t i);

struct CorrelationReport {
    std::optional<std::size_t> max_auto;   ///< over x and 0 < i <= n-1
    std::optional<std::size_t> max_cross;  ///< over x != y and all i
    std::size_t lambda_achieved = 0;
    std::size_t sequences = 0;
};

/// Exhaustive scan of all auto and cross correlations.
CorrelationReport correlation_report(const std::vector<Word>& sequences, const VerifyOptions& options = {});

struct FhsResult {
    CodeArtifact fhs;
    CorrelationReport correlations;
};

/// One canonical representative per class of a verified HCC. Throws
/// ContractViolation when the input does not verify or the correlation bound fails.
FhsResult derive_fhs(const CodeArtifact& hcc, const VerifyOptions& options = {});

/// No prefix of length l of any codeword equals a suffix of length l of any
/// codeword (itself included), for kappa <= l <= n-1.
Verdict verify_wmuc(const std::vector<Word>& code, std::size_t kappa);

/// Representatives of a verified HCC with d >= n - kappa + 1; the result is
/// checked with verify_wmuc.
CodeArtifact derive_wmuc(const CodeArtifact& hcc, std::size_t kappa, const VerifyOptions& options = {});

/// Dispatches on the artifact kind and checks everything its header claims.
Verdict verify_artifact(const CodeArtifact& artifact, const VerifyOptions& options = {});

/// Exact minimum distance over all pairs of distinct words (absent for fewer than two words).
std::optional<std::size_t> minimum_distance(const std::vector<Word>& code, std::uint64_t budget = kDefaultVerifyBudget);

/// Code file text: header line, then one word per line, trailing newline.
std::string write_code(const CodeArtifact& artifact);
/// Throws ParseError with the 1-based line number on malformed input.
CodeArtifact read_code(std::string_view text);

}  // namespace cyclocode
