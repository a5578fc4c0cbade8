#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cyclocode {

using Symbol = std::uint8_t;

inline constexpr int kMaxAlphabet = 256;

/// A q-ary vector of fixed length n >= 1 with symbols in {0, ..., q-1}.
///
/// Ordering is lexicographic on the symbols; words over different alphabets
/// never compare equal.
class Word {
public:
    Word(std::vector<Symbol> symbols, int q);

    static Word zeros(std::size_t n, int q);
    /// Text form: digits without separator for q <= 10, comma separated otherwise.
    static Word parse(std::string_view text, int q);

    std::size_t size() const noexcept { return symbols_.size(); }
    int alphabet() const noexcept { return q_; }
    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }

    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Symbol> symbols_;
    int q_;
};

/// Full-period information about the orbit C(x) of a word under rotation.
struct CyclicClass {
    Word representative;  ///< lexicographically least rotation
    std::size_t n_distinct = 0;  ///< number of distinct rotations (the period)
    std::optional<std::size_t> auto_distance;  ///< d(x); absent for n = 1

    bool full_period() const noexcept { return n_distinct == representative.size(); }

    friend bool operator==(const CyclicClass&, const CyclicClass&) = default;
};

/// pi_i(x) = (x_{i+1}, ..., x_{i+n}), indices mod n. i is reduced mod n.
Word cyclic_shift(const Word& x, std::size_t i);

std::size_t hamming_distance(const Word& x, const Word& y);
std::size_t weight(const Word& x);

/// Smallest p >= 1 dividing n with pi_p(x) = x.
std::size_t period(const Word& x);

/// d(x) = min over 1 <= i <= n-1 of d(x, pi_i(x)). Throws DomainError for n = 1.
std::size_t min_cyclic_autodistance(const Word& x);

/// n minus the number of positions j with x_j = x_{j+i}; requires 1 <= i <= n-1.
std::size_t autocorrelation_distance(const Word& x, std::size_t i);

/// Least rotation by Booth's algorithm, O(n).
Word canonical_rotation(const Word& x);
/// Least rotation by comparing all n rotations, O(n^2). Kept as a cross-check.
Word canonical_rotation_naive(const Word& x);
/// Offset k such that cyclic_shift(x, k) is the least rotation.
std::size_t least_rotation_offset(const Word& x);

CyclicClass class_of(const Word& x);

struct ClassFilter {
    bool full_period_only = false;
    std::optional<std::size_t> weight;  ///< binary only
    std::optional<std::size_t> min_auto_distance;
};

/// Visits every qualifying class exactly once in ascending order of its
/// canonical representative. Return false from the visitor to stop early.
void for_each_class(std::size_t n, int q, const ClassFilter& filter,
                    const std::function<bool(const CyclicClass&)>& visit);

std::vector<CyclicClass> enumerate_classes(std::size_t n, int q, const ClassFilter& filter = {});

/// Visits all q^n words in lexicographic order.
void for_each_word(std::size_t n, int q, const std::function<void(const Word&)>& visit);
/// Visits all binary words of weight w in lexicographic order.
void for_each_weight_word(std::size_t n, std::size_t w, const std::function<void(const Word&)>& visit);

void require_same_shape(const Word& x, const Word& y);

}  // namespace cyclocode
