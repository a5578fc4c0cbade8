#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cyclocode/word.hpp"

namespace cyclocode {

/// Packs a whole word into one 64-bit integer, ceil(log2 q) bits per symbol,
/// first symbol most significant, so integer order is lexicographic order.
/// Only usable when n * bits_per_symbol <= 64.
class PackedCodec {
public:
    PackedCodec(std::size_t n, int q);

    static bool fits(std::size_t n, int q) noexcept;
    static unsigned bits_for(int q) noexcept;

    std::size_t length() const noexcept { return n_; }
    int alphabet() const noexcept { return q_; }

    std::uint64_t pack(const Word& x) const;
    std::uint64_t pack(std::span<const Symbol> symbols) const;
    Word unpack(std::uint64_t v) const;
    Symbol symbol(std::uint64_t v, std::size_t j) const noexcept {
        return static_cast<Symbol>((v >> ((n_ - 1 - j) * bits_)) & symbol_mask_);
    }

    /// pi_i on the packed form.
    std::uint64_t rotate(std::uint64_t v, std::size_t i) const noexcept {
        i %= n_;
        if (i == 0) return v;
        const unsigned s = static_cast<unsigned>(i * bits_);
        return ((v << s) | (v >> (width_ - s))) & field_mask_;
    }

    unsigned distance(std::uint64_t a, std::uint64_t b) const noexcept {
        const std::uint64_t v = a ^ b;
        std::uint64_t m = v;
        for (unsigned s = 1; s < bits_; ++s) m |= v >> s;
        return static_cast<unsigned>(std::popcount(m & low_mask_));
    }

    unsigned weight(std::uint64_t v) const noexcept { return distance(v, 0); }

    std::size_t period(std::uint64_t v) const noexcept;
    /// d(x); callers guarantee n >= 2.
    std::size_t min_autodistance(std::uint64_t v) const noexcept;
    std::uint64_t canonical(std::uint64_t v) const noexcept;

private:
    std::size_t n_;
    int q_;
    unsigned bits_;
    unsigned width_;
    std::uint64_t field_mask_;
    std::uint64_t low_mask_;
    std::uint64_t symbol_mask_;
};

/// Binary word of arbitrary length stored twice in a row, so every rotation
/// is a contiguous bit window. Used for distance scans at large n.
class BinaryRotations {
public:
    explicit BinaryRotations(std::span<const Symbol> bits);

    std::size_t length() const noexcept { return n_; }

    /// d(x, pi_i(x)).
    std::size_t shift_distance(std::size_t i) const noexcept;
    std::size_t min_autodistance() const noexcept;
    /// True when some nontrivial shift has distance <= threshold (stops at the first one).
    bool has_shift_within(std::size_t threshold) const noexcept;

private:
    std::uint64_t window(std::size_t start) const noexcept;

    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

}  // namespace cyclocode
