#include "cyclocode/packed.hpp"

#include <limits>

#include "cyclocode/errors.hpp"

namespace cyclocode {

unsigned PackedCodec::bits_for(int q) noexcept {
    unsigned bits = 1;
    while ((1 << bits) < q) ++bits;
    return bits;
}

bool PackedCodec::fits(std::size_t n, int q) noexcept {
    return n >= 1 && q >= 2 && q <= kMaxAlphabet && n * bits_for(q) <= 64;
}

PackedCodec::PackedCodec(std::size_t n, int q) : n_(n), q_(q), bits_(bits_for(q)) {
    if (!fits(n, q)) throw UnsupportedError("packed form needs n * ceil(log2 q) <= 64");
    width_ = static_cast<unsigned>(n * bits_);
    field_mask_ = width_ == 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << width_) - 1;
    symbol_mask_ = (std::uint64_t{1} << bits_) - 1;
    low_mask_ = 0;
    for (std::size_t k = 0; k < n; ++k) low_mask_ |= std::uint64_t{1} << (k * bits_);
}

std::uint64_t PackedCodec::pack(std::span<const Symbol> symbols) const {
    std::uint64_t v = 0;
    for (Symbol s : symbols) v = (v << bits_) | s;
    return v;
}

std::uint64_t PackedCodec::pack(const Word& x) const {
    if (x.size() != n_ || x.alphabet() != q_) throw DimensionError("word does not match packed codec shape");
    return pack(x.symbols());
}

Word PackedCodec::unpack(std::uint64_t v) const {
    std::vector<Symbol> symbols(n_);
    for (std::size_t j = 0; j < n_; ++j) symbols[j] = symbol(v, j);
    return Word(std::move(symbols), q_);
}

std::size_t PackedCodec::period(std::uint64_t v) const noexcept {
    for (std::size_t p = 1; p < n_; ++p) {
        if (n_ % p == 0 && rotate(v, p) == v) return p;
    }
    return n_;
}

std::size_t PackedCodec::min_autodistance(std::uint64_t v) const noexcept {
    std::size_t best = n_;
    for (std::size_t i = 1; i < n_ && best > 0; ++i) {
        const std::size_t d = distance(v, rotate(v, i));
        if (d < best) best = d;
    }
    return best;
}

std::uint64_t PackedCodec::canonical(std::uint64_t v) const noexcept {
    std::uint64_t best = v;
    for (std::size_t i = 1; i < n_; ++i) {
        const std::uint64_t r = rotate(v, i);
        if (r < best) best = r;
    }
    return best;
}

BinaryRotations::BinaryRotations(std::span<const Symbol> bits)
    : n_(bits.size()), words_((2 * bits.size() + 127) / 64 + 1, 0) {
    for (std::size_t rep = 0; rep < 2; ++rep) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (bits[j] != 0) {
                const std::size_t pos = rep * n_ + j;
                words_[pos / 64] |= std::uint64_t{1} << (pos % 64);
            }
        }
    }
}

std::uint64_t BinaryRotations::window(std::size_t start) const noexcept {
    const std::size_t word = start / 64;
    const unsigned offset = static_cast<unsigned>(start % 64);
    if (offset == 0) return words_[word];
    return (words_[word] >> offset) | (words_[word + 1] << (64 - offset));
}

std::size_t BinaryRotations::shift_distance(std::size_t i) const noexcept {
    std::size_t total = 0;
    for (std::size_t base = 0; base < n_; base += 64) {
        std::uint64_t diff = window(base) ^ window(base + i);
        const std::size_t remaining = n_ - base;
        if (remaining < 64) diff &= (std::uint64_t{1} << remaining) - 1;
        total += static_cast<std::size_t>(std::popcount(diff));
    }
    return total;
}

std::size_t BinaryRotations::min_autodistance() const noexcept {
    std::size_t best = n_;
    for (std::size_t i = 1; i < n_ && best > 0; ++i) {
        const std::size_t d = shift_distance(i);
        if (d < best) best = d;
    }
    return best;
}

bool BinaryRotations::has_shift_within(std::size_t threshold) const noexcept {
    for (std::size_t i = 1; i < n_; ++i) {
        if (shift_distance(i) <= threshold) return true;
    }
    return false;
}

}  // namespace cyclocode
