#include "cyclocode/word.hpp"

#include <algorithm>
#include <sstream>

#include "cyclocode/errors.hpp"
#include "cyclocode/packed.hpp"

namespace cyclocode {

Word::Word(std::vector<Symbol> symbols, int q) : symbols_(std::move(symbols)), q_(q) {
    if (q < 2 || q > kMaxAlphabet) throw DomainError("alphabet size must be in [2, 256], got " + std::to_string(q));
    if (symbols_.empty()) throw DomainError("word length must be at least 1");
    for (Symbol s : symbols_) {
        if (s >= q) throw DomainError("symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(q));
    }
}

Word Word::zeros(std::size_t n, int q) { return Word(std::vector<Symbol>(n, 0), q); }

Word Word::parse(std::string_view text, int q) {
    std::vector<Symbol> symbols;
    if (q <= 10) {
        for (char c : text) {
            if (c < '0' || c > '9') throw ParseError(0, "invalid symbol character '" + std::string(1, c) + "'");
            symbols.push_back(static_cast<Symbol>(c - '0'));
        }
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t comma = std::min(text.find(',', start), text.size());
            const std::string_view field = text.substr(start, comma - start);
            if (field.empty() || field.size() > 3 ||
                !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw ParseError(0, "invalid symbol field '" + std::string(field) + "'");
            }
            const int value = std::stoi(std::string(field));
            if (value >= q) throw ParseError(0, "symbol " + std::to_string(value) + " outside alphabet");
            symbols.push_back(static_cast<Symbol>(value));
            start = comma + 1;
        }
    }
    for (Symbol s : symbols) {
        if (s >= q) throw ParseError(0, "symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(q));
    }
    if (symbols.empty()) throw ParseError(0, "empty word");
    return Word(std::move(symbols), q);
}

std::string Word::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (q_ > 10 && i > 0) out << ',';
        out << static_cast<int>(symbols_[i]);
    }
    return out.str();
}

void require_same_shape(const Word& x, const Word& y) {
    if (x.size() != y.size() || x.alphabet() != y.alphabet()) {
        throw DimensionError("word shapes differ: (n=" + std::to_string(x.size()) + ", q=" + std::to_string(x.alphabet()) +
                             ") vs (n=" + std::to_string(y.size()) + ", q=" + std::to_string(y.alphabet()) + ")");
    }
}

Word cyclic_shift(const Word& x, std::size_t i) {
    const std::size_t n = x.size();
    i %= n;
    std::vector<Symbol> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = x[(j + i) % n];
    return Word(std::move(out), x.alphabet());
}

std::size_t hamming_distance(const Word& x, const Word& y) {
    require_same_shape(x, y);
    std::size_t d = 0;
    for (std::size_t j = 0; j < x.size(); ++j) d += x[j] != y[j];
    return d;
}

std::size_t weight(const Word& x) {
    return static_cast<std::size_t>(std::count_if(x.symbols().begin(), x.symbols().end(), [](Symbol s) { return s != 0; }));
}

namespace {

bool is_invariant_under(const Word& x, std::size_t shift) {
    const std::size_t n = x.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] != x[(j + shift) % n]) return false;
    }
    return true;
}

std::size_t shift_distance(const Word& x, std::size_t i) {
    const std::size_t n = x.size();
    std::size_t d = 0;
    for (std::size_t j = 0; j < n; ++j) d += x[j] != x[(j + i) % n];
    return d;
}

}  // namespace

std::size_t period(const Word& x) {
    const std::size_t n = x.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p == 0 && is_invariant_under(x, p)) return p;
    }
    return n;
}

std::size_t min_cyclic_autodistance(const Word& x) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("d(x) is undefined for n = 1");
    std::size_t best = n;
    for (std::size_t i = 1; i < n && best > 0; ++i) best = std::min(best, shift_distance(x, i));
    return best;
}

std::size_t autocorrelation_distance(const Word& x, std::size_t i) {
    const std::size_t n = x.size();
    if (i < 1 || i >= n) throw DomainError("shift must satisfy 1 <= i <= n-1");
    std::size_t agreements = 0;
    for (std::size_t j = 0; j < n; ++j) agreements += x[j] == x[(j + i) % n];
    return n - agreements;
}

std::size_t least_rotation_offset(const Word& x) {
    const std::size_t n = x.size();
    const auto s = [&](std::size_t j) { return x[j % n]; };
    std::vector<std::ptrdiff_t> failure(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        const Symbol sj = s(j);
        std::ptrdiff_t i = failure[j - k - 1];
        while (i != -1 && sj != s(k + static_cast<std::size_t>(i) + 1)) {
            if (sj < s(k + static_cast<std::size_t>(i) + 1)) k = j - static_cast<std::size_t>(i) - 1;
            i = failure[static_cast<std::size_t>(i)];
        }
        if (sj != s(k + static_cast<std::size_t>(i + 1))) {
            if (sj < s(k)) k = j;
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    return k % n;
}

Word canonical_rotation(const Word& x) { return cyclic_shift(x, least_rotation_offset(x)); }

Word canonical_rotation_naive(const Word& x) {
    Word best = x;
    for (std::size_t i = 1; i < x.size(); ++i) {
        Word r = cyclic_shift(x, i);
        if (r < best) best = std::move(r);
    }
    return best;
}

CyclicClass class_of(const Word& x) {
    CyclicClass c{canonical_rotation(x), period(x), std::nullopt};
    if (x.size() >= 2) c.auto_distance = c.full_period() ? min_cyclic_autodistance(c.representative) : 0;
    return c;
}

void for_each_class(std::size_t n, int q, const ClassFilter& filter,
                    const std::function<bool(const CyclicClass&)>& visit) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (q < 2 || q > kMaxAlphabet) throw DomainError("alphabet size must be in [2, 256]");
    if (filter.weight) {
        if (q != 2) throw UnsupportedError("weight filter requires q = 2");
        if (*filter.weight > n) throw DomainError("weight exceeds length");
    }
    if (filter.min_auto_distance && n < 2) throw DomainError("auto-distance filter needs n >= 2");

    const bool packed = PackedCodec::fits(n, q);
    const std::optional<PackedCodec> codec = packed ? std::optional<PackedCodec>(PackedCodec(n, q)) : std::nullopt;

    // Fredricksen-Kessler-Maiorana: prenecklaces in lex order; a[1..n] is a
    // necklace exactly when the current Lyndon prefix length p divides n.
    std::vector<Symbol> a(n + 1, 0);
    const auto emit = [&](std::size_t p) -> bool {
        if (filter.full_period_only && p != n) return true;
        const std::span<const Symbol> symbols(a.data() + 1, n);
        if (filter.weight) {
            const auto w = static_cast<std::size_t>(std::count_if(symbols.begin(), symbols.end(), [](Symbol s) { return s != 0; }));
            if (w != *filter.weight) return true;
        }
        std::optional<std::size_t> auto_distance;
        if (n >= 2) {
            if (p != n) {
                auto_distance = 0;
            } else if (codec) {
                auto_distance = codec->min_autodistance(codec->pack(symbols));
            } else {
                auto_distance = min_cyclic_autodistance(Word(std::vector<Symbol>(symbols.begin(), symbols.end()), q));
            }
        }
        if (filter.min_auto_distance && *auto_distance < *filter.min_auto_distance) return true;
        return visit(CyclicClass{Word(std::vector<Symbol>(symbols.begin(), symbols.end()), q), p, auto_distance});
    };

    if (!emit(1)) return;
    for (;;) {
        std::size_t i = n;
        while (i > 0 && a[i] == q - 1) --i;
        if (i == 0) return;
        ++a[i];
        for (std::size_t j = i + 1; j <= n; ++j) a[j] = a[j - i];
        if (n % i == 0 && !emit(i)) return;
    }
}

std::vector<CyclicClass> enumerate_classes(std::size_t n, int q, const ClassFilter& filter) {
    std::vector<CyclicClass> out;
    for_each_class(n, q, filter, [&](const CyclicClass& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

void for_each_word(std::size_t n, int q, const std::function<void(const Word&)>& visit) {
    std::vector<Symbol> digits(n, 0);
    for (;;) {
        visit(Word(digits, q));
        std::size_t j = n;
        while (j > 0 && digits[j - 1] == q - 1) digits[--j] = 0;
        if (j == 0) return;
        ++digits[j - 1];
    }
}

void for_each_weight_word(std::size_t n, std::size_t w, const std::function<void(const Word&)>& visit) {
    if (w > n) throw DomainError("weight exceeds length");
    std::vector<Symbol> bits(n, 0);
    std::fill(bits.end() - static_cast<std::ptrdiff_t>(w), bits.end(), Symbol{1});
    do {
        visit(Word(bits, 2));
    } while (std::next_permutation(bits.begin(), bits.end()));
}

}  // namespace cyclocode
