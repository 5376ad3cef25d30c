#pragma once

// Bitmask kernels for sumsets over bounded windows. Bit i of a mask stands
// for the group element (origin + i). The verify sweeps call the single-word
// kernels directly; IntSet/ModSet operations use them, or DynamicBits for
// windows wider than one word.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ehinv::bits {

using Mask = std::uint64_t;

constexpr Mask bit(unsigned i) { return Mask{1} << i; }

constexpr Mask low_mask(unsigned width) { return width >= 64 ? ~Mask{0} : bit(width) - 1; }

constexpr int count(Mask m) { return std::popcount(m); }

/// Left rotation inside a ring of `width` bits (1 <= width <= 64, shift < width).
constexpr Mask rotl(Mask x, unsigned shift, unsigned width) {
    if (shift == 0) return x;
    return ((x << shift) | (x >> (width - shift))) & low_mask(width);
}

/// {a + b} for masks sharing the same origin; caller guarantees the highest
/// bit of a plus the highest bit of b stays below 64.
constexpr Mask sum_linear(Mask a, Mask b) {
    Mask out = 0;
    while (a != 0) {
        const unsigned i = static_cast<unsigned>(std::countr_zero(a));
        out |= b << i;
        a &= a - 1;
    }
    return out;
}

/// {a + b : a != b}. `b_offset` is origin(b) - origin(a); element i of `a`
/// coincides with element (i - b_offset) of `b`.
constexpr Mask restricted_sum_linear(Mask a, Mask b, long b_offset = 0) {
    Mask out = 0;
    while (a != 0) {
        const unsigned i = static_cast<unsigned>(std::countr_zero(a));
        const long twin = static_cast<long>(i) - b_offset;
        const Mask partners = (twin >= 0 && twin < 64) ? (b & ~bit(static_cast<unsigned>(twin))) : b;
        out |= partners << i;
        a &= a - 1;
    }
    return out;
}

/// A + B inside Z/pZ for p <= 64, by cyclic rotation of B.
constexpr Mask sum_cyclic(Mask a, Mask b, unsigned p) {
    Mask out = 0;
    while (a != 0) {
        const unsigned i = static_cast<unsigned>(std::countr_zero(a));
        out |= rotl(b, i, p);
        a &= a - 1;
    }
    return out;
}

/// A +^ B inside Z/pZ for p <= 64. Residue equality is bit-index equality.
constexpr Mask restricted_sum_cyclic(Mask a, Mask b, unsigned p) {
    Mask out = 0;
    while (a != 0) {
        const unsigned i = static_cast<unsigned>(std::countr_zero(a));
        out |= rotl(b & ~bit(i), i, p);
        a &= a - 1;
    }
    return out;
}

/// Multiword bitset with the two operations the sumset paths need.
class DynamicBits {
public:
    explicit DynamicBits(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

    std::size_t width() const { return width_; }

    void set(std::size_t i) { words_[i / 64] |= bit(static_cast<unsigned>(i % 64)); }
    void reset(std::size_t i) { words_[i / 64] &= ~bit(static_cast<unsigned>(i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

    /// this |= (src << shift), truncated at width().
    void or_shifted(const DynamicBits& src, std::size_t shift) {
        const std::size_t word_shift = shift / 64;
        const unsigned bit_shift = static_cast<unsigned>(shift % 64);
        for (std::size_t k = 0; k < src.words_.size(); ++k) {
            const std::size_t dst = k + word_shift;
            if (dst >= words_.size()) break;
            const Mask w = src.words_[k];
            if (w == 0) continue;
            words_[dst] |= w << bit_shift;
            if (bit_shift != 0 && dst + 1 < words_.size()) words_[dst + 1] |= w >> (64 - bit_shift);
        }
    }

    std::size_t count() const {
        std::size_t total = 0;
        for (Mask w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            Mask w = words_[k];
            while (w != 0) {
                fn(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

private:
    std::size_t width_;
    std::vector<Mask> words_;
};

} // namespace ehinv::bits
