#pragma once

#include <algorithm>
#include <cstdint>
#include <variant>
#include <vector>

#include "bits.hpp"
#include "error.hpp"
#include "sets.hpp"

namespace ehinv {

/// Windows wider than this many bits fall back to sort-and-deduplicate.
inline constexpr std::uint64_t kMaxWindowBits = std::uint64_t{1} << 22;

namespace detail {

inline void require_nonempty(std::size_t a, std::size_t b, const char* op) {
    if (a == 0 || b == 0) throw PreconditionError(std::string(op) + ": operands must be nonempty");
}

inline std::uint64_t span_of(const IntSet& s) {
    return static_cast<std::uint64_t>(s.max()) - static_cast<std::uint64_t>(s.min());
}

inline IntSet int_sums(const IntSet& a, const IntSet& b, bool restricted) {
    // Both extreme sums representable implies every sum is.
    const Element origin = checked_add(a.min(), b.min());
    checked_add(a.max(), b.max());

    const std::uint64_t span_a = span_of(a);
    const std::uint64_t span_b = span_of(b);
    const bool narrow = span_a < 64 && span_b < 64 && span_a + span_b < 64;

    if (narrow) {
        bits::Mask ma = 0, mb = 0;
        for (Element x : a.elements()) ma |= bits::bit(static_cast<unsigned>(x - a.min()));
        for (Element y : b.elements()) mb |= bits::bit(static_cast<unsigned>(y - b.min()));
        const __int128 raw_offset = static_cast<__int128>(b.min()) - a.min();
        const long offset = static_cast<long>(std::clamp<__int128>(raw_offset, -128, 128));
        const bits::Mask m = restricted ? bits::restricted_sum_linear(ma, mb, offset) : bits::sum_linear(ma, mb);
        std::vector<Element> out;
        out.reserve(static_cast<std::size_t>(bits::count(m)));
        for (bits::Mask w = m; w != 0; w &= w - 1) out.push_back(origin + std::countr_zero(w));
        return IntSet(std::move(out));
    }

    if (span_a < kMaxWindowBits && span_b < kMaxWindowBits) {
        bits::DynamicBits mb(span_b + 1);
        for (Element y : b.elements()) mb.set(static_cast<std::size_t>(y - b.min()));
        bits::DynamicBits acc(span_a + span_b + 1);
        for (Element x : a.elements()) {
            const auto shift = static_cast<std::size_t>(x - a.min());
            const bool twin = restricted && b.contains(x);
            const auto twin_index = twin ? static_cast<std::size_t>(x - b.min()) : 0;
            if (twin) mb.reset(twin_index);
            acc.or_shifted(mb, shift);
            if (twin) mb.set(twin_index);
        }
        std::vector<Element> out;
        out.reserve(acc.count());
        acc.for_each_set([&](std::size_t i) { out.push_back(origin + static_cast<Element>(i)); });
        return IntSet(std::move(out));
    }

    std::vector<Element> out;
    out.reserve(a.size() * b.size());
    for (Element x : a.elements())
        for (Element y : b.elements())
            if (!restricted || x != y) out.push_back(x + y);
    return IntSet::from_unsorted(std::move(out));
}

inline ModSet mod_sums(const ModSet& a, const ModSet& b, bool restricted) {
    require_same_modulus(a, b);
    const Element p = a.modulus();

    if (p <= 64) {
        bits::Mask ma = 0, mb = 0;
        for (Element x : a.elements()) ma |= bits::bit(static_cast<unsigned>(x));
        for (Element y : b.elements()) mb |= bits::bit(static_cast<unsigned>(y));
        const auto width = static_cast<unsigned>(p);
        const bits::Mask m = restricted ? bits::restricted_sum_cyclic(ma, mb, width) : bits::sum_cyclic(ma, mb, width);
        std::vector<Element> out;
        for (bits::Mask w = m; w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
        return ModSet(p, std::move(out));
    }

    if (static_cast<std::uint64_t>(p) <= kMaxWindowBits / 2) {
        // Linear sums land in [0, 2p-2]; fold the upper half back once.
        bits::DynamicBits mb(static_cast<std::size_t>(p));
        for (Element y : b.elements()) mb.set(static_cast<std::size_t>(y));
        bits::DynamicBits acc(static_cast<std::size_t>(2 * p - 1));
        for (Element x : a.elements()) {
            const bool twin = restricted && b.contains(x);
            if (twin) mb.reset(static_cast<std::size_t>(x));
            acc.or_shifted(mb, static_cast<std::size_t>(x));
            if (twin) mb.set(static_cast<std::size_t>(x));
        }
        std::vector<bool> hit(static_cast<std::size_t>(p), false);
        acc.for_each_set([&](std::size_t i) { hit[i % static_cast<std::size_t>(p)] = true; });
        std::vector<Element> out;
        for (std::size_t r = 0; r < hit.size(); ++r)
            if (hit[r]) out.push_back(static_cast<Element>(r));
        return ModSet(p, std::move(out));
    }

    std::vector<Element> out;
    out.reserve(a.size() * b.size());
    const auto up = static_cast<std::uint64_t>(p);
    for (Element x : a.elements())
        for (Element y : b.elements())
            if (!restricted || x != y)
                out.push_back(static_cast<Element>((static_cast<std::uint64_t>(x) + static_cast<std::uint64_t>(y)) % up));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return ModSet(p, std::move(out));
}

inline Element modulus_of(const GroupContext& ctx) {
    return std::holds_alternative<ModP>(ctx) ? std::get<ModP>(ctx).p() : 0;
}

} // namespace detail

/// {a + b : a in A, b in B}.
inline IntSet sumset(const IntSet& a, const IntSet& b) {
    detail::require_nonempty(a.size(), b.size(), "sumset");
    return detail::int_sums(a, b, false);
}

inline ModSet sumset(const ModSet& a, const ModSet& b) {
    detail::require_nonempty(a.size(), b.size(), "sumset");
    return detail::mod_sums(a, b, false);
}

/// {a + b : a in A, b in B, a != b}. Empty when A = B is a singleton.
inline IntSet restricted_sumset(const IntSet& a, const IntSet& b) {
    detail::require_nonempty(a.size(), b.size(), "restricted_sumset");
    return detail::int_sums(a, b, true);
}

/// Residues are compared canonically, so a != b means distinct classes mod p.
inline ModSet restricted_sumset(const ModSet& a, const ModSet& b) {
    detail::require_nonempty(a.size(), b.size(), "restricted_sumset");
    return detail::mod_sums(a, b, true);
}

/// Cauchy-Davenport: min(p, m + n - 1) in Z/pZ, m + n - 1 in Z.
inline std::int64_t cd_lower_bound(std::int64_t m, std::int64_t n, const GroupContext& ctx) {
    if (m < 1 || n < 1) throw PreconditionError("cd_lower_bound: cardinalities must be positive");
    const std::int64_t bound = m + n - 1;
    const Element p = detail::modulus_of(ctx);
    return p != 0 ? std::min(p, bound) : bound;
}

/// Erdos-Heilbronn: min(p, m + n - 3) in Z/pZ, max(0, m + n - 3) in Z.
inline std::int64_t eh_lower_bound(std::int64_t m, std::int64_t n, const GroupContext& ctx) {
    if (m < 1 || n < 1) throw PreconditionError("eh_lower_bound: cardinalities must be positive");
    const std::int64_t bound = std::max<std::int64_t>(0, m + n - 3);
    const Element p = detail::modulus_of(ctx);
    return p != 0 ? std::min(p, bound) : bound;
}

namespace detail {

inline void require_pair_sizes(std::size_t m, std::size_t n, const char* op) {
    if (m < 2 || n < 2) throw PreconditionError(std::string(op) + ": both sets need at least 2 elements");
}

} // namespace detail

/// |A +^ B| == |A| + |B| - 3.
inline bool is_critical_pair(const IntSet& a, const IntSet& b) {
    detail::require_pair_sizes(a.size(), b.size(), "is_critical_pair");
    return restricted_sumset(a, b).size() + 3 == a.size() + b.size();
}

inline bool is_critical_pair(const ModSet& a, const ModSet& b) {
    detail::require_pair_sizes(a.size(), b.size(), "is_critical_pair");
    return restricted_sumset(a, b).size() + 3 == a.size() + b.size();
}

} // namespace ehinv
