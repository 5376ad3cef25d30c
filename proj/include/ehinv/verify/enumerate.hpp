#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "../bits.hpp"
#include "../sets.hpp"
#include "spec.hpp"

namespace ehinv::verify {

using bits::Mask;

/// The estimated pair count is above the configured cap; narrow the spec.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::uint64_t estimate, std::uint64_t cap)
        : std::runtime_error("budget exceeded: " + std::to_string(estimate) + " pairs estimated, cap is " +
                             std::to_string(cap) + "; add size filters or a smaller universe"),
          estimate_(estimate) {}
    std::uint64_t estimate() const { return estimate_; }

private:
    std::uint64_t estimate_;
};

/// Admissible subsets of the universe as masks, ascending.
inline std::vector<Mask> admissible_subsets(const SweepSpec& spec) {
    const int u = spec.universe();
    std::vector<Mask> out;
    const Mask end = bits::bit(static_cast<unsigned>(u));
    for (Mask m = 1; m < end; ++m) {
        const int k = std::popcount(m);
        if (k >= spec.min_size && k <= spec.upper_size()) out.push_back(m);
    }
    return out;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// Closed-form count of unordered pairs {A, B} (A = B allowed) before
/// normalization.
inline std::uint64_t estimated_pairs(const SweepSpec& spec) {
    std::uint64_t subsets = 0;
    for (int k = spec.min_size; k <= spec.upper_size(); ++k) subsets += binomial(spec.universe(), k);
    return subsets * (subsets + 1) / 2;
}

inline void check_budget(const SweepSpec& spec) {
    const std::uint64_t estimate = estimated_pairs(spec);
    if (estimate > spec.max_pairs) throw BudgetExceeded(estimate, spec.max_pairs);
}

/// One translation class representative per unordered pair.
/// Z: min(A u B) = 0. Z/pZ: the pair whose (min mask, max mask) key is
/// lexicographically least among its p translates.
inline bool is_canonical(Mask a, Mask b, const SweepSpec& spec) {
    if (!spec.modular()) return ((a | b) & 1U) != 0;
    const auto p = static_cast<unsigned>(spec.prime);
    const auto key = std::minmax(a, b);
    for (unsigned t = 1; t < p; ++t) {
        const Mask ra = bits::rotl(a, t, p);
        const Mask rb = bits::rotl(b, t, p);
        if (std::minmax(ra, rb) < key) return false;
    }
    return true;
}

inline std::vector<Element> mask_elements(Mask m) {
    std::vector<Element> out;
    for (Mask w = m; w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
    return out;
}

/// Contiguous row ranges [first, last) of the pair triangle (i <= j) with
/// roughly equal pair counts. Depends only on the subset count, so chunk
/// ids are stable across worker counts and resumed runs.
inline std::vector<std::pair<std::size_t, std::size_t>> chunk_rows(std::size_t subsets,
                                                                   std::size_t target_chunks = 256) {
    std::vector<std::pair<std::size_t, std::size_t>> chunks;
    if (subsets == 0) return chunks;
    const std::uint64_t total = static_cast<std::uint64_t>(subsets) * (subsets + 1) / 2;
    const std::uint64_t per_chunk = std::max<std::uint64_t>(1, total / target_chunks);
    std::size_t first = 0;
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < subsets; ++i) {
        acc += subsets - i;
        if (acc >= per_chunk || i + 1 == subsets) {
            chunks.emplace_back(first, i + 1);
            first = i + 1;
            acc = 0;
        }
    }
    return chunks;
}

/// Calls fn(a, b) for each unordered pair of admissible subsets, a <= b as
/// masks, after normalization when enabled.
template <typename Fn>
void for_each_pair(const SweepSpec& spec, Fn&& fn) {
    validate(spec);
    check_budget(spec);
    const std::vector<Mask> subsets = admissible_subsets(spec);
    const bool normalize = spec.normalized();
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i; j < subsets.size(); ++j)
            if (!normalize || is_canonical(subsets[i], subsets[j], spec)) fn(subsets[i], subsets[j]);
}

/// Materialized pair stream; fine for small universes and tests.
inline std::vector<std::pair<std::vector<Element>, std::vector<Element>>> enumerate_pairs(const SweepSpec& spec) {
    std::vector<std::pair<std::vector<Element>, std::vector<Element>>> out;
    for_each_pair(spec, [&](Mask a, Mask b) { out.emplace_back(mask_elements(a), mask_elements(b)); });
    return out;
}

} // namespace ehinv::verify
