#pragma once

// Exponent profiles of subsets of Z/pZ with respect to an additive generator d:
// X is rewritten as {r : r*d mod p in X} and scanned for runs of missing
// exponents ("gaps"). Exponents live in the window [0, p-1].

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "classify.hpp"
#include "error.hpp"
#include "modular.hpp"
#include "sets.hpp"
#include "sumset.hpp"

namespace ehinv {

/// LINEAR: gaps stop at the window edges 0 and p-1.
/// CYCLIC: exponent p-1 is adjacent to exponent 0.
enum class GapMode { Linear, Cyclic };

inline const char* to_string(GapMode mode) { return mode == GapMode::Linear ? "linear" : "cyclic"; }

inline GapMode parse_gap_mode(std::string_view text) {
    if (text == "linear") return GapMode::Linear;
    if (text == "cyclic") return GapMode::Cyclic;
    throw ParseError("gap mode must be 'linear' or 'cyclic', got '" + std::string(text) + "'");
}

/// Maximal run of present exponents, inclusive. In cyclic mode a run that
/// wraps through p-1 -> 0 has first > last.
struct ExponentBlock {
    std::int64_t first = 0;
    std::int64_t last = 0;
    friend bool operator==(const ExponentBlock&, const ExponentBlock&) = default;
};

struct GapProfile {
    Element modulus = 0;
    Element generator = 0;
    GapMode mode = GapMode::Linear;
    std::vector<std::int64_t> exponents;
    std::vector<ExponentBlock> blocks;
    std::int64_t longest_gap = 0;
};

namespace detail {

inline std::vector<ExponentBlock> linear_blocks(const std::vector<std::int64_t>& exps) {
    std::vector<ExponentBlock> blocks;
    for (std::int64_t r : exps) {
        if (!blocks.empty() && blocks.back().last + 1 == r)
            blocks.back().last = r;
        else
            blocks.push_back({r, r});
    }
    return blocks;
}

inline std::int64_t longest_missing_run(const std::vector<std::int64_t>& exps, std::int64_t p, GapMode mode) {
    if (static_cast<std::int64_t>(exps.size()) == p) return 0;
    std::int64_t best = 0;
    for (std::size_t i = 1; i < exps.size(); ++i) best = std::max(best, exps[i] - exps[i - 1] - 1);
    const std::int64_t head = exps.front();
    const std::int64_t tail = p - 1 - exps.back();
    if (mode == GapMode::Linear)
        best = std::max({best, head, tail});
    else
        best = std::max(best, head + tail);
    return best;
}

} // namespace detail

/// Profile of X with respect to generator d. Exponents are x * d^{-1} mod p.
inline GapProfile exponent_profile(const ModSet& x, Element d, GapMode mode = GapMode::Linear) {
    const Element p = x.modulus();
    if (x.empty()) throw PreconditionError("exponent_profile: set must be nonempty");
    if (d < 1 || d > p - 1)
        throw PreconditionError("exponent_profile: generator " + std::to_string(d) + " is not in [1, " +
                                std::to_string(p - 1) + "]");
    const auto inv = static_cast<std::uint64_t>(mod_inverse(d, p));
    GapProfile out;
    out.modulus = p;
    out.generator = d;
    out.mode = mode;
    out.exponents.reserve(x.size());
    for (Element v : x.elements())
        out.exponents.push_back(
            static_cast<std::int64_t>(mul_mod(static_cast<std::uint64_t>(v), inv, static_cast<std::uint64_t>(p))));
    std::sort(out.exponents.begin(), out.exponents.end());
    out.blocks = detail::linear_blocks(out.exponents);
    if (mode == GapMode::Cyclic && out.blocks.size() > 1 && out.blocks.front().first == 0 &&
        out.blocks.back().last == p - 1) {
        out.blocks.front().first = out.blocks.back().first;
        out.blocks.pop_back();
    }
    out.longest_gap = detail::longest_missing_run(out.exponents, p, mode);
    return out;
}

/// One profile per generator d = 1..p-1, in generator order.
inline std::vector<GapProfile> longest_gap_over_generators(const ModSet& x, GapMode mode = GapMode::Linear) {
    if (x.empty()) throw PreconditionError("longest_gap_over_generators: set must be nonempty");
    std::vector<GapProfile> out;
    out.reserve(static_cast<std::size_t>(x.modulus() - 1));
    for (Element d = 1; d < x.modulus(); ++d) out.push_back(exponent_profile(x, d, mode));
    return out;
}

/// Gap of B measured against one progression reading (start, d) of A.
struct GapMeasurement {
    Element start = 0;
    Element difference = 0;
    std::int64_t linear_gap = 0;
    std::int64_t cyclic_gap = 0;
};

struct GapTheoremReport {
    std::int64_t required = 0; // |A|
    std::vector<GapMeasurement> measurements;
    std::int64_t min_linear = 0;
    std::int64_t min_cyclic = 0;
    bool holds_linear = false;
    bool holds_cyclic = false;
};

/// Measures B against every difference d that makes A a progression,
/// after translating both sets so A starts at 0. The report keeps the
/// minimum over those readings, so both d and p-d must clear |A|.
inline GapTheoremReport measure_gaps_against_progression(const ModSet& a, const ModSet& b) {
    GapTheoremReport report;
    report.required = static_cast<std::int64_t>(a.size());
    report.min_linear = a.modulus();
    report.min_cyclic = a.modulus();
    for (const APWitness& w : all_ap_witnesses(a)) {
        const ModSet shifted = translate(b, -w.start);
        GapMeasurement m{w.start, w.difference, exponent_profile(shifted, w.difference, GapMode::Linear).longest_gap,
                         exponent_profile(shifted, w.difference, GapMode::Cyclic).longest_gap};
        report.min_linear = std::min(report.min_linear, m.linear_gap);
        report.min_cyclic = std::min(report.min_cyclic, m.cyclic_gap);
        report.measurements.push_back(m);
    }
    report.holds_linear = !report.measurements.empty() && report.min_linear >= report.required;
    report.holds_cyclic = !report.measurements.empty() && report.min_cyclic >= report.required;
    return report;
}

/// Gap lower bound for critical pairs with a progression A: the longest gap
/// of B with respect to A's difference is at least |A|. Requires
/// p >= |A| + |B|, |A| >= 5, A a progression and (A, B) critical.
inline GapTheoremReport check_gap_theorem(const ModSet& a, const ModSet& b) {
    require_same_modulus(a, b);
    const Element p = a.modulus();
    if (a.size() < 5) throw HypothesisViolation("gap theorem needs |A| >= 5, got " + std::to_string(a.size()));
    if (b.size() < 2) throw HypothesisViolation("gap theorem needs |B| >= 2");
    const auto total = static_cast<std::int64_t>(a.size() + b.size());
    if (p < total)
        throw HypothesisViolation("p >= |A|+|B| fails: p = " + std::to_string(p) + ", |A|+|B| = " +
                                  std::to_string(total));
    if (!detect_ap(a)) throw HypothesisViolation("gap theorem needs A to be an arithmetic progression");
    if (!is_critical_pair(a, b)) throw HypothesisViolation("gap theorem needs (A, B) to be a critical pair");
    return measure_gaps_against_progression(a, b);
}

} // namespace ehinv
