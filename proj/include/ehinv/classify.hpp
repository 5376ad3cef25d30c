#pragma once

// Structural detectors and the criticality predictor. Nothing in this header
// evaluates a sumset: verdicts come from the shape of the sets alone, so they
// can be checked against the brute-force oracle in sumset.hpp.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "sets.hpp"

namespace ehinv {

/// {start + i*difference : 0 <= i < length}, difference != 0.
struct APWitness {
    Element start = 0;
    Element difference = 0;
    std::int64_t length = 0;
    friend bool operator==(const APWitness&, const APWitness&) = default;
};

/// {a, a+d, c, c+d} with four distinct elements.
struct BiPairWitness {
    Element a = 0;
    Element c = 0;
    Element d = 0;
    friend bool operator==(const BiPairWitness&, const BiPairWitness&) = default;
};

enum class CaseTag { NotCritical, EqualSmall, BiPair, StandardPair };

inline const char* to_string(CaseTag tag) {
    switch (tag) {
    case CaseTag::NotCritical: return "NotCritical";
    case CaseTag::EqualSmall: return "EqualSmall";
    case CaseTag::BiPair: return "BiPair";
    case CaseTag::StandardPair: return "StandardPair";
    }
    return "?";
}

struct PairClassification {
    bool critical = false;
    CaseTag case_tag = CaseTag::NotCritical;
    std::optional<APWitness> ap;          // set iff case_tag == StandardPair
    std::optional<BiPairWitness> bi_pair; // set iff case_tag == BiPair

    friend bool operator==(const PairClassification&, const PairClassification&) = default;
};

/// "StandardPair(0,2,5)", "BiPair(0,3,1)", "EqualSmall", "NotCritical".
inline std::string describe(const PairClassification& c) {
    std::string out = to_string(c.case_tag);
    if (c.ap)
        out += "(" + std::to_string(c.ap->start) + "," + std::to_string(c.ap->difference) + "," +
               std::to_string(c.ap->length) + ")";
    if (c.bi_pair)
        out += "(" + std::to_string(c.bi_pair->a) + "," + std::to_string(c.bi_pair->c) + "," +
               std::to_string(c.bi_pair->d) + ")";
    return out;
}

// ---------------------------------------------------------------------------
// Witness reconstruction

inline IntSet reconstruct(const APWitness& w, Integers) {
    std::vector<Element> out;
    Element x = w.start;
    for (std::int64_t i = 0; i < w.length; ++i) {
        out.push_back(x);
        if (i + 1 < w.length) x = checked_add(x, w.difference);
    }
    return IntSet::from_unsorted(std::move(out));
}

inline ModSet reconstruct(const APWitness& w, const ModP& ctx) {
    std::vector<Element> out;
    const auto p = static_cast<std::uint64_t>(ctx.p());
    std::uint64_t x = static_cast<std::uint64_t>(w.start) % p;
    const std::uint64_t d = static_cast<std::uint64_t>(w.difference) % p;
    for (std::int64_t i = 0; i < w.length; ++i) {
        out.push_back(static_cast<Element>(x));
        x = (x + d) % p;
    }
    return ModSet::reduce(ctx.p(), std::move(out));
}

inline IntSet reconstruct(const BiPairWitness& w, Integers) {
    return IntSet::from_unsorted({w.a, checked_add(w.a, w.d), w.c, checked_add(w.c, w.d)});
}

inline ModSet reconstruct(const BiPairWitness& w, const ModP& ctx) {
    const auto p = static_cast<std::uint64_t>(ctx.p());
    auto add = [p](Element x, Element y) {
        return static_cast<Element>((static_cast<std::uint64_t>(x) + static_cast<std::uint64_t>(y)) % p);
    };
    return ModSet::reduce(ctx.p(), {w.a, add(w.a, w.d), w.c, add(w.c, w.d)});
}

// ---------------------------------------------------------------------------
// Arithmetic progressions

/// In Z the witness carries the positive common difference.
inline std::optional<APWitness> detect_ap(const IntSet& x) {
    if (x.size() < 2) throw PreconditionError("detect_ap: set needs at least 2 elements");
    const auto e = x.elements();
    Element d{};
    if (__builtin_sub_overflow(e[1], e[0], &d)) return std::nullopt;
    for (std::size_t i = 2; i < e.size(); ++i) {
        Element step{};
        if (__builtin_sub_overflow(e[i], e[i - 1], &step) || step != d) return std::nullopt;
    }
    return APWitness{e[0], d, static_cast<std::int64_t>(e.size())};
}

namespace detail {

inline Element sub_mod(Element x, Element y, Element p) {
    const Element r = x - y; // both in [0, p)
    return r < 0 ? r + p : r;
}

inline Element add_mod(Element x, Element y, Element p) {
    return static_cast<Element>((static_cast<std::uint64_t>(x) + static_cast<std::uint64_t>(y)) %
                                static_cast<std::uint64_t>(p));
}

/// Every difference x_j - x_i (i != j), ascending and deduplicated.
inline std::vector<Element> pairwise_differences(const ModSet& x) {
    std::vector<Element> diffs;
    const auto e = x.elements();
    diffs.reserve(e.size() * (e.size() - 1));
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < e.size(); ++j)
            if (i != j) diffs.push_back(sub_mod(e[j], e[i], x.modulus()));
    std::sort(diffs.begin(), diffs.end());
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    return diffs;
}

/// The start of X read as a progression with difference d, if it is one.
inline std::optional<Element> ap_start(const ModSet& x, Element d) {
    const Element p = x.modulus();
    std::optional<Element> start;
    for (Element v : x.elements()) {
        if (!x.contains(sub_mod(v, d, p))) {
            if (start) return std::nullopt; // two chain heads
            start = v;
        }
    }
    if (!start) return std::nullopt;
    Element v = *start;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x.contains(v)) return std::nullopt;
        v = add_mod(v, d, p);
    }
    return start;
}

} // namespace detail

/// Every progression reading of X, ordered by difference. The full group
/// reads as a progression from 0 under every nonzero difference.
inline std::vector<APWitness> all_ap_witnesses(const ModSet& x) {
    if (x.size() < 2) throw PreconditionError("all_ap_witnesses: set needs at least 2 elements");
    const Element p = x.modulus();
    const auto len = static_cast<std::int64_t>(x.size());
    std::vector<APWitness> out;
    if (len == p) {
        for (Element d = 1; d < p; ++d) out.push_back({0, d, len});
        return out;
    }
    for (Element d : detail::pairwise_differences(x))
        if (auto start = detail::ap_start(x, d)) out.push_back({*start, d, len});
    return out;
}

/// Minimal-difference progression reading of X mod p. Candidate differences
/// come from element pairs, so the cost is independent of p.
inline std::optional<APWitness> detect_ap(const ModSet& x) {
    if (x.size() < 2) throw PreconditionError("detect_ap: set needs at least 2 elements");
    const Element p = x.modulus();
    const auto len = static_cast<std::int64_t>(x.size());
    if (len == p) return APWitness{0, 1, len};
    for (Element d : detail::pairwise_differences(x))
        if (auto start = detail::ap_start(x, d)) return APWitness{*start, d, len};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Bi-pairs {a, a+d, c, c+d}

/// Sorted x1<x2<x3<x4 is a bi-pair iff x2-x1 == x4-x3.
inline std::optional<BiPairWitness> detect_bi_pair(const IntSet& x) {
    if (x.size() != 4) throw PreconditionError("detect_bi_pair: set must have exactly 4 elements");
    const auto e = x.elements();
    Element left{}, right{};
    if (__builtin_sub_overflow(e[1], e[0], &left) || __builtin_sub_overflow(e[3], e[2], &right)) return std::nullopt;
    if (left != right) return std::nullopt;
    return BiPairWitness{e[0], e[2], left};
}

/// Searches all pairings; minimal d wins, then minimal a, then minimal c.
inline std::optional<BiPairWitness> detect_bi_pair(const ModSet& x) {
    if (x.size() != 4) throw PreconditionError("detect_bi_pair: set must have exactly 4 elements");
    const Element p = x.modulus();
    const auto e = x.elements();
    std::optional<BiPairWitness> best;
    auto consider = [&](BiPairWitness w) {
        auto key = [](const BiPairWitness& v) { return std::tuple(v.d, v.a, v.c); };
        if (!best || key(w) < key(*best)) best = w;
    };
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            const Element d = detail::sub_mod(e[j], e[i], p);
            std::size_t rest[2];
            std::size_t n = 0;
            for (std::size_t k = 0; k < 4; ++k)
                if (k != i && k != j) rest[n++] = k;
            if (detail::sub_mod(e[rest[1]], e[rest[0]], p) == d) consider({e[i], e[rest[0]], d});
            if (detail::sub_mod(e[rest[0]], e[rest[1]], p) == d) consider({e[i], e[rest[1]], d});
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Standard pairs and the predictor

template <typename Set>
std::optional<APWitness> is_standard_pair(const Set& a, const Set& b) {
    if (a.size() < 2 || b.size() < 2) throw PreconditionError("is_standard_pair: both sets need at least 2 elements");
    if (!(a == b)) return std::nullopt;
    return detect_ap(a);
}

/// Structural verdict for the pair (X, X), keyed on |X|.
template <typename Set>
PairClassification classify_equal(const Set& x) {
    if (x.size() < 2) throw PreconditionError("classify_equal: set needs at least 2 elements");
    PairClassification out;
    if (x.size() <= 3) {
        out.critical = true;
        out.case_tag = CaseTag::EqualSmall;
    } else if (x.size() == 4) {
        // A 4-term progression is also a bi-pair; the cardinality split puts it here.
        if (auto w = detect_bi_pair(x)) {
            out.critical = true;
            out.case_tag = CaseTag::BiPair;
            out.bi_pair = *w;
        }
    } else if (auto w = detect_ap(x)) {
        out.critical = true;
        out.case_tag = CaseTag::StandardPair;
        out.ap = *w;
    }
    return out;
}

/// Predicted criticality of the unordered pair (A, B) in Z.
inline PairClassification predict_critical(const IntSet& a, const IntSet& b) {
    if (a.size() < 2 || b.size() < 2) throw PreconditionError("predict_critical: both sets need at least 2 elements");
    const IntSet& small = a.size() <= b.size() ? a : b;
    const IntSet& large = a.size() <= b.size() ? b : a;
    if (!(small == large)) return {};
    return classify_equal(small);
}

/// Predicted criticality in Z/pZ. Only defined when p >= |A| + |B| - 2.
inline PairClassification predict_critical(const ModSet& a, const ModSet& b) {
    require_same_modulus(a, b);
    if (a.size() < 2 || b.size() < 2) throw PreconditionError("predict_critical: both sets need at least 2 elements");
    const auto need = static_cast<std::int64_t>(a.size() + b.size()) - 2;
    if (a.modulus() < need)
        throw HypothesisViolation("p >= |A|+|B|-2 fails: p = " + std::to_string(a.modulus()) +
                                  ", |A|+|B|-2 = " + std::to_string(need));
    const ModSet& small = a.size() <= b.size() ? a : b;
    const ModSet& large = a.size() <= b.size() ? b : a;
    if (!(small == large)) return {};
    return classify_equal(small);
}

} // namespace ehinv
