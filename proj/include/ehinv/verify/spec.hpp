#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "../error.hpp"
#include "../gaps.hpp"
#include "../modular.hpp"

namespace ehinv::verify {

enum class Selector { T1, T2, T3, T4, T5, T6, T7, Karolyi, Lemmas };

inline const char* to_string(Selector s) {
    switch (s) {
    case Selector::T1: return "T1";
    case Selector::T2: return "T2";
    case Selector::T3: return "T3";
    case Selector::T4: return "T4";
    case Selector::T5: return "T5";
    case Selector::T6: return "T6";
    case Selector::T7: return "T7";
    case Selector::Karolyi: return "KAROLYI";
    case Selector::Lemmas: return "LEMMAS";
    }
    return "?";
}

inline Selector parse_selector(std::string_view text) {
    for (Selector s : {Selector::T1, Selector::T2, Selector::T3, Selector::T4, Selector::T5, Selector::T6,
                       Selector::T7, Selector::Karolyi, Selector::Lemmas})
        if (text == to_string(s)) return s;
    throw ParseError("unknown theorem selector '" + std::string(text) +
                     "' (expected T1..T7, KAROLYI or LEMMAS)");
}

/// Selectors about Z run on integer windows; the rest need a prime.
inline bool is_integer_selector(Selector s) {
    return s == Selector::T1 || s == Selector::T2 || s == Selector::T3 || s == Selector::T4 || s == Selector::Lemmas;
}

enum class GapModes { Linear, Cyclic, Both };

inline const char* to_string(GapModes m) {
    switch (m) {
    case GapModes::Linear: return "linear";
    case GapModes::Cyclic: return "cyclic";
    case GapModes::Both: return "both";
    }
    return "?";
}

inline GapModes parse_gap_modes(std::string_view text) {
    if (text == "linear") return GapModes::Linear;
    if (text == "cyclic") return GapModes::Cyclic;
    if (text == "both") return GapModes::Both;
    throw ParseError("gap mode must be linear, cyclic or both, got '" + std::string(text) + "'");
}

inline constexpr int kMaxWindow = 16;
inline constexpr int kMaxSweepPrime = 23;
inline constexpr std::uint64_t kDefaultMaxPairs = 1'000'000'000;

struct SweepSpec {
    Selector selector = Selector::Karolyi;
    int window = 0; // Z universe {0..window-1}; 0 when sweeping mod p
    int prime = 0;  // Z/pZ universe; 0 when sweeping a window
    int min_size = 2;
    int max_size = 0;                // 0: no upper bound
    std::optional<bool> normalize;   // unset: on whenever the selector allows it
    GapModes gap_modes = GapModes::Both;
    bool search = false;             // report-only mode: never fails, relaxes hypotheses
    int workers = 1;
    std::string checkpoint_path;
    std::size_t counterexample_cap = 100;
    std::uint64_t max_pairs = kDefaultMaxPairs;

    bool modular() const { return prime != 0; }
    int universe() const { return modular() ? prime : window; }
    int upper_size() const { return max_size == 0 ? universe() : std::min(max_size, universe()); }

    /// Translation normalization is unsound for T5: a_m + b_n < p is not
    /// invariant under joint translation.
    bool normalized() const { return normalize.value_or(selector != Selector::T5); }
};

inline void validate(const SweepSpec& spec) {
    if ((spec.window == 0) == (spec.prime == 0))
        throw PreconditionError("sweep needs exactly one of a window (Z) or a prime (Z/pZ)");
    if (spec.window != 0 && (spec.window < 1 || spec.window > kMaxWindow))
        throw PreconditionError("window must be in [1, " + std::to_string(kMaxWindow) + "]");
    if (spec.prime != 0) {
        if (!is_prime(spec.prime)) throw PreconditionError("modulus " + std::to_string(spec.prime) + " is not prime");
        if (spec.prime > kMaxSweepPrime)
            throw PreconditionError("sweeps support primes up to " + std::to_string(kMaxSweepPrime));
    }
    if (is_integer_selector(spec.selector) && spec.modular())
        throw PreconditionError(std::string("selector ") + to_string(spec.selector) + " is about Z; use --window");
    if (!is_integer_selector(spec.selector) && !spec.modular())
        throw PreconditionError(std::string("selector ") + to_string(spec.selector) + " is about Z/pZ; use --mod");
    if (spec.min_size < 1) throw PreconditionError("minimum set size must be at least 1");
    if (spec.max_size != 0 && spec.max_size < spec.min_size)
        throw PreconditionError("maximum set size is below the minimum");
    if (spec.selector == Selector::T5 && spec.normalize.value_or(false))
        throw PreconditionError("T5 cannot be translation-normalized: a_m+b_n<p is not translation invariant");
    if (spec.workers < 1) throw PreconditionError("worker count must be at least 1");
    if (spec.counterexample_cap == 0) throw PreconditionError("counterexample cap must be positive");
}

/// Everything that determines the report. Workers and file paths are left
/// out so reports and checkpoints are comparable across them.
inline nlohmann::json spec_echo(const SweepSpec& spec) {
    nlohmann::json j;
    j["theorem"] = to_string(spec.selector);
    if (spec.modular())
        j["mod"] = spec.prime;
    else
        j["window"] = spec.window;
    j["min_size"] = spec.min_size;
    j["max_size"] = spec.upper_size();
    j["normalize"] = spec.normalized();
    j["gap_mode"] = to_string(spec.gap_modes);
    j["mode"] = spec.search ? "search" : "assert";
    j["counterexample_cap"] = spec.counterexample_cap;
    return j;
}

/// FNV-1a over the canonical echo.
inline std::uint64_t spec_hash(const SweepSpec& spec) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : spec_echo(spec).dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace ehinv::verify
