#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "../sets.hpp"
#include "enumerate.hpp"
#include "spec.hpp"

namespace ehinv::verify {

enum class CheckId : std::size_t {
    T1, T2, T3, T4,
    T5, T5Beyond,
    Karolyi, KarolyiOutside,
    T6Linear, T6Cyclic, T6EveryGenerator,
    T7, T7NonstandardA,
    Lemma1, Lemma2, Lemma3, Lemma4, Lemma5, Lemma6,
    Count
};

inline constexpr std::size_t kCheckCount = static_cast<std::size_t>(CheckId::Count);

inline const char* check_name(CheckId id) {
    static constexpr std::array<const char*, kCheckCount> names{
        "T1", "T2", "T3", "T4",
        "T5", "T5:beyond-hypothesis",
        "KAROLYI", "KAROLYI:outside-hypothesis",
        "T6:linear", "T6:cyclic", "T6:every-generator",
        "T7", "T7:nonstandard-A",
        "LEMMA1", "LEMMA2", "LEMMA3", "LEMMA4", "LEMMA5", "LEMMA6"};
    return names[static_cast<std::size_t>(id)];
}

inline CheckId check_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kCheckCount; ++i)
        if (name == check_name(static_cast<CheckId>(i))) return static_cast<CheckId>(i);
    throw ParseError("unknown check name '" + std::string(name) + "'");
}

/// Checks a selector reports, in report order.
inline std::vector<CheckId> checks_for(const SweepSpec& spec) {
    using C = CheckId;
    switch (spec.selector) {
    case Selector::T1: return {C::T1};
    case Selector::T2: return {C::T2};
    case Selector::T3: return {C::T3};
    case Selector::T4: return {C::T4};
    case Selector::T5: return spec.search ? std::vector{C::T5, C::T5Beyond} : std::vector{C::T5};
    case Selector::Karolyi: return spec.search ? std::vector{C::Karolyi, C::KarolyiOutside} : std::vector{C::Karolyi};
    case Selector::T6: {
        std::vector<CheckId> out;
        if (spec.gap_modes != GapModes::Cyclic) out.push_back(C::T6Linear);
        if (spec.gap_modes != GapModes::Linear) out.push_back(C::T6Cyclic);
        if (spec.search) out.push_back(C::T6EveryGenerator);
        return out;
    }
    case Selector::T7: return spec.search ? std::vector{C::T7, C::T7NonstandardA} : std::vector{C::T7};
    case Selector::Lemmas: return {C::Lemma1, C::Lemma2, C::Lemma3, C::Lemma4, C::Lemma5, C::Lemma6};
    }
    return {};
}

enum class ObservationId : std::size_t { CriticalInHypothesis, NonstandardCritical, Count };
inline constexpr std::size_t kObservationCount = static_cast<std::size_t>(ObservationId::Count);

inline const char* observation_name(ObservationId id) {
    return id == ObservationId::CriticalInHypothesis ? "critical_in_hypothesis" : "nonstandard_critical";
}

struct CheckTally {
    std::uint64_t checked = 0;
    std::uint64_t agreements = 0;
};

struct Counterexample {
    CheckId check = CheckId::T1;
    Mask a = 0;
    Mask b = 0;
    bool oracle = false;
    bool predicted = false;
    int sumset_size = 0;
};

/// Pairs with |A|+|B|-2 <= p < |A|+|B|: covered by the mod-p
/// characterization but outside the p >= |A|+|B| results.
struct BandTally {
    std::uint64_t checked = 0;
    std::uint64_t agreements = 0;
    std::uint64_t critical = 0;
};

/// Partial tallies of one chunk, or of a merged run.
struct Tally {
    std::uint64_t visited = 0;
    std::array<CheckTally, kCheckCount> checks{};
    BandTally band;
    std::array<std::uint64_t, kObservationCount> observations{};
    std::uint64_t counterexample_total = 0;
    std::vector<Counterexample> counterexamples; // first `cap`, enumeration order

    void record(CheckId id, bool agrees, std::size_t cap, Counterexample cx) {
        CheckTally& t = checks[static_cast<std::size_t>(id)];
        ++t.checked;
        if (agrees) {
            ++t.agreements;
            return;
        }
        ++counterexample_total;
        if (counterexamples.size() < cap) {
            cx.check = id;
            counterexamples.push_back(cx);
        }
    }

    void observe(ObservationId id) { ++observations[static_cast<std::size_t>(id)]; }

    /// Appends `later`, which must come after *this in enumeration order.
    void merge(const Tally& later, std::size_t cap) {
        visited += later.visited;
        for (std::size_t i = 0; i < kCheckCount; ++i) {
            checks[i].checked += later.checks[i].checked;
            checks[i].agreements += later.checks[i].agreements;
        }
        band.checked += later.band.checked;
        band.agreements += later.band.agreements;
        band.critical += later.band.critical;
        for (std::size_t i = 0; i < kObservationCount; ++i) observations[i] += later.observations[i];
        counterexample_total += later.counterexample_total;
        for (const Counterexample& cx : later.counterexamples) {
            if (counterexamples.size() >= cap) break;
            counterexamples.push_back(cx);
        }
    }
};

inline nlohmann::json tally_to_json(const Tally& t) {
    nlohmann::json j;
    j["visited"] = t.visited;
    nlohmann::json checks = nlohmann::json::object();
    for (std::size_t i = 0; i < kCheckCount; ++i)
        if (t.checks[i].checked != 0)
            checks[check_name(static_cast<CheckId>(i))] = {t.checks[i].checked, t.checks[i].agreements};
    j["checks"] = checks;
    j["band"] = {t.band.checked, t.band.agreements, t.band.critical};
    j["observations"] = t.observations;
    j["cx_total"] = t.counterexample_total;
    nlohmann::json cx = nlohmann::json::array();
    for (const Counterexample& c : t.counterexamples)
        cx.push_back({check_name(c.check), c.a, c.b, c.oracle, c.predicted, c.sumset_size});
    j["cx"] = cx;
    return j;
}

inline Tally tally_from_json(const nlohmann::json& j) {
    Tally t;
    t.visited = j.at("visited").get<std::uint64_t>();
    for (const auto& [name, v] : j.at("checks").items()) {
        CheckTally& c = t.checks[static_cast<std::size_t>(check_from_name(name))];
        c.checked = v.at(0).get<std::uint64_t>();
        c.agreements = v.at(1).get<std::uint64_t>();
    }
    const auto& band = j.at("band");
    t.band = {band.at(0).get<std::uint64_t>(), band.at(1).get<std::uint64_t>(), band.at(2).get<std::uint64_t>()};
    t.observations = j.at("observations").get<std::array<std::uint64_t, kObservationCount>>();
    t.counterexample_total = j.at("cx_total").get<std::uint64_t>();
    for (const auto& c : j.at("cx"))
        t.counterexamples.push_back({check_from_name(c.at(0).get<std::string>()), c.at(1).get<Mask>(),
                                     c.at(2).get<Mask>(), c.at(3).get<bool>(), c.at(4).get<bool>(),
                                     c.at(5).get<int>()});
    return t;
}

struct VerifyReport {
    SweepSpec spec;
    std::uint64_t enumerated = 0;
    Tally tally;
    std::int64_t elapsed_ms = 0;

    std::uint64_t checked() const {
        std::uint64_t n = 0;
        for (CheckId id : checks_for(spec)) n += tally.checks[static_cast<std::size_t>(id)].checked;
        return n;
    }
    std::uint64_t agreements() const {
        std::uint64_t n = 0;
        for (CheckId id : checks_for(spec)) n += tally.checks[static_cast<std::size_t>(id)].agreements;
        return n;
    }
    std::uint64_t counterexample_count() const { return tally.counterexample_total; }

    /// Assertion-mode sweeps fail on any disagreement; search mode never does.
    bool failed() const { return !spec.search && tally.counterexample_total != 0; }
};

inline nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json j;
    j["spec"] = spec_echo(r.spec);
    j["counts"] = {{"enumerated", r.enumerated},
                   {"after_normalization", r.tally.visited},
                   {"checked", r.checked()},
                   {"agreements", r.agreements()},
                   {"counterexamples", r.tally.counterexample_total}};
    nlohmann::json checks = nlohmann::json::object();
    for (CheckId id : checks_for(r.spec)) {
        const CheckTally& t = r.tally.checks[static_cast<std::size_t>(id)];
        checks[check_name(id)] = {{"checked", t.checked}, {"agreements", t.agreements}};
    }
    j["checks"] = checks;
    nlohmann::json cx = nlohmann::json::array();
    for (const Counterexample& c : r.tally.counterexamples) {
        cx.push_back({{"check", check_name(c.check)},
                      {"A", format_elements(mask_elements(c.a))},
                      {"B", format_elements(mask_elements(c.b))},
                      {"oracle", c.oracle},
                      {"predicted", c.predicted},
                      {"sumset_size", c.sumset_size}});
    }
    j["counterexamples"] = cx;
    j["counterexamples_truncated"] = r.tally.counterexample_total > r.tally.counterexamples.size();
    if (r.spec.modular())
        j["boundary_band"] = {{"checked", r.tally.band.checked},
                              {"agreements", r.tally.band.agreements},
                              {"critical", r.tally.band.critical}};
    else
        j["boundary_band"] = nullptr;
    nlohmann::json obs = nlohmann::json::object();
    if (r.spec.selector == Selector::T6 || r.spec.selector == Selector::T7)
        for (std::size_t i = 0; i < kObservationCount; ++i)
            obs[observation_name(static_cast<ObservationId>(i))] = r.tally.observations[i];
    j["observations"] = obs;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

/// One row per recorded counterexample.
inline std::string to_csv(const VerifyReport& r) {
    std::string out = "check,A,B,oracle,predicted,sumset_size\n";
    for (const Counterexample& c : r.tally.counterexamples) {
        out += check_name(c.check);
        out += ",\"" + format_elements(mask_elements(c.a)) + "\",\"" + format_elements(mask_elements(c.b)) + "\",";
        out += c.oracle ? "true," : "false,";
        out += c.predicted ? "true," : "false,";
        out += std::to_string(c.sumset_size) + "\n";
    }
    return out;
}

} // namespace ehinv::verify
