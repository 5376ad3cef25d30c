#pragma once

// Exhaustive sweeps: every pair of the universe is evaluated by the sumset
// oracle (bit kernels from core) and by the structural side (classify/gaps),
// and each theorem or lemma statement becomes a tallied check.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "../bits.hpp"
#include "../classify.hpp"
#include "../gaps.hpp"
#include "../sets.hpp"
#include "checkpoint.hpp"
#include "enumerate.hpp"
#include "report.hpp"
#include "spec.hpp"

namespace ehinv::verify {

struct SweepControl {
    std::string resume_path;                     // load completed chunks from here first
    std::optional<std::size_t> stop_after_chunks; // simulate an interruption
};

struct SweepResult {
    bool complete = false;
    VerifyReport report; // partial tallies when !complete
};

namespace detail {

struct SubsetInfo {
    int size = 0;
    int top = 0;            // largest element (canonical representative mod p)
    bool self_critical = false; // structural verdict for the pair (X, X)
    bool standard = false;  // X is an arithmetic progression
};

class SweepEngine {
public:
    explicit SweepEngine(const SweepSpec& spec) : spec_(spec), subsets_(admissible_subsets(spec)) {
        info_.reserve(subsets_.size());
        for (Mask m : subsets_) info_.push_back(describe_subset(m));
        chunks_ = chunk_rows(subsets_.size());
    }

    std::size_t chunk_count() const { return chunks_.size(); }
    std::uint64_t enumerated() const {
        const auto s = static_cast<std::uint64_t>(subsets_.size());
        return s * (s + 1) / 2;
    }

    Tally run_chunk(std::size_t chunk) const {
        Tally t;
        const bool normalize = spec_.normalized();
        const auto [first, last] = chunks_[chunk];
        for (std::size_t i = first; i < last; ++i) {
            for (std::size_t j = i; j < subsets_.size(); ++j) {
                if (normalize && !is_canonical(subsets_[i], subsets_[j], spec_)) continue;
                ++t.visited;
                if (spec_.modular())
                    evaluate_modular(i, j, t);
                else
                    evaluate_integer(i, j, t);
            }
        }
        return t;
    }

private:
    SubsetInfo describe_subset(Mask m) const {
        SubsetInfo s;
        s.size = bits::count(m);
        s.top = 63 - std::countl_zero(m);
        if (s.size < 2) return s;
        if (spec_.modular()) {
            const ModSet x(spec_.prime, mask_elements(m));
            s.self_critical = classify_equal(x).critical;
            s.standard = detect_ap(x).has_value();
        } else {
            const IntSet x(mask_elements(m));
            s.self_critical = classify_equal(x).critical;
            s.standard = detect_ap(x).has_value();
        }
        return s;
    }

    void record(Tally& t, CheckId id, bool holds, Mask a, Mask b, bool oracle, bool predicted, int size) const {
        t.record(id, holds, spec_.counterexample_cap, Counterexample{id, a, b, oracle, predicted, size});
    }

    /// Statement checks: `oracle` is what was measured, `predicted` what the statement claims.
    void record_property(Tally& t, CheckId id, bool holds, Mask a, Mask b, int size) const {
        record(t, id, holds, a, b, holds, true, size);
    }

    static bool critical_linear(Mask a, Mask b) {
        const int size = bits::count(bits::restricted_sum_linear(a, b));
        return size + 3 == bits::count(a) + bits::count(b);
    }

    void evaluate_integer(std::size_t i, std::size_t j, Tally& t) const {
        const Mask a = subsets_[i], b = subsets_[j];
        const SubsetInfo &ia = info_[i], &ib = info_[j];
        const int rs = bits::count(bits::restricted_sum_linear(a, b));
        const int total = ia.size + ib.size;
        const bool sizes_ok = ia.size >= 2 && ib.size >= 2;
        const bool oracle = sizes_ok && rs + 3 == total;

        auto theorem = [&](CheckId id, bool hypothesis) {
            if (!hypothesis) return;
            const bool predicted = i == j && ia.self_critical;
            record(t, id, oracle == predicted, a, b, oracle, predicted, rs);
        };
        auto has_size = [&](int k) { return ia.size == k || ib.size == k; };

        switch (spec_.selector) {
        case Selector::T1: theorem(CheckId::T1, sizes_ok && has_size(2)); break;
        case Selector::T2: theorem(CheckId::T2, sizes_ok && has_size(3)); break;
        case Selector::T3: theorem(CheckId::T3, sizes_ok && has_size(4)); break;
        case Selector::T4: theorem(CheckId::T4, sizes_ok && std::max(ia.size, ib.size) >= 5); break;
        case Selector::Lemmas: evaluate_lemmas(i, j, rs, t); break;
        default: break;
        }
    }

    void evaluate_lemmas(std::size_t i, std::size_t j, int rs, Tally& t) const {
        const Mask a = subsets_[i], b = subsets_[j];
        const SubsetInfo &ia = info_[i], &ib = info_[j];
        const int total = ia.size + ib.size;

        const int full = bits::count(bits::sum_linear(a, b));
        record_property(t, CheckId::Lemma1, full >= total - 1, a, b, full);
        record_property(t, CheckId::Lemma2, rs >= std::max(0, total - 3), a, b, rs);

        if (ia.size < 2 || ib.size < 2) return;
        if (a != b) record_property(t, CheckId::Lemma6, rs >= total - 2, a, b, rs);
        const bool b_in_a = (b & ~a) == 0;
        const bool a_in_b = (a & ~b) == 0;
        if (a != b && (b_in_a || a_in_b)) record_property(t, CheckId::Lemma5, rs >= total - 2, a, b, rs);

        if (rs + 3 != total) return;
        // Orientations (big, small) with small contained in big.
        auto descent = [&](std::size_t big, std::size_t small) {
            const Mask x = subsets_[big], y = subsets_[small];
            if (info_[big].size < 5) return;
            const bool same_top = info_[big].top == info_[small].top;
            const Mask x_rest = x & ~bits::bit(static_cast<unsigned>(info_[big].top));
            const Mask y_rest = y & ~bits::bit(static_cast<unsigned>(info_[small].top));
            const bool holds = same_top && critical_linear(x_rest, y_rest);
            record_property(t, CheckId::Lemma3, holds, x, y, rs);
            record_property(t, CheckId::Lemma4, x == y && info_[big].standard, x, y, rs);
        };
        if (b_in_a) descent(i, j);
        if (a_in_b && a != b) descent(j, i);
    }

    void evaluate_modular(std::size_t i, std::size_t j, Tally& t) const {
        const Mask a = subsets_[i], b = subsets_[j];
        const SubsetInfo &ia = info_[i], &ib = info_[j];
        if (ia.size < 2 || ib.size < 2) return;
        const int p = spec_.prime;
        const int rs = bits::count(bits::restricted_sum_cyclic(a, b, static_cast<unsigned>(p)));
        const int total = ia.size + ib.size;
        const bool oracle = rs + 3 == total;
        const bool predicted = i == j && ia.self_critical;
        const bool in_hypothesis = p >= total - 2;
        const bool in_band = in_hypothesis && p < total;

        auto band = [&] {
            if (!in_band) return;
            ++t.band.checked;
            if (oracle == predicted) ++t.band.agreements;
            if (oracle) ++t.band.critical;
        };

        switch (spec_.selector) {
        case Selector::Karolyi:
            if (in_hypothesis) {
                record(t, CheckId::Karolyi, oracle == predicted, a, b, oracle, predicted, rs);
                band();
            } else if (spec_.search) {
                record(t, CheckId::KarolyiOutside, oracle == predicted, a, b, oracle, predicted, rs);
            }
            break;
        case Selector::T5:
            if (!in_hypothesis) break;
            if (ia.top + ib.top < p) {
                record(t, CheckId::T5, oracle == predicted, a, b, oracle, predicted, rs);
                band();
            } else if (spec_.search) {
                record(t, CheckId::T5Beyond, oracle == predicted, a, b, oracle, predicted, rs);
            }
            break;
        case Selector::T6:
        case Selector::T7:
            if (!oracle) break;
            evaluate_standard_set_results(i, j, rs, t);
            if (i != j) evaluate_standard_set_results(j, i, rs, t);
            break;
        default: break;
        }
    }

    /// Orientation (A, B) = (subsets_[ia], subsets_[ib]) of a critical pair.
    void evaluate_standard_set_results(std::size_t ia, std::size_t ib, int rs, Tally& t) const {
        const SubsetInfo &sa = info_[ia], &sb = info_[ib];
        const int p = spec_.prime;
        if (sa.size < 5 || p < sa.size + sb.size) return;
        const Mask a = subsets_[ia], b = subsets_[ib];
        t.observe(ObservationId::CriticalInHypothesis);
        if (!sa.standard) t.observe(ObservationId::NonstandardCritical);
        if (!sa.standard && !spec_.search) return;

        const ModSet set_a(p, mask_elements(a));
        const ModSet set_b(p, mask_elements(b));
        if (spec_.selector == Selector::T6) {
            if (sa.standard) {
                const GapTheoremReport gaps = measure_gaps_against_progression(set_a, set_b);
                if (spec_.gap_modes != GapModes::Cyclic)
                    record_property(t, CheckId::T6Linear, gaps.holds_linear, a, b, rs);
                if (spec_.gap_modes != GapModes::Linear)
                    record_property(t, CheckId::T6Cyclic, gaps.holds_cyclic, a, b, rs);
            }
            if (spec_.search) {
                // Literal reading: every generator d, with no translation.
                bool every = true;
                for (Element d = 1; d < p && every; ++d)
                    every = exponent_profile(set_b, d, GapMode::Linear).longest_gap >= sa.size;
                record_property(t, CheckId::T6EveryGenerator, every, a, b, rs);
            }
        } else {
            const bool standard_pair = is_standard_pair(set_a, set_b).has_value();
            record_property(t, sa.standard ? CheckId::T7 : CheckId::T7NonstandardA, standard_pair, a, b, rs);
        }
    }

    SweepSpec spec_;
    std::vector<Mask> subsets_;
    std::vector<SubsetInfo> info_;
    std::vector<std::pair<std::size_t, std::size_t>> chunks_;
};

} // namespace detail

/// Runs (or resumes) a sweep. Chunks are claimed by workers from a shared
/// counter; each chunk's tally lands in its own slot and the slots are
/// merged in chunk order, so the report does not depend on the worker count.
inline SweepResult run_sweep(const SweepSpec& spec, const SweepControl& control = {}) {
    validate(spec);
    check_budget(spec);
    const auto started = std::chrono::steady_clock::now();

    const detail::SweepEngine engine(spec);
    const std::uint64_t hash = spec_hash(spec);
    CheckpointState state;
    state.spec_hash = hash;
    state.chunks.resize(engine.chunk_count());

    if (!control.resume_path.empty()) {
        CheckpointState loaded = load_checkpoint(control.resume_path);
        if (loaded.spec_hash != hash)
            throw CheckpointError("checkpoint '" + control.resume_path + "' was written by a different sweep spec");
        if (loaded.chunks.size() != state.chunks.size())
            throw CheckpointError("checkpoint '" + control.resume_path + "' has a different chunk layout");
        state = std::move(loaded);
    }
    const std::string checkpoint_path = !spec.checkpoint_path.empty() ? spec.checkpoint_path : control.resume_path;

    std::vector<std::size_t> pending;
    for (std::size_t c = 0; c < state.chunks.size(); ++c)
        if (!state.chunks[c]) pending.push_back(c);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> finished{0};
    std::mutex state_mutex;
    std::exception_ptr failure;
    const std::size_t stop_after = control.stop_after_chunks.value_or(pending.size());

    auto worker = [&] {
        try {
            while (true) {
                if (finished.load() >= stop_after) return;
                const std::size_t k = next.fetch_add(1);
                if (k >= pending.size() || k >= stop_after) return;
                Tally tally = engine.run_chunk(pending[k]);
                std::lock_guard lock(state_mutex);
                if (failure) return;
                state.chunks[pending[k]] = std::move(tally);
                finished.fetch_add(1);
                if (!checkpoint_path.empty()) save_checkpoint(checkpoint_path, state);
            }
        } catch (...) {
            std::lock_guard lock(state_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    const auto threads = static_cast<std::size_t>(std::max(1, spec.workers));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < std::min(threads, std::max<std::size_t>(1, pending.size())); ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    result.report.spec = spec;
    result.report.enumerated = engine.enumerated();
    result.complete = true;
    for (const auto& chunk : state.chunks) {
        if (chunk)
            result.report.tally.merge(*chunk, spec.counterexample_cap);
        else
            result.complete = false;
    }
    result.report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
    return result;
}

/// Assertion sweep: every hypothesized pair must agree.
inline VerifyReport run_theorem_sweep(SweepSpec spec) {
    spec.search = false;
    return run_sweep(spec).report;
}

/// Report-only sweep that also looks beyond the proven hypotheses.
inline VerifyReport search_counterexamples(SweepSpec spec) {
    spec.search = true;
    return run_sweep(spec).report;
}

} // namespace ehinv::verify
