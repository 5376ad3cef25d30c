#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <ehinv/ehinv.hpp>

#include "oracle.hpp"

using namespace ehinv;
using namespace ehinv::verify;

namespace {

SweepSpec z_spec(Selector s, int window) {
    SweepSpec spec;
    spec.selector = s;
    spec.window = window;
    return spec;
}

SweepSpec mod_spec(Selector s, int p) {
    SweepSpec spec;
    spec.selector = s;
    spec.prime = p;
    return spec;
}

std::string report_without_timing(const VerifyReport& r) {
    auto j = to_json(r);
    j.erase("elapsed_ms");
    return j.dump();
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("ehinv-test-" + name)).string();
}

using Pair = std::pair<std::vector<Element>, std::vector<Element>>;

/// Translation class of an unordered pair: the sorted pair after shifting so
/// that the smallest element of A u B is 0 (Z), or the least such pair over
/// all p shifts (Z/pZ).
Pair class_key(Pair pr, int p) {
    auto shifted = [&](Element t) {
        auto sh = [&](std::vector<Element> v) {
            for (auto& x : v) x = p ? ((x + t) % p + p) % p : x + t;
            std::sort(v.begin(), v.end());
            return v;
        };
        auto a = sh(pr.first), b = sh(pr.second);
        if (b < a) std::swap(a, b);
        return Pair{a, b};
    };
    if (!p) {
        Element lo = std::min(pr.first.front(), pr.second.front());
        return shifted(-lo);
    }
    Pair best = shifted(0);
    for (Element t = 1; t < p; ++t) best = std::min(best, shifted(t));
    return best;
}

} // namespace

TEST(Enumerate, GoldenCounts) {
    auto z3 = z_spec(Selector::T1, 3);
    z3.normalize = false;
    EXPECT_EQ(enumerate_pairs(z3).size(), 10U);

    auto m5 = mod_spec(Selector::Karolyi, 5);
    m5.normalize = false;
    EXPECT_EQ(admissible_subsets(m5).size(), 26U);
    EXPECT_EQ(enumerate_pairs(m5).size(), 351U);
    EXPECT_EQ(estimated_pairs(m5), 351U);

    EXPECT_TRUE(enumerate_pairs(z_spec(Selector::T1, 1)).empty());
}

TEST(Enumerate, EachUnorderedPairExactlyOnce) {
    auto spec = z_spec(Selector::T1, 6);
    spec.normalize = false;
    std::set<Pair> seen;
    for (auto pr : enumerate_pairs(spec)) {
        if (pr.second < pr.first) std::swap(pr.first, pr.second);
        ASSERT_TRUE(seen.insert(pr).second);
    }
    EXPECT_EQ(seen.size(), 57U * 58U / 2U);
}

TEST(Enumerate, NormalizationKeepsOneRepresentativePerClass) {
    for (int p : {0, 5, 7}) {
        SweepSpec spec = p ? mod_spec(Selector::Karolyi, p) : z_spec(Selector::T1, 7);
        auto raw = spec;
        raw.normalize = false;
        std::set<Pair> all_classes;
        for (const auto& pr : enumerate_pairs(raw)) all_classes.insert(class_key(pr, p));
        std::set<Pair> normalized_classes;
        std::size_t count = 0;
        for (const auto& pr : enumerate_pairs(spec)) {
            ASSERT_TRUE(normalized_classes.insert(class_key(pr, p)).second) << "class visited twice, p=" << p;
            ++count;
        }
        // In Z the window cuts classes off at the right edge; every class that
        // fits is still represented, and nothing else appears.
        EXPECT_EQ(normalized_classes, all_classes) << "p=" << p;
        EXPECT_EQ(count, all_classes.size());
    }
}

TEST(Enumerate, NormalizationIsSoundForCriticality) {
    // Criticality is constant on each translation class, so the normalized
    // sweep sees the same set of verdict classes as the raw one.
    const int p = 7;
    auto raw = mod_spec(Selector::Karolyi, p);
    raw.normalize = false;
    std::map<Pair, bool> verdict;
    for (const auto& pr : enumerate_pairs(raw)) {
        const bool crit = oracle::restricted_sumset_mod(pr.first, pr.second, p).size() + 3 ==
                          pr.first.size() + pr.second.size();
        auto [it, fresh] = verdict.emplace(class_key(pr, p), crit);
        if (!fresh) ASSERT_EQ(it->second, crit);
    }
}

TEST(Enumerate, BudgetGate) {
    auto spec = mod_spec(Selector::T6, 19);
    EXPECT_THROW(check_budget(spec), BudgetExceeded);
    EXPECT_THROW(run_sweep(spec), BudgetExceeded);
    auto small = z_spec(Selector::T1, 10);
    small.max_pairs = 1000;
    EXPECT_THROW(run_sweep(small), BudgetExceeded);
}

TEST(SweepSpecValidation, RejectsBadSpecs) {
    EXPECT_THROW(validate(mod_spec(Selector::T1, 7)), PreconditionError);
    EXPECT_THROW(validate(z_spec(Selector::Karolyi, 7)), PreconditionError);
    EXPECT_THROW(validate(mod_spec(Selector::Karolyi, 9)), PreconditionError);
    EXPECT_THROW(validate(z_spec(Selector::T1, 17)), PreconditionError);
    auto t5 = mod_spec(Selector::T5, 7);
    t5.normalize = true;
    EXPECT_THROW(validate(t5), PreconditionError);
    EXPECT_FALSE(mod_spec(Selector::T5, 7).normalized());
    EXPECT_TRUE(mod_spec(Selector::T6, 7).normalized());
}

TEST(Sweep, TheoremOneOnSmallWindow) {
    const auto r = run_theorem_sweep(z_spec(Selector::T1, 6));
    EXPECT_GT(r.checked(), 0U);
    EXPECT_EQ(r.counterexample_count(), 0U);
    EXPECT_EQ(r.agreements(), r.checked());
    EXPECT_FALSE(r.failed());
}

TEST(Sweep, LemmasOnWindowEight) {
    const auto r = run_theorem_sweep(z_spec(Selector::Lemmas, 8));
    EXPECT_EQ(r.counterexample_count(), 0U);
    for (CheckId id : checks_for(r.spec)) EXPECT_GT(r.tally.checks[static_cast<std::size_t>(id)].checked, 0U);
}

TEST(Sweep, TheoremFiveModEleven) {
    const auto r = run_theorem_sweep(mod_spec(Selector::T5, 11));
    EXPECT_GT(r.checked(), 0U);
    EXPECT_EQ(r.counterexample_count(), 0U);
}

TEST(Sweep, CountsMatchIndependentEnumeration) {
    // KAROLYI mod 7 checks exactly the normalized pairs with |A|+|B|-2 <= 7,
    // and its agreements equal the number of oracle/predictor agreements.
    const int p = 7;
    auto spec = mod_spec(Selector::Karolyi, p);
    std::uint64_t in_hypothesis = 0, band = 0;
    for (const auto& [a, b] : enumerate_pairs(spec)) {
        const auto total = static_cast<int>(a.size() + b.size());
        if (total - 2 > p) continue;
        ++in_hypothesis;
        if (total > p) ++band;
    }
    const auto r = run_theorem_sweep(spec);
    EXPECT_EQ(r.checked(), in_hypothesis);
    EXPECT_EQ(r.tally.band.checked, band);
    EXPECT_EQ(r.agreements() + r.counterexample_count(), r.checked());
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
    for (auto spec : {z_spec(Selector::Lemmas, 9), mod_spec(Selector::Karolyi, 11), mod_spec(Selector::T6, 11)}) {
        spec.workers = 1;
        const auto one = report_without_timing(run_theorem_sweep(spec));
        spec.workers = 8;
        const auto eight = report_without_timing(run_theorem_sweep(spec));
        EXPECT_EQ(one, eight);
    }
}

TEST(Sweep, SearchModeRecordsButDoesNotFail) {
    // Outside p >= |A|+|B|-2 the characterization is not claimed; mod 5 has
    // disagreements there (e.g. A = B = Z/5Z).
    auto spec = mod_spec(Selector::Karolyi, 5);
    spec.counterexample_cap = 3;
    const auto r = search_counterexamples(spec);
    EXPECT_FALSE(r.failed());
    const auto outside = r.tally.checks[static_cast<std::size_t>(CheckId::KarolyiOutside)];
    EXPECT_GT(outside.checked, 0U);
    EXPECT_GT(r.counterexample_count(), 3U);
    EXPECT_EQ(r.tally.counterexamples.size(), 3U);
    EXPECT_TRUE(to_json(r)["counterexamples_truncated"].get<bool>());
    EXPECT_EQ(r.tally.checks[static_cast<std::size_t>(CheckId::Karolyi)].checked,
              r.tally.checks[static_cast<std::size_t>(CheckId::Karolyi)].agreements);
}

TEST(Sweep, ReportJsonShape) {
    const auto j = to_json(run_theorem_sweep(mod_spec(Selector::T7, 11)));
    for (const char* key : {"spec", "counts", "checks", "counterexamples", "counterexamples_truncated",
                            "boundary_band", "observations", "elapsed_ms"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["spec"]["theorem"], "T7");
    EXPECT_EQ(j["spec"]["mod"], 11);
    EXPECT_GT(j["observations"]["critical_in_hypothesis"].get<int>(), 0);
    EXPECT_TRUE(to_json(run_theorem_sweep(z_spec(Selector::T2, 5)))["boundary_band"].is_null());
}

TEST(Checkpoint, InterruptedThenResumedMatchesUninterrupted) {
    const std::string path = temp_path("resume.ckpt");
    std::filesystem::remove(path);
    auto spec = mod_spec(Selector::Karolyi, 11);
    spec.workers = 3;
    const auto full = report_without_timing(run_theorem_sweep(spec));

    spec.checkpoint_path = path;
    const auto partial = run_sweep(spec, {.resume_path = "", .stop_after_chunks = 40});
    EXPECT_FALSE(partial.complete);
    ASSERT_TRUE(std::filesystem::exists(path));
    const auto state = load_checkpoint(path);
    std::size_t done = 0;
    for (const auto& c : state.chunks) done += c.has_value();
    EXPECT_EQ(done, 40U);

    spec.workers = 5; // workers are not part of the spec identity
    const auto resumed = run_sweep(spec, {.resume_path = path, .stop_after_chunks = std::nullopt});
    EXPECT_TRUE(resumed.complete);
    EXPECT_EQ(report_without_timing(resumed.report), full);
    std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsForeignOrMissingOrCorruptFiles) {
    const std::string path = temp_path("foreign.ckpt");
    auto spec = mod_spec(Selector::Karolyi, 7);
    spec.checkpoint_path = path;
    run_sweep(spec, {.resume_path = "", .stop_after_chunks = 2});

    auto other = mod_spec(Selector::T6, 7);
    EXPECT_THROW(run_sweep(other, {.resume_path = path, .stop_after_chunks = std::nullopt}), CheckpointError);
    EXPECT_THROW(run_sweep(spec, {.resume_path = temp_path("missing.ckpt"), .stop_after_chunks = std::nullopt}),
                 CheckpointError);

    {
        std::ofstream f(path, std::ios::trunc);
        f << "ehinv-checkpoint 1\nspec_hash " << hex64(spec_hash(spec)) << "\nchunks 3\ndone 100\n";
    }
    EXPECT_THROW(load_checkpoint(path), CheckpointError); // no end marker
    {
        std::ofstream f(path, std::ios::trunc);
        f << "not a checkpoint\n";
    }
    EXPECT_THROW(load_checkpoint(path), CheckpointError);
    std::filesystem::remove(path);
}

TEST(Checkpoint, SpecHashIgnoresWorkersAndPaths) {
    auto a = mod_spec(Selector::T7, 13);
    auto b = a;
    b.workers = 8;
    b.checkpoint_path = "/tmp/x";
    EXPECT_EQ(spec_hash(a), spec_hash(b));
    b.counterexample_cap = 5;
    EXPECT_NE(spec_hash(a), spec_hash(b));
}
