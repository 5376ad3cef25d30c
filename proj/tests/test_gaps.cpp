#include <gtest/gtest.h>

#include <bit>

#include <ehinv/ehinv.hpp>

using namespace ehinv;

namespace {

ModSet from_mask(Element p, std::uint64_t m) {
    std::vector<Element> out;
    for (Element i = 0; i < p; ++i)
        if (m >> i & 1U) out.push_back(i);
    return ModSet(p, out);
}

/// Longest run of absent exponents by direct scan of r*d mod p.
std::int64_t scan_gap(const ModSet& x, Element d, GapMode mode) {
    const Element p = x.modulus();
    std::vector<bool> present(static_cast<std::size_t>(p));
    for (Element r = 0; r < p; ++r) present[static_cast<std::size_t>(r)] = x.contains(r * d % p);
    std::int64_t best = 0;
    const Element laps = mode == GapMode::Cyclic ? 2 * p : p;
    std::int64_t run = 0;
    for (Element i = 0; i < laps; ++i) {
        run = present[static_cast<std::size_t>(i % p)] ? 0 : run + 1;
        best = std::max(best, std::min<std::int64_t>(run, p));
    }
    return best;
}

} // namespace

TEST(ExponentProfile, Examples) {
    const auto a = exponent_profile(ModSet{11, {0, 1, 2, 3, 4}}, 1);
    EXPECT_EQ(a.exponents, (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
    ASSERT_EQ(a.blocks.size(), 1U);
    EXPECT_EQ(a.blocks[0], (ExponentBlock{0, 4}));
    EXPECT_EQ(a.longest_gap, 6);

    const auto b = exponent_profile(ModSet{13, {0, 3, 6, 9}}, 3);
    EXPECT_EQ(b.exponents, (std::vector<std::int64_t>{0, 1, 2, 3}));
    EXPECT_EQ(b.blocks.size(), 1U);
    EXPECT_EQ(b.longest_gap, 9);

    for (Element d = 1; d < 7; ++d) EXPECT_EQ(exponent_profile(ModSet{7, {0, 1, 2, 3, 4, 5, 6}}, d).longest_gap, 0);

    const auto c = exponent_profile(ModSet{5, {1, 2}}, 2);
    EXPECT_EQ(c.exponents, (std::vector<std::int64_t>{1, 3}));
    EXPECT_EQ(c.longest_gap, 1);
}

TEST(ExponentProfile, RejectsZeroGenerator) {
    EXPECT_THROW(exponent_profile(ModSet{7, {1}}, 0), PreconditionError);
    EXPECT_THROW(exponent_profile(ModSet{7, {1}}, 14), PreconditionError);
    EXPECT_THROW(exponent_profile(ModSet{7, {}}, 1), PreconditionError);
}

TEST(ExponentProfile, CyclicBlocksMayWrap) {
    // Exponents {0,1,9,10} mod 11 form one cyclic run 9..1.
    const auto g = exponent_profile(ModSet{11, {0, 1, 9, 10}}, 1, GapMode::Cyclic);
    ASSERT_EQ(g.blocks.size(), 1U);
    EXPECT_EQ(g.blocks[0], (ExponentBlock{9, 1}));
    EXPECT_EQ(g.longest_gap, 7);
    EXPECT_EQ(exponent_profile(ModSet{11, {0, 1, 9, 10}}, 1, GapMode::Linear).blocks.size(), 2U);
}

TEST(LongestGapOverGenerators, Examples) {
    const auto all = longest_gap_over_generators(ModSet{5, {0}});
    ASSERT_EQ(all.size(), 4U);
    for (const auto& g : all) EXPECT_EQ(g.longest_gap, 4);
    EXPECT_EQ(longest_gap_over_generators(ModSet{11, {0, 1, 2, 3, 4}}).at(0).longest_gap, 6);
}

TEST(GapProperties, ExhaustiveSmallPrimes) {
    for (Element p : {5, 7, 11}) {
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << p); ++m) {
            const ModSet x = from_mask(p, m);
            const ModSet complement = from_mask(p, ~m & ((std::uint64_t{1} << p) - 1));
            for (Element d = 1; d < p; ++d) {
                const auto lin = exponent_profile(x, d, GapMode::Linear);
                const auto cyc = exponent_profile(x, d, GapMode::Cyclic);
                // r -> r*d is a bijection, so the profile has |X| exponents.
                ASSERT_EQ(lin.exponents.size(), x.size());
                ASSERT_EQ(lin.longest_gap, scan_gap(x, d, GapMode::Linear));
                ASSERT_EQ(cyc.longest_gap, scan_gap(x, d, GapMode::Cyclic));
                ASSERT_LE(lin.longest_gap, cyc.longest_gap);
                // d and -d read the cycle in opposite directions.
                ASSERT_EQ(cyc.longest_gap, exponent_profile(x, p - d, GapMode::Cyclic).longest_gap);
                // Longest gap of X = longest block of the complement.
                if (complement.empty()) {
                    ASSERT_EQ(cyc.longest_gap, 0);
                    continue;
                }
                const auto comp = exponent_profile(complement, d, GapMode::Cyclic);
                std::int64_t longest_block = 0;
                for (const auto& b : comp.blocks)
                    longest_block = std::max<std::int64_t>(longest_block, b.first <= b.last ? b.last - b.first + 1
                                                                                         : b.last + p - b.first + 1);
                ASSERT_EQ(cyc.longest_gap, longest_block) << to_string(x) << " d=" << d;
            }
        }
    }
}

TEST(GapTheorem, Examples) {
    const ModSet a{11, {0, 1, 2, 3, 4}};
    const auto r = check_gap_theorem(a, a);
    EXPECT_EQ(r.required, 5);
    EXPECT_TRUE(r.holds_linear);
    EXPECT_TRUE(r.holds_cyclic);
    bool saw_d1 = false;
    for (const auto& m : r.measurements)
        if (m.difference == 1) {
            saw_d1 = true;
            EXPECT_EQ(m.linear_gap, 6);
        }
    EXPECT_TRUE(saw_d1);

    const ModSet e{11, {0, 2, 4, 6, 8}};
    const auto r2 = check_gap_theorem(e, e);
    EXPECT_TRUE(r2.holds_linear);
    EXPECT_EQ(exponent_profile(e, 2).exponents, (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
    EXPECT_EQ(exponent_profile(e, 2).longest_gap, 6);
}

TEST(GapTheorem, RefusesOutsideItsHypothesis) {
    const ModSet a{11, {0, 1, 2, 3, 4}};
    EXPECT_THROW(check_gap_theorem(ModSet{11, {0, 1, 2, 3}}, ModSet{11, {0, 1, 2, 3}}), HypothesisViolation);
    EXPECT_THROW(check_gap_theorem(ModSet{7, {0, 1, 2, 3, 4}}, ModSet{7, {0, 1, 2, 3, 4}}), HypothesisViolation);
    EXPECT_THROW(check_gap_theorem(ModSet{13, {0, 1, 2, 4, 5}}, ModSet{13, {0, 1, 2, 4, 5}}), HypothesisViolation);
    EXPECT_THROW(check_gap_theorem(a, ModSet{11, {0, 5}}), HypothesisViolation); // not critical
    EXPECT_THROW(check_gap_theorem(a, ModSet{13, {0, 1}}), ModulusMismatch);
}
