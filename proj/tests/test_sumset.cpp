#include <gtest/gtest.h>

#include <random>

#include <ehinv/ehinv.hpp>

#include "oracle.hpp"

using namespace ehinv;

namespace {

oracle::Elems vec(std::span<const Element> s) { return {s.begin(), s.end()}; }

IntSet random_int_set(std::mt19937_64& rng, Element lo, Element hi, int max_size) {
    std::uniform_int_distribution<int> size(1, max_size);
    std::uniform_int_distribution<Element> value(lo, hi);
    std::vector<Element> v;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) v.push_back(value(rng));
    return IntSet::from_unsorted(v);
}

ModSet random_mod_set(std::mt19937_64& rng, Element p) {
    std::uniform_int_distribution<Element> value(0, p - 1);
    std::uniform_int_distribution<Element> size(1, p);
    std::vector<Element> v;
    const Element n = size(rng);
    for (Element i = 0; i < n; ++i) v.push_back(value(rng));
    return ModSet::reduce(p, v);
}

} // namespace

TEST(Sumset, SmallExamples) {
    const IntSet a{0, 1};
    EXPECT_EQ(sumset(a, a), (IntSet{0, 1, 2}));
    EXPECT_EQ(restricted_sumset(a, a), (IntSet{1}));
    EXPECT_TRUE(is_critical_pair(a, a));
    const IntSet bp{0, 3, 5, 8};
    EXPECT_EQ(restricted_sumset(bp, bp), (IntSet{3, 5, 8, 11, 13}));
    EXPECT_TRUE(is_critical_pair(bp, bp));
    const ModSet m{7, {0, 1, 2}};
    EXPECT_EQ(restricted_sumset(m, m), (ModSet{7, {1, 2, 3}}));
}

TEST(Sumset, RestrictedSumsetOfEmptyIsAnError) {
    EXPECT_THROW(restricted_sumset(IntSet{}, IntSet{1}), PreconditionError);
    EXPECT_THROW(sumset(ModSet{5, {}}, ModSet{5, {1}}), PreconditionError);
    EXPECT_THROW(is_critical_pair(IntSet{1}, IntSet{1, 2}), PreconditionError);
}

TEST(Sumset, ModulusMismatchIsAnError) {
    EXPECT_THROW(sumset(ModSet{5, {0}}, ModSet{7, {0}}), ModulusMismatch);
}

TEST(Sumset, OverflowIsDetectedNotWrapped) {
    const IntSet big{INT64_MAX - 1, INT64_MAX};
    EXPECT_THROW(restricted_sumset(big, big), OverflowError);
    EXPECT_NO_THROW(restricted_sumset(IntSet{INT64_MIN / 2, INT64_MAX / 2}, IntSet{0}));
}

TEST(Sumset, Bounds) {
    EXPECT_EQ(cd_lower_bound(3, 4, Integers{}), 6);
    EXPECT_EQ(eh_lower_bound(3, 4, Integers{}), 4);
    EXPECT_EQ(eh_lower_bound(1, 1, Integers{}), 0);
    EXPECT_EQ(cd_lower_bound(5, 5, ModP(7)), 7);
    EXPECT_EQ(eh_lower_bound(5, 5, ModP(7)), 7);
    EXPECT_EQ(eh_lower_bound(3, 4, ModP(7)), 4);
}

TEST(SumsetProperties, IntegersAgreeWithDoubleLoopAndObeyBounds) {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 4000; ++trial) {
        // Alternate narrow windows (single-word kernel), wide ones, and huge spans (sort path).
        const Element hi = trial % 3 == 0 ? 40 : trial % 3 == 1 ? 3000 : Element{1} << 40;
        const IntSet a = random_int_set(rng, -hi, hi, 12);
        const IntSet b = random_int_set(rng, -hi, hi, 12);
        const IntSet s = sumset(a, b);
        const IntSet r = restricted_sumset(a, b);
        ASSERT_EQ(vec(s.elements()), oracle::sumset(a.elements(), b.elements()));
        ASSERT_EQ(vec(r.elements()), oracle::restricted_sumset(a.elements(), b.elements()));
        ASSERT_EQ(r, restricted_sumset(b, a));
        for (Element x : r.elements()) ASSERT_TRUE(s.contains(x));
        const auto m = static_cast<std::int64_t>(a.size()), n = static_cast<std::int64_t>(b.size());
        ASSERT_GE(static_cast<std::int64_t>(s.size()), m + n - 1);
        ASSERT_GE(static_cast<std::int64_t>(r.size()), m + n - 3);
        if (!(a == b)) {
            ASSERT_GE(static_cast<std::int64_t>(r.size()), m + n - 2);
        }
        // Joint translation shifts the sumset by 2t; dilation by lambda scales it.
        const Element t = trial % 17 - 8;
        const Element lambda = trial % 5 + 1;
        ASSERT_EQ(restricted_sumset(translate(a, t), translate(b, t)), translate(r, 2 * t));
        if (hi <= 3000) {
            ASSERT_EQ(restricted_sumset(dilate(a, lambda), dilate(b, lambda)), dilate(r, lambda));
        }
    }
}

TEST(SumsetProperties, ModularAgreesWithDoubleLoopAndObeysBounds) {
    std::mt19937_64 rng(7);
    const Element primes[] = {2, 3, 5, 7, 13, 31, 61, 67, 97, 257, 1009};
    for (int trial = 0; trial < 3000; ++trial) {
        const Element p = primes[trial % std::size(primes)];
        const ModSet a = random_mod_set(rng, p);
        const ModSet b = random_mod_set(rng, p);
        const ModSet s = sumset(a, b);
        const ModSet r = restricted_sumset(a, b);
        ASSERT_EQ(vec(s.elements()), oracle::sumset_mod(a.elements(), b.elements(), p));
        ASSERT_EQ(vec(r.elements()), oracle::restricted_sumset_mod(a.elements(), b.elements(), p));
        ASSERT_EQ(r, restricted_sumset(b, a));
        const auto m = static_cast<std::int64_t>(a.size()), n = static_cast<std::int64_t>(b.size());
        ASSERT_GE(static_cast<std::int64_t>(s.size()), std::min(p, m + n - 1));
        ASSERT_GE(static_cast<std::int64_t>(r.size()), std::min(p, m + n - 3));
        const Element t = trial % p;
        const Element lambda = trial % (p - 1) + 1;
        ASSERT_EQ(restricted_sumset(translate(a, t), translate(b, t)), translate(r, 2 * t));
        ASSERT_EQ(restricted_sumset(dilate(a, lambda), dilate(b, lambda)), dilate(r, lambda));
    }
}

TEST(SumsetProperties, CriticalPairsReachTheBoundExactly) {
    for (int m = 2; m <= 12; ++m) {
        std::vector<Element> ap;
        for (int i = 0; i < m; ++i) ap.push_back(4 + 3 * i);
        const IntSet a(ap);
        EXPECT_EQ(static_cast<int>(restricted_sumset(a, a).size()), 2 * m - 3);
        EXPECT_TRUE(is_critical_pair(a, a));
    }
    EXPECT_FALSE(is_critical_pair(IntSet{0, 1, 2, 4, 5}, IntSet{0, 1, 2, 4, 5}));
}
