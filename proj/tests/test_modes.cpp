#include "wgrate/modes.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numbers>
#include <random>
#include <set>

using namespace wgrate;
using modes::enumerate_transverse;
using modes::sorted_by_kappa;

TEST(Modes, SmallCutoffs) {
    const auto one = enumerate_transverse(1);
    ASSERT_EQ(one.size(), 3u);
    const std::set<std::tuple<int, int, int>> got{{one[0].n1, one[0].n2, one[0].degeneracy},
                                                  {one[1].n1, one[1].n2, one[1].degeneracy},
                                                  {one[2].n1, one[2].n2, one[2].degeneracy}};
    EXPECT_EQ(got, (std::set<std::tuple<int, int, int>>{{1, 1, 2}, {1, 0, 1}, {0, 1, 1}}));
    EXPECT_EQ(modes::weighted_count(one), 4);
    EXPECT_EQ(modes::weighted_count(enumerate_transverse(2)), 12);
    EXPECT_EQ(modes::weighted_count(enumerate_transverse(10)), 220);
    EXPECT_THROW(enumerate_transverse(0), std::invalid_argument);
}

TEST(Modes, WeightedCountAndExclusion) {
    for (int n = 1; n <= 100; ++n) {
        const auto pairs = enumerate_transverse(n);
        EXPECT_EQ(modes::weighted_count(pairs), 2LL * n * n + 2LL * n) << n;
        for (const auto& p : pairs) {
            ASSERT_FALSE(p.n1 == 0 && p.n2 == 0);
            ASSERT_EQ(p.degeneracy, (p.n1 >= 1 && p.n2 >= 1) ? 2 : 1);
        }
    }
}

TEST(Modes, SwapSymmetry) {
    const auto pairs = enumerate_transverse(17);
    std::multiset<std::tuple<int, int, int>> a, b;
    for (const auto& p : pairs) {
        a.insert({p.n1, p.n2, p.degeneracy});
        b.insert({p.n2, p.n1, p.degeneracy});
    }
    EXPECT_EQ(a, b);
}

TEST(Modes, HalfSumIdentityIsExact) {
    // Integer-valued symmetric h keeps the arithmetic exact.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial * 3;
        std::map<std::pair<int, int>, long long> h;
        std::uniform_int_distribution<long long> val(-1000, 1000);
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) h[{i, j}] = h[{j, i}] = val(rng);
        long long full = 0;
        for (const auto& p : enumerate_transverse(n)) full += p.degeneracy * h[{p.n1, p.n2}];
        long long split = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) split += h[{i, j}];
        for (int i = 1; i <= n; ++i) split += h[{i, 0}];
        EXPECT_EQ(full, 2 * split);
    }
}

TEST(Modes, SortedByKappa) {
    const std::vector<WeightedTransversePair> in{{1, 1, 2}, {1, 0, 1}, {0, 1, 1}};
    EXPECT_EQ(sorted_by_kappa(in), (std::vector<WeightedTransversePair>{{0, 1, 1}, {1, 0, 1}, {1, 1, 2}}));
    const std::vector<WeightedTransversePair> single{{2, 3, 2}};
    EXPECT_EQ(sorted_by_kappa(single), single);
    const std::vector<WeightedTransversePair> tie{{5, 0, 1}, {3, 4, 2}};
    EXPECT_EQ(sorted_by_kappa(tie), (std::vector<WeightedTransversePair>{{3, 4, 2}, {5, 0, 1}}));
    EXPECT_THROW(sorted_by_kappa({}), std::invalid_argument);

    const auto sorted = sorted_by_kappa(enumerate_transverse(12));
    for (std::size_t i = 1; i < sorted.size(); ++i) EXPECT_LE(sorted[i - 1].kappa(), sorted[i].kappa());
}

TEST(Modes, SpeciesExpansion) {
    const auto pairs = enumerate_transverse(6);
    const auto all = modes::expand_species(pairs);
    EXPECT_EQ(static_cast<long long>(all.size()), modes::weighted_count(pairs));
    for (const auto& m : all) EXPECT_TRUE(m.valid());
    EXPECT_FALSE((ModeIndex{0, 3, Species::TE}.valid()));
    EXPECT_TRUE((ModeIndex{0, 3, Species::TM}.valid()));
    EXPECT_FALSE((ModeIndex{0, 0, Species::TM}.valid()));
}

TEST(Modes, SquareShellsMatchDiskEnumeration) {
    const double radius = 23.5;
    std::map<long long, long long> expect;
    for (const auto& p : enumerate_transverse(24))
        if (p.kappa() <= radius) expect[1LL * p.n1 * p.n1 + 1LL * p.n2 * p.n2] += p.degeneracy;
    const auto shells = modes::square_shells(radius);
    ASSERT_EQ(shells.size(), expect.size());
    auto it = expect.begin();
    for (const auto& s : shells) {
        EXPECT_DOUBLE_EQ(s.kappa, std::sqrt(double(it->first)));
        EXPECT_EQ(s.degeneracy, it->second);
        ++it;
    }
}

TEST(Modes, RectangularShells) {
    const auto sq = modes::square_shells(30.0);
    const auto same = modes::rectangular_shells(30.0, 1.0);
    ASSERT_EQ(sq.size(), same.size());

    const double r = std::sqrt(2.0);
    const auto a = modes::rectangular_shells(40.0, r);
    const auto b = modes::rectangular_shells(40.0, 1.0 / r);
    long long da = 0, db = 0;
    for (const auto& s : a) da += s.degeneracy;
    for (const auto& s : b) db += s.degeneracy;
    EXPECT_EQ(da, db);
    for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LE(a[i - 1].kappa, a[i].kappa);
    // Quarter ellipse of area pi R^2 / 4, two species: about pi R^2 / 2 modes.
    EXPECT_NEAR(double(da), std::numbers::pi * 1600.0 / 2.0, 0.03 * std::numbers::pi * 800.0);
}

TEST(Modes, Geometry) {
    const ChannelGeometry g(2.0, 8.0);
    EXPECT_DOUBLE_EQ(g.area(), 16.0);
    EXPECT_DOUBLE_EQ(g.aspect(), 2.0);
    EXPECT_FALSE(g.is_square());
    EXPECT_TRUE(ChannelGeometry::square_of_area(9.0).is_square());
    EXPECT_DOUBLE_EQ(ChannelGeometry::square_of_area(9.0).l1(), 3.0);
    EXPECT_THROW(ChannelGeometry(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ChannelGeometry(1.0, -1.0), std::invalid_argument);
    EXPECT_THROW(ChannelGeometry::square_of_area(0.0), std::invalid_argument);
}
