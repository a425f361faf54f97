#include <doctest.h>

#include <algorithm>
#include <random>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/multi_index.hpp"

using namespace chaoscalc;

TEST_CASE("multi_stats on the reference tuples") {
    const auto s1 = multi_stats({3, 1, 3});
    CHECK(s1.order == 3);
    CHECK(s1.sup == 3);
    CHECK(s1.factorial == 2);
    CHECK(s1.counts == CountVector::from_items({{1, 1}, {3, 2}}));

    const auto s2 = multi_stats({});
    CHECK(s2.order == 0);
    CHECK(s2.sup == 0);
    CHECK(s2.factorial == 1);
    CHECK(s2.counts.empty());

    const auto s3 = multi_stats({2, 2, 2});
    CHECK(s3.order == 3);
    CHECK(s3.sup == 2);
    CHECK(s3.factorial == 6);
}

TEST_CASE("count vectors are permutation invariant") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(0, 8);
    std::uniform_int_distribution<int> entry(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        MultiIndex index(static_cast<size_t>(len(rng)));
        for (int& v : index) v = entry(rng);
        MultiIndex shuffled = index;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(CountVector::from_index(index) == CountVector::from_index(shuffled));
    }
}

TEST_CASE("increment and decrement are inverse") {
    const CountVector c = CountVector::from_index({1, 1, 4});
    CHECK(c.incremented(1).count_of(1) == 3);
    CHECK(c.incremented(2).decremented(2) == c);
    CHECK(c.decremented(4).count_of(4) == 0);
    CHECK_THROWS_AS((void)c.decremented(3), Error);
}

TEST_CASE("invalid entries are rejected") {
    CHECK_THROWS_AS((void)CountVector::from_index({0, 1}), Error);
    CHECK_THROWS_AS((void)CountVector::from_items({{1, 0}}), Error);
}

TEST_CASE("string round trip and representative") {
    const CountVector c = CountVector::from_index({3, 1, 3});
    CHECK(c.to_string() == "1:1,3:2");
    CHECK(CountVector::parse(c.to_string()) == c);
    CHECK(CountVector::parse("") == CountVector{});
    CHECK(c.representative() == MultiIndex{1, 3, 3});
}

TEST_CASE("ordered orbit enumerates the multiset permutations") {
    const auto orbit = ordered_orbit(CountVector::from_index({1, 1, 2}));
    REQUIRE(orbit.size() == 3);
    CHECK(orbit[0] == MultiIndex{1, 1, 2});
    CHECK(orbit[1] == MultiIndex{1, 2, 1});
    CHECK(orbit[2] == MultiIndex{2, 1, 1});
    CHECK(ordered_orbit(CountVector{}).size() == 1);

    // Orbit size is m!/c! in general.
    const CountVector c = CountVector::from_index({2, 2, 5, 7});
    CHECK(ordered_orbit(c).size() ==
          static_cast<size_t>(factorial_i64(c.order()) / c.factorial()));
}

TEST_CASE("all_distinct") {
    CHECK(all_distinct({1, 2, 3}));
    CHECK(!all_distinct({1, 2, 1}));
    CHECK(all_distinct({}));
}
