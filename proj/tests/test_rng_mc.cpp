#include <doctest.h>

#include <cmath>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/mc.hpp"
#include "chaoscalc/rng.hpp"

using namespace chaoscalc;

TEST_CASE("normal quantile hits tabulated points") {
    CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(inverse_normal_cdf(0.00134989803163009453) == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(inverse_normal_cdf(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.25) == -inverse_normal_cdf(0.75));
    CHECK_THROWS_AS((void)inverse_normal_cdf(0.0), Error);
    CHECK_THROWS_AS((void)inverse_normal_cdf(1.0), Error);
}

TEST_CASE("counter access is stateless and reproducible") {
    CHECK(normal_at(42, 7) == normal_at(42, 7));
    CHECK(normal_at(42, 7) != normal_at(42, 8));
    CHECK(normal_at(42, 7) != normal_at(43, 7));
    CHECK(uniform_at(1, 1) > 0.0);
    CHECK(uniform_at(1, 1) < 1.0);
}

TEST_CASE("stream windows tile the master sequence") {
    // Three chunks of 5 draws merge into one run of 15.
    const std::uint64_t seed = 99;
    std::vector<double> merged;
    for (std::uint64_t stream = 0; stream < 3; ++stream) {
        for (std::uint64_t j = 0; j < 5; ++j) {
            merged.push_back(normal_at(seed, window_counter(stream, 5, j)));
        }
    }
    for (std::uint64_t g = 0; g < 15; ++g) {
        CHECK(merged[g] == normal_at(seed, window_counter(0, 15, g)));
    }
}

TEST_CASE("chunk plan partitions the sample range") {
    const auto plan = chunk_plan(103, 8);
    REQUIRE(plan.size() == 8);
    CHECK(plan.front().begin == 0);
    CHECK(plan.back().end == 103);
    for (size_t k = 1; k < plan.size(); ++k) CHECK(plan[k].begin == plan[k - 1].end);
}

TEST_CASE("estimates are independent of the worker count") {
    McConfig mc;
    mc.samples = 20000;
    mc.batches = 16;
    mc.seed = 5;
    auto kernel = [](std::int64_t s) { return std::abs(normal_at(5, static_cast<std::uint64_t>(s))); };

    set_mc_threads(1);
    const auto single = estimate_lp_moment(2.0, mc, kernel);
    set_mc_threads(8);
    const auto multi = estimate_lp_moment(2.0, mc, kernel);
    set_mc_threads(1);

    CHECK(single.estimate == multi.estimate);
    CHECK(single.std_error == multi.std_error);
}

TEST_CASE("second moment of |gamma| matches the known value") {
    McConfig mc;
    mc.samples = 200000;
    mc.batches = 32;
    mc.seed = 123;
    const auto r = estimate_lp_moment(
        2.0, mc, [](std::int64_t s) { return std::abs(normal_at(123, static_cast<std::uint64_t>(s))); });
    // (E gamma^2)^{1/2} = 1.
    CHECK(std::abs(r.estimate - 1.0) < 4.0 * r.std_error);
    CHECK(r.std_error > 0.0);
    CHECK(r.std_error < 0.01);
}

TEST_CASE("moment order below one is rejected") {
    McConfig mc;
    mc.samples = 100;
    mc.batches = 2;
    CHECK_THROWS_AS((void)estimate_lp_moment(0.5, mc, [](std::int64_t) { return 1.0; }),
                    ConfigError);
}

TEST_CASE("config invariants are enforced") {
    McConfig mc;
    mc.samples = 1;
    CHECK_THROWS_AS(mc.validate(), ConfigError);
    mc.samples = 100;
    mc.batches = 1;
    CHECK_THROWS_AS(mc.validate(), ConfigError);
    mc.batches = 2;
    mc.confidence = 0.0;
    CHECK_THROWS_AS(mc.validate(), ConfigError);
}
