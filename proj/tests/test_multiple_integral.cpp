#include <doctest.h>

#include <cmath>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/multiple_integral.hpp"
#include "chaoscalc/random_gen.hpp"
#include "support/oracles.hpp"

using namespace chaoscalc;

namespace {
const BanachSpaceModel kScalar{1, NormTag::l2};
}

TEST_CASE("to_operator carries the square-root masses") {
    TetraSimpleFunction f(1, kScalar);
    f.add_term({1}, std::vector<double>{1.0});
    const MeasureSpaceModel m4{{4.0}};
    CHECK(to_operator(f, m4).coeff({1}) == std::vector<double>{2.0});

    const MeasureSpaceModel unit{{1.0, 1.0}};
    TetraSimpleFunction g(2, kScalar);
    g.add_term({1, 2}, std::vector<double>{0.75});
    CHECK(to_operator(g, unit).coeff({1, 2}) == std::vector<double>{0.75});

    const MeasureSpaceModel m49{{4.0, 9.0}};
    CHECK(to_operator(g, m49).coeff({1, 2}) == std::vector<double>{4.5});  // 6 * 0.75

    const MeasureSpaceModel small{{1.0}};
    CHECK_THROWS_AS((void)to_operator(g, small), DimensionError);
}

TEST_CASE("symmetrize_function reference tables and contraction") {
    TetraSimpleFunction f(2, kScalar);
    f.add_term({1, 2}, std::vector<double>{1.0});
    const TetraSimpleFunction sym = symmetrize_function(f);
    CHECK(sym.coeff({1, 2}) == std::vector<double>{0.5});
    CHECK(sym.coeff({2, 1}) == std::vector<double>{0.5});
    CHECK(symmetrize_function(sym).table() == sym.table());  // unchanged once symmetric

    for (int trial = 0; trial < 20; ++trial) {
        const int m = 1 + trial % 3;
        const TetraSimpleFunction h =
            random_tetra_function(m, 5, kScalar, 100 + static_cast<std::uint64_t>(trial));
        const MeasureSpaceModel masses =
            random_masses(5, 200 + static_cast<std::uint64_t>(trial));
        CHECK(l2_norm_squared_on_product(symmetrize_function(h), masses) <=
              l2_norm_squared_on_product(h, masses) + 1e-12);
    }
}

TEST_CASE("integrate reference images") {
    TetraSimpleFunction f(1, kScalar);
    f.add_term({1}, std::vector<double>{1.0});
    const ChaosExpansion i1 = integrate(f, MeasureSpaceModel{{1.0}});
    CHECK(i1.term_count() == 1);
    CHECK(i1.coeff(CountVector::from_index({1})) == std::vector<double>{1.0});

    TetraSimpleFunction g(2, kScalar);
    g.add_term({1, 2}, std::vector<double>{1.0});
    const ChaosExpansion i2 = integrate(g, MeasureSpaceModel{{1.0, 1.0}});
    CHECK(i2.term_count() == 1);
    CHECK(i2.coeff(CountVector::from_index({1, 2})) == std::vector<double>{1.0});

    // E (I_2 F)^2 = a*b for masses (a, b): checked against the moment oracle.
    const double a = 0.49, b = 2.25;
    const ChaosExpansion weighted = integrate(g, MeasureSpaceModel{{a, b}});
    const MonomialFunctional mono = from_chaos(weighted);
    oracle::MonoPoly poly(2);
    for (const auto& [exp, coeff] : mono.terms()) poly.add(exp, coeff[0]);
    CHECK(poly.times(poly).expectation() == doctest::Approx(a * b).epsilon(1e-12));
}

TEST_CASE("integral of the symmetrization is identical") {
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 1 + trial % 3;
        const TetraSimpleFunction f =
            random_tetra_function(m, 5, kScalar, 300 + static_cast<std::uint64_t>(trial));
        const MeasureSpaceModel masses = random_masses(5, 400 + static_cast<std::uint64_t>(trial));
        const ChaosExpansion direct = integrate(f, masses);
        const ChaosExpansion via_sym = integrate(symmetrize_function(f), masses);
        CHECK(max_coeff_deviation(direct, via_sym) < 1e-12);
        for (const auto& [key, coeff] : direct.terms()) CHECK(key.order() == m);
    }
}

TEST_CASE("integrate is linear") {
    const TetraSimpleFunction f = random_tetra_function(2, 4, kScalar, 17);
    const TetraSimpleFunction g = random_tetra_function(2, 4, kScalar, 18);
    const MeasureSpaceModel masses = random_masses(4, 19);

    TetraSimpleFunction combo(2, kScalar);
    for (const auto& [key, coeff] : f.table()) combo.add_term(key, coeff);
    for (const auto& [key, coeff] : g.table()) {
        std::vector<double> scaled = coeff;
        for (double& v : scaled) v *= -2.5;
        combo.add_term(key, scaled);
    }
    const ChaosExpansion lhs = integrate(combo, masses);
    const ChaosExpansion rhs = integrate(f, masses) + integrate(g, masses).scaled(-2.5);
    CHECK(max_coeff_deviation(lhs, rhs) < 1e-12);
}

TEST_CASE("scalar second-moment identity") {
    TetraSimpleFunction f(2, kScalar);
    f.add_term({1, 2}, std::vector<double>{1.0});
    const auto [lhs, rhs] = ito_isometry_check(f, MeasureSpaceModel{{1.0, 1.0}});
    CHECK(lhs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rhs == doctest::Approx(1.0).epsilon(1e-14));

    const TetraSimpleFunction zero(2, kScalar);
    const auto [zl, zr] = ito_isometry_check(zero, MeasureSpaceModel{{1.0, 1.0}});
    CHECK(zl == 0.0);
    CHECK(zr == 0.0);

    for (int trial = 0; trial < 20; ++trial) {
        const int m = 1 + trial % 3;
        const int q = std::max(m, 3 + trial % 4);
        const TetraSimpleFunction h =
            random_tetra_function(m, q, kScalar, 500 + static_cast<std::uint64_t>(trial));
        const MeasureSpaceModel masses = random_masses(q, 600 + static_cast<std::uint64_t>(trial));
        const auto [l, r] = ito_isometry_check(h, masses);
        CHECK(std::abs(l - r) < 1e-10 * std::max(1.0, std::abs(r)));
    }

    TetraSimpleFunction vec(1, BanachSpaceModel{2, NormTag::l2});
    vec.add_term({1}, std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS((void)ito_isometry_check(vec, MeasureSpaceModel{{1.0}}), UnsupportedNormError);
}

TEST_CASE("repeated cell indices are rejected") {
    TetraSimpleFunction f(2, kScalar);
    CHECK_THROWS_AS(f.add_term({1, 1}, std::vector<double>{1.0}), TetrahedralityError);
}

TEST_CASE("Lp ratio of integral to symmetrized operator norm stays bracketed") {
    McConfig mc;
    mc.samples = 20000;
    mc.batches = 8;
    const BanachSpaceModel space{3, NormTag::linf};
    const double ps[3] = {1.0, 2.0, 4.0};
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 1 + trial % 3;
        const int q = 4;
        const TetraSimpleFunction f =
            random_tetra_function(m, q, space, 700 + static_cast<std::uint64_t>(trial));
        const MeasureSpaceModel masses = random_masses(q, 800 + static_cast<std::uint64_t>(trial));
        mc.seed = 900 + static_cast<std::uint64_t>(trial);
        const auto integral_norms = lp_norm_mc(integrate(f, masses), ps, mc);
        const auto operator_norms =
            gamma_norm_mc(to_operator(symmetrize_function(f), masses), ps, mc);
        for (size_t i = 0; i < 3; ++i) {
            const double ratio = integral_norms[i].estimate / operator_norms[i].estimate;
            CHECK(ratio >= 0.1);
            CHECK(ratio <= 10.0);
        }
    }
}
