#include <doctest.h>

#include <cmath>
#include <random>

#include "chaoscalc/chaos_expansion.hpp"
#include "chaoscalc/errors.hpp"
#include "chaoscalc/hermite.hpp"
#include "support/oracles.hpp"

using namespace chaoscalc;

namespace {

// All count vectors of order <= max_order over variables 1..vars.
std::vector<CountVector> count_vectors_up_to(int vars, int max_order) {
    std::vector<CountVector> out;
    std::vector<int> mults(static_cast<size_t>(vars), 0);
    auto recurse = [&](auto&& self, int var, int remaining) -> void {
        if (var == vars) {
            std::vector<std::pair<int, int>> items;
            for (int j = 0; j < vars; ++j) {
                if (mults[static_cast<size_t>(j)] > 0) items.emplace_back(j + 1, mults[static_cast<size_t>(j)]);
            }
            out.push_back(CountVector::from_items(items));
            return;
        }
        for (int m = 0; m <= remaining; ++m) {
            mults[static_cast<size_t>(var)] = m;
            self(self, var + 1, remaining - m);
        }
        mults[static_cast<size_t>(var)] = 0;
    };
    recurse(recurse, 0, max_order);
    return out;
}

// Library basis polynomial as a test-side monomial polynomial.
oracle::MonoPoly library_psi_as_monopoly(const CountVector& c, int width) {
    ChaosExpansion f(width, BanachSpaceModel{1, NormTag::l2});
    const double one[1] = {1.0};
    f.add_term(c, one);
    const MonomialFunctional mono = from_chaos(f);
    oracle::MonoPoly poly(width);
    for (const auto& [exp, coeff] : mono.terms()) poly.add(exp, coeff[0]);
    return poly;
}

}  // namespace

TEST_CASE("hermite_eval reference values") {
    CHECK(hermite_eval(0, 7.3) == 1.0);
    CHECK(hermite_eval(2, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    // Recurrence gives H_3(x) = (x^3 - 3x)/6.
    CHECK(hermite_eval(3, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)hermite_eval(-1, 0.0), Error);
}

TEST_CASE("hermite_coeffs reference rows") {
    const auto h1 = hermite_coeffs(1);
    REQUIRE(h1.coeffs.size() == 2);
    CHECK(h1.coeffs[0] == 0.0);
    CHECK(h1.coeffs[1] == 1.0);

    const auto h2 = hermite_coeffs(2);
    REQUIRE(h2.coeffs.size() == 3);
    CHECK(h2.coeffs[0] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(h2.coeffs[1] == 0.0);
    CHECK(h2.coeffs[2] == doctest::Approx(0.5).epsilon(1e-15));

    const auto h4 = hermite_coeffs(4);
    REQUIRE(h4.coeffs.size() == 5);
    CHECK(h4.coeffs[0] == doctest::Approx(1.0 / 8).epsilon(1e-15));
    CHECK(h4.coeffs[2] == doctest::Approx(-1.0 / 4).epsilon(1e-15));
    CHECK(h4.coeffs[4] == doctest::Approx(1.0 / 24).epsilon(1e-15));
}

TEST_CASE("hermite_coeffs matches the independent recurrence table") {
    for (int m = 0; m <= 12; ++m) {
        const auto lib = hermite_coeffs(m);
        const auto ref = oracle::hermite_monomial_coeffs(m);
        REQUIRE(lib.coeffs.size() == ref.size());
        for (size_t i = 0; i < ref.size(); ++i) {
            CHECK(lib.coeffs[i] == doctest::Approx(ref[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("eval agrees with the coefficient form") {
    for (int m = 0; m <= 10; ++m) {
        const auto coeffs = hermite_coeffs(m);
        for (double x = -5.0; x <= 5.0; x += 0.5) {
            const double direct = hermite_eval(m, x);
            const double via_coeffs = poly_eval(coeffs, x);
            const double scale = std::max(1.0, std::abs(direct));
            CHECK(std::abs(direct - via_coeffs) / scale < 1e-10);
        }
    }
}

TEST_CASE("basis_convert reference conversions") {
    // x^3 = 6 H_3 + 3 H_1.
    const UnivariatePoly cubic({0.0, 0.0, 0.0, 1.0}, PolyBasis::monomial);
    const auto herm = basis_convert(cubic, PolyBasis::hermite);
    REQUIRE(herm.coeffs.size() == 4);
    CHECK(herm.coeffs[0] == doctest::Approx(0.0));
    CHECK(herm.coeffs[1] == doctest::Approx(3.0));
    CHECK(herm.coeffs[2] == doctest::Approx(0.0));
    CHECK(herm.coeffs[3] == doctest::Approx(6.0));

    // H_2 = (x^2 - 1)/2.
    const UnivariatePoly h2({0.0, 0.0, 1.0}, PolyBasis::hermite);
    const auto mono = basis_convert(h2, PolyBasis::monomial);
    REQUIRE(mono.coeffs.size() == 3);
    CHECK(mono.coeffs[0] == doctest::Approx(-0.5));
    CHECK(mono.coeffs[2] == doctest::Approx(0.5));

    // Constants are fixed points.
    const UnivariatePoly constant({4.25}, PolyBasis::monomial);
    CHECK(basis_convert(constant, PolyBasis::hermite).coeffs == std::vector<double>{4.25});
}

TEST_CASE("basis_convert round-trips up to degree 12") {
    // The top Hermite coefficient of a degree-m polynomial is a_m * m!, and
    // its double rounding feeds back into the low monomial coefficients with
    // weight ~1e-4 at m = 12. Round-trip accuracy is therefore conditioning-
    // limited to ~1e-11 at degree 12; degrees <= 8 are clean to 1e-12.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 60; ++trial) {
        const int degree = 1 + trial % 12;
        std::vector<double> coeffs(static_cast<size_t>(degree) + 1);
        for (double& c : coeffs) c = gauss(rng);
        const UnivariatePoly p(coeffs, PolyBasis::monomial);
        const auto back = basis_convert(basis_convert(p, PolyBasis::hermite), PolyBasis::monomial);
        REQUIRE(back.coeffs.size() == p.coeffs.size());
        const double tol = degree <= 8 ? 1e-12 : 1e-10;
        for (size_t i = 0; i < p.coeffs.size(); ++i) {
            const double scale = std::max(1.0, std::abs(p.coeffs[i]));
            CHECK(std::abs(back.coeffs[i] - p.coeffs[i]) <= tol * scale);
        }
    }
}

TEST_CASE("zero polynomial normalizes to the empty coefficient vector") {
    const UnivariatePoly zero({0.0, 0.0}, PolyBasis::monomial);
    CHECK(zero.is_zero());
    CHECK(basis_convert(zero, PolyBasis::hermite).is_zero());
}

TEST_CASE("psi_eval reference values") {
    const double g12[] = {1.0, 2.0};
    CHECK(psi_eval(MultiIndex{2, 1}, g12) == doctest::Approx(2.0));

    const double g1x[] = {1.0, -37.5};
    CHECK(psi_eval(MultiIndex{1, 1}, g1x) == doctest::Approx(0.0));

    CHECK(psi_eval(MultiIndex{}, g12) == 1.0);
    CHECK_THROWS_AS((void)psi_eval(MultiIndex{3}, g12), DimensionError);
}

TEST_CASE("basis orthonormality up to order 6 over 4 variables") {
    const auto keys = count_vectors_up_to(4, 6);
    std::vector<oracle::MonoPoly> polys;
    polys.reserve(keys.size());
    for (const auto& c : keys) polys.push_back(library_psi_as_monopoly(c, 4));

    double worst = 0.0;
    for (size_t a = 0; a < keys.size(); ++a) {
        for (size_t b = a; b < keys.size(); ++b) {
            const double expect = a == b ? 1.0 : 0.0;
            const double got = polys[a].times(polys[b]).expectation();
            worst = std::max(worst, std::abs(got - expect));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("squared Hermite expectation is 1/m!") {
    for (int m = 0; m <= 8; ++m) {
        const double got = oracle::hermite_product_expectation(m, m);
        double mfact = 1.0;
        for (int i = 2; i <= m; ++i) mfact *= i;
        CHECK(got == doctest::Approx(1.0 / mfact).epsilon(1e-12));
    }
}
