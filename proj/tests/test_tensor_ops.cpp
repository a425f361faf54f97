#include <doctest.h>

#include <cmath>

#include "chaoscalc/elementary_operator.hpp"
#include "chaoscalc/errors.hpp"
#include "chaoscalc/hermite.hpp"
#include "chaoscalc/random_gen.hpp"
#include "support/oracles.hpp"

using namespace chaoscalc;

namespace {

const BanachSpaceModel kScalar{1, NormTag::l2};

// Decoupled second moment by the test-side monomial algebra: variable
// (row r, index j) is slot r*n + j of a MonoPoly.
double decoupled_second_moment_oracle(const ElementaryOperator& t) {
    const int n = t.dim_n();
    const int m = t.order();
    const int width = m * n;
    double total = 0.0;
    for (int e = 0; e < t.d(); ++e) {
        oracle::MonoPoly sum(width);
        for (const auto& [index, coeff] : t.table()) {
            oracle::MonoPoly term(width);
            term.add(std::vector<int>(static_cast<size_t>(width), 0),
                     coeff[static_cast<size_t>(e)]);
            for (int r = 0; r < m; ++r) {
                term = term.times(
                    oracle::mono_variable(width, r * n + index[static_cast<size_t>(r)] - 1));
            }
            sum = sum.plus(term);
        }
        total += sum.times(sum).expectation();
    }
    return total;
}

}  // namespace

TEST_CASE("symmetrize reference tables") {
    const std::vector<double> x = {2.0};

    ElementaryOperator t(2, 2, kScalar);
    t.add_term({1, 2}, x);
    const ElementaryOperator sym = symmetrize(t);
    CHECK(sym.coeff({1, 2}) == std::vector<double>{1.0});
    CHECK(sym.coeff({2, 1}) == std::vector<double>{1.0});
    CHECK(is_symmetric(sym));
    CHECK(symmetrize(sym).table() == sym.table());  // idempotent, bitwise

    ElementaryOperator t3(3, 2, kScalar);
    t3.add_term({1, 1, 2}, std::vector<double>{1.0});
    const ElementaryOperator sym3 = symmetrize(t3);
    CHECK(sym3.table().size() == 3);
    for (const MultiIndex& key : {MultiIndex{1, 1, 2}, MultiIndex{1, 2, 1}, MultiIndex{2, 1, 1}}) {
        CHECK(sym3.coeff(key)[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("symmetrize never increases the Hilbert norm") {
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_instance(DecouplingCase::tetrahedral, 2 + trial % 2, 4,
                                          BanachSpaceModel{2, NormTag::l2},
                                          300 + static_cast<std::uint64_t>(trial));
        // Random non-symmetric table: tetrahedral masks keep it generic.
        const double before = gamma_norm_exact_hilbert(inst.coefficients);
        const double after = gamma_norm_exact_hilbert(symmetrize(inst.coefficients));
        CHECK(after <= before + 1e-12);
    }
}

TEST_CASE("is_tetrahedral") {
    ElementaryOperator a(2, 2, kScalar);
    a.add_term({1, 2}, std::vector<double>{1.0});
    CHECK(is_tetrahedral(a));

    ElementaryOperator b(2, 2, kScalar);
    b.add_term({1, 1}, std::vector<double>{1.0});
    CHECK(!is_tetrahedral(b));

    const ElementaryOperator empty(2, 2, kScalar);
    CHECK(is_tetrahedral(empty));
}

TEST_CASE("Hilbert gamma norm reference values") {
    const BanachSpaceModel space{2, NormTag::l2};
    ElementaryOperator t(2, 2, space);
    t.add_term({1, 2}, std::vector<double>{3.0, 4.0});
    CHECK(gamma_norm_exact_hilbert(t) == doctest::Approx(5.0));

    ElementaryOperator pair(2, 2, kScalar);
    pair.add_term({1, 1}, std::vector<double>{1.0});
    pair.add_term({2, 2}, std::vector<double>{2.0});
    CHECK(gamma_norm_exact_hilbert(pair) == doctest::Approx(std::sqrt(5.0)));
    // Decoupled rows make the cross term vanish; the oracle agrees.
    CHECK(decoupled_second_moment_oracle(pair) == doctest::Approx(5.0).epsilon(1e-12));

    CHECK(gamma_norm_exact_hilbert(ElementaryOperator(2, 2, kScalar)) == 0.0);

    ElementaryOperator banach(1, 2, BanachSpaceModel{2, NormTag::linf});
    banach.add_term({1}, std::vector<double>{1.0, 0.0});
    CHECK_THROWS_AS((void)gamma_norm_exact_hilbert(banach), UnsupportedNormError);
}

TEST_CASE("gamma_norm_mc agrees with the exact Hilbert value") {
    McConfig mc;
    mc.samples = 40000;
    mc.batches = 16;
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 1 + trial % 3;
        const int n = 2 + trial % 4;
        const BanachSpaceModel space{1 + trial % 3, NormTag::l2};
        const auto inst = random_instance(trial % 2 == 0 ? DecouplingCase::symmetric
                                                         : DecouplingCase::tetrahedral,
                                          m, n, space, 40 + static_cast<std::uint64_t>(trial));
        mc.seed = 5000 + static_cast<std::uint64_t>(trial);
        const auto est = gamma_norm_mc(inst.coefficients, 2.0, mc);
        const double exact = gamma_norm_exact_hilbert(inst.coefficients);
        CHECK(std::abs(est.estimate - exact) < 3.0 * est.std_error);
    }
}

TEST_CASE("sup-norm second moment matches the closed form") {
    // E max(g1^2, g2^2) = 1 + 2/pi; cross-checked by quadrature of the
    // survival function 1 - erf(sqrt(s/2))^2.
    const double closed = std::sqrt(1.0 + 2.0 / M_PI);
    const double integral = oracle::simpson(
        [](double s) {
            const double e = std::erf(std::sqrt(s / 2.0));
            return 1.0 - e * e;
        },
        0.0, 80.0, 40000);
    CHECK(std::sqrt(integral) == doctest::Approx(closed).epsilon(1e-8));

    ElementaryOperator t(1, 2, BanachSpaceModel{2, NormTag::linf});
    t.add_term({1}, std::vector<double>{1.0, 0.0});
    t.add_term({2}, std::vector<double>{0.0, 1.0});
    McConfig mc;
    mc.samples = 400000;
    mc.batches = 32;
    mc.seed = 7;
    const auto est = gamma_norm_mc(t, 2.0, mc);
    CHECK(std::abs(est.estimate - closed) < 3.0 * est.std_error);

    CHECK(gamma_norm_mc(ElementaryOperator(1, 2, kScalar), 2.0, mc).estimate == 0.0);
}

TEST_CASE("trace pairing") {
    const BanachSpaceModel space{2, NormTag::l2};
    ElementaryOperator t(1, 2, space);
    t.add_term({1}, std::vector<double>{1.0, 2.0});
    ElementaryOperator s(1, 2, space);
    s.add_term({1}, std::vector<double>{3.0, -1.0});
    CHECK(trace_pairing(t, s) == doctest::Approx(1.0));

    ElementaryOperator s2(1, 2, space);
    s2.add_term({2}, std::vector<double>{3.0, -1.0});
    CHECK(trace_pairing(t, s2) == 0.0);

    ElementaryOperator higher(2, 2, space);
    higher.add_term({1, 2}, std::vector<double>{1.0, 0.0});
    CHECK_THROWS_AS((void)trace_pairing(higher, higher), DimensionError);
}

TEST_CASE("trace pairing obeys the duality bound") {
    McConfig mc;
    mc.samples = 40000;
    mc.batches = 16;
    for (int trial = 0; trial < 10; ++trial) {
        const BanachSpaceModel space{3, NormTag::linf};
        const auto t = random_instance(DecouplingCase::symmetric, 1, 4, space,
                                       600 + static_cast<std::uint64_t>(trial))
                           .coefficients;
        ElementaryOperator s_dual(1, 4, space.dual());
        {
            const auto raw = random_instance(DecouplingCase::symmetric, 1, 4, space.dual(),
                                             700 + static_cast<std::uint64_t>(trial));
            s_dual = raw.coefficients;
        }
        mc.seed = 800 + static_cast<std::uint64_t>(trial);
        const auto nt = gamma_norm_mc(t, 2.0, mc);
        const auto ns = gamma_norm_mc(s_dual, 2.0, mc);
        const double bound = nt.estimate * ns.estimate +
                             3.0 * (nt.estimate * ns.std_error + ns.estimate * nt.std_error);
        CHECK(std::abs(trace_pairing(t, s_dual)) <= bound);
    }
}

TEST_CASE("canonical map reference images") {
    const BanachSpaceModel space{2, NormTag::l2};
    const std::vector<double> x = {1.0, -1.0};

    ElementaryOperator rank1(1, 3, space);
    rank1.add_term({2}, x);
    const ChaosExpansion f1 = wiener_ito_map(rank1);
    CHECK(f1.term_count() == 1);
    CHECK(f1.coeff(CountVector::from_index({2})) == x);

    // Symmetrized u1 x u2 maps to x/sqrt(2) on the mixed key.
    ElementaryOperator mixed(2, 2, space);
    mixed.add_term({1, 2}, std::vector<double>{0.5, -0.5});
    mixed.add_term({2, 1}, std::vector<double>{0.5, -0.5});
    const ChaosExpansion f2 = wiener_ito_map(mixed);
    CHECK(f2.term_count() == 1);
    const auto c2 = f2.coeff(CountVector::from_index({1, 2}));
    CHECK(c2[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(c2[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));

    // Repeated index: (i!/m!)^{1/2} = 1 for the cube key of order 2.
    ElementaryOperator repeated(2, 2, space);
    repeated.add_term({1, 1}, x);
    const ChaosExpansion f3 = wiener_ito_map(repeated);
    CHECK(f3.coeff(CountVector::from_index({1, 1})) == x);

    ElementaryOperator skew(2, 2, space);
    skew.add_term({1, 2}, x);
    CHECK_THROWS_AS((void)wiener_ito_map(skew), SymmetryError);
    CHECK(wiener_ito_map(skew, /*require_symmetric=*/false).term_count() == 1);
}

TEST_CASE("canonical map agrees with the ordered sum pointwise") {
    for (int trial = 0; trial < 5; ++trial) {
        const auto t = random_symmetric_operator(2 + trial % 2, 3, kScalar,
                                                 910 + static_cast<std::uint64_t>(trial));
        const ChaosExpansion f = wiener_ito_map(t);
        const double m_fact = static_cast<double>(factorial_i64(t.order()));
        RandomStream stream(4321 + static_cast<std::uint64_t>(trial));
        for (int pt = 0; pt < 20; ++pt) {
            std::vector<double> g(3);
            for (double& v : g) v = stream.normal();
            double direct = 0.0;
            for (const auto& [index, coeff] : t.table()) {
                const double scale =
                    std::sqrt(static_cast<double>(CountVector::from_index(index).factorial()) /
                              m_fact);
                direct += scale * psi_eval(index, g) * coeff[0];
            }
            CHECK(evaluate(f, g)[0] == doctest::Approx(direct).epsilon(1e-11));
        }
    }
}

TEST_CASE("L2 isometry of the canonical map") {
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 1 + trial % 4;
        const int n = 2 + trial % 5;
        const BanachSpaceModel space{1 + trial % 3, NormTag::l2};
        const auto t = random_symmetric_operator(m, n, space, static_cast<std::uint64_t>(trial));
        const double lhs = l2_norm_exact(wiener_ito_map(t));
        const double rhs = gamma_norm_exact_hilbert(t);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("single-row decoupled estimator equals base-row evaluation exactly") {
    McConfig mc;
    mc.samples = 20000;
    mc.batches = 8;
    mc.seed = 31337;
    const BanachSpaceModel space{2, NormTag::linf};
    const auto inst = random_instance(DecouplingCase::symmetric, 1, 3, space, 2222);
    const auto decoupled = gamma_norm_mc(inst.coefficients, 2.0, mc);
    const auto coupled = lp_norm_mc(wiener_ito_map(inst.coefficients), 2.0, mc);
    CHECK(decoupled.estimate == coupled.estimate);
    CHECK(decoupled.std_error == coupled.std_error);
}
