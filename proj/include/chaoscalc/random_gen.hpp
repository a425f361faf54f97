#pragma once

#include <cstdint>
#include <vector>

#include "chaoscalc/chaos_expansion.hpp"
#include "chaoscalc/decoupling.hpp"
#include "chaoscalc/elementary_operator.hpp"
#include "chaoscalc/malliavin.hpp"
#include "chaoscalc/multiple_integral.hpp"

namespace chaoscalc {

/// Sequential reader over the counter-based generator; used to build
/// reproducible random experiment instances.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

    double normal();
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);
    double uniform();

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Symmetric elementary operator with orbit-averaged standard normal entries.
ElementaryOperator random_symmetric_operator(int m, int n, const BanachSpaceModel& space,
                                             std::uint64_t seed);

/// Tetrahedral simple function with standard normal coefficients on the
/// all-distinct keys of [1..q]^m.
TetraSimpleFunction random_tetra_function(int m, int q, const BanachSpaceModel& space,
                                          std::uint64_t seed);

/// Cell masses drawn uniformly from [0.25, 4].
MeasureSpaceModel random_masses(int q, std::uint64_t seed);

/// Random polynomial functional: `terms` keys of order between min_order and
/// max_order (indices uniform in 1..n), standard normal coefficients.
ChaosExpansion random_chaos_polynomial(int n, const BanachSpaceModel& space, int min_order,
                                       int max_order, int terms, std::uint64_t seed);

/// Random functional supported on a single chaos layer of order m
/// (the canonical image of a random symmetric operator).
ChaosExpansion random_pure_chaos(int m, int n, const BanachSpaceModel& space, std::uint64_t seed);

/// Random operator-valued functional with one H slot.
OperatorValuedExpansion random_operator_valued(int n, const BanachSpaceModel& space, int min_order,
                                               int max_order, int terms, std::uint64_t seed);

/// Unit vector in R^n with normal entries (normalized in l2).
std::vector<double> random_unit_vector(int n, std::uint64_t seed);

}  // namespace chaoscalc
