#include "chaoscalc/random_gen.hpp"

#include <cmath>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/malliavin.hpp"
#include "chaoscalc/rng.hpp"

namespace chaoscalc {

double RandomStream::normal() { return normal_at(seed_, counter_++); }

double RandomStream::uniform() { return uniform_at(seed_, counter_++); }

int RandomStream::uniform_int(int lo, int hi) {
    if (hi < lo) throw Error("RandomStream::uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(splitmix64_at(seed_, counter_++) % span);
}

ElementaryOperator random_symmetric_operator(int m, int n, const BanachSpaceModel& space,
                                             std::uint64_t seed) {
    return random_instance(DecouplingCase::symmetric, m, n, space, seed).coefficients;
}

TetraSimpleFunction random_tetra_function(int m, int q, const BanachSpaceModel& space,
                                          std::uint64_t seed) {
    if (q < m) throw ConfigError("random_tetra_function: need q >= m for distinct entries");
    const ElementaryOperator masked =
        random_instance(DecouplingCase::tetrahedral, m, q, space, seed).coefficients;
    TetraSimpleFunction out(m, space);
    for (const auto& [index, coeff] : masked.table()) out.add_term(index, coeff);
    return out;
}

MeasureSpaceModel random_masses(int q, std::uint64_t seed) {
    RandomStream stream(seed);
    MeasureSpaceModel model;
    model.masses.resize(static_cast<size_t>(q));
    for (double& mu : model.masses) mu = 0.25 + 3.75 * stream.uniform();
    model.validate();
    return model;
}

ChaosExpansion random_chaos_polynomial(int n, const BanachSpaceModel& space, int min_order,
                                       int max_order, int terms, std::uint64_t seed) {
    if (min_order < 0 || max_order < min_order) {
        throw ConfigError("random_chaos_polynomial: invalid order range");
    }
    RandomStream stream(seed);
    ChaosExpansion out(n, space);
    std::vector<double> coeff(static_cast<size_t>(space.d));
    for (int t = 0; t < terms; ++t) {
        const int order = stream.uniform_int(min_order, max_order);
        MultiIndex index;
        for (int k = 0; k < order; ++k) index.push_back(stream.uniform_int(1, n));
        for (double& x : coeff) x = stream.normal();
        out.add_term(CountVector::from_index(index), coeff);
    }
    return out;
}

ChaosExpansion random_pure_chaos(int m, int n, const BanachSpaceModel& space, std::uint64_t seed) {
    return wiener_ito_map(random_symmetric_operator(m, n, space, seed));
}

OperatorValuedExpansion random_operator_valued(int n, const BanachSpaceModel& space, int min_order,
                                               int max_order, int terms, std::uint64_t seed) {
    RandomStream stream(seed);
    OperatorValuedExpansion out(1, n, space);
    std::vector<double> tensor(out.tensor_len());
    for (int t = 0; t < terms; ++t) {
        const int order = stream.uniform_int(min_order, max_order);
        MultiIndex index;
        for (int k = 0; k < order; ++k) index.push_back(stream.uniform_int(1, n));
        for (double& x : tensor) x = stream.normal();
        out.add_term(CountVector::from_index(index), tensor);
    }
    return out;
}

std::vector<double> random_unit_vector(int n, std::uint64_t seed) {
    RandomStream stream(seed);
    std::vector<double> h(static_cast<size_t>(n));
    double norm_sq = 0.0;
    while (norm_sq == 0.0) {
        for (double& x : h) {
            x = stream.normal();
            norm_sq += x * x;
        }
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : h) x *= inv;
    return h;
}

}  // namespace chaoscalc
