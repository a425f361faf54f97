#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chaoscalc/chaos_expansion.hpp"
#include "chaoscalc/elementary_operator.hpp"
#include "chaoscalc/mc.hpp"

namespace chaoscalc {

enum class DecouplingCase { symmetric, tetrahedral };

std::string case_name(DecouplingCase tag);
DecouplingCase case_from_name(const std::string& name);

/// Coefficient family for one coupled/decoupled comparison. The symmetric
/// case requires x_i invariant under index permutations; the tetrahedral
/// case requires x_i = 0 whenever an index repeats.
struct DecouplingInstance {
    DecouplingCase tag = DecouplingCase::symmetric;
    int m = 1;
    int dim_n = 1;
    BanachSpaceModel space;
    ElementaryOperator coefficients;

    void validate() const;
};

/// Reproducible instance: the coefficient at each ordered key is standard
/// normal, indexed by (lexicographic rank of the key, component) under
/// `seed`; then symmetrized (permutation orbit average) or masked to the
/// tetrahedral keys, by case.
DecouplingInstance random_instance(DecouplingCase tag, int m, int n, const BanachSpaceModel& space,
                                   std::uint64_t seed);

/// Exact chaos expansion of the coupled sum: the symmetric case is the
/// canonical map of the coefficients; in the tetrahedral case the product of
/// distinct coordinate Gaussians is itself a basis polynomial.
ChaosExpansion build_coupled(const DecouplingInstance& inst);

/// L^p norm of the decoupled sum (m independent copy rows); identical to
/// gamma_norm_mc of the coefficient operator.
EstimateResult decoupled_lp(const DecouplingInstance& inst, double p, const McConfig& mc);
std::vector<EstimateResult> decoupled_lp(const DecouplingInstance& inst, std::span<const double> ps,
                                         const McConfig& mc);

/// L^p norm of the coupled sum by exact pathwise evaluation on the base row.
EstimateResult coupled_lp(const DecouplingInstance& inst, double p, const McConfig& mc);
std::vector<EstimateResult> coupled_lp(const DecouplingInstance& inst, std::span<const double> ps,
                                       const McConfig& mc);

struct DecouplingRatio {
    EstimateResult coupled;
    EstimateResult decoupled;
    double ratio = 0.0;
};
DecouplingRatio decoupling_ratio(const DecouplingInstance& inst, double p, const McConfig& mc);

/// Sum over ordered stored keys of |x_i|_2^2: the exact second moment of the
/// decoupled sum in the Hilbert case, and of the coupled sum as well.
double decoupled_second_moment_exact(const ElementaryOperator& coefficients);

/// Empirical survival probabilities P(|F| > threshold) for the coupled or
/// decoupled sum, one value per threshold.
std::vector<double> survival_curve(const DecouplingInstance& inst,
                                   std::span<const double> thresholds, const McConfig& mc,
                                   bool decoupled);

}  // namespace chaoscalc
