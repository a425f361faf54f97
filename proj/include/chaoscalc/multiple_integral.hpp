#pragma once

#include <map>
#include <span>
#include <vector>

#include "chaoscalc/chaos_expansion.hpp"
#include "chaoscalc/elementary_operator.hpp"

namespace chaoscalc {

/// Finite partition model of a measure space: q disjoint cells with strictly
/// positive masses. Cell j is wired to the basis vector
/// u_j = mass_j^{-1/2} * indicator(cell j), so integrals come out exact.
struct MeasureSpaceModel {
    std::vector<double> masses;

    [[nodiscard]] int q() const { return static_cast<int>(masses.size()); }
    [[nodiscard]] double mass(int cell) const;  // 1-based
    void validate() const;
};

/// Tetrahedral simple function on the m-fold product of the partition:
/// F = sum_i indicator(cell_{i_1} x ... x cell_{i_m}) * x_i with all-distinct
/// entries per key. Keys with repeated entries are rejected at insertion.
class TetraSimpleFunction {
public:
    using Table = std::map<MultiIndex, std::vector<double>>;

    TetraSimpleFunction() = default;
    TetraSimpleFunction(int order, BanachSpaceModel space);

    [[nodiscard]] int order() const { return m_; }
    [[nodiscard]] const BanachSpaceModel& space() const { return space_; }
    [[nodiscard]] int d() const { return space_.d; }
    [[nodiscard]] const Table& table() const { return table_; }
    [[nodiscard]] bool empty() const { return table_.empty(); }
    [[nodiscard]] int max_cell() const;

    void add_term(const MultiIndex& cells, std::span<const double> coeff);
    void set_term(const MultiIndex& cells, std::vector<double> coeff);
    [[nodiscard]] std::vector<double> coeff(const MultiIndex& cells) const;

private:
    int m_ = 1;
    BanachSpaceModel space_;
    Table table_;
};

/// The operator represented by F in the normalized-indicator basis: each
/// coefficient picks up the product of the square-root masses of its cells.
ElementaryOperator to_operator(const TetraSimpleFunction& f, const MeasureSpaceModel& m);

/// Permutation average of the function table; tetrahedrality is preserved.
TetraSimpleFunction symmetrize_function(const TetraSimpleFunction& f);

/// Multiple stochastic integral: with disjoint cells and tetrahedral keys the
/// white-noise product is exactly a basis polynomial, so the result is an
/// exact expansion whose keys all have order m.
ChaosExpansion integrate(const TetraSimpleFunction& f, const MeasureSpaceModel& m);

/// Squared L2 norm of F on the product measure: sum_i |x_i|_2^2 * prod masses.
double l2_norm_squared_on_product(const TetraSimpleFunction& f, const MeasureSpaceModel& m);

/// Scalar second-moment identity: lhs = E(I_m F)^2 computed from the chaos
/// coefficients, rhs = m! * |sym F|^2_{L2}. Requires d = 1 with the l2 tag;
/// the contract is lhs = rhs within the exactness tolerance.
std::pair<double, double> ito_isometry_check(const TetraSimpleFunction& f,
                                             const MeasureSpaceModel& m);

}  // namespace chaoscalc
