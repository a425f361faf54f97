#pragma once

#include <map>
#include <span>
#include <vector>

#include "chaoscalc/banach.hpp"
#include "chaoscalc/chaos_expansion.hpp"
#include "chaoscalc/mc.hpp"
#include "chaoscalc/multi_index.hpp"

namespace chaoscalc {

/// Elementary operator of order m in the finite model: a coefficient table
/// T = sum_i (u_{i_1} x ... x u_{i_m}) x x_i over ordered multi-indices of
/// length m with entries in 1..n. Canonical form stores no zero coefficients.
class ElementaryOperator {
public:
    using Table = std::map<MultiIndex, std::vector<double>>;

    ElementaryOperator() = default;
    ElementaryOperator(int order, int dim_n, BanachSpaceModel space);

    [[nodiscard]] int order() const { return m_; }
    [[nodiscard]] int dim_n() const { return n_; }
    [[nodiscard]] const BanachSpaceModel& space() const { return space_; }
    [[nodiscard]] int d() const { return space_.d; }
    [[nodiscard]] const Table& table() const { return table_; }
    [[nodiscard]] bool empty() const { return table_.empty(); }

    void add_term(const MultiIndex& index, std::span<const double> coeff);
    void add_scaled_term(const MultiIndex& index, double scale, std::span<const double> coeff);
    void set_term(const MultiIndex& index, std::vector<double> coeff);
    [[nodiscard]] std::vector<double> coeff(const MultiIndex& index) const;

private:
    int m_ = 1;
    int n_ = 1;
    BanachSpaceModel space_;
    Table table_;
};

/// Permutation average over the m index slots. Orbit averages are assigned
/// (not re-accumulated), so the map is exactly idempotent and symmetric
/// inputs pass through unchanged.
ElementaryOperator symmetrize(const ElementaryOperator& t);

/// True if every stored coefficient table is constant on permutation orbits.
bool is_symmetric(const ElementaryOperator& t);

/// True iff every stored key has all-distinct entries.
bool is_tetrahedral(const ElementaryOperator& t);

/// Hilbert-case norm: sqrt(sum over ordered keys of |x_i|_2^2); the decoupled
/// Gaussian products are orthonormal in L2. Requires the l2 tag.
double gamma_norm_exact_hilbert(const ElementaryOperator& t);

/// Monte Carlo estimate of (E |sum_i gamma^{(1)}_{i_1}...gamma^{(m)}_{i_m} x_i|_E^p)^{1/p}
/// with m independent copy rows. Sample s draws its m*n matrix at counters
/// [s*m*n, (s+1)*m*n), row-major, so the m=1 estimator coincides draw for
/// draw with base-row pathwise evaluation. The zero operator returns 0 exactly.
std::vector<EstimateResult> gamma_norm_mc(const ElementaryOperator& t, std::span<const double> ps,
                                          const McConfig& mc);
EstimateResult gamma_norm_mc(const ElementaryOperator& t, double p, const McConfig& mc);

/// Trace duality pairing of two order-1 operators: sum_j <T u_j, S u_j>.
double trace_pairing(const ElementaryOperator& t, const ElementaryOperator& s);

/// The canonical map on elementary operators: sum_i (i!/m!)^{1/2} Psi_i x_i,
/// aggregated over ordered indices into count-vector keys (all of order m).
/// With the flag set, asymmetric input raises SymmetryError.
ChaosExpansion wiener_ito_map(const ElementaryOperator& t, bool require_symmetric = true);

}  // namespace chaoscalc
