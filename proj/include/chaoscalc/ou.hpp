#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "chaoscalc/chaos_expansion.hpp"
#include "chaoscalc/malliavin.hpp"

namespace chaoscalc {

/// Applies a per-order factor to every term (the diagonal functional calculus
/// of the number operator).
ChaosExpansion scale_by_order(const ChaosExpansion& f, const std::function<double(int)>& factor);
OperatorValuedExpansion scale_by_order(const OperatorValuedExpansion& u,
                                       const std::function<double(int)>& factor);

/// Ornstein-Uhlenbeck semigroup: order m scaled by e^{-mt}; t >= 0.
ChaosExpansion ou_semigroup(double t, const ChaosExpansion& f);
OperatorValuedExpansion ou_semigroup(double t, const OperatorValuedExpansion& u);

/// Generator L: order m scaled by -m.
ChaosExpansion ou_generator(const ChaosExpansion& f);
/// C = -(-L)^{1/2}: order m scaled by -sqrt(m).
ChaosExpansion ou_generator_sqrt(const ChaosExpansion& f);
/// L^{-1} on mean-zero functionals: order m scaled by -1/m. Throws
/// MeanZeroError if an order-0 term is present.
ChaosExpansion ou_generator_inv(const ChaosExpansion& f);

/// Scalar spectral multiplier: order n scaled by rule(n). The rule must be
/// finite on every order present in the operand.
struct MultiplierSpec {
    std::function<double(int)> rule;
};
ChaosExpansion chaos_multiplier(const MultiplierSpec& spec, const ChaosExpansion& f);

/// Resolvent sum_m (lambda - m)^{-1} J_m; lambda must avoid the integers
/// present in the operand.
ChaosExpansion resolvent(double lambda, const ChaosExpansion& f);

enum class QuadScheme { gauss_legendre, simpson };

/// Quadrature plan for the subordinating density
/// t / (2 sqrt(pi s^3)) e^{-t^2/(4s)} ds on [s_lo, s_hi]. Integration runs in
/// the substituted variable v = t/(2 sqrt(s)), which removes the s^{-3/2}
/// singularity and turns the integrand into e^{-v^2 - m t^2/(4 v^2)}.
struct SubordinatorQuad {
    int nodes = 256;
    QuadScheme scheme = QuadScheme::gauss_legendre;
    double s_lo = 0.0;
    double s_hi = 0.0;

    /// Bounds sized for the requested t, adequate up to chaos order m_max.
    static SubordinatorQuad for_time(double t, int m_max = 64, int nodes = 256);

    /// Mass of nu_t captured by [s_lo, s_hi].
    [[nodiscard]] double mass_covered(double t) const;
    void validate(double t) const;
};

/// Numerical integral of e^{-ms} against nu_t over the plan's bounds.
/// The closed form is e^{-sqrt(m) t}.
double subordinator_factor(int m, double t, const SubordinatorQuad& quad);

/// Subordinated semigroup evaluated two ways: closed (order m scaled by
/// e^{-sqrt(m) t}) and by quadrature. The two agree to 1e-6 relative per
/// coefficient under the default plans.
std::pair<ChaosExpansion, ChaosExpansion> subordinated_semigroup(double t, const ChaosExpansion& f,
                                                                 const SubordinatorQuad& quad);

/// Semigroup tail estimate in the Hilbert scalar case: lhs is the exact L2
/// norm of P(t) applied to the order >= N tail, rhs = e^{-Nt} |F|_{L2};
/// the contract is lhs <= rhs.
std::pair<double, double> tail_bound_check(double t, int order_cut, const ChaosExpansion& f);

/// Factors the mean-free part of F through one derivative: `lowered` is the
/// derivative of the half-smoothed functional (orders scaled by m^{-1/2}),
/// and `recovered` rebuilds sum_{m>=1} J_m F from it via the divergence.
struct TailFactorization {
    OperatorValuedExpansion lowered;
    ChaosExpansion recovered;
};
TailFactorization tail_factorization(const ChaosExpansion& f);

/// F = E(F) + divergence(U) with U = D (-L)^{-1} (F - E F); exact on
/// polynomials.
struct DivergenceRepresentation {
    std::vector<double> mean;
    OperatorValuedExpansion u;
};
DivergenceRepresentation divergence_representation(const ChaosExpansion& f);

/// Exact coefficient checks of the derivative commutation identities:
///   D P(t) = e^{-t} P(t) D,   D Q(t) = exp(-t (I-L)^{1/2}) D,
///   D L = -(I-L) D,           D C = -(I-L)^{1/2} D.
struct CommutationReport {
    double semigroup_dev = 0.0;
    double subordinated_dev = 0.0;
    double generator_dev = 0.0;
    double sqrt_dev = 0.0;
    double max_dev = 0.0;
};
CommutationReport commutation_check(double t, const ChaosExpansion& f);

/// Dirichlet form identity under the adopted sign convention:
/// lhs = E<(-L)F, G>, rhs = E[DF, DG]; exact on polynomials.
std::pair<double, double> dirichlet_form_check(const ChaosExpansion& f, const ChaosExpansion& g);

/// E[U, V] of two operator-valued expansions (trace pairing in expectation).
double expectation_inner(const OperatorValuedExpansion& u, const OperatorValuedExpansion& v);

}  // namespace chaoscalc
