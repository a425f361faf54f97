#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "chaoscalc/chaos_expansion.hpp"
#include "chaoscalc/elementary_operator.hpp"
#include "chaoscalc/mc.hpp"

namespace chaoscalc {

/// Random functional with operator values: a chaos expansion whose
/// coefficients are tensors of shape n^k x d, where k >= 1 is the number of
/// H slots. Slot 0 is the outermost (most recent derivative); the flat index
/// of slot coordinates (j_1..j_k, all 0-based) and component e is
/// ((j_1 * n + j_2) * n + ...) * d + e.
class OperatorValuedExpansion {
public:
    using TermMap = std::map<CountVector, std::vector<double>>;

    OperatorValuedExpansion() = default;
    OperatorValuedExpansion(int slots, int dim_n, BanachSpaceModel space);

    [[nodiscard]] int slots() const { return k_; }
    [[nodiscard]] int dim_n() const { return n_; }
    [[nodiscard]] const BanachSpaceModel& space() const { return space_; }
    [[nodiscard]] int d() const { return space_.d; }
    [[nodiscard]] size_t tensor_len() const;
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] int max_order() const;

    void add_term(const CountVector& c, std::span<const double> tensor);
    void add_scaled_term(const CountVector& c, double scale, std::span<const double> tensor);
    [[nodiscard]] std::vector<double> coeff(const CountVector& c) const;

    OperatorValuedExpansion& operator+=(const OperatorValuedExpansion& rhs);
    OperatorValuedExpansion& operator-=(const OperatorValuedExpansion& rhs);
    [[nodiscard]] OperatorValuedExpansion scaled(double a) const;

private:
    int k_ = 1;
    int n_ = 1;
    BanachSpaceModel space_;
    TermMap terms_;
};

double max_coeff_deviation(const OperatorValuedExpansion& a, const OperatorValuedExpansion& b);
OperatorValuedExpansion project_order(const OperatorValuedExpansion& u, int m);

/// Exact L2(Omega; HS) norm over keys and tensor entries; requires the l2 tag.
double l2_norm_exact(const OperatorValuedExpansion& u);

/// Malliavin derivative on the basis: D(Psi_c x) = sum_j sqrt(c_j)
/// Psi_{c - e_j} u_j x. Exact; every output key drops one order.
OperatorValuedExpansion derivative(const ChaosExpansion& f);

/// Derivative of an operator-valued functional; the new H slot is outermost.
OperatorValuedExpansion derivative(const OperatorValuedExpansion& u);

/// k-fold iterate of the derivative.
OperatorValuedExpansion derivative_n(const ChaosExpansion& f, int k);

/// Independent route: convert to the monomial basis, apply the coordinate
/// partial derivatives, convert back. Cross-checked against `derivative`.
OperatorValuedExpansion derivative_monomial_route(const ChaosExpansion& f);

/// DF(h): contraction of the single H slot with h.
ChaosExpansion contract(const OperatorValuedExpansion& u, std::span<const double> h);

/// Divergence (adjoint of D), via the recursion
/// delta(f * u_j x) = (f gamma_j - Df(u_j)) x applied per basis term.
/// On the finite polynomial model this is exact.
ChaosExpansion divergence(const OperatorValuedExpansion& u);

/// Integration by parts: lhs = E(DF(h)), rhs = E(W(h) F), both exact from
/// the chaos coefficients. Requires scalar F.
std::pair<double, double> ibp_check(const ChaosExpansion& f, std::span<const double> h);

/// The tensor DF(omega) (or D^k F) at a sample point, flat n^k x d.
std::vector<double> materialize(const OperatorValuedExpansion& u, std::span<const double> g);

/// Deterministic tensor reinterpreted as an elementary operator of order k.
ElementaryOperator as_elementary_operator(int slots, int dim_n, const BanachSpaceModel& space,
                                          std::span<const double> tensor);

/// L^p(Omega; gamma^k(H,E)) norm by pathwise materialization. For the l2 tag
/// the pathwise gamma norm is the exact Hilbert-Schmidt norm; otherwise it is
/// estimated with `inner_samples` fresh draws per sample, one independent
/// copy row per tensor slot (small positive bias of order 1/inner_samples
/// for p != 2). Constant functionals reduce to a plain gamma-norm estimate.
std::vector<EstimateResult> lp_gamma_norm_mc(const OperatorValuedExpansion& u,
                                             std::span<const double> ps, const McConfig& mc,
                                             int inner_samples = 128);
EstimateResult lp_gamma_norm_mc(const OperatorValuedExpansion& u, double p, const McConfig& mc,
                                int inner_samples = 128);

/// Sobolev-Malliavin norm (|F|_p^p + sum_{i<=k} |D^i F|_p^p)^{1/p}, each term
/// estimated on its own derived seed.
EstimateResult sobolev_norm(const ChaosExpansion& f, int k, double p, const McConfig& mc,
                            int inner_samples = 128);

/// Same for an operator-valued functional (its derivatives gain slots).
EstimateResult sobolev_norm(const OperatorValuedExpansion& u, int k, double p, const McConfig& mc,
                            int inner_samples = 128);

}  // namespace chaoscalc
