#pragma once

#include <map>
#include <span>
#include <vector>

#include "chaoscalc/banach.hpp"
#include "chaoscalc/gaussian_model.hpp"
#include "chaoscalc/mc.hpp"
#include "chaoscalc/multi_index.hpp"

namespace chaoscalc {

/// Exact representation of an R^d-valued polynomial Wiener functional as a
/// finite sum over the normalized Hermite basis: F = sum_c Psi_c * x_c,
/// keyed by canonical count vectors. The empty key holds the mean.
class ChaosExpansion {
public:
    using TermMap = std::map<CountVector, std::vector<double>>;

    ChaosExpansion() = default;
    ChaosExpansion(int dim_n, BanachSpaceModel space);

    [[nodiscard]] int dim_n() const { return n_; }
    [[nodiscard]] const BanachSpaceModel& space() const { return space_; }
    [[nodiscard]] int d() const { return space_.d; }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] int max_order() const;
    [[nodiscard]] int term_count() const { return static_cast<int>(terms_.size()); }

    /// Accumulates into the key; exact-zero coefficient vectors are dropped.
    void add_term(const CountVector& c, std::span<const double> coeff);
    void add_scaled_term(const CountVector& c, double scale, std::span<const double> coeff);
    void set_term(const CountVector& c, std::vector<double> coeff);

    /// Coefficient of the key, zero vector if absent.
    [[nodiscard]] std::vector<double> coeff(const CountVector& c) const;
    /// The order-0 coefficient: E(F).
    [[nodiscard]] std::vector<double> mean() const;

    ChaosExpansion& operator+=(const ChaosExpansion& rhs);
    ChaosExpansion& operator-=(const ChaosExpansion& rhs);
    [[nodiscard]] ChaosExpansion scaled(double a) const;

    /// Drops terms whose entries are all within `tol` of zero.
    void prune(double tol);

private:
    int n_ = 1;
    BanachSpaceModel space_;
    TermMap terms_;
};

ChaosExpansion operator+(ChaosExpansion a, const ChaosExpansion& b);
ChaosExpansion operator-(ChaosExpansion a, const ChaosExpansion& b);

/// Largest entrywise deviation between two expansions over the union of keys.
double max_coeff_deviation(const ChaosExpansion& a, const ChaosExpansion& b);

/// Polynomial functional in the plain monomial basis: terms map an exponent
/// vector (length n, entries >= 0) to a coefficient in R^d. The user-facing
/// input format; ChaosExpansion is the canonical internal one.
class MonomialFunctional {
public:
    using TermMap = std::map<std::vector<int>, std::vector<double>>;

    MonomialFunctional() = default;
    MonomialFunctional(int dim_n, BanachSpaceModel space);

    [[nodiscard]] int dim_n() const { return n_; }
    [[nodiscard]] const BanachSpaceModel& space() const { return space_; }
    [[nodiscard]] int d() const { return space_.d; }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    void add_term(const std::vector<int>& exponents, std::span<const double> coeff);
    void add_scaled_term(const std::vector<int>& exponents, double scale,
                         std::span<const double> coeff);

    /// d/dx_j (1-based coordinate).
    [[nodiscard]] MonomialFunctional partial(int j) const;

private:
    int n_ = 1;
    BanachSpaceModel space_;
    TermMap terms_;
};

/// Change of basis, exact up to floating point: the two representations are
/// pointwise equal as functions of (gamma_1..gamma_n) and round-trip.
ChaosExpansion to_chaos(const MonomialFunctional& f);
MonomialFunctional from_chaos(const ChaosExpansion& f);

std::vector<double> evaluate(const ChaosExpansion& f, std::span<const double> g);
std::vector<double> evaluate(const ChaosExpansion& f, const GaussianSample& s, int copy = 0);
std::vector<double> evaluate(const MonomialFunctional& f, std::span<const double> g);

/// Orthogonal projection onto the chaos layer of order m (keeps |c| = m).
ChaosExpansion project_order(const ChaosExpansion& f, int m);

/// Exact L2(Omega; R^d) norm via basis orthonormality; requires the l2 tag.
double l2_norm_exact(const ChaosExpansion& f);

/// Exact product with the coordinate Gaussian gamma_j (1-based): one basis
/// step up and one down per key.
ChaosExpansion multiply_by_gamma(const ChaosExpansion& f, int j);

/// Scalar component e of a vector-valued expansion.
ChaosExpansion component(const ChaosExpansion& f, int e);

/// E<F, G> = sum_c <F_c, G_c> by orthonormality (G plays the dual role).
double expectation_inner(const ChaosExpansion& f, const ChaosExpansion& g);

/// Pointwise product of two scalar expansions (exact, via the monomial basis).
ChaosExpansion multiply_scalar(const ChaosExpansion& a, const ChaosExpansion& b);

/// Pointwise duality pairing <F, G> = sum_e F_e G_e as a scalar expansion.
ChaosExpansion pointwise_inner(const ChaosExpansion& f, const ChaosExpansion& g);

/// Monte Carlo L^p(Omega; E) norms by exact pathwise evaluation on the base
/// Gaussian row (draw layout: sample s uses counters [s*n, (s+1)*n)).
/// Constant expansions short-circuit to their exact norm.
std::vector<EstimateResult> lp_norm_mc(const ChaosExpansion& f, std::span<const double> ps,
                                       const McConfig& mc);
EstimateResult lp_norm_mc(const ChaosExpansion& f, double p, const McConfig& mc);

}  // namespace chaoscalc
