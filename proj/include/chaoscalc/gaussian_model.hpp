#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chaoscalc/rng.hpp"

namespace chaoscalc {

/// Finite-dimensional model of the isonormal Gaussian process: the Hilbert
/// space is truncated to n basis vectors u_1..u_n, and W(u_j) = gamma_j.
struct FiniteGaussianModel {
    int n = 1;
    void validate() const;
};

/// One joint draw of the base Gaussian sequence plus independent copies.
///
/// Row 0 is the base sequence (gamma_j), rows 1..k_max are independent
/// copies, and an optional extra row (gamma~_j) sits last when requested.
class GaussianSample {
public:
    GaussianSample(int n, int k_max, bool with_tilde);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int k_max() const { return rows_ - (has_tilde_ ? 2 : 1); }
    [[nodiscard]] int rows() const { return rows_; }
    [[nodiscard]] bool has_tilde() const { return has_tilde_; }

    /// copy 0 = base row; coordinate index is 0-based.
    [[nodiscard]] double value(int copy, int coord) const;
    [[nodiscard]] std::span<const double> row(int copy) const;
    [[nodiscard]] std::span<const double> tilde_row() const;

    [[nodiscard]] std::span<double> mutable_data() { return data_; }

private:
    int n_;
    int rows_;
    bool has_tilde_;
    std::vector<double> data_;  // rows x n, row-major
};

/// Draws `count` independent samples, each holding k_max+1 rows (plus the
/// tilde row when requested). Bit-reproducible from (seed, stream, count):
/// draw g of the call sits at master counter rng.stream * total + g, where
/// total = count * rows * n and draws are laid out sample-major, then
/// row-major, then by coordinate.
std::vector<GaussianSample> sample(const FiniteGaussianModel& model, int k_max,
                                   std::int64_t count, RngSpec rng, bool with_tilde = false);

/// W(h) = sum_j h_j gamma_j^{(copy)} for h of length n.
double wiener(std::span<const double> h, const GaussianSample& s, int copy = 0);

}  // namespace chaoscalc
