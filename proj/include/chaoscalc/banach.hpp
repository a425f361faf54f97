#pragma once

#include <functional>
#include <span>
#include <string>

namespace chaoscalc {

enum class NormTag { l1, l2, linf };

NormTag dual_norm_tag(NormTag tag);
std::string norm_name(NormTag tag);
NormTag norm_from_name(const std::string& name);

/// Finite-dimensional stand-in for a Banach space: R^d with a chosen norm.
///
/// The three built-in tags cover the Hilbert case and the standard
/// non-Hilbert stress tests. A custom norm hook overrides the tag when set
/// (it must be a genuine norm; only spot checks are feasible).
struct BanachSpaceModel {
    int d = 1;
    NormTag tag = NormTag::l2;
    std::function<double(std::span<const double>)> custom_norm;

    BanachSpaceModel() = default;
    BanachSpaceModel(int dim, NormTag t) : d(dim), tag(t) {}

    [[nodiscard]] double norm(std::span<const double> x) const;
    [[nodiscard]] BanachSpaceModel dual() const { return {d, dual_norm_tag(tag)}; }
    [[nodiscard]] bool is_l2() const { return !custom_norm && tag == NormTag::l2; }

    void validate() const;
};

/// Euclidean norm, independent of the space tag.
double l2_norm(std::span<const double> x);
/// Dot product of equal-length vectors.
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace chaoscalc
