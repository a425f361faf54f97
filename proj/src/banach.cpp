#include "chaoscalc/banach.hpp"

#include <cmath>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

NormTag dual_norm_tag(NormTag tag) {
    switch (tag) {
        case NormTag::l1: return NormTag::linf;
        case NormTag::l2: return NormTag::l2;
        case NormTag::linf: return NormTag::l1;
    }
    throw Error("dual_norm_tag: unknown tag");
}

std::string norm_name(NormTag tag) {
    switch (tag) {
        case NormTag::l1: return "l1";
        case NormTag::l2: return "l2";
        case NormTag::linf: return "linf";
    }
    throw Error("norm_name: unknown tag");
}

NormTag norm_from_name(const std::string& name) {
    if (name == "l1") return NormTag::l1;
    if (name == "l2") return NormTag::l2;
    if (name == "linf") return NormTag::linf;
    throw ConfigError("unknown norm tag \"" + name + "\" (expected l1, l2 or linf)");
}

double BanachSpaceModel::norm(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d) {
        throw DimensionError("norm: vector length " + std::to_string(x.size()) +
                             " does not match space dimension " + std::to_string(d));
    }
    if (custom_norm) return custom_norm(x);
    double acc = 0.0;
    switch (tag) {
        case NormTag::l1:
            for (double v : x) acc += std::abs(v);
            return acc;
        case NormTag::l2:
            for (double v : x) acc += v * v;
            return std::sqrt(acc);
        case NormTag::linf:
            for (double v : x) acc = std::max(acc, std::abs(v));
            return acc;
    }
    throw Error("norm: unknown tag");
}

void BanachSpaceModel::validate() const {
    if (d < 1) throw ConfigError("space dimension must be >= 1, got " + std::to_string(d));
}

double l2_norm(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace chaoscalc
