#include "chaoscalc/gaussian_model.hpp"

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

void FiniteGaussianModel::validate() const {
    if (n < 1) throw ConfigError("FiniteGaussianModel: n must be >= 1, got " + std::to_string(n));
}

GaussianSample::GaussianSample(int n, int k_max, bool with_tilde)
    : n_(n),
      rows_(k_max + 1 + (with_tilde ? 1 : 0)),
      has_tilde_(with_tilde),
      data_(static_cast<size_t>(rows_) * static_cast<size_t>(n), 0.0) {
    if (n < 1 || k_max < 0) throw ConfigError("GaussianSample: need n >= 1 and k_max >= 0");
}

double GaussianSample::value(int copy, int coord) const {
    if (copy < 0 || copy >= rows_ || coord < 0 || coord >= n_) {
        throw DimensionError("GaussianSample::value: row/coordinate out of range");
    }
    return data_[static_cast<size_t>(copy) * static_cast<size_t>(n_) + static_cast<size_t>(coord)];
}

std::span<const double> GaussianSample::row(int copy) const {
    if (copy < 0 || copy >= rows_) throw DimensionError("GaussianSample::row: row out of range");
    return {data_.data() + static_cast<size_t>(copy) * static_cast<size_t>(n_),
            static_cast<size_t>(n_)};
}

std::span<const double> GaussianSample::tilde_row() const {
    if (!has_tilde_) throw DimensionError("GaussianSample::tilde_row: sample has no tilde row");
    return row(rows_ - 1);
}

std::vector<GaussianSample> sample(const FiniteGaussianModel& model, int k_max,
                                   std::int64_t count, RngSpec rng, bool with_tilde) {
    model.validate();
    if (k_max < 0) throw ConfigError("sample: k_max must be >= 0");
    if (count < 1) throw ConfigError("sample: count must be >= 1");

    const int rows = k_max + 1 + (with_tilde ? 1 : 0);
    const std::uint64_t stride = static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(model.n);
    const std::uint64_t total = static_cast<std::uint64_t>(count) * stride;

    std::vector<GaussianSample> out;
    out.reserve(static_cast<size_t>(count));
    for (std::int64_t s = 0; s < count; ++s) {
        GaussianSample gs(model.n, k_max, with_tilde);
        auto data = gs.mutable_data();
        const std::uint64_t base = static_cast<std::uint64_t>(s) * stride;
        for (std::uint64_t g = 0; g < stride; ++g) {
            data[g] = normal_at(rng.seed, window_counter(rng.stream, total, base + g));
        }
        out.push_back(std::move(gs));
    }
    return out;
}

double wiener(std::span<const double> h, const GaussianSample& s, int copy) {
    if (static_cast<int>(h.size()) != s.n()) {
        throw DimensionError("wiener: h has length " + std::to_string(h.size()) +
                             ", model dimension is " + std::to_string(s.n()));
    }
    auto g = s.row(copy);
    double acc = 0.0;
    for (size_t j = 0; j < h.size(); ++j) acc += h[j] * g[j];
    return acc;
}

}  // namespace chaoscalc
