#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace chaoscalc {

/// Monte Carlo run configuration. Results depend on (samples, batches, seed)
/// only; the worker count never changes the output.
struct McConfig {
    std::int64_t samples = 100000;
    int batches = 32;
    std::uint64_t seed = 0;
    double confidence = 3.0;

    void validate() const;
};

struct EstimateResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;

    /// Half-width of the confidence interval at `mult` standard errors.
    [[nodiscard]] double margin(double mult) const { return mult * std_error; }
};

/// Worker-count knob for chunked Monte Carlo loops (wall time only).
void set_mc_threads(int threads);
int mc_threads();

struct ChunkRange {
    std::int64_t begin = 0;
    std::int64_t end = 0;
};

/// Deterministic partition of [0, samples) into `batches` contiguous chunks.
std::vector<ChunkRange> chunk_plan(std::int64_t samples, int batches);

/// Runs work(chunk_index) for every chunk, possibly on several threads.
void run_chunks(int chunk_count, const std::function<void(int)>& work);

/// Estimates (E v^p)^{1/p} for each exponent in `ps`, where v_s >= 0 is
/// produced by norm_at_sample(s) for s in [0, mc.samples). Standard errors
/// come from per-sample moment sums via the delta method; partial sums are
/// merged in chunk order, so the result is identical for any worker count.
std::vector<EstimateResult> estimate_lp_moments(
    std::span<const double> ps, const McConfig& mc,
    const std::function<double(std::int64_t)>& norm_at_sample);

EstimateResult estimate_lp_moment(double p, const McConfig& mc,
                                  const std::function<double(std::int64_t)>& norm_at_sample);

/// v^p specialized for the common exponents.
inline double pow_p(double v, double p) {
    if (p == 1.0) return v;
    if (p == 2.0) return v * v;
    if (p == 4.0) {
        const double w = v * v;
        return w * w;
    }
    return std::pow(v, p);
}

/// Combined standard error of a ratio a/b with independent estimates.
double ratio_std_error(const EstimateResult& a, const EstimateResult& b);

}  // namespace chaoscalc
