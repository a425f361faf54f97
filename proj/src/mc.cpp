#include "chaoscalc/mc.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <thread>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

void McConfig::validate() const {
    if (samples < 2) throw ConfigError("McConfig: samples must be >= 2");
    if (batches < 2) throw ConfigError("McConfig: batches must be >= 2");
    if (confidence <= 0.0) throw ConfigError("McConfig: confidence multiplier must be > 0");
}

namespace {
std::atomic<int> g_mc_threads{1};
}

void set_mc_threads(int threads) { g_mc_threads.store(threads < 1 ? 1 : threads); }
int mc_threads() { return g_mc_threads.load(); }

std::vector<ChunkRange> chunk_plan(std::int64_t samples, int batches) {
    if (samples < 1 || batches < 1) throw ConfigError("chunk_plan: need samples >= 1, batches >= 1");
    const int chunks = static_cast<int>(std::min<std::int64_t>(batches, samples));
    std::vector<ChunkRange> plan(static_cast<size_t>(chunks));
    const std::int64_t base = samples / chunks;
    const std::int64_t rem = samples % chunks;
    std::int64_t pos = 0;
    for (int k = 0; k < chunks; ++k) {
        const std::int64_t len = base + (k < rem ? 1 : 0);
        plan[static_cast<size_t>(k)] = {pos, pos + len};
        pos += len;
    }
    return plan;
}

void run_chunks(int chunk_count, const std::function<void(int)>& work) {
    const int workers = std::min(mc_threads(), chunk_count);
    if (workers <= 1) {
        for (int k = 0; k < chunk_count; ++k) work(k);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&] {
            for (int k = next.fetch_add(1); k < chunk_count; k = next.fetch_add(1)) work(k);
        }));
    }
    for (auto& f : futures) f.get();
}

std::vector<EstimateResult> estimate_lp_moments(
    std::span<const double> ps, const McConfig& mc,
    const std::function<double(std::int64_t)>& norm_at_sample) {
    mc.validate();
    const size_t np = ps.size();
    for (double p : ps) {
        if (p < 1.0) throw ConfigError("estimate_lp_moments: moment order must be >= 1");
    }

    const auto plan = chunk_plan(mc.samples, mc.batches);
    const int chunks = static_cast<int>(plan.size());

    // sums[k] holds (sum v^p, sum v^{2p}) pairs for chunk k.
    std::vector<std::vector<double>> sums(static_cast<size_t>(chunks),
                                          std::vector<double>(2 * np, 0.0));
    run_chunks(chunks, [&](int k) {
        auto& acc = sums[static_cast<size_t>(k)];
        for (std::int64_t s = plan[static_cast<size_t>(k)].begin;
             s < plan[static_cast<size_t>(k)].end; ++s) {
            const double v = norm_at_sample(s);
            for (size_t i = 0; i < np; ++i) {
                const double vp = pow_p(v, ps[i]);
                acc[2 * i] += vp;
                acc[2 * i + 1] += vp * vp;
            }
        }
    });

    // Merge in chunk order: deterministic for any worker count.
    std::vector<double> total(2 * np, 0.0);
    for (int k = 0; k < chunks; ++k) {
        for (size_t i = 0; i < 2 * np; ++i) total[i] += sums[static_cast<size_t>(k)][i];
    }

    const double n = static_cast<double>(mc.samples);
    std::vector<EstimateResult> out(np);
    for (size_t i = 0; i < np; ++i) {
        const double mean = total[2 * i] / n;
        double var_mean = 0.0;
        if (mc.samples > 1) {
            var_mean = (total[2 * i + 1] - total[2 * i] * total[2 * i] / n) / (n - 1.0) / n;
            if (var_mean < 0.0) var_mean = 0.0;  // rounding guard
        }
        const double se_mean = std::sqrt(var_mean);
        EstimateResult r;
        r.samples = mc.samples;
        r.seed = mc.seed;
        if (mean <= 0.0) {
            r.estimate = 0.0;
            r.std_error = 0.0;
        } else {
            const double inv_p = 1.0 / ps[i];
            r.estimate = std::pow(mean, inv_p);
            r.std_error = inv_p * std::pow(mean, inv_p - 1.0) * se_mean;
        }
        out[i] = r;
    }
    return out;
}

EstimateResult estimate_lp_moment(double p, const McConfig& mc,
                                  const std::function<double(std::int64_t)>& norm_at_sample) {
    const double ps[1] = {p};
    return estimate_lp_moments(ps, mc, norm_at_sample)[0];
}

double ratio_std_error(const EstimateResult& a, const EstimateResult& b) {
    if (b.estimate == 0.0) return 0.0;
    const double r = a.estimate / b.estimate;
    const double ra = a.estimate == 0.0 ? 0.0 : a.std_error / a.estimate;
    const double rb = b.std_error / b.estimate;
    return std::abs(r) * std::sqrt(ra * ra + rb * rb);
}

}  // namespace chaoscalc
