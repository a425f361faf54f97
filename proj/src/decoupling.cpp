#include "chaoscalc/decoupling.hpp"

#include <cmath>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/rng.hpp"

namespace chaoscalc {

std::string case_name(DecouplingCase tag) {
    return tag == DecouplingCase::symmetric ? "symmetric" : "tetrahedral";
}

DecouplingCase case_from_name(const std::string& name) {
    if (name == "symmetric") return DecouplingCase::symmetric;
    if (name == "tetrahedral") return DecouplingCase::tetrahedral;
    throw ConfigError("unknown decoupling case \"" + name + "\"");
}

void DecouplingInstance::validate() const {
    if (m < 1) throw ConfigError("DecouplingInstance: m must be >= 1");
    if (dim_n < 1) throw ConfigError("DecouplingInstance: dim_n must be >= 1");
    if (coefficients.order() != m || coefficients.dim_n() != dim_n ||
        coefficients.d() != space.d) {
        throw DimensionError("DecouplingInstance: coefficient table shape mismatch");
    }
    if (tag == DecouplingCase::symmetric) {
        if (!is_symmetric(coefficients)) {
            throw SymmetryError("DecouplingInstance: symmetric case requires symmetric coefficients");
        }
    } else if (!is_tetrahedral(coefficients)) {
        throw TetrahedralityError(
            "DecouplingInstance: tetrahedral case requires all-distinct index entries");
    }
}

namespace {

bool strictly_increasing(const MultiIndex& key) {
    for (size_t i = 1; i < key.size(); ++i) {
        if (key[i] <= key[i - 1]) return false;
    }
    return true;
}

}  // namespace

DecouplingInstance random_instance(DecouplingCase tag, int m, int n, const BanachSpaceModel& space,
                                   std::uint64_t seed) {
    if (m < 1 || n < 1) throw ConfigError("random_instance: need m >= 1 and n >= 1");
    space.validate();
    ElementaryOperator raw(m, n, space);

    // Enumerate all ordered keys in lexicographic order; the draw for key
    // rank r, component e sits at counter r*d + e. The tetrahedral mask
    // keeps strictly increasing keys only (one ordered representative per
    // support set): with permuted duplicates present, the coupled and
    // decoupled second moments differ by orbit cross terms and the exact
    // scalar identity would not hold.
    MultiIndex key(static_cast<size_t>(m), 1);
    std::vector<double> coeff(static_cast<size_t>(space.d));
    std::uint64_t rank = 0;
    bool done = false;
    while (!done) {
        for (size_t e = 0; e < coeff.size(); ++e) {
            coeff[e] = normal_at(seed, rank * static_cast<std::uint64_t>(space.d) +
                                           static_cast<std::uint64_t>(e));
        }
        if (tag != DecouplingCase::tetrahedral || strictly_increasing(key)) {
            raw.add_term(key, coeff);
        }
        ++rank;
        int pos = m - 1;
        while (pos >= 0 && ++key[static_cast<size_t>(pos)] > n) {
            key[static_cast<size_t>(pos)] = 1;
            --pos;
        }
        done = pos < 0;
    }

    DecouplingInstance inst;
    inst.tag = tag;
    inst.m = m;
    inst.dim_n = n;
    inst.space = space;
    inst.coefficients = tag == DecouplingCase::symmetric ? symmetrize(raw) : std::move(raw);
    inst.validate();
    return inst;
}

ChaosExpansion build_coupled(const DecouplingInstance& inst) {
    inst.validate();
    if (inst.tag == DecouplingCase::symmetric) {
        return wiener_ito_map(inst.coefficients, /*require_symmetric=*/true);
    }
    // Tetrahedral keys: the product of distinct coordinate Gaussians equals
    // the basis polynomial of the key's count vector.
    ChaosExpansion out(inst.dim_n, inst.space);
    for (const auto& [index, coeff] : inst.coefficients.table()) {
        out.add_term(CountVector::from_index(index), coeff);
    }
    return out;
}

EstimateResult decoupled_lp(const DecouplingInstance& inst, double p, const McConfig& mc) {
    return gamma_norm_mc(inst.coefficients, p, mc);
}

std::vector<EstimateResult> decoupled_lp(const DecouplingInstance& inst, std::span<const double> ps,
                                         const McConfig& mc) {
    return gamma_norm_mc(inst.coefficients, ps, mc);
}

EstimateResult coupled_lp(const DecouplingInstance& inst, double p, const McConfig& mc) {
    return lp_norm_mc(build_coupled(inst), p, mc);
}

std::vector<EstimateResult> coupled_lp(const DecouplingInstance& inst, std::span<const double> ps,
                                       const McConfig& mc) {
    return lp_norm_mc(build_coupled(inst), ps, mc);
}

DecouplingRatio decoupling_ratio(const DecouplingInstance& inst, double p, const McConfig& mc) {
    DecouplingRatio out;
    out.coupled = coupled_lp(inst, p, mc);
    out.decoupled = decoupled_lp(inst, p, mc);
    out.ratio = out.decoupled.estimate == 0.0 ? 0.0 : out.coupled.estimate / out.decoupled.estimate;
    return out;
}

double decoupled_second_moment_exact(const ElementaryOperator& coefficients) {
    double acc = 0.0;
    for (const auto& [index, coeff] : coefficients.table()) {
        for (double x : coeff) acc += x * x;
    }
    return acc;
}

std::vector<double> survival_curve(const DecouplingInstance& inst,
                                   std::span<const double> thresholds, const McConfig& mc,
                                   bool decoupled) {
    mc.validate();
    inst.validate();
    std::vector<std::int64_t> counts(thresholds.size(), 0);

    if (decoupled) {
        const auto& table = inst.coefficients.table();
        const int n = inst.dim_n;
        const int m = inst.m;
        std::vector<double> rows(static_cast<size_t>(m) * static_cast<size_t>(n));
        std::vector<double> acc(static_cast<size_t>(inst.space.d));
        for (std::int64_t s = 0; s < mc.samples; ++s) {
            const std::uint64_t base = static_cast<std::uint64_t>(s) * rows.size();
            for (size_t g = 0; g < rows.size(); ++g) {
                rows[g] = normal_at(mc.seed, base + static_cast<std::uint64_t>(g));
            }
            std::fill(acc.begin(), acc.end(), 0.0);
            for (const auto& [index, coeff] : table) {
                double prod = 1.0;
                for (int r = 0; r < m; ++r) {
                    prod *= rows[static_cast<size_t>(r) * static_cast<size_t>(n) +
                                 static_cast<size_t>(index[static_cast<size_t>(r)] - 1)];
                }
                for (size_t e = 0; e < acc.size(); ++e) acc[e] += prod * coeff[e];
            }
            const double v = inst.space.norm(acc);
            for (size_t i = 0; i < thresholds.size(); ++i) counts[i] += v > thresholds[i] ? 1 : 0;
        }
    } else {
        const ChaosExpansion coupled = build_coupled(inst);
        std::vector<double> g(static_cast<size_t>(inst.dim_n));
        for (std::int64_t s = 0; s < mc.samples; ++s) {
            const std::uint64_t base = static_cast<std::uint64_t>(s) * g.size();
            for (size_t j = 0; j < g.size(); ++j) {
                g[j] = normal_at(mc.seed, base + static_cast<std::uint64_t>(j));
            }
            const double v = inst.space.norm(evaluate(coupled, g));
            for (size_t i = 0; i < thresholds.size(); ++i) counts[i] += v > thresholds[i] ? 1 : 0;
        }
    }

    std::vector<double> out(thresholds.size());
    for (size_t i = 0; i < thresholds.size(); ++i) {
        out[i] = static_cast<double>(counts[i]) / static_cast<double>(mc.samples);
    }
    return out;
}

}  // namespace chaoscalc
