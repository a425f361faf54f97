#include "chaoscalc/elementary_operator.hpp"

#include <algorithm>
#include <cmath>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/rng.hpp"

namespace chaoscalc {

namespace {

bool all_zero(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

ElementaryOperator::ElementaryOperator(int order, int dim_n, BanachSpaceModel space)
    : m_(order), n_(dim_n), space_(std::move(space)) {
    if (m_ < 1) throw ConfigError("ElementaryOperator: order must be >= 1");
    if (n_ < 1) throw ConfigError("ElementaryOperator: dim_n must be >= 1");
    space_.validate();
}

void ElementaryOperator::add_term(const MultiIndex& index, std::span<const double> coeff) {
    add_scaled_term(index, 1.0, coeff);
}

void ElementaryOperator::add_scaled_term(const MultiIndex& index, double scale,
                                         std::span<const double> coeff) {
    if (static_cast<int>(index.size()) != m_) {
        throw DimensionError("ElementaryOperator::add_term: key length != order");
    }
    for (int entry : index) {
        if (entry < 1 || entry > n_) {
            throw DimensionError("ElementaryOperator::add_term: index entry out of 1..n");
        }
    }
    if (static_cast<int>(coeff.size()) != d()) {
        throw DimensionError("ElementaryOperator::add_term: coefficient length != d");
    }
    auto [it, inserted] = table_.try_emplace(index, std::vector<double>(coeff.size(), 0.0));
    for (size_t e = 0; e < coeff.size(); ++e) it->second[e] += scale * coeff[e];
    if (all_zero(it->second)) table_.erase(it);
}

void ElementaryOperator::set_term(const MultiIndex& index, std::vector<double> coeff) {
    if (static_cast<int>(index.size()) != m_) {
        throw DimensionError("ElementaryOperator::set_term: key length != order");
    }
    for (int entry : index) {
        if (entry < 1 || entry > n_) {
            throw DimensionError("ElementaryOperator::set_term: index entry out of 1..n");
        }
    }
    if (static_cast<int>(coeff.size()) != d()) {
        throw DimensionError("ElementaryOperator::set_term: coefficient length != d");
    }
    if (all_zero(coeff)) {
        table_.erase(index);
    } else {
        table_[index] = std::move(coeff);
    }
}

std::vector<double> ElementaryOperator::coeff(const MultiIndex& index) const {
    auto it = table_.find(index);
    if (it != table_.end()) return it->second;
    return std::vector<double>(static_cast<size_t>(d()), 0.0);
}

ElementaryOperator symmetrize(const ElementaryOperator& t) {
    ElementaryOperator out(t.order(), t.dim_n(), t.space());

    // Group stored keys by orbit.
    std::map<CountVector, std::vector<const std::vector<double>*>> orbits;
    for (const auto& [index, coeff] : t.table()) {
        orbits[CountVector::from_index(index)].push_back(&coeff);
    }

    for (const auto& [counts, coeffs] : orbits) {
        const auto orbit = ordered_orbit(counts);
        bool all_equal = coeffs.size() == orbit.size();
        for (size_t k = 1; all_equal && k < coeffs.size(); ++k) {
            all_equal = (*coeffs[k] == *coeffs[0]);
        }
        if (all_equal) {
            // Already symmetric on this orbit: pass through bitwise.
            for (const auto& index : orbit) out.set_term(index, *coeffs[0]);
            continue;
        }
        // Average of x_{pi(i)} over all permutations pi: each stored key in
        // the orbit carries weight (stabilizer size)/m! = c!/m!.
        const double weight = static_cast<double>(counts.factorial()) /
                              static_cast<double>(factorial_i64(t.order()));
        std::vector<double> avg(static_cast<size_t>(t.d()), 0.0);
        for (const auto* coeff : coeffs) {
            for (size_t e = 0; e < avg.size(); ++e) avg[e] += (*coeff)[e];
        }
        for (double& v : avg) v *= weight;
        for (const auto& index : orbit) out.set_term(index, avg);
    }
    return out;
}

bool is_symmetric(const ElementaryOperator& t) {
    std::map<CountVector, std::vector<const std::vector<double>*>> orbits;
    for (const auto& [index, coeff] : t.table()) {
        orbits[CountVector::from_index(index)].push_back(&coeff);
    }
    for (const auto& [counts, coeffs] : orbits) {
        const size_t orbit_size = static_cast<size_t>(factorial_i64(counts.order()) /
                                                      counts.factorial());
        if (coeffs.size() != orbit_size) return false;  // some orbit entries are zero
        for (size_t k = 1; k < coeffs.size(); ++k) {
            if (*coeffs[k] != *coeffs[0]) return false;
        }
    }
    return true;
}

bool is_tetrahedral(const ElementaryOperator& t) {
    for (const auto& [index, coeff] : t.table()) {
        if (!all_distinct(index)) return false;
    }
    return true;
}

double gamma_norm_exact_hilbert(const ElementaryOperator& t) {
    if (!t.space().is_l2()) {
        throw UnsupportedNormError(
            "gamma_norm_exact_hilbert: requires the l2 norm tag (use gamma_norm_mc otherwise)");
    }
    double acc = 0.0;
    for (const auto& [index, coeff] : t.table()) {
        for (double x : coeff) acc += x * x;
    }
    return std::sqrt(acc);
}

std::vector<EstimateResult> gamma_norm_mc(const ElementaryOperator& t, std::span<const double> ps,
                                          const McConfig& mc) {
    mc.validate();
    if (t.empty()) {
        std::vector<EstimateResult> out(ps.size());
        for (auto& r : out) r = {0.0, 0.0, mc.samples, mc.seed};
        return out;
    }

    const int m = t.order();
    const int n = t.dim_n();
    const int d = t.d();
    if (m * n > 256 || d > 64) throw ConfigError("gamma_norm_mc: dimensions exceed kernel buffers");

    struct Term {
        int coords[8];
        const double* coeff;
    };
    if (m > 8) throw ConfigError("gamma_norm_mc: order exceeds kernel limit");
    std::vector<Term> compiled;
    compiled.reserve(t.table().size());
    for (const auto& [index, coeff] : t.table()) {
        Term term{};
        for (int r = 0; r < m; ++r) term.coords[r] = r * n + (index[static_cast<size_t>(r)] - 1);
        term.coeff = coeff.data();
        compiled.push_back(term);
    }

    const BanachSpaceModel& space = t.space();
    const std::uint64_t seed = mc.seed;
    const std::uint64_t stride = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n);

    auto kernel = [&, m, d](std::int64_t s) -> double {
        double rows[256];
        double acc[64];
        const std::uint64_t base = static_cast<std::uint64_t>(s) * stride;
        for (std::uint64_t g = 0; g < stride; ++g) rows[g] = normal_at(seed, base + g);
        for (int e = 0; e < d; ++e) acc[e] = 0.0;
        for (const auto& term : compiled) {
            double prod = rows[term.coords[0]];
            for (int r = 1; r < m; ++r) prod *= rows[term.coords[r]];
            for (int e = 0; e < d; ++e) acc[e] += prod * term.coeff[e];
        }
        return space.norm(std::span<const double>(acc, static_cast<size_t>(d)));
    };

    return estimate_lp_moments(ps, mc, kernel);
}

EstimateResult gamma_norm_mc(const ElementaryOperator& t, double p, const McConfig& mc) {
    const double ps[1] = {p};
    return gamma_norm_mc(t, std::span<const double>(ps, 1), mc)[0];
}

double trace_pairing(const ElementaryOperator& t, const ElementaryOperator& s) {
    if (t.order() != 1 || s.order() != 1) {
        throw DimensionError("trace_pairing: defined for order-1 operators only");
    }
    if (t.dim_n() != s.dim_n() || t.d() != s.d()) {
        throw DimensionError("trace_pairing: operand shapes differ");
    }
    double acc = 0.0;
    for (const auto& [index, coeff] : t.table()) {
        auto it = s.table().find(index);
        if (it == s.table().end()) continue;
        for (size_t e = 0; e < coeff.size(); ++e) acc += coeff[e] * it->second[e];
    }
    return acc;
}

ChaosExpansion wiener_ito_map(const ElementaryOperator& t, bool require_symmetric) {
    if (require_symmetric && !is_symmetric(t)) {
        throw SymmetryError("wiener_ito_map: operator is not symmetric");
    }
    ChaosExpansion out(t.dim_n(), t.space());
    const double m_fact = static_cast<double>(factorial_i64(t.order()));
    for (const auto& [index, coeff] : t.table()) {
        const CountVector counts = CountVector::from_index(index);
        const double scale = std::sqrt(static_cast<double>(counts.factorial()) / m_fact);
        out.add_scaled_term(counts, scale, coeff);
    }
    return out;
}

}  // namespace chaoscalc
