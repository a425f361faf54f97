#include "chaoscalc/malliavin.hpp"

#include <algorithm>
#include <cmath>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/hermite.hpp"
#include "chaoscalc/rng.hpp"

namespace chaoscalc {

namespace {

bool all_zero(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

size_t pow_size(int base, int exp) {
    size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<size_t>(base);
    return r;
}

}  // namespace

OperatorValuedExpansion::OperatorValuedExpansion(int slots, int dim_n, BanachSpaceModel space)
    : k_(slots), n_(dim_n), space_(std::move(space)) {
    if (k_ < 1) throw ConfigError("OperatorValuedExpansion: slots must be >= 1");
    if (n_ < 1) throw ConfigError("OperatorValuedExpansion: dim_n must be >= 1");
    space_.validate();
}

size_t OperatorValuedExpansion::tensor_len() const {
    return pow_size(n_, k_) * static_cast<size_t>(space_.d);
}

int OperatorValuedExpansion::max_order() const {
    int m = 0;
    for (const auto& [c, tensor] : terms_) m = std::max(m, c.order());
    return m;
}

void OperatorValuedExpansion::add_term(const CountVector& c, std::span<const double> tensor) {
    add_scaled_term(c, 1.0, tensor);
}

void OperatorValuedExpansion::add_scaled_term(const CountVector& c, double scale,
                                              std::span<const double> tensor) {
    if (tensor.size() != tensor_len()) {
        throw DimensionError("OperatorValuedExpansion::add_term: tensor length mismatch");
    }
    if (c.sup() > n_) {
        throw DimensionError("OperatorValuedExpansion::add_term: basis index exceeds dim_n");
    }
    auto [it, inserted] = terms_.try_emplace(c, std::vector<double>(tensor.size(), 0.0));
    for (size_t i = 0; i < tensor.size(); ++i) it->second[i] += scale * tensor[i];
    if (all_zero(it->second)) terms_.erase(it);
}

std::vector<double> OperatorValuedExpansion::coeff(const CountVector& c) const {
    auto it = terms_.find(c);
    if (it != terms_.end()) return it->second;
    return std::vector<double>(tensor_len(), 0.0);
}

OperatorValuedExpansion& OperatorValuedExpansion::operator+=(const OperatorValuedExpansion& rhs) {
    if (k_ != rhs.k_ || n_ != rhs.n_ || d() != rhs.d()) {
        throw DimensionError("OperatorValuedExpansion::operator+=: shape mismatch");
    }
    for (const auto& [c, tensor] : rhs.terms_) add_term(c, tensor);
    return *this;
}

OperatorValuedExpansion& OperatorValuedExpansion::operator-=(const OperatorValuedExpansion& rhs) {
    if (k_ != rhs.k_ || n_ != rhs.n_ || d() != rhs.d()) {
        throw DimensionError("OperatorValuedExpansion::operator-=: shape mismatch");
    }
    for (const auto& [c, tensor] : rhs.terms_) add_scaled_term(c, -1.0, tensor);
    return *this;
}

OperatorValuedExpansion OperatorValuedExpansion::scaled(double a) const {
    OperatorValuedExpansion out(k_, n_, space_);
    if (a == 0.0) return out;
    for (const auto& [c, tensor] : terms_) out.add_scaled_term(c, a, tensor);
    return out;
}

double max_coeff_deviation(const OperatorValuedExpansion& a, const OperatorValuedExpansion& b) {
    if (a.slots() != b.slots() || a.dim_n() != b.dim_n() || a.d() != b.d()) {
        throw DimensionError("max_coeff_deviation: shape mismatch");
    }
    double dev = 0.0;
    for (const auto& [c, tensor] : a.terms()) {
        const auto other = b.coeff(c);
        for (size_t i = 0; i < tensor.size(); ++i) dev = std::max(dev, std::abs(tensor[i] - other[i]));
    }
    for (const auto& [c, tensor] : b.terms()) {
        if (a.terms().count(c)) continue;
        for (double x : tensor) dev = std::max(dev, std::abs(x));
    }
    return dev;
}

OperatorValuedExpansion project_order(const OperatorValuedExpansion& u, int m) {
    if (m < 0) throw Error("project_order: negative order");
    OperatorValuedExpansion out(u.slots(), u.dim_n(), u.space());
    for (const auto& [c, tensor] : u.terms()) {
        if (c.order() == m) out.add_term(c, tensor);
    }
    return out;
}

double l2_norm_exact(const OperatorValuedExpansion& u) {
    if (!u.space().is_l2()) {
        throw UnsupportedNormError("l2_norm_exact: requires the l2 norm tag");
    }
    double acc = 0.0;
    for (const auto& [c, tensor] : u.terms()) {
        for (double x : tensor) acc += x * x;
    }
    return std::sqrt(acc);
}

OperatorValuedExpansion derivative(const ChaosExpansion& f) {
    OperatorValuedExpansion out(1, f.dim_n(), f.space());
    const size_t d = static_cast<size_t>(f.d());
    std::vector<double> tensor(static_cast<size_t>(f.dim_n()) * d);
    for (const auto& [c, coeff] : f.terms()) {
        for (auto [index, mult] : c.items()) {
            std::fill(tensor.begin(), tensor.end(), 0.0);
            const double scale = std::sqrt(static_cast<double>(mult));
            for (size_t e = 0; e < d; ++e) {
                tensor[static_cast<size_t>(index - 1) * d + e] = scale * coeff[e];
            }
            out.add_term(c.decremented(index), tensor);
        }
    }
    return out;
}

OperatorValuedExpansion derivative(const OperatorValuedExpansion& u) {
    OperatorValuedExpansion out(u.slots() + 1, u.dim_n(), u.space());
    const size_t old_len = u.tensor_len();
    std::vector<double> tensor(static_cast<size_t>(u.dim_n()) * old_len);
    for (const auto& [c, value] : u.terms()) {
        for (auto [index, mult] : c.items()) {
            std::fill(tensor.begin(), tensor.end(), 0.0);
            const double scale = std::sqrt(static_cast<double>(mult));
            double* slot = tensor.data() + static_cast<size_t>(index - 1) * old_len;
            for (size_t i = 0; i < old_len; ++i) slot[i] = scale * value[i];
            out.add_term(c.decremented(index), tensor);
        }
    }
    return out;
}

OperatorValuedExpansion derivative_n(const ChaosExpansion& f, int k) {
    if (k < 1) throw ConfigError("derivative_n: order must be >= 1");
    OperatorValuedExpansion u = derivative(f);
    for (int i = 1; i < k; ++i) u = derivative(u);
    return u;
}

OperatorValuedExpansion derivative_monomial_route(const ChaosExpansion& f) {
    OperatorValuedExpansion out(1, f.dim_n(), f.space());
    const MonomialFunctional mono = from_chaos(f);
    const size_t d = static_cast<size_t>(f.d());
    std::vector<double> tensor(static_cast<size_t>(f.dim_n()) * d);
    for (int j = 1; j <= f.dim_n(); ++j) {
        const ChaosExpansion dj = to_chaos(mono.partial(j));
        for (const auto& [c, coeff] : dj.terms()) {
            std::fill(tensor.begin(), tensor.end(), 0.0);
            for (size_t e = 0; e < d; ++e) tensor[static_cast<size_t>(j - 1) * d + e] = coeff[e];
            out.add_term(c, tensor);
        }
    }
    return out;
}

ChaosExpansion contract(const OperatorValuedExpansion& u, std::span<const double> h) {
    if (u.slots() != 1) throw DimensionError("contract: defined for a single H slot");
    if (static_cast<int>(h.size()) != u.dim_n()) {
        throw DimensionError("contract: direction length != dim_n");
    }
    ChaosExpansion out(u.dim_n(), u.space());
    const size_t d = static_cast<size_t>(u.d());
    std::vector<double> acc(d);
    for (const auto& [c, tensor] : u.terms()) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int j = 0; j < u.dim_n(); ++j) {
            const double hj = h[static_cast<size_t>(j)];
            if (hj == 0.0) continue;
            for (size_t e = 0; e < d; ++e) acc[e] += hj * tensor[static_cast<size_t>(j) * d + e];
        }
        out.add_term(c, acc);
    }
    return out;
}

ChaosExpansion divergence(const OperatorValuedExpansion& u) {
    if (u.slots() != 1) throw DimensionError("divergence: defined for a single H slot");
    ChaosExpansion out(u.dim_n(), u.space());
    const size_t d = static_cast<size_t>(u.d());
    const BanachSpaceModel scalar{1, NormTag::l2};
    std::vector<double> direction(static_cast<size_t>(u.dim_n()), 0.0);
    for (const auto& [c, tensor] : u.terms()) {
        for (int j = 1; j <= u.dim_n(); ++j) {
            const double* slice = tensor.data() + static_cast<size_t>(j - 1) * d;
            if (all_zero(std::span<const double>(slice, d))) continue;

            // delta(Psi_c * u_j x) = (Psi_c gamma_j - (D Psi_c)(u_j)) x
            ChaosExpansion psi(u.dim_n(), scalar);
            const double one[1] = {1.0};
            psi.add_term(c, one);
            ChaosExpansion scalar_part = multiply_by_gamma(psi, j);
            direction[static_cast<size_t>(j - 1)] = 1.0;
            scalar_part -= contract(derivative(psi), direction);
            direction[static_cast<size_t>(j - 1)] = 0.0;

            for (const auto& [c2, w] : scalar_part.terms()) {
                out.add_scaled_term(c2, w[0], std::span<const double>(slice, d));
            }
        }
    }
    return out;
}

std::pair<double, double> ibp_check(const ChaosExpansion& f, std::span<const double> h) {
    if (f.d() != 1) throw DimensionError("ibp_check: requires scalar F");
    if (static_cast<int>(h.size()) != f.dim_n()) {
        throw DimensionError("ibp_check: direction length != dim_n");
    }
    const double lhs = contract(derivative(f), h).mean()[0];
    double rhs = 0.0;
    for (int j = 1; j <= f.dim_n(); ++j) {
        const double hj = h[static_cast<size_t>(j - 1)];
        if (hj == 0.0) continue;
        rhs += hj * multiply_by_gamma(f, j).mean()[0];
    }
    return {lhs, rhs};
}

std::vector<double> materialize(const OperatorValuedExpansion& u, std::span<const double> g) {
    std::vector<double> tensor(u.tensor_len(), 0.0);
    for (const auto& [c, value] : u.terms()) {
        const double psi = psi_eval(c, g);
        for (size_t i = 0; i < value.size(); ++i) tensor[i] += psi * value[i];
    }
    return tensor;
}

ElementaryOperator as_elementary_operator(int slots, int dim_n, const BanachSpaceModel& space,
                                          std::span<const double> tensor) {
    ElementaryOperator out(slots, dim_n, space);
    const size_t d = static_cast<size_t>(space.d);
    const size_t combos = pow_size(dim_n, slots);
    if (tensor.size() != combos * d) {
        throw DimensionError("as_elementary_operator: tensor length mismatch");
    }
    MultiIndex key(static_cast<size_t>(slots), 1);
    for (size_t flat = 0; flat < combos; ++flat) {
        size_t rest = flat;
        for (int r = slots - 1; r >= 0; --r) {
            key[static_cast<size_t>(r)] = static_cast<int>(rest % static_cast<size_t>(dim_n)) + 1;
            rest /= static_cast<size_t>(dim_n);
        }
        out.add_term(key, tensor.subspan(flat * d, d));
    }
    return out;
}

namespace {

// Pathwise gamma^k norm of a fixed tensor, estimated with `inner` fresh
// draws; one independent copy row per slot. Exact (Hilbert-Schmidt) when the
// norm tag is l2.
double pathwise_gamma_norm(std::span<const double> tensor, int slots, int n,
                           const BanachSpaceModel& space,
                           const std::vector<std::vector<int>>& combo_coords,
                           std::uint64_t inner_seed, std::uint64_t counter_base, int inner) {
    if (space.is_l2()) {
        double acc = 0.0;
        for (double x : tensor) acc += x * x;
        return std::sqrt(acc);
    }
    const size_t d = static_cast<size_t>(space.d);
    const std::uint64_t draws = static_cast<std::uint64_t>(slots) * static_cast<std::uint64_t>(n);
    double rows[256];
    double acc[64];
    double sum_sq = 0.0;
    for (int t = 0; t < inner; ++t) {
        const std::uint64_t base = counter_base + static_cast<std::uint64_t>(t) * draws;
        for (std::uint64_t g = 0; g < draws; ++g) rows[g] = normal_at(inner_seed, base + g);
        for (size_t e = 0; e < d; ++e) acc[e] = 0.0;
        for (size_t combo = 0; combo < combo_coords.size(); ++combo) {
            const double* slice = tensor.data() + combo * d;
            bool zero = true;
            for (size_t e = 0; e < d; ++e) zero = zero && slice[e] == 0.0;
            if (zero) continue;
            double prod = 1.0;
            for (int r = 0; r < slots; ++r) prod *= rows[combo_coords[combo][static_cast<size_t>(r)]];
            for (size_t e = 0; e < d; ++e) acc[e] += prod * slice[e];
        }
        const double v = space.norm(std::span<const double>(acc, d));
        sum_sq += v * v;
    }
    return std::sqrt(sum_sq / static_cast<double>(inner));
}

}  // namespace

std::vector<EstimateResult> lp_gamma_norm_mc(const OperatorValuedExpansion& u,
                                             std::span<const double> ps, const McConfig& mc,
                                             int inner_samples) {
    mc.validate();
    if (inner_samples < 1) throw ConfigError("lp_gamma_norm_mc: inner_samples must be >= 1");
    if (u.empty()) {
        std::vector<EstimateResult> out(ps.size());
        for (auto& r : out) r = {0.0, 0.0, mc.samples, mc.seed};
        return out;
    }

    const int n = u.dim_n();
    const int k = u.slots();
    const size_t d = static_cast<size_t>(u.d());
    if (static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n) > 256 || d > 64) {
        throw ConfigError("lp_gamma_norm_mc: dimensions exceed kernel buffers");
    }

    // Slot coordinates (offset into the stacked copy rows) per tensor combo.
    const size_t combos = u.tensor_len() / d;
    std::vector<std::vector<int>> combo_coords(combos, std::vector<int>(static_cast<size_t>(k)));
    for (size_t flat = 0; flat < combos; ++flat) {
        size_t rest = flat;
        for (int r = k - 1; r >= 0; --r) {
            combo_coords[flat][static_cast<size_t>(r)] =
                r * n + static_cast<int>(rest % static_cast<size_t>(n));
            rest /= static_cast<size_t>(n);
        }
    }

    // A deterministic functional is a plain elementary operator.
    if (u.max_order() == 0) {
        const auto tensor = u.coeff(CountVector{});
        if (u.space().is_l2()) {
            double acc = 0.0;
            for (double x : tensor) acc += x * x;
            std::vector<EstimateResult> out(ps.size());
            for (auto& r : out) r = {std::sqrt(acc), 0.0, mc.samples, mc.seed};
            return out;
        }
        return gamma_norm_mc(as_elementary_operator(k, n, u.space(), tensor), ps, mc);
    }

    const std::uint64_t inner_seed = splitmix64_at(mc.seed, 0x696e6e6572ULL);
    const std::uint64_t inner_draws = static_cast<std::uint64_t>(inner_samples) *
                                      static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n);
    const std::uint64_t seed = mc.seed;

    auto kernel = [&, n, k, inner_samples](std::int64_t s) -> double {
        double g[64];
        const std::uint64_t base = static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(n);
        for (int j = 0; j < n; ++j) g[j] = normal_at(seed, base + static_cast<std::uint64_t>(j));
        const auto tensor = materialize(u, std::span<const double>(g, static_cast<size_t>(n)));
        return pathwise_gamma_norm(tensor, k, n, u.space(), combo_coords, inner_seed,
                                   static_cast<std::uint64_t>(s) * inner_draws, inner_samples);
    };
    if (n > 64) throw ConfigError("lp_gamma_norm_mc: dim_n exceeds kernel buffers");

    return estimate_lp_moments(ps, mc, kernel);
}

EstimateResult lp_gamma_norm_mc(const OperatorValuedExpansion& u, double p, const McConfig& mc,
                                int inner_samples) {
    const double ps[1] = {p};
    return lp_gamma_norm_mc(u, std::span<const double>(ps, 1), mc, inner_samples)[0];
}

namespace {

EstimateResult combine_sobolev_terms(const std::vector<EstimateResult>& parts, double p,
                                     const McConfig& mc) {
    double total_p = 0.0;
    for (const auto& part : parts) total_p += pow_p(part.estimate, p);
    EstimateResult out;
    out.samples = mc.samples;
    out.seed = mc.seed;
    if (total_p <= 0.0) return out;
    const double total = std::pow(total_p, 1.0 / p);
    double var = 0.0;
    for (const auto& part : parts) {
        if (part.estimate <= 0.0) continue;
        const double sens = std::pow(part.estimate / total, p - 1.0);
        var += sens * sens * part.std_error * part.std_error;
    }
    out.estimate = total;
    out.std_error = std::sqrt(var);
    return out;
}

McConfig derived_seed(const McConfig& mc, std::uint64_t salt) {
    McConfig out = mc;
    out.seed = splitmix64_at(mc.seed, salt);
    return out;
}

}  // namespace

EstimateResult sobolev_norm(const ChaosExpansion& f, int k, double p, const McConfig& mc,
                            int inner_samples) {
    if (k < 1) throw ConfigError("sobolev_norm: derivative order must be >= 1");
    std::vector<EstimateResult> parts;
    parts.push_back(lp_norm_mc(f, p, derived_seed(mc, 1000)));
    OperatorValuedExpansion du = derivative(f);
    for (int i = 1; i <= k; ++i) {
        parts.push_back(lp_gamma_norm_mc(du, p, derived_seed(mc, 1000 + static_cast<std::uint64_t>(i)),
                                         inner_samples));
        if (i < k) du = derivative(du);
    }
    return combine_sobolev_terms(parts, p, mc);
}

EstimateResult sobolev_norm(const OperatorValuedExpansion& u, int k, double p, const McConfig& mc,
                            int inner_samples) {
    if (k < 1) throw ConfigError("sobolev_norm: derivative order must be >= 1");
    std::vector<EstimateResult> parts;
    parts.push_back(lp_gamma_norm_mc(u, p, derived_seed(mc, 2000), inner_samples));
    OperatorValuedExpansion du = derivative(u);
    for (int i = 1; i <= k; ++i) {
        parts.push_back(lp_gamma_norm_mc(du, p, derived_seed(mc, 2000 + static_cast<std::uint64_t>(i)),
                                         inner_samples));
        if (i < k) du = derivative(du);
    }
    return combine_sobolev_terms(parts, p, mc);
}

}  // namespace chaoscalc
