#include "chaoscalc/chaos_expansion.hpp"

#include <algorithm>
#include <cmath>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/hermite.hpp"

namespace chaoscalc {

namespace {

bool all_zero(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

void check_same_shape(int n_a, const BanachSpaceModel& sa, int n_b, const BanachSpaceModel& sb,
                      const char* op) {
    if (n_a != n_b || sa.d != sb.d) {
        throw DimensionError(std::string(op) + ": operand shapes differ");
    }
}

}  // namespace

ChaosExpansion::ChaosExpansion(int dim_n, BanachSpaceModel space) : n_(dim_n), space_(std::move(space)) {
    if (n_ < 1) throw ConfigError("ChaosExpansion: dim_n must be >= 1");
    space_.validate();
}

int ChaosExpansion::max_order() const {
    int m = 0;
    for (const auto& [c, coeff] : terms_) m = std::max(m, c.order());
    return m;
}

void ChaosExpansion::add_term(const CountVector& c, std::span<const double> coeff) {
    add_scaled_term(c, 1.0, coeff);
}

void ChaosExpansion::add_scaled_term(const CountVector& c, double scale,
                                     std::span<const double> coeff) {
    if (static_cast<int>(coeff.size()) != d()) {
        throw DimensionError("ChaosExpansion::add_term: coefficient length != d");
    }
    if (c.sup() > n_) {
        throw DimensionError("ChaosExpansion::add_term: basis index " + std::to_string(c.sup()) +
                             " exceeds dim_n " + std::to_string(n_));
    }
    auto [it, inserted] = terms_.try_emplace(c, std::vector<double>(coeff.size(), 0.0));
    for (size_t e = 0; e < coeff.size(); ++e) it->second[e] += scale * coeff[e];
    if (all_zero(it->second)) terms_.erase(it);
}

void ChaosExpansion::set_term(const CountVector& c, std::vector<double> coeff) {
    if (static_cast<int>(coeff.size()) != d()) {
        throw DimensionError("ChaosExpansion::set_term: coefficient length != d");
    }
    if (c.sup() > n_) throw DimensionError("ChaosExpansion::set_term: index exceeds dim_n");
    if (all_zero(coeff)) {
        terms_.erase(c);
    } else {
        terms_[c] = std::move(coeff);
    }
}

std::vector<double> ChaosExpansion::coeff(const CountVector& c) const {
    auto it = terms_.find(c);
    if (it != terms_.end()) return it->second;
    return std::vector<double>(static_cast<size_t>(d()), 0.0);
}

std::vector<double> ChaosExpansion::mean() const { return coeff(CountVector{}); }

ChaosExpansion& ChaosExpansion::operator+=(const ChaosExpansion& rhs) {
    check_same_shape(n_, space_, rhs.n_, rhs.space_, "ChaosExpansion::operator+=");
    for (const auto& [c, coeff] : rhs.terms_) add_term(c, coeff);
    return *this;
}

ChaosExpansion& ChaosExpansion::operator-=(const ChaosExpansion& rhs) {
    check_same_shape(n_, space_, rhs.n_, rhs.space_, "ChaosExpansion::operator-=");
    for (const auto& [c, coeff] : rhs.terms_) add_scaled_term(c, -1.0, coeff);
    return *this;
}

ChaosExpansion ChaosExpansion::scaled(double a) const {
    ChaosExpansion out(n_, space_);
    if (a == 0.0) return out;
    for (const auto& [c, coeff] : terms_) out.add_scaled_term(c, a, coeff);
    return out;
}

void ChaosExpansion::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        const bool small = std::all_of(it->second.begin(), it->second.end(),
                                       [tol](double x) { return std::abs(x) <= tol; });
        it = small ? terms_.erase(it) : std::next(it);
    }
}

ChaosExpansion operator+(ChaosExpansion a, const ChaosExpansion& b) { return a += b; }
ChaosExpansion operator-(ChaosExpansion a, const ChaosExpansion& b) { return a -= b; }

double max_coeff_deviation(const ChaosExpansion& a, const ChaosExpansion& b) {
    check_same_shape(a.dim_n(), a.space(), b.dim_n(), b.space(), "max_coeff_deviation");
    double dev = 0.0;
    for (const auto& [c, coeff] : a.terms()) {
        const auto other = b.coeff(c);
        for (size_t e = 0; e < coeff.size(); ++e) dev = std::max(dev, std::abs(coeff[e] - other[e]));
    }
    for (const auto& [c, coeff] : b.terms()) {
        if (a.terms().count(c)) continue;
        for (double x : coeff) dev = std::max(dev, std::abs(x));
    }
    return dev;
}

MonomialFunctional::MonomialFunctional(int dim_n, BanachSpaceModel space)
    : n_(dim_n), space_(std::move(space)) {
    if (n_ < 1) throw ConfigError("MonomialFunctional: dim_n must be >= 1");
    space_.validate();
}

void MonomialFunctional::add_term(const std::vector<int>& exponents, std::span<const double> coeff) {
    add_scaled_term(exponents, 1.0, coeff);
}

void MonomialFunctional::add_scaled_term(const std::vector<int>& exponents, double scale,
                                         std::span<const double> coeff) {
    if (static_cast<int>(exponents.size()) != n_) {
        throw DimensionError("MonomialFunctional::add_term: exponent vector length != dim_n");
    }
    if (std::any_of(exponents.begin(), exponents.end(), [](int a) { return a < 0; })) {
        throw Error("MonomialFunctional::add_term: negative exponent");
    }
    if (static_cast<int>(coeff.size()) != d()) {
        throw DimensionError("MonomialFunctional::add_term: coefficient length != d");
    }
    auto [it, inserted] = terms_.try_emplace(exponents, std::vector<double>(coeff.size(), 0.0));
    for (size_t e = 0; e < coeff.size(); ++e) it->second[e] += scale * coeff[e];
    if (all_zero(it->second)) terms_.erase(it);
}

MonomialFunctional MonomialFunctional::partial(int j) const {
    if (j < 1 || j > n_) throw DimensionError("MonomialFunctional::partial: coordinate out of range");
    MonomialFunctional out(n_, space_);
    for (const auto& [exp, coeff] : terms_) {
        const int a = exp[static_cast<size_t>(j - 1)];
        if (a == 0) continue;
        std::vector<int> lowered = exp;
        --lowered[static_cast<size_t>(j - 1)];
        out.add_scaled_term(lowered, static_cast<double>(a), coeff);
    }
    return out;
}

ChaosExpansion to_chaos(const MonomialFunctional& f) {
    ChaosExpansion out(f.dim_n(), f.space());
    for (const auto& [exp, coeff] : f.terms()) {
        // Per-coordinate Hermite expansion of x^{a_j}.
        std::vector<int> coords;
        std::vector<std::vector<double>> expansions;
        for (int j = 0; j < f.dim_n(); ++j) {
            const int a = exp[static_cast<size_t>(j)];
            if (a == 0) continue;
            std::vector<double> mono(static_cast<size_t>(a) + 1, 0.0);
            mono.back() = 1.0;
            coords.push_back(j + 1);
            expansions.push_back(basis_convert({std::move(mono), PolyBasis::monomial},
                                               PolyBasis::hermite).coeffs);
        }
        // Cartesian product over the per-coordinate Hermite degrees. The
        // product of H's is Psi_c / sqrt(c!).
        std::vector<std::pair<int, int>> items;
        auto recurse = [&](auto&& self, size_t pos, double factor) -> void {
            if (pos == coords.size()) {
                const CountVector key = CountVector::from_items(items);
                const double scale = factor / std::sqrt(static_cast<double>(key.factorial()));
                out.add_scaled_term(key, scale, coeff);
                return;
            }
            const auto& h = expansions[pos];
            for (size_t k = 0; k < h.size(); ++k) {
                if (h[k] == 0.0) continue;
                if (k > 0) items.emplace_back(coords[pos], static_cast<int>(k));
                self(self, pos + 1, factor * h[k]);
                if (k > 0) items.pop_back();
            }
        };
        recurse(recurse, 0, 1.0);
    }
    return out;
}

MonomialFunctional from_chaos(const ChaosExpansion& f) {
    MonomialFunctional out(f.dim_n(), f.space());
    for (const auto& [c, coeff] : f.terms()) {
        const double factor = std::sqrt(static_cast<double>(c.factorial()));
        const auto& items = c.items();
        std::vector<std::vector<double>> expansions;
        expansions.reserve(items.size());
        for (auto [index, mult] : items) expansions.push_back(hermite_coeffs(mult).coeffs);

        std::vector<int> exponents(static_cast<size_t>(f.dim_n()), 0);
        auto recurse = [&](auto&& self, size_t pos, double scale) -> void {
            if (pos == items.size()) {
                out.add_scaled_term(exponents, scale, coeff);
                return;
            }
            const auto& h = expansions[pos];
            const size_t coord = static_cast<size_t>(items[pos].first - 1);
            for (size_t k = 0; k < h.size(); ++k) {
                if (h[k] == 0.0) continue;
                exponents[coord] = static_cast<int>(k);
                self(self, pos + 1, scale * h[k]);
            }
            exponents[coord] = 0;
        };
        recurse(recurse, 0, factor);
    }
    return out;
}

std::vector<double> evaluate(const ChaosExpansion& f, std::span<const double> g) {
    if (static_cast<int>(g.size()) < f.dim_n()) {
        throw DimensionError("evaluate: sample dimension below dim_n");
    }
    std::vector<double> acc(static_cast<size_t>(f.d()), 0.0);
    for (const auto& [c, coeff] : f.terms()) {
        const double psi = psi_eval(c, g);
        for (size_t e = 0; e < coeff.size(); ++e) acc[e] += psi * coeff[e];
    }
    return acc;
}

std::vector<double> evaluate(const ChaosExpansion& f, const GaussianSample& s, int copy) {
    return evaluate(f, s.row(copy));
}

std::vector<double> evaluate(const MonomialFunctional& f, std::span<const double> g) {
    if (static_cast<int>(g.size()) < f.dim_n()) {
        throw DimensionError("evaluate: sample dimension below dim_n");
    }
    std::vector<double> acc(static_cast<size_t>(f.d()), 0.0);
    for (const auto& [exp, coeff] : f.terms()) {
        double mono = 1.0;
        for (size_t j = 0; j < exp.size(); ++j) {
            for (int k = 0; k < exp[j]; ++k) mono *= g[j];
        }
        for (size_t e = 0; e < coeff.size(); ++e) acc[e] += mono * coeff[e];
    }
    return acc;
}

ChaosExpansion project_order(const ChaosExpansion& f, int m) {
    if (m < 0) throw Error("project_order: negative order");
    ChaosExpansion out(f.dim_n(), f.space());
    for (const auto& [c, coeff] : f.terms()) {
        if (c.order() == m) out.add_term(c, coeff);
    }
    return out;
}

double l2_norm_exact(const ChaosExpansion& f) {
    if (!f.space().is_l2()) {
        throw UnsupportedNormError(
            "l2_norm_exact: requires the l2 norm tag (use the Monte Carlo estimators otherwise)");
    }
    double acc = 0.0;
    for (const auto& [c, coeff] : f.terms()) {
        for (double x : coeff) acc += x * x;
    }
    return std::sqrt(acc);
}

ChaosExpansion multiply_by_gamma(const ChaosExpansion& f, int j) {
    if (j < 1 || j > f.dim_n()) throw DimensionError("multiply_by_gamma: coordinate out of range");
    ChaosExpansion out(f.dim_n(), f.space());
    for (const auto& [c, coeff] : f.terms()) {
        const int mult = c.count_of(j);
        out.add_scaled_term(c.incremented(j), std::sqrt(static_cast<double>(mult + 1)), coeff);
        if (mult >= 1) {
            out.add_scaled_term(c.decremented(j), std::sqrt(static_cast<double>(mult)), coeff);
        }
    }
    return out;
}

ChaosExpansion component(const ChaosExpansion& f, int e) {
    if (e < 0 || e >= f.d()) throw DimensionError("component: index out of range");
    ChaosExpansion out(f.dim_n(), BanachSpaceModel{1, f.space().tag});
    for (const auto& [c, coeff] : f.terms()) {
        const double v[1] = {coeff[static_cast<size_t>(e)]};
        out.add_term(c, v);
    }
    return out;
}

double expectation_inner(const ChaosExpansion& f, const ChaosExpansion& g) {
    check_same_shape(f.dim_n(), f.space(), g.dim_n(), g.space(), "expectation_inner");
    double acc = 0.0;
    for (const auto& [c, coeff] : f.terms()) {
        auto it = g.terms().find(c);
        if (it == g.terms().end()) continue;
        for (size_t e = 0; e < coeff.size(); ++e) acc += coeff[e] * it->second[e];
    }
    return acc;
}

ChaosExpansion multiply_scalar(const ChaosExpansion& a, const ChaosExpansion& b) {
    if (a.d() != 1 || b.d() != 1) throw DimensionError("multiply_scalar: operands must be scalar");
    if (a.dim_n() != b.dim_n()) throw DimensionError("multiply_scalar: dim_n mismatch");
    const MonomialFunctional ma = from_chaos(a);
    const MonomialFunctional mb = from_chaos(b);
    MonomialFunctional prod(a.dim_n(), a.space());
    for (const auto& [ea, ca] : ma.terms()) {
        for (const auto& [eb, cb] : mb.terms()) {
            std::vector<int> exp(ea.size());
            for (size_t j = 0; j < ea.size(); ++j) exp[j] = ea[j] + eb[j];
            const double v[1] = {ca[0] * cb[0]};
            prod.add_term(exp, v);
        }
    }
    return to_chaos(prod);
}

ChaosExpansion pointwise_inner(const ChaosExpansion& f, const ChaosExpansion& g) {
    check_same_shape(f.dim_n(), f.space(), g.dim_n(), g.space(), "pointwise_inner");
    ChaosExpansion out(f.dim_n(), BanachSpaceModel{1, NormTag::l2});
    for (int e = 0; e < f.d(); ++e) {
        out += multiply_scalar(component(f, e), component(g, e));
    }
    return out;
}

namespace {

// Flattened term list for the sampling loop.
struct CompiledTerm {
    double factor = 1.0;                       // sqrt(c!)
    std::vector<std::pair<int, int>> coords;   // (0-based coordinate, multiplicity)
    const double* coeff = nullptr;
};

}  // namespace

std::vector<EstimateResult> lp_norm_mc(const ChaosExpansion& f, std::span<const double> ps,
                                       const McConfig& mc) {
    mc.validate();
    // Deterministic functionals have exact L^p norms; no sampling needed.
    if (f.max_order() == 0) {
        const auto m = f.mean();
        const double v = f.space().norm(m);
        std::vector<EstimateResult> out(ps.size());
        for (size_t i = 0; i < ps.size(); ++i) out[i] = {v, 0.0, mc.samples, mc.seed};
        return out;
    }

    std::vector<CompiledTerm> compiled;
    compiled.reserve(f.terms().size());
    for (const auto& [c, coeff] : f.terms()) {
        CompiledTerm t;
        t.factor = std::sqrt(static_cast<double>(c.factorial()));
        for (auto [index, mult] : c.items()) t.coords.emplace_back(index - 1, mult);
        t.coeff = coeff.data();
        compiled.push_back(std::move(t));
    }

    const int n = f.dim_n();
    const int d = f.d();
    const BanachSpaceModel& space = f.space();
    const std::uint64_t seed = mc.seed;

    auto kernel = [&, n, d](std::int64_t s) -> double {
        double g[64];
        double acc[64];
        const std::uint64_t base = static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(n);
        for (int j = 0; j < n; ++j) g[j] = normal_at(seed, base + static_cast<std::uint64_t>(j));
        for (int e = 0; e < d; ++e) acc[e] = 0.0;
        for (const auto& t : compiled) {
            double psi = t.factor;
            for (auto [coord, mult] : t.coords) psi *= hermite_eval(mult, g[coord]);
            for (int e = 0; e < d; ++e) acc[e] += psi * t.coeff[e];
        }
        return space.norm(std::span<const double>(acc, static_cast<size_t>(d)));
    };

    if (n > 64 || d > 64) throw ConfigError("lp_norm_mc: dimensions exceed kernel buffers");
    return estimate_lp_moments(ps, mc, kernel);
}

EstimateResult lp_norm_mc(const ChaosExpansion& f, double p, const McConfig& mc) {
    const double ps[1] = {p};
    return lp_norm_mc(f, std::span<const double>(ps, 1), mc)[0];
}

}  // namespace chaoscalc
