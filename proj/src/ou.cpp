#include "chaoscalc/ou.hpp"

#include <cmath>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

ChaosExpansion scale_by_order(const ChaosExpansion& f, const std::function<double(int)>& factor) {
    ChaosExpansion out(f.dim_n(), f.space());
    for (const auto& [c, coeff] : f.terms()) {
        const double a = factor(c.order());
        if (!std::isfinite(a)) {
            throw Error("scale_by_order: factor is not finite at order " +
                        std::to_string(c.order()));
        }
        out.add_scaled_term(c, a, coeff);
    }
    return out;
}

OperatorValuedExpansion scale_by_order(const OperatorValuedExpansion& u,
                                       const std::function<double(int)>& factor) {
    OperatorValuedExpansion out(u.slots(), u.dim_n(), u.space());
    for (const auto& [c, tensor] : u.terms()) {
        const double a = factor(c.order());
        if (!std::isfinite(a)) {
            throw Error("scale_by_order: factor is not finite at order " +
                        std::to_string(c.order()));
        }
        out.add_scaled_term(c, a, tensor);
    }
    return out;
}

ChaosExpansion ou_semigroup(double t, const ChaosExpansion& f) {
    if (t < 0.0) throw Error("ou_semigroup: negative time");
    return scale_by_order(f, [t](int m) { return std::exp(-static_cast<double>(m) * t); });
}

OperatorValuedExpansion ou_semigroup(double t, const OperatorValuedExpansion& u) {
    if (t < 0.0) throw Error("ou_semigroup: negative time");
    return scale_by_order(u, [t](int m) { return std::exp(-static_cast<double>(m) * t); });
}

ChaosExpansion ou_generator(const ChaosExpansion& f) {
    return scale_by_order(f, [](int m) { return -static_cast<double>(m); });
}

ChaosExpansion ou_generator_sqrt(const ChaosExpansion& f) {
    return scale_by_order(f, [](int m) { return -std::sqrt(static_cast<double>(m)); });
}

ChaosExpansion ou_generator_inv(const ChaosExpansion& f) {
    if (f.terms().count(CountVector{})) {
        throw MeanZeroError("ou_generator_inv: operand has a nonzero mean");
    }
    return scale_by_order(f, [](int m) { return -1.0 / static_cast<double>(m); });
}

ChaosExpansion chaos_multiplier(const MultiplierSpec& spec, const ChaosExpansion& f) {
    if (!spec.rule) throw ConfigError("chaos_multiplier: empty rule");
    return scale_by_order(f, spec.rule);
}

ChaosExpansion resolvent(double lambda, const ChaosExpansion& f) {
    return scale_by_order(f, [lambda](int m) { return 1.0 / (lambda - static_cast<double>(m)); });
}

SubordinatorQuad SubordinatorQuad::for_time(double t, int m_max, int nodes) {
    if (!(t > 0.0)) throw Error("SubordinatorQuad::for_time: t must be positive");
    if (m_max < 0) throw Error("SubordinatorQuad::for_time: m_max must be >= 0");
    // In v = t/(2 sqrt(s)) the integrand peaks at v = a^{1/2} with
    // a = sqrt(m) t / 2 and has width O(1); cover the largest peak plus a
    // wide margin, and reach v_lo small enough that the missing nu_t mass
    // (erf(v_lo)) is far below the quadrature tolerance.
    const double a_max = std::sqrt(static_cast<double>(m_max)) * t / 2.0;
    const double v_hi = std::max(9.0, std::sqrt(a_max) + 9.0);
    const double v_lo = 1e-8;
    SubordinatorQuad quad;
    quad.nodes = nodes;
    quad.s_lo = t * t / (4.0 * v_hi * v_hi);
    quad.s_hi = t * t / (4.0 * v_lo * v_lo);
    return quad;
}

double SubordinatorQuad::mass_covered(double t) const {
    if (!(t > 0.0)) throw Error("SubordinatorQuad::mass_covered: t must be positive");
    // CDF of nu_t at s is erfc(t / (2 sqrt(s))).
    const double hi = std::erfc(t / (2.0 * std::sqrt(s_hi)));
    const double lo = s_lo > 0.0 ? std::erfc(t / (2.0 * std::sqrt(s_lo))) : 0.0;
    return hi - lo;
}

void SubordinatorQuad::validate(double t) const {
    if (nodes < 8) throw ConfigError("SubordinatorQuad: node count must be >= 8");
    if (!(s_lo >= 0.0 && s_hi > s_lo)) throw ConfigError("SubordinatorQuad: invalid bounds");
    if (mass_covered(t) < 0.999999) {
        throw AccuracyError("SubordinatorQuad: bounds cover less than 99.9999% of the mass");
    }
}

namespace {

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<size_t>(n), 0.0);
    w.assign(static_cast<size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[static_cast<size_t>(i)] = -z;
        x[static_cast<size_t>(n - 1 - i)] = z;
        const double weight = 2.0 / ((1.0 - z * z) * pp * pp);
        w[static_cast<size_t>(i)] = weight;
        w[static_cast<size_t>(n - 1 - i)] = weight;
    }
}

}  // namespace

double subordinator_factor(int m, double t, const SubordinatorQuad& quad) {
    if (m < 0) throw Error("subordinator_factor: negative order");
    quad.validate(t);
    const double v_lo = t / (2.0 * std::sqrt(quad.s_hi));
    const double v_hi = t / (2.0 * std::sqrt(quad.s_lo));
    const double md = static_cast<double>(m);
    const double tt4 = t * t / 4.0;
    auto integrand = [md, tt4](double v) {
        return std::exp(-v * v - md * tt4 / (v * v));
    };

    double integral = 0.0;
    if (quad.scheme == QuadScheme::gauss_legendre) {
        std::vector<double> x, w;
        gauss_legendre(quad.nodes, x, w);
        const double mid = 0.5 * (v_hi + v_lo);
        const double halfwidth = 0.5 * (v_hi - v_lo);
        for (size_t i = 0; i < x.size(); ++i) {
            integral += w[i] * integrand(mid + halfwidth * x[i]);
        }
        integral *= halfwidth;
    } else {
        const int intervals = quad.nodes % 2 == 0 ? quad.nodes : quad.nodes + 1;
        const double h = (v_hi - v_lo) / intervals;
        integral = integrand(v_lo) + integrand(v_hi);
        for (int i = 1; i < intervals; ++i) {
            integral += (i % 2 == 1 ? 4.0 : 2.0) * integrand(v_lo + i * h);
        }
        integral *= h / 3.0;
    }
    return integral * 2.0 / std::sqrt(M_PI);
}

std::pair<ChaosExpansion, ChaosExpansion> subordinated_semigroup(double t, const ChaosExpansion& f,
                                                                 const SubordinatorQuad& quad) {
    if (!(t > 0.0)) throw Error("subordinated_semigroup: t must be positive");
    quad.validate(t);
    ChaosExpansion closed =
        scale_by_order(f, [t](int m) { return std::exp(-std::sqrt(static_cast<double>(m)) * t); });
    // Cache the quadrature factor per order present.
    std::map<int, double> factors;
    ChaosExpansion numeric = scale_by_order(f, [&](int m) {
        auto it = factors.find(m);
        if (it == factors.end()) it = factors.emplace(m, subordinator_factor(m, t, quad)).first;
        return it->second;
    });
    return {std::move(closed), std::move(numeric)};
}

std::pair<double, double> tail_bound_check(double t, int order_cut, const ChaosExpansion& f) {
    if (t < 0.0) throw Error("tail_bound_check: negative time");
    if (order_cut < 1) throw Error("tail_bound_check: order cut must be >= 1");
    if (f.d() != 1 || !f.space().is_l2()) {
        throw UnsupportedNormError("tail_bound_check: requires scalar values with the l2 tag");
    }
    const ChaosExpansion tail =
        scale_by_order(f, [order_cut](int m) { return m >= order_cut ? 1.0 : 0.0; });
    const double lhs = l2_norm_exact(ou_semigroup(t, tail));
    const double rhs = std::exp(-static_cast<double>(order_cut) * t) * l2_norm_exact(f);
    return {lhs, rhs};
}

TailFactorization tail_factorization(const ChaosExpansion& f) {
    const ChaosExpansion half = scale_by_order(
        f, [](int m) { return m >= 1 ? 1.0 / std::sqrt(static_cast<double>(m)) : 0.0; });
    TailFactorization out{derivative(half), ChaosExpansion(f.dim_n(), f.space())};
    const int top = f.max_order();
    for (int m = 1; m <= top; ++m) {
        const OperatorValuedExpansion layer = project_order(out.lowered, m - 1);
        if (layer.empty()) continue;
        out.recovered += divergence(layer).scaled(1.0 / std::sqrt(static_cast<double>(m)));
    }
    return out;
}

DivergenceRepresentation divergence_representation(const ChaosExpansion& f) {
    const ChaosExpansion inv = scale_by_order(
        f, [](int m) { return m >= 1 ? 1.0 / static_cast<double>(m) : 0.0; });
    return {f.mean(), derivative(inv)};
}

CommutationReport commutation_check(double t, const ChaosExpansion& f) {
    if (t < 0.0) throw Error("commutation_check: negative time");
    const OperatorValuedExpansion df = derivative(f);

    CommutationReport report;
    const double decay = std::exp(-t);
    report.semigroup_dev = max_coeff_deviation(
        derivative(ou_semigroup(t, f)), ou_semigroup(t, df).scaled(decay));
    report.subordinated_dev = max_coeff_deviation(
        derivative(scale_by_order(
            f, [t](int m) { return std::exp(-std::sqrt(static_cast<double>(m)) * t); })),
        scale_by_order(df, [t](int m) {
            return std::exp(-std::sqrt(static_cast<double>(m) + 1.0) * t);
        }));
    report.generator_dev = max_coeff_deviation(
        derivative(ou_generator(f)),
        scale_by_order(df, [](int m) { return -(1.0 + static_cast<double>(m)); }));
    report.sqrt_dev = max_coeff_deviation(
        derivative(ou_generator_sqrt(f)),
        scale_by_order(df, [](int m) { return -std::sqrt(1.0 + static_cast<double>(m)); }));
    report.max_dev = std::max({report.semigroup_dev, report.subordinated_dev,
                               report.generator_dev, report.sqrt_dev});
    return report;
}

std::pair<double, double> dirichlet_form_check(const ChaosExpansion& f, const ChaosExpansion& g) {
    if (f.dim_n() != g.dim_n() || f.d() != g.d()) {
        throw DimensionError("dirichlet_form_check: operand shapes differ");
    }
    double lhs = 0.0;
    for (const auto& [c, coeff] : f.terms()) {
        auto it = g.terms().find(c);
        if (it == g.terms().end()) continue;
        double inner = 0.0;
        for (size_t e = 0; e < coeff.size(); ++e) inner += coeff[e] * it->second[e];
        lhs += static_cast<double>(c.order()) * inner;
    }
    const double rhs = expectation_inner(derivative(f), derivative(g));
    return {lhs, rhs};
}

double expectation_inner(const OperatorValuedExpansion& u, const OperatorValuedExpansion& v) {
    if (u.slots() != v.slots() || u.dim_n() != v.dim_n() || u.d() != v.d()) {
        throw DimensionError("expectation_inner: shape mismatch");
    }
    double acc = 0.0;
    for (const auto& [c, tensor] : u.terms()) {
        auto it = v.terms().find(c);
        if (it == v.terms().end()) continue;
        for (size_t i = 0; i < tensor.size(); ++i) acc += tensor[i] * it->second[i];
    }
    return acc;
}

}  // namespace chaoscalc
