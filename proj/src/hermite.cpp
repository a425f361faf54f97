#include "chaoscalc/hermite.hpp"

#include <cmath>
#include <cstddef>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

UnivariatePoly::UnivariatePoly(std::vector<double> c, PolyBasis b) : coeffs(std::move(c)), basis(b) {
    normalize();
}

void UnivariatePoly::normalize() {
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
}

double hermite_eval(int m, double x) {
    if (m < 0) throw Error("hermite_eval: negative degree");
    if (m == 0) return 1.0;
    double prev = 1.0;  // H_0
    double cur = x;     // H_1
    for (int k = 1; k < m; ++k) {
        double next = (x * cur - prev) / static_cast<double>(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// Coefficient recurrence in extended precision; the change of basis at
// higher degrees cancels terms that are factorially larger than the result.
std::vector<long double> hermite_coeffs_ext(int m) {
    std::vector<long double> prev = {1.0L};  // H_0
    if (m == 0) return prev;
    std::vector<long double> cur = {0.0L, 1.0L};  // H_1
    for (int k = 1; k < m; ++k) {
        std::vector<long double> next(static_cast<size_t>(k) + 2, 0.0L);
        for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
        for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        for (long double& c : next) c /= static_cast<long double>(k + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

UnivariatePoly hermite_coeffs(int m) {
    if (m < 0) throw Error("hermite_coeffs: negative degree");
    const auto ext = hermite_coeffs_ext(m);
    return {std::vector<double>(ext.begin(), ext.end()), PolyBasis::monomial};
}

UnivariatePoly basis_convert(const UnivariatePoly& p, PolyBasis target) {
    if (p.basis == target || p.is_zero()) return {p.coeffs, target};

    if (target == PolyBasis::monomial) {
        // Expand each Hermite coefficient into its monomial representation.
        std::vector<long double> out(p.coeffs.size(), 0.0L);
        for (int k = 0; k <= p.degree(); ++k) {
            if (p.coeffs[static_cast<size_t>(k)] == 0.0) continue;
            const auto hk = hermite_coeffs_ext(k);
            for (size_t i = 0; i < hk.size(); ++i) {
                out[i] += static_cast<long double>(p.coeffs[static_cast<size_t>(k)]) * hk[i];
            }
        }
        return {std::vector<double>(out.begin(), out.end()), PolyBasis::monomial};
    }

    // Monomial -> Hermite: peel off the top degree. H_m has leading
    // coefficient 1/m!, so the degree-m monomial coefficient a_m contributes
    // a_m * m! on H_m; subtract that multiple and recurse downward.
    std::vector<long double> residual(p.coeffs.begin(), p.coeffs.end());
    std::vector<long double> out(residual.size(), 0.0L);
    for (int m = static_cast<int>(residual.size()) - 1; m >= 0; --m) {
        const long double a = residual[static_cast<size_t>(m)];
        if (a == 0.0L) continue;
        const long double b = a * static_cast<long double>(factorial_i64(m));
        out[static_cast<size_t>(m)] = b;
        const auto hm = hermite_coeffs_ext(m);
        for (size_t i = 0; i < hm.size(); ++i) residual[i] -= b * hm[i];
        residual[static_cast<size_t>(m)] = 0.0L;
    }
    return {std::vector<double>(out.begin(), out.end()), PolyBasis::hermite};
}

double poly_eval(const UnivariatePoly& p, double x) {
    if (p.basis == PolyBasis::monomial) {
        double acc = 0.0;
        for (int k = p.degree(); k >= 0; --k) acc = acc * x + p.coeffs[static_cast<size_t>(k)];
        return acc;
    }
    double acc = 0.0;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeffs[static_cast<size_t>(k)] != 0.0) {
            acc += p.coeffs[static_cast<size_t>(k)] * hermite_eval(k, x);
        }
    }
    return acc;
}

double psi_eval(const CountVector& c, std::span<const double> g) {
    if (c.sup() > static_cast<int>(g.size())) {
        throw DimensionError("psi_eval: basis index " + std::to_string(c.sup()) +
                             " exceeds sample dimension " + std::to_string(g.size()));
    }
    double value = std::sqrt(static_cast<double>(c.factorial()));
    for (auto [index, mult] : c.items()) {
        value *= hermite_eval(mult, g[static_cast<size_t>(index - 1)]);
    }
    return value;
}

double psi_eval(const MultiIndex& index, std::span<const double> g) {
    return psi_eval(CountVector::from_index(index), g);
}

}  // namespace chaoscalc
