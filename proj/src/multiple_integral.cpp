#include "chaoscalc/multiple_integral.hpp"

#include <algorithm>
#include <cmath>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

double MeasureSpaceModel::mass(int cell) const {
    if (cell < 1 || cell > q()) {
        throw DimensionError("MeasureSpaceModel: unknown cell index " + std::to_string(cell));
    }
    return masses[static_cast<size_t>(cell - 1)];
}

void MeasureSpaceModel::validate() const {
    if (masses.empty()) throw ConfigError("MeasureSpaceModel: needs at least one cell");
    for (double mu : masses) {
        if (!(mu > 0.0)) throw ConfigError("MeasureSpaceModel: masses must be strictly positive");
    }
}

TetraSimpleFunction::TetraSimpleFunction(int order, BanachSpaceModel space)
    : m_(order), space_(std::move(space)) {
    if (m_ < 1) throw ConfigError("TetraSimpleFunction: order must be >= 1");
    space_.validate();
}

int TetraSimpleFunction::max_cell() const {
    int q = 0;
    for (const auto& [cells, coeff] : table_) {
        q = std::max(q, *std::max_element(cells.begin(), cells.end()));
    }
    return q;
}

void TetraSimpleFunction::add_term(const MultiIndex& cells, std::span<const double> coeff) {
    if (static_cast<int>(cells.size()) != m_) {
        throw DimensionError("TetraSimpleFunction::add_term: key length != order");
    }
    for (int cell : cells) {
        if (cell < 1) throw DimensionError("TetraSimpleFunction::add_term: cell index must be >= 1");
    }
    if (!all_distinct(cells)) {
        throw TetrahedralityError("TetraSimpleFunction: key has a repeated cell index");
    }
    if (static_cast<int>(coeff.size()) != d()) {
        throw DimensionError("TetraSimpleFunction::add_term: coefficient length != d");
    }
    auto [it, inserted] = table_.try_emplace(cells, std::vector<double>(coeff.size(), 0.0));
    for (size_t e = 0; e < coeff.size(); ++e) it->second[e] += coeff[e];
    if (std::all_of(it->second.begin(), it->second.end(), [](double x) { return x == 0.0; })) {
        table_.erase(it);
    }
}

void TetraSimpleFunction::set_term(const MultiIndex& cells, std::vector<double> coeff) {
    if (std::all_of(coeff.begin(), coeff.end(), [](double x) { return x == 0.0; })) {
        table_.erase(cells);
        return;
    }
    if (static_cast<int>(cells.size()) != m_) {
        throw DimensionError("TetraSimpleFunction::set_term: key length != order");
    }
    if (!all_distinct(cells)) {
        throw TetrahedralityError("TetraSimpleFunction: key has a repeated cell index");
    }
    if (static_cast<int>(coeff.size()) != d()) {
        throw DimensionError("TetraSimpleFunction::set_term: coefficient length != d");
    }
    table_[cells] = std::move(coeff);
}

std::vector<double> TetraSimpleFunction::coeff(const MultiIndex& cells) const {
    auto it = table_.find(cells);
    if (it != table_.end()) return it->second;
    return std::vector<double>(static_cast<size_t>(d()), 0.0);
}

ElementaryOperator to_operator(const TetraSimpleFunction& f, const MeasureSpaceModel& m) {
    m.validate();
    if (f.max_cell() > m.q()) {
        throw DimensionError("to_operator: cell index " + std::to_string(f.max_cell()) +
                             " exceeds partition size " + std::to_string(m.q()));
    }
    ElementaryOperator out(f.order(), m.q(), f.space());
    for (const auto& [cells, coeff] : f.table()) {
        double scale = 1.0;
        for (int cell : cells) scale *= std::sqrt(m.mass(cell));
        out.add_scaled_term(cells, scale, coeff);
    }
    return out;
}

TetraSimpleFunction symmetrize_function(const TetraSimpleFunction& f) {
    TetraSimpleFunction out(f.order(), f.space());

    std::map<CountVector, std::vector<const std::vector<double>*>> orbits;
    for (const auto& [cells, coeff] : f.table()) {
        orbits[CountVector::from_index(cells)].push_back(&coeff);
    }
    for (const auto& [counts, coeffs] : orbits) {
        const auto orbit = ordered_orbit(counts);
        bool all_equal = coeffs.size() == orbit.size();
        for (size_t k = 1; all_equal && k < coeffs.size(); ++k) {
            all_equal = (*coeffs[k] == *coeffs[0]);
        }
        if (all_equal) {
            for (const auto& cells : orbit) out.set_term(cells, *coeffs[0]);
            continue;
        }
        // Tetrahedral keys have trivial stabilizer: weight 1/m! per stored key.
        const double weight = 1.0 / static_cast<double>(factorial_i64(f.order()));
        std::vector<double> avg(static_cast<size_t>(f.d()), 0.0);
        for (const auto* coeff : coeffs) {
            for (size_t e = 0; e < avg.size(); ++e) avg[e] += (*coeff)[e];
        }
        for (double& v : avg) v *= weight;
        for (const auto& cells : orbit) out.set_term(cells, avg);
    }
    return out;
}

ChaosExpansion integrate(const TetraSimpleFunction& f, const MeasureSpaceModel& m) {
    m.validate();
    if (f.max_cell() > m.q()) {
        throw DimensionError("integrate: cell index exceeds partition size");
    }
    ChaosExpansion out(m.q(), f.space());
    for (const auto& [cells, coeff] : f.table()) {
        if (!all_distinct(cells)) {
            throw TetrahedralityError("integrate: non-tetrahedral key");  // unreachable by invariant
        }
        double scale = 1.0;
        for (int cell : cells) scale *= std::sqrt(m.mass(cell));
        out.add_scaled_term(CountVector::from_index(cells), scale, coeff);
    }
    return out;
}

double l2_norm_squared_on_product(const TetraSimpleFunction& f, const MeasureSpaceModel& m) {
    m.validate();
    if (f.max_cell() > m.q()) {
        throw DimensionError("l2_norm_squared_on_product: cell index exceeds partition size");
    }
    double acc = 0.0;
    for (const auto& [cells, coeff] : f.table()) {
        double weight = 1.0;
        for (int cell : cells) weight *= m.mass(cell);
        for (double x : coeff) acc += weight * x * x;
    }
    return acc;
}

std::pair<double, double> ito_isometry_check(const TetraSimpleFunction& f,
                                             const MeasureSpaceModel& m) {
    if (f.d() != 1 || !f.space().is_l2()) {
        throw UnsupportedNormError("ito_isometry_check: requires scalar values with the l2 tag");
    }
    const double lhs_norm = l2_norm_exact(integrate(f, m));
    const double lhs = lhs_norm * lhs_norm;
    const TetraSimpleFunction sym = symmetrize_function(f);
    const double rhs = static_cast<double>(factorial_i64(f.order())) *
                       l2_norm_squared_on_product(sym, m);
    return {lhs, rhs};
}

}  // namespace chaoscalc
