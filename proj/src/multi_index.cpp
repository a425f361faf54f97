#include "chaoscalc/multi_index.hpp"

#include <algorithm>
#include <map>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

std::int64_t factorial_i64(int k) {
    if (k < 0 || k > 20) {
        throw Error("factorial_i64: argument out of range: " + std::to_string(k));
    }
    std::int64_t r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

CountVector CountVector::from_index(const MultiIndex& index) {
    std::map<int, int> counts;
    for (int entry : index) {
        if (entry < 1) {
            throw Error("MultiIndex entries must be >= 1, got " + std::to_string(entry));
        }
        ++counts[entry];
    }
    CountVector cv;
    cv.items_.assign(counts.begin(), counts.end());
    return cv;
}

CountVector CountVector::from_items(std::vector<std::pair<int, int>> items) {
    std::map<int, int> counts;
    for (auto [index, mult] : items) {
        if (index < 1 || mult < 1) {
            throw Error("CountVector items must have index >= 1 and multiplicity >= 1");
        }
        counts[index] += mult;
    }
    CountVector cv;
    cv.items_.assign(counts.begin(), counts.end());
    return cv;
}

int CountVector::order() const {
    int total = 0;
    for (auto [index, mult] : items_) total += mult;
    return total;
}

int CountVector::sup() const {
    return items_.empty() ? 0 : items_.back().first;
}

std::int64_t CountVector::factorial() const {
    std::int64_t r = 1;
    for (auto [index, mult] : items_) r *= factorial_i64(mult);
    return r;
}

int CountVector::count_of(int index) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), std::pair{index, 0});
    if (it != items_.end() && it->first == index) return it->second;
    return 0;
}

CountVector CountVector::incremented(int index) const {
    CountVector result = *this;
    auto it = std::lower_bound(result.items_.begin(), result.items_.end(), std::pair{index, 0});
    if (it != result.items_.end() && it->first == index) {
        ++it->second;
    } else {
        result.items_.insert(it, {index, 1});
    }
    return result;
}

CountVector CountVector::decremented(int index) const {
    CountVector result = *this;
    auto it = std::lower_bound(result.items_.begin(), result.items_.end(), std::pair{index, 0});
    if (it == result.items_.end() || it->first != index) {
        throw Error("CountVector::decremented: index " + std::to_string(index) + " not present");
    }
    if (--it->second == 0) result.items_.erase(it);
    return result;
}

MultiIndex CountVector::representative() const {
    MultiIndex index;
    for (auto [i, mult] : items_) index.insert(index.end(), static_cast<size_t>(mult), i);
    return index;
}

std::string CountVector::to_string() const {
    std::string text;
    for (auto [index, mult] : items_) {
        if (!text.empty()) text += ',';
        text += std::to_string(index) + ':' + std::to_string(mult);
    }
    return text;
}

CountVector CountVector::parse(const std::string& text) {
    std::vector<std::pair<int, int>> items;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string piece = text.substr(pos, comma - pos);
        size_t colon = piece.find(':');
        if (colon == std::string::npos) {
            throw Error("CountVector::parse: missing ':' in \"" + piece + "\"");
        }
        try {
            items.emplace_back(std::stoi(piece.substr(0, colon)),
                               std::stoi(piece.substr(colon + 1)));
        } catch (const std::exception&) {
            throw Error("CountVector::parse: malformed entry \"" + piece + "\"");
        }
        pos = comma + 1;
    }
    return from_items(std::move(items));
}

MultiStats multi_stats(const MultiIndex& index) {
    MultiStats stats;
    stats.counts = CountVector::from_index(index);
    stats.order = stats.counts.order();
    stats.sup = stats.counts.sup();
    stats.factorial = stats.counts.factorial();
    return stats;
}

std::vector<MultiIndex> ordered_orbit(const CountVector& counts) {
    MultiIndex tuple = counts.representative();
    std::vector<MultiIndex> orbit;
    if (tuple.empty()) {
        orbit.push_back(tuple);
        return orbit;
    }
    do {
        orbit.push_back(tuple);
    } while (std::next_permutation(tuple.begin(), tuple.end()));
    return orbit;
}

bool all_distinct(const MultiIndex& index) {
    MultiIndex sorted = index;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace chaoscalc
