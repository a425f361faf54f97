#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chaoscalc {

/// Ordered tuple of 1-based basis indices. The empty tuple denotes chaos order 0.
using MultiIndex = std::vector<int>;

/// Order-invariant canonical form of a MultiIndex: basis index -> multiplicity.
///
/// Two multi-indices that are permutations of each other map to the same
/// CountVector, which is the canonical key of the normalized Hermite basis.
class CountVector {
public:
    CountVector() = default;

    static CountVector from_index(const MultiIndex& index);
    /// `items` need not be sorted; indices must be >= 1 and multiplicities >= 1.
    static CountVector from_items(std::vector<std::pair<int, int>> items);

    /// Sum of multiplicities (the chaos order of the key).
    [[nodiscard]] int order() const;
    /// Largest basis index present, 0 for the empty key.
    [[nodiscard]] int sup() const;
    /// Product of the factorials of the multiplicities.
    [[nodiscard]] std::int64_t factorial() const;
    [[nodiscard]] int count_of(int index) const;
    [[nodiscard]] bool empty() const { return items_.empty(); }

    /// Sorted (index, multiplicity) pairs, multiplicities >= 1.
    [[nodiscard]] const std::vector<std::pair<int, int>>& items() const { return items_; }

    [[nodiscard]] CountVector incremented(int index) const;
    /// Throws Error if `index` is not present.
    [[nodiscard]] CountVector decremented(int index) const;

    /// One representative ordered tuple (indices repeated by multiplicity, ascending).
    [[nodiscard]] MultiIndex representative() const;

    /// Serialized form: sorted "index:multiplicity" pairs joined by commas, "" if empty.
    [[nodiscard]] std::string to_string() const;
    static CountVector parse(const std::string& text);

    auto operator<=>(const CountVector&) const = default;

private:
    std::vector<std::pair<int, int>> items_;
};

struct MultiStats {
    int order = 0;
    int sup = 0;
    std::int64_t factorial = 1;
    CountVector counts;
};

/// |i|, |i|_inf, i! and the count vector of a multi-index.
MultiStats multi_stats(const MultiIndex& index);

/// k! as an exact 64-bit integer; valid for k <= 20.
std::int64_t factorial_i64(int k);

/// All distinct ordered tuples with the multiplicities of `counts`,
/// in lexicographic order. The orbit of `counts` under permutations.
std::vector<MultiIndex> ordered_orbit(const CountVector& counts);

/// True if no index repeats within the tuple.
bool all_distinct(const MultiIndex& index);

}  // namespace chaoscalc
