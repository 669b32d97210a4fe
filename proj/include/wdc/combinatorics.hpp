#pragma once

#include <cstdint>
#include <vector>

namespace wdc {

/// Binomial coefficient C(n, k); 0 when k < 0 or k > n.
std::int64_t binomial(int n, int k);

/// All k-subsets of `items` in lexicographic order (items taken as given,
/// callers pass them sorted).
std::vector<std::vector<int>> subsets_of(const std::vector<int>& items, int k);

/// All k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> subsets_of_range(int n, int k);

/// True iff sorted `a` is a subset of sorted `b`.
bool is_subset(const std::vector<int>& a, const std::vector<int>& b);

bool contains(const std::vector<int>& sorted, int x);

}  // namespace wdc
