#include "wdc/combinatorics.hpp"

#include <algorithm>

namespace wdc {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

std::vector<std::vector<int>> subsets_of(const std::vector<int>& items,
                                         int k) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = items[idx[i]];
    out.push_back(std::move(s));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<int>> subsets_of_range(int n, int k) {
  std::vector<int> items(n);
  for (int i = 0; i < n; ++i) items[i] = i + 1;
  return subsets_of(items, k);
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace wdc
