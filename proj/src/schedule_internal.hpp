#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace wdc::detail {

using PoolKey = std::pair<int, std::vector<int>>;  // (receiver k, support S)

struct CompactionProblem {
  int r = 0;
  int blocks_per_step = 0;                       // C(2r-1, r)
  std::vector<std::vector<int>> step_receivers;  // R for every (R, copy) step
  std::map<PoolKey, int> real_count;             // real values in A_{k,S}
};

/// For every step, the pool keys (k, S) that deliver a real value in that
/// step. Minimizes the number of blocks touched by real values with a
/// round-robin decrement of per-step block budgets, each budget change
/// checked by max-flow feasibility.
std::vector<std::set<PoolKey>> compact_real_slots(const CompactionProblem& pb);

}  // namespace wdc::detail
