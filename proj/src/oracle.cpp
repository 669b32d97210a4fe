#include <algorithm>
#include <limits>

#include "wdc/error.hpp"
#include "wdc/scheduler.hpp"

namespace wdc {

OracleResult brute_force_min_blocks(const Placement& p,
                                    const ReduceAssignment& a, int cap) {
  require(cap >= 0, "oracle: cap must be non-negative");
  const DemandSet demand = demand_set(p, a);
  std::vector<Delivery> items;
  for (int k = 1; k <= p.K(); ++k)
    for (const ValueId& v : demand.of(k)) items.push_back({v, k});
  if (items.size() > kOracleDemandLimit)
    fail(ErrorCode::kLimitExceeded,
         "oracle: demand of " + std::to_string(items.size()) +
             " values exceeds the search guard of " +
             std::to_string(kOracleDemandLimit));

  const std::size_t m = items.size();
  const std::uint32_t full = (1u << m) - 1u;
  auto block_of = [&](std::uint32_t mask) {
    Block b;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        b.deliveries.push_back(items[i]);
        b.receivers.push_back(items[i].receiver);
      }
    return b;
  };

  std::vector<char> admissible(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full && m > 0; ++mask)
    admissible[mask] = block_is_admissible(block_of(mask), p) ? 1 : 0;

  constexpr int kUnreached = std::numeric_limits<int>::max() / 2;
  std::vector<int> best(full + 1, kUnreached);
  std::vector<std::uint32_t> choice(full + 1, 0);
  best[0] = 0;
  // Canonical search: the block containing the lowest undelivered value is
  // chosen first, so every partition is enumerated exactly once.
  for (std::uint32_t mask = 1; mask <= full && m > 0; ++mask) {
    const std::uint32_t low = mask & (~mask + 1u);
    const std::uint32_t rest = mask ^ low;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t blk = sub | low;
      if (admissible[blk] && best[mask ^ blk] + 1 < best[mask]) {
        best[mask] = best[mask ^ blk] + 1;
        choice[mask] = blk;
      }
      if (sub == 0) break;
    }
  }

  OracleResult res;
  res.min_blocks = best[full];
  if (res.min_blocks >= kUnreached)
    fail(ErrorCode::kInfeasible, "oracle: demand cannot be partitioned into "
                                 "admissible blocks");
  if (res.min_blocks > cap)
    fail(ErrorCode::kLimitExceeded,
         "oracle: minimum of " + std::to_string(res.min_blocks) +
             " blocks exceeds cap " + std::to_string(cap));
  res.witness = Schedule{p.K(), a.Q(), {}};
  for (std::uint32_t mask = full; mask != 0; mask ^= choice[mask]) {
    Block b = block_of(choice[mask]);
    // receivers ascending, deliveries aligned with them
    std::sort(b.deliveries.begin(), b.deliveries.end(),
              [](const Delivery& x, const Delivery& y) { return x.receiver < y.receiver; });
    b.receivers.clear();
    for (const auto& d : b.deliveries) b.receivers.push_back(d.receiver);
    res.witness.blocks.push_back(std::move(b));
  }
  return res;
}

}  // namespace wdc
