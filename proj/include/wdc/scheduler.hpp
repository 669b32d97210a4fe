#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wdc/model.hpp"

namespace wdc {

struct Delivery {
  ValueId value;
  int receiver = 0;

  auto operator<=>(const Delivery&) const = default;
};

/// One transmission block: receivers R_l (ascending) and the deliveries D_l,
/// one per receiver, stored in receiver order.
struct Block {
  std::vector<int> receivers;
  std::vector<Delivery> deliveries;

  bool operator==(const Block&) const = default;
};

struct Schedule {
  int K = 0;
  int Q = 0;
  std::vector<Block> blocks;

  std::size_t T() const { return blocks.size(); }
  bool operator==(const Schedule&) const = default;
};

struct ScheduleOptions {
  // With padding files present, choose which A_{k,S} elements go where so
  // that real deliveries occupy as few blocks as possible. T is unchanged.
  bool compact_padding = true;
  // Compaction solves repeated max-flow problems; above this many
  // (receiver set, copy) steps it is skipped.
  std::size_t compaction_step_limit = 512;
};

/// Shuffle schedule for a symmetric placement. Dispatches to
/// schedule_high_r when 2r >= K and to schedule_low_r otherwise. Returns an
/// empty schedule when nothing has to be shuffled (r = K).
Schedule schedule(const Placement& p, const ReduceAssignment& a,
                  const ScheduleOptions& opts = {});

/// Every block serves all K receivers, one value each. Picks per receiver the
/// smallest undelivered (q, n), real files before padding files.
Schedule schedule_high_r(const Placement& p, const ReduceAssignment& a,
                         const ScheduleOptions& opts = {});

/// Receiver sets R of size 2r in lexicographic order; per R, (alpha+1)Q/K
/// copies of C(2r-1, r) blocks. In block i of a copy receiver k gets one
/// value from A_{k,S_{k,i}}, where S_{k,i} runs over the r-subsets of R\{k}.
Schedule schedule_low_r(const Placement& p, const ReduceAssignment& a,
                        const ScheduleOptions& opts = {});

/// J_n = R \ ({k} u S_n): receivers where the stream must be zero-forced.
std::vector<int> nulled_receivers(const std::vector<int>& receivers, int k,
                                  const std::vector<int>& support);

/// Counting admissibility of a single block: distinct receivers matching the
/// deliveries and |J_n| <= |S_n| - 1 for every delivered value.
bool block_is_admissible(const Block& block, const Placement& p);

bool is_vacuous(const Block& block, const Placement& p);

/// Blocks carrying at least one real (non-padding) delivery.
std::size_t effective_block_count(const Schedule& s, const Placement& p);

/// Drops padding deliveries, shrinks receiver sets accordingly and removes
/// blocks left empty.
Schedule drop_padding(const Schedule& s, const Placement& p);

struct ValueCheck {
  ValueId value;
  int receiver = 0;
  int support_size = 0;
  int nulled = 0;    // |J_n|
  int zf_slack = 0;  // |S_n| - 1 - |J_n|
};

struct BlockCheck {
  std::size_t index = 0;  // 1-based
  std::size_t deliveries = 0;
  int bound = 0;  // min{2 min theta, K}
  bool vacuous = false;
  std::vector<ValueCheck> values;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<BlockCheck> per_block;
  std::vector<std::string> violations;
};

/// Checks an arbitrary schedule against an arbitrary placement: block shape,
/// demand membership, zero-forcing counting, disjointness and coverage.
/// Violations are collected, never thrown.
FeasibilityReport validate_schedule(const Schedule& s, const Placement& p,
                                    const ReduceAssignment& a);

std::string render_text(const FeasibilityReport& report);

inline constexpr std::size_t kOracleDemandLimit = 12;
inline constexpr int kDefaultOracleCap = 8;

struct OracleResult {
  int min_blocks = 0;
  Schedule witness;
};

/// Exact minimum block count over all partitions of the demand set into
/// counting-admissible blocks. Exhaustive search memoized on the set of
/// delivered values; demand is limited to kOracleDemandLimit values.
OracleResult brute_force_min_blocks(const Placement& p,
                                    const ReduceAssignment& a,
                                    int cap = kDefaultOracleCap);

}  // namespace wdc
