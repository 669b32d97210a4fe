#include "wdc/scheduler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "schedule_internal.hpp"
#include "wdc/combinatorics.hpp"
#include "wdc/error.hpp"

namespace wdc {

namespace {

// Undelivered values of one pool, real files ahead of padding files, each
// part in (q, n) order.
struct ValuePool {
  std::deque<ValueId> real;
  std::deque<ValueId> padding;

  bool empty() const { return real.empty() && padding.empty(); }

  ValueId take_any() {
    auto& from = real.empty() ? padding : real;
    if (from.empty()) fail(ErrorCode::kInternal, "value pool underflow");
    ValueId v = from.front();
    from.pop_front();
    return v;
  }

  ValueId take(bool want_real) {
    auto& from = want_real ? real : padding;
    if (from.empty()) fail(ErrorCode::kInternal, "value pool underflow");
    ValueId v = from.front();
    from.pop_front();
    return v;
  }
};

void sort_pool(ValuePool& pool) {
  std::sort(pool.real.begin(), pool.real.end());
  std::sort(pool.padding.begin(), pool.padding.end());
}

int checked_replication(const Placement& p, const ReduceAssignment& a) {
  require(p.K() == a.K(), "schedule: placement and reduce assignment disagree "
                          "on K");
  require(p.is_symmetric(),
          "schedule: placement is not symmetric (uniform replication over all "
          "r-subsets with n_total a multiple of N0); use validate_schedule or "
          "the oracle for arbitrary placements");
  return *p.uniform_replication();
}

}  // namespace

Schedule schedule(const Placement& p, const ReduceAssignment& a,
                  const ScheduleOptions& opts) {
  const int r = checked_replication(p, a);
  if (r >= p.K()) return Schedule{p.K(), a.Q(), {}};
  if (2 * r >= p.K()) return schedule_high_r(p, a, opts);
  return schedule_low_r(p, a, opts);
}

Schedule schedule_high_r(const Placement& p, const ReduceAssignment& a,
                         const ScheduleOptions&) {
  const int r = checked_replication(p, a);
  const int K = p.K();
  require(2 * r >= K, "schedule_high_r: requires r >= K/2");
  Schedule s{K, a.Q(), {}};
  if (r >= K) return s;

  std::vector<ValuePool> pools(K);
  const DemandSet demand = demand_set(p, a);
  for (int k = 1; k <= K; ++k) {
    for (const ValueId& v : demand.of(k))
      (p.is_padding(v.n) ? pools[k - 1].padding : pools[k - 1].real).push_back(v);
    sort_pool(pools[k - 1]);
  }

  const std::size_t T = demand.of(1).size();
  for (int k = 2; k <= K; ++k)
    if (demand.of(k).size() != T)
      fail(ErrorCode::kInternal, "schedule_high_r: unequal demand sizes");

  std::vector<int> everyone(K);
  for (int k = 1; k <= K; ++k) everyone[k - 1] = k;
  s.blocks.reserve(T);
  for (std::size_t l = 0; l < T; ++l) {
    Block b;
    b.receivers = everyone;
    for (int k = 1; k <= K; ++k) b.deliveries.push_back({pools[k - 1].take_any(), k});
    s.blocks.push_back(std::move(b));
  }
  return s;
}

Schedule schedule_low_r(const Placement& p, const ReduceAssignment& a,
                        const ScheduleOptions& opts) {
  const int r = checked_replication(p, a);
  const int K = p.K();
  require(2 * r < K, "schedule_low_r: requires r < K/2");
  const int Q = a.Q();
  const std::int64_t n0 = base_file_count(K, r);
  const std::int64_t copies = (p.n_total() / n0) * (Q / K);
  const int per_copy = static_cast<int>(binomial(2 * r - 1, r));

  std::map<detail::PoolKey, ValuePool> pools;
  for (int n = 1; n <= p.n_total(); ++n) {
    const auto& S = p.support_set(n);
    for (int k = 1; k <= K; ++k) {
      if (contains(S, k)) continue;
      auto& pool = pools[{k, S}];
      for (int q : a.functions(k))
        (p.is_padding(n) ? pool.padding : pool.real).push_back({q, n});
    }
  }
  for (auto& [key, pool] : pools) sort_pool(pool);

  const auto receiver_sets = subsets_of_range(K, 2 * r);
  std::vector<std::vector<int>> step_receivers;
  for (const auto& R : receiver_sets)
    for (std::int64_t c = 0; c < copies; ++c) step_receivers.push_back(R);

  std::vector<std::set<detail::PoolKey>> real_slots;
  const bool compact = opts.compact_padding && p.padding() > 0 &&
                       step_receivers.size() <= opts.compaction_step_limit;
  if (compact) {
    detail::CompactionProblem pb;
    pb.r = r;
    pb.blocks_per_step = per_copy;
    pb.step_receivers = step_receivers;
    for (const auto& [key, pool] : pools)
      pb.real_count[key] = static_cast<int>(pool.real.size());
    real_slots = detail::compact_real_slots(pb);
  }

  Schedule s{K, Q, {}};
  s.blocks.reserve(step_receivers.size() * per_copy);
  for (std::size_t j = 0; j < step_receivers.size(); ++j) {
    const auto& R = step_receivers[j];
    // Per receiver, the order in which its r-subsets of R\{k} serve as
    // virtual transmitters across the copy's blocks.
    std::vector<std::vector<std::vector<int>>> order;
    for (int k : R) {
      std::vector<int> others;
      for (int x : R)
        if (x != k) others.push_back(x);
      auto subsets = subsets_of(others, r);
      if (compact) {
        std::stable_partition(subsets.begin(), subsets.end(),
                              [&](const std::vector<int>& S) {
                                return real_slots[j].count({k, S}) > 0;
                              });
      }
      order.push_back(std::move(subsets));
    }
    for (int i = 0; i < per_copy; ++i) {
      Block b;
      b.receivers = R;
      for (std::size_t pos = 0; pos < R.size(); ++pos) {
        const int k = R[pos];
        const auto& S = order[pos][i];
        auto it = pools.find({k, S});
        if (it == pools.end() || it->second.empty())
          fail(ErrorCode::kInternal, "schedule_low_r: A_{k,S} exhausted");
        const ValueId v = compact ? it->second.take(real_slots[j].count({k, S}) > 0)
                                  : it->second.take_any();
        b.deliveries.push_back({v, k});
      }
      s.blocks.push_back(std::move(b));
    }
  }
  for (const auto& [key, pool] : pools)
    if (!pool.empty())
      fail(ErrorCode::kInternal, "schedule_low_r: undelivered values remain");
  return s;
}

std::vector<int> nulled_receivers(const std::vector<int>& receivers, int k,
                                  const std::vector<int>& support) {
  std::vector<int> j;
  for (int x : receivers)
    if (x != k && !contains(support, x)) j.push_back(x);
  return j;
}

bool block_is_admissible(const Block& block, const Placement& p) {
  if (block.deliveries.size() != block.receivers.size()) return false;
  std::vector<int> intended;
  for (const auto& d : block.deliveries) intended.push_back(d.receiver);
  std::sort(intended.begin(), intended.end());
  std::vector<int> receivers = block.receivers;
  std::sort(receivers.begin(), receivers.end());
  if (intended != receivers) return false;
  if (std::adjacent_find(receivers.begin(), receivers.end()) != receivers.end())
    return false;
  for (const auto& d : block.deliveries) {
    if (d.value.n < 1 || d.value.n > p.n_total()) return false;
    const auto& S = p.support_set(d.value.n);
    const auto J = nulled_receivers(receivers, d.receiver, S);
    if (static_cast<int>(J.size()) > static_cast<int>(S.size()) - 1) return false;
  }
  return true;
}

bool is_vacuous(const Block& block, const Placement& p) {
  return std::all_of(block.deliveries.begin(), block.deliveries.end(),
                     [&](const Delivery& d) { return p.is_padding(d.value.n); });
}

std::size_t effective_block_count(const Schedule& s, const Placement& p) {
  return static_cast<std::size_t>(
      std::count_if(s.blocks.begin(), s.blocks.end(),
                    [&](const Block& b) { return !is_vacuous(b, p); }));
}

Schedule drop_padding(const Schedule& s, const Placement& p) {
  Schedule out{s.K, s.Q, {}};
  for (const auto& b : s.blocks) {
    Block kept;
    for (const auto& d : b.deliveries) {
      if (p.is_padding(d.value.n)) continue;
      kept.deliveries.push_back(d);
      kept.receivers.push_back(d.receiver);
    }
    if (kept.deliveries.empty()) continue;
    std::sort(kept.receivers.begin(), kept.receivers.end());
    out.blocks.push_back(std::move(kept));
  }
  return out;
}

FeasibilityReport validate_schedule(const Schedule& s, const Placement& p,
                                    const ReduceAssignment& a) {
  FeasibilityReport rep;
  auto violation = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  const int K = p.K();
  if (a.K() != K || s.K != K)
    violation("K mismatch between schedule, placement and reduce assignment");

  std::set<ValueId> delivered;
  for (std::size_t l = 0; l < s.blocks.size(); ++l) {
    const Block& b = s.blocks[l];
    const std::string where = "block " + std::to_string(l + 1) + ": ";
    BlockCheck check;
    check.index = l + 1;
    check.deliveries = b.deliveries.size();

    std::vector<int> receivers = b.receivers;
    std::sort(receivers.begin(), receivers.end());
    if (std::adjacent_find(receivers.begin(), receivers.end()) != receivers.end())
      violation(where + "duplicate receiver");
    for (int k : receivers)
      if (k < 1 || k > K) violation(where + "receiver " + std::to_string(k) + " out of range");
    if (b.deliveries.size() != b.receivers.size())
      violation(where + "|D| = " + std::to_string(b.deliveries.size()) +
                " differs from |R| = " + std::to_string(b.receivers.size()));

    std::vector<int> intended;
    int min_theta = K;
    bool any_padding_only = !b.deliveries.empty();
    for (const auto& d : b.deliveries) {
      intended.push_back(d.receiver);
      const std::string item = where + "a(" + std::to_string(d.value.q) + "," +
                               std::to_string(d.value.n) + ")->" +
                               std::to_string(d.receiver) + ": ";
      if (d.value.n < 1 || d.value.n > p.n_total() || d.value.q < 1 ||
          d.value.q > a.Q()) {
        violation(item + "value index out of range");
        any_padding_only = false;
        continue;
      }
      if (!p.is_padding(d.value.n)) any_padding_only = false;
      if (!contains(receivers, d.receiver))
        violation(item + "intended receiver not in R");
      if (!is_demanded(p, a, d.value, d.receiver))
        violation(item + "value not demanded by its receiver");
      if (!delivered.insert(d.value).second)
        violation(item + "value delivered more than once");

      const auto& S = p.support_set(d.value.n);
      const auto J = nulled_receivers(receivers, d.receiver, S);
      ValueCheck vc;
      vc.value = d.value;
      vc.receiver = d.receiver;
      vc.support_size = static_cast<int>(S.size());
      vc.nulled = static_cast<int>(J.size());
      vc.zf_slack = vc.support_size - 1 - vc.nulled;
      if (vc.zf_slack < 0)
        violation(item + "|J_n| = " + std::to_string(vc.nulled) +
                  " exceeds |S_n| - 1 = " + std::to_string(vc.support_size - 1));
      min_theta = std::min(min_theta, vc.support_size);
      check.values.push_back(vc);
    }
    std::sort(intended.begin(), intended.end());
    if (std::adjacent_find(intended.begin(), intended.end()) != intended.end())
      violation(where + "two deliveries share an intended receiver");
    check.bound = std::min(2 * min_theta, K);
    check.vacuous = any_padding_only;
    if (static_cast<int>(b.deliveries.size()) > check.bound)
      violation(where + "|D| = " + std::to_string(b.deliveries.size()) +
                " exceeds min{2 min theta, K} = " + std::to_string(check.bound));
    rep.per_block.push_back(std::move(check));
  }

  if (a.K() == K) {
    const DemandSet demand = demand_set(p, a);
    std::size_t missing = 0;
    for (const auto& g : demand.per_node)
      for (const ValueId& v : g)
        if (!delivered.count(v)) {
          if (missing < 20)
            violation("value a(" + std::to_string(v.q) + "," +
                      std::to_string(v.n) + ") never delivered");
          ++missing;
        }
    if (missing > 20)
      violation(std::to_string(missing - 20) + " further undelivered values");
  }
  return rep;
}

std::string render_text(const FeasibilityReport& report) {
  std::ostringstream os;
  os << "block  |D|  bound  min_zf_slack  vacuous\n";
  for (const auto& b : report.per_block) {
    int min_slack = 0;
    bool first = true;
    for (const auto& v : b.values) {
      min_slack = first ? v.zf_slack : std::min(min_slack, v.zf_slack);
      first = false;
    }
    char line[96];
    std::snprintf(line, sizeof line, "%5zu  %3zu  %5d  %12s  %7s\n", b.index,
                  b.deliveries, b.bound,
                  first ? "-" : std::to_string(min_slack).c_str(),
                  b.vacuous ? "yes" : "no");
    os << line;
  }
  os << (report.ok ? "feasible" : "INFEASIBLE") << " ("
     << report.violations.size() << " violations)\n";
  for (const auto& v : report.violations) os << "  - " << v << '\n';
  return os.str();
}

}  // namespace wdc
