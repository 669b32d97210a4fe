#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "schedule_internal.hpp"
#include "wdc/combinatorics.hpp"
#include "wdc/error.hpp"

namespace wdc::detail {

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS,
                                            boost::directedS>;
using EdgeDesc = Traits::edge_descriptor;
using Graph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<
        boost::edge_capacity_t, long,
        boost::property<boost::edge_residual_capacity_t, long,
                        boost::property<boost::edge_reverse_t, EdgeDesc>>>>;

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : g_(nodes) {}

  EdgeDesc add(std::size_t u, std::size_t v, long cap) {
    auto cap_map = boost::get(boost::edge_capacity, g_);
    auto rev_map = boost::get(boost::edge_reverse, g_);
    const EdgeDesc e = boost::add_edge(u, v, g_).first;
    const EdgeDesc back = boost::add_edge(v, u, g_).first;
    cap_map[e] = cap;
    cap_map[back] = 0;
    rev_map[e] = back;
    rev_map[back] = e;
    return e;
  }

  void set_capacity(EdgeDesc e, long cap) {
    boost::get(boost::edge_capacity, g_)[e] = cap;
  }

  long max_flow(std::size_t s, std::size_t t) {
    return boost::push_relabel_max_flow(g_, s, t);
  }

  long flow(EdgeDesc e) const {
    return boost::get(boost::edge_capacity, g_)[e] -
           boost::get(boost::edge_residual_capacity, g_)[e];
  }

 private:
  Graph g_;
};

}  // namespace

std::vector<std::set<PoolKey>> compact_real_slots(const CompactionProblem& pb) {
  const std::size_t steps = pb.step_receivers.size();
  std::vector<std::set<PoolKey>> out(steps);

  std::vector<PoolKey> keys;
  long total = 0;
  for (const auto& [key, count] : pb.real_count) {
    if (count <= 0) continue;
    keys.push_back(key);
    total += count;
  }
  if (total == 0) return out;

  // Node layout: source, sink, one node per pool key, one per (step, k).
  const std::size_t source = 0;
  const std::size_t sink = 1;
  std::map<PoolKey, std::size_t> key_node;
  for (std::size_t i = 0; i < keys.size(); ++i) key_node[keys[i]] = 2 + i;
  std::size_t next = 2 + keys.size();

  struct SlotArc {
    std::size_t step;
    PoolKey key;
    EdgeDesc edge;
  };
  std::vector<std::vector<std::size_t>> slot_node(steps);
  for (std::size_t j = 0; j < steps; ++j)
    for (std::size_t i = 0; i < pb.step_receivers[j].size(); ++i)
      slot_node[j].push_back(next++);

  FlowNetwork net(next);
  for (const auto& key : keys)
    net.add(source, key_node[key], pb.real_count.at(key));

  std::vector<SlotArc> arcs;
  std::vector<std::vector<EdgeDesc>> sink_edges(steps);
  for (std::size_t j = 0; j < steps; ++j) {
    const auto& R = pb.step_receivers[j];
    for (std::size_t i = 0; i < R.size(); ++i) {
      const int k = R[i];
      std::vector<int> others;
      for (int x : R)
        if (x != k) others.push_back(x);
      for (auto& S : subsets_of(others, pb.r)) {
        PoolKey key{k, std::move(S)};
        auto it = key_node.find(key);
        if (it == key_node.end()) continue;
        arcs.push_back({j, key, net.add(it->second, slot_node[j][i], 1)});
      }
      sink_edges[j].push_back(net.add(slot_node[j][i], sink, pb.blocks_per_step));
    }
  }

  std::vector<int> budget(steps, pb.blocks_per_step);
  auto set_budget = [&](std::size_t j, int b) {
    budget[j] = b;
    for (auto e : sink_edges[j]) net.set_capacity(e, b);
  };

  if (net.max_flow(source, sink) != total)
    fail(ErrorCode::kInternal, "padding compaction: real values do not fit");

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t jj = steps; jj-- > 0;) {
      if (budget[jj] == 0) continue;
      set_budget(jj, budget[jj] - 1);
      if (net.max_flow(source, sink) == total) {
        changed = true;
      } else {
        set_budget(jj, budget[jj] + 1);
      }
    }
  }

  if (net.max_flow(source, sink) != total)
    fail(ErrorCode::kInternal, "padding compaction: final flow incomplete");
  for (const auto& arc : arcs)
    if (net.flow(arc.edge) > 0) out[arc.step].insert(arc.key);
  return out;
}

}  // namespace wdc::detail
