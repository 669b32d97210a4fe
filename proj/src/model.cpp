#include "wdc/model.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "wdc/combinatorics.hpp"
#include "wdc/error.hpp"

namespace wdc {

namespace {

// Keeps padded file counts (and every per-file table) in a sane range.
constexpr std::int64_t kMaxFiles = 50'000'000;

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kLimitExceeded: return "limit exceeded";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kDecodeFailure: return "decode failure";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

void SystemParams::validate() const {
  require(K >= 1, "K must be >= 1 (got " + std::to_string(K) + ")");
  require(N >= K, "N must be >= K (got N=" + std::to_string(N) +
                      ", K=" + std::to_string(K) + ")");
  require(Q >= 1, "Q must be >= 1 (got " + std::to_string(Q) + ")");
  require(Q % K == 0, "Q must be divisible by K (got Q=" + std::to_string(Q) +
                          ", K=" + std::to_string(K) + ")");
  require(r >= 1 && r <= K, "r must be an integer in [1, K] (got r=" +
                                std::to_string(r) + ", K=" +
                                std::to_string(K) + ")");
}

std::int64_t base_file_count(int K, int r) {
  require(K >= 1 && r >= 1 && r <= K, "base_file_count: need 1 <= r <= K");
  if (2 * r >= K) return binomial(K, r);
  return binomial(K - r - 1, r - 1) * binomial(K, r);
}

Placement Placement::symmetric(const SystemParams& params) {
  params.validate();
  const int K = params.K;
  const int r = params.r;
  const std::int64_t n0 = base_file_count(K, r);
  if (n0 <= 0 || n0 > kMaxFiles)
    fail(ErrorCode::kLimitExceeded, "placement granularity N0 too large");
  const std::int64_t copies = (params.N + n0 - 1) / n0;
  const std::int64_t n_total = copies * n0;
  if (n_total > kMaxFiles)
    fail(ErrorCode::kLimitExceeded, "padded file count too large");

  const auto groups = subsets_of_range(K, r);
  const auto group_size = static_cast<std::int64_t>(groups.size());

  Placement p;
  p.K_ = K;
  p.n_real_ = params.N;
  p.n_total_ = static_cast<int>(n_total);
  p.mapped_.assign(K, {});
  for (std::int64_t n = 1; n <= n_total; ++n) {
    for (int k : groups[static_cast<std::size_t>((n - 1) % group_size)])
      p.mapped_[k - 1].push_back(static_cast<int>(n));
  }
  p.build_supports();
  return p;
}

Placement Placement::from_sets(int K, int n_real, int n_total,
                               std::vector<std::vector<int>> mapped_files) {
  require(K >= 1, "placement: K must be >= 1");
  require(n_real >= 1, "placement: n_real must be >= 1");
  require(n_total >= n_real, "placement: n_total must be >= n_real");
  require(static_cast<int>(mapped_files.size()) == K,
          "placement: expected " + std::to_string(K) + " file sets, got " +
              std::to_string(mapped_files.size()));
  Placement p;
  p.K_ = K;
  p.n_real_ = n_real;
  p.n_total_ = n_total;
  for (auto& files : mapped_files) {
    std::sort(files.begin(), files.end());
    require(std::adjacent_find(files.begin(), files.end()) == files.end(),
            "placement: duplicate file index in a node's file set");
    for (int n : files)
      require(n >= 1 && n <= n_total,
              "placement: file index " + std::to_string(n) +
                  " outside [1, " + std::to_string(n_total) + "]");
  }
  p.mapped_ = std::move(mapped_files);
  p.build_supports();
  for (int n = 1; n <= n_total; ++n)
    require(!p.support_[n - 1].empty(),
            "placement: file " + std::to_string(n) + " is not mapped by any node");
  return p;
}

void Placement::build_supports() {
  support_.assign(n_total_, {});
  for (int k = 1; k <= K_; ++k)
    for (int n : mapped_[k - 1]) support_[n - 1].push_back(k);
}

const std::vector<int>& Placement::mapped_files(int k) const {
  require(k >= 1 && k <= K_, "node index " + std::to_string(k) +
                                 " outside [1, " + std::to_string(K_) + "]");
  return mapped_[k - 1];
}

const std::vector<int>& Placement::support_set(int n) const {
  require(n >= 1 && n <= n_total_,
          "file index " + std::to_string(n) + " outside [1, " +
              std::to_string(n_total_) + "]");
  return support_[n - 1];
}

bool Placement::caches(int k, int n) const {
  return contains(mapped_files(k), n);
}

Rational Placement::computation_load() const {
  std::int64_t sum = 0;
  for (const auto& files : mapped_) sum += static_cast<std::int64_t>(files.size());
  return Rational(sum, n_total_);
}

std::optional<int> Placement::uniform_replication() const {
  const auto theta = support_.front().size();
  for (const auto& s : support_)
    if (s.size() != theta) return std::nullopt;
  return static_cast<int>(theta);
}

bool Placement::is_symmetric() const {
  const auto r = uniform_replication();
  if (!r) return false;
  if (*r == K_) return true;
  if (n_total_ % base_file_count(K_, *r) != 0) return false;
  std::map<std::vector<int>, int> uses;
  for (const auto& s : support_) ++uses[s];
  if (static_cast<std::int64_t>(uses.size()) != binomial(K_, *r)) return false;
  const int per_subset = uses.begin()->second;
  return std::all_of(uses.begin(), uses.end(),
                     [&](const auto& kv) { return kv.second == per_subset; });
}

Placement Placement::without_padding() const {
  std::vector<std::vector<int>> sets;
  sets.reserve(K_);
  for (const auto& files : mapped_) {
    std::vector<int> kept;
    for (int n : files)
      if (n <= n_real_) kept.push_back(n);
    sets.push_back(std::move(kept));
  }
  return from_sets(K_, n_real_, n_real_, std::move(sets));
}

ReduceAssignment ReduceAssignment::contiguous(int K, int Q) {
  require(K >= 1, "reduce assignment: K must be >= 1");
  require(Q >= 1 && Q % K == 0,
          "Q must be divisible by K (got Q=" + std::to_string(Q) +
              ", K=" + std::to_string(K) + ")");
  std::vector<std::vector<int>> sets(K);
  const int per = Q / K;
  for (int k = 1; k <= K; ++k)
    for (int q = (k - 1) * per + 1; q <= k * per; ++q) sets[k - 1].push_back(q);
  return from_sets(K, Q, std::move(sets));
}

ReduceAssignment ReduceAssignment::from_sets(int K, int Q,
                                             std::vector<std::vector<int>> sets) {
  require(static_cast<int>(sets.size()) == K,
          "reduce assignment: expected " + std::to_string(K) + " sets");
  require(Q >= 1 && Q % K == 0, "reduce assignment: Q must be divisible by K");
  ReduceAssignment a;
  a.Q_ = Q;
  a.owner_.assign(Q, 0);
  for (int k = 1; k <= K; ++k) {
    auto& s = sets[k - 1];
    std::sort(s.begin(), s.end());
    require(static_cast<int>(s.size()) == Q / K,
            "reduce assignment: |W_" + std::to_string(k) + "| must be Q/K");
    for (int q : s) {
      require(q >= 1 && q <= Q, "reduce assignment: function index " +
                                    std::to_string(q) + " outside [1, Q]");
      require(a.owner_[q - 1] == 0, "reduce assignment: function " +
                                        std::to_string(q) +
                                        " assigned to two nodes");
      a.owner_[q - 1] = k;
    }
  }
  a.sets_ = std::move(sets);
  return a;
}

const std::vector<int>& ReduceAssignment::functions(int k) const {
  require(k >= 1 && k <= K(), "node index out of range");
  return sets_[k - 1];
}

int ReduceAssignment::owner(int q) const {
  require(q >= 1 && q <= Q_, "reduce function index out of range");
  return owner_[q - 1];
}

std::size_t DemandSet::total() const {
  std::size_t t = 0;
  for (const auto& g : per_node) t += g.size();
  return t;
}

DemandSet demand_set(const Placement& p, const ReduceAssignment& a) {
  require(p.K() == a.K(), "demand_set: placement and reduce assignment "
                          "disagree on K");
  DemandSet d;
  d.per_node.resize(p.K());
  for (int k = 1; k <= p.K(); ++k) {
    const auto& mk = p.mapped_files(k);
    for (int q : a.functions(k))
      for (int n = 1; n <= p.n_total(); ++n)
        if (!contains(mk, n)) d.per_node[k - 1].push_back({q, n});
  }
  return d;
}

bool is_demanded(const Placement& p, const ReduceAssignment& a, ValueId v,
                 int k) {
  if (k < 1 || k > p.K() || v.n < 1 || v.n > p.n_total() || v.q < 1 ||
      v.q > a.Q())
    return false;
  return a.owner(v.q) == k && !p.caches(k, v.n);
}

std::int64_t total_demand(const Placement& p, int Q) {
  require(Q >= 1 && Q % p.K() == 0, "total_demand: Q must be divisible by K");
  std::int64_t sum = 0;
  for (int k = 1; k <= p.K(); ++k)
    sum += static_cast<std::int64_t>(Q / p.K()) *
           (p.n_total() - static_cast<std::int64_t>(p.mapped_files(k).size()));
  return sum;
}

}  // namespace wdc
