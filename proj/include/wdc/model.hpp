#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

namespace wdc {

using Rational = boost::rational<std::int64_t>;

/// MapReduce system dimensions: K nodes, N input files, Q reduce functions
/// and the integer computation load r used for placement construction.
struct SystemParams {
  int K = 0;
  int N = 0;
  int Q = 0;
  int r = 0;

  /// Throws Error(kInvalidArgument) naming the first violated constraint.
  void validate() const;
};

/// Identifies intermediate value a_{q,n}: reduce function q applied to file n.
/// Both indices are 1-based.
struct ValueId {
  int q = 0;
  int n = 0;

  auto operator<=>(const ValueId&) const = default;
};

/// Minimal file-count granularity of the symmetric scheme:
/// C(K,r) when 2r >= K, otherwise C(K-r-1,r-1) * C(K,r).
std::int64_t base_file_count(int K, int r);

/// Which files each node maps. Files 1..n_real are real input files and
/// n_real+1..n_total are empty padding files.
class Placement {
 public:
  /// Symmetric placement: pads N up to a multiple of base_file_count(K,r),
  /// then places every group of C(K,r) consecutive files on the r-subsets of
  /// [1..K] in lexicographic order.
  static Placement symmetric(const SystemParams& params);

  /// Arbitrary placement from explicit per-node file sets (1-based). Every
  /// file in [1..n_total] must be mapped somewhere.
  static Placement from_sets(int K, int n_real, int n_total,
                             std::vector<std::vector<int>> mapped_files);

  int K() const { return K_; }
  int n_real() const { return n_real_; }
  int n_total() const { return n_total_; }
  int padding() const { return n_total_ - n_real_; }

  const std::vector<int>& mapped_files(int k) const;
  const std::vector<int>& support_set(int n) const;

  bool caches(int k, int n) const;
  bool is_padding(int n) const { return n > n_real_; }

  /// Sum_k |M_k| / n_total, exact.
  Rational computation_load() const;

  /// The common replication factor when every file sits on the same number
  /// of nodes.
  std::optional<int> uniform_replication() const;

  /// True when the scheduler's regime preconditions hold: uniform
  /// replication r, n_total a multiple of base_file_count(K,r) and every
  /// r-subset of nodes used as a support set equally often.
  bool is_symmetric() const;

  /// The same placement with padding files dropped.
  Placement without_padding() const;

 private:
  Placement() = default;
  void build_supports();

  int K_ = 0;
  int n_real_ = 0;
  int n_total_ = 0;
  std::vector<std::vector<int>> mapped_;   // [k-1] -> sorted files
  std::vector<std::vector<int>> support_;  // [n-1] -> sorted nodes
};

/// W_1..W_K: the reduce functions owned by each node.
class ReduceAssignment {
 public:
  /// W_k = {(k-1)Q/K + 1, ..., kQ/K}.
  static ReduceAssignment contiguous(int K, int Q);

  static ReduceAssignment from_sets(int K, int Q,
                                    std::vector<std::vector<int>> sets);

  int K() const { return static_cast<int>(sets_.size()); }
  int Q() const { return Q_; }
  const std::vector<int>& functions(int k) const;
  int owner(int q) const;

 private:
  int Q_ = 0;
  std::vector<std::vector<int>> sets_;
  std::vector<int> owner_;  // [q-1] -> k
};

/// G_1..G_K, each sorted lexicographically by (q, n).
struct DemandSet {
  std::vector<std::vector<ValueId>> per_node;

  const std::vector<ValueId>& of(int k) const { return per_node.at(k - 1); }
  std::size_t total() const;
};

DemandSet demand_set(const Placement& p, const ReduceAssignment& a);

/// True iff node k needs value v over the air (q in W_k, n not in M_k).
bool is_demanded(const Placement& p, const ReduceAssignment& a, ValueId v,
                 int k);

/// Sum_k (Q/K)(n_total - |M_k|).
std::int64_t total_demand(const Placement& p, int Q);

}  // namespace wdc
