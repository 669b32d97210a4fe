#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdc/model.hpp"

namespace wdc {

/// (1 - r/K) / min{K, 2r}, integer r in [1, K].
Rational optimal_load(int K, int r);

/// 1 - r/K: one uncoded value per block.
Rational uncoded_tdma_load(int K, int r);

/// (1/r)(1 - r/K): one coded value per block.
Rational coded_tdma_load(int K, int r);

/// Linear interpolation of optimal_load between floor(r) and ceil(r).
Rational time_shared_load(int K, Rational r);

/// Per-file replication counts theta_n = |S_n|, ascending.
struct ReplicationProfile {
  std::vector<int> theta;
  Rational r_avg;

  static ReplicationProfile from_placement(const Placement& p,
                                           bool include_padding = true);
  /// N files, each on r nodes.
  static ReplicationProfile symmetric(std::int64_t N, int r);
  static ReplicationProfile from_theta(std::vector<int> theta);
};

struct ConverseBound {
  Rational sigma_sum;
  std::int64_t blocks = 0;           // ceil(sigma_sum)
  std::int64_t averaged_blocks = 0;  // ceil(C_total / min{2 r_avg, K})
};

ConverseBound converse_lower_bound(const ReplicationProfile& profile, int K,
                                   int Q);

/// One row of the computation/communication tradeoff.
struct LoadReport {
  int K = 0;
  int Q = 0;
  int N = 0;
  Rational r;
  Rational L_optimal;  // time-shared value when r is not an integer
  std::optional<Rational> L_uncoded;
  std::optional<Rational> L_coded;
  std::optional<std::int64_t> T_measured;
  std::optional<std::int64_t> T_effective;  // blocks carrying real values
  std::optional<Rational> L_measured;       // T_measured / (N Q)
  std::optional<std::int64_t> padding;
  std::optional<std::int64_t> converse_T;
  // Set when a published plotted value for this row deviates from the
  // closed form by more than kFigureTolerance.
  bool figure_discrepancy = false;
  std::string figure_note;

  bool integral_r() const { return r.denominator() == 1; }
};

inline constexpr double kFigureTolerance = 0.005;

/// Plotted values of the K = 10 comparison figure, in curve order uncoded,
/// coded, optimal. Empty for other K or non-integer r.
struct PlottedPoint {
  double uncoded;
  double coded;
  double optimal;
};
std::optional<PlottedPoint> published_point(int K, Rational r);

/// Rows sorted by r. With `simulate`, integer-r rows also carry the block
/// count of the symmetric schedule (placement, scheduling and validation,
/// no signal-level simulation).
std::vector<LoadReport> tradeoff_table(int K, int Q, int N,
                                       std::vector<Rational> r_values,
                                       bool simulate);

/// Header K,Q,N,r,L_uncoded,L_coded,L_optimal,T_measured,L_measured,converse_T.
std::string tradeoff_csv(const std::vector<LoadReport>& rows);

/// Human-readable list of flagged rows; empty when none are flagged.
std::string figure_discrepancy_report(const std::vector<LoadReport>& rows);

/// "7/60" style, or the integer when the denominator is one.
std::string to_string(const Rational& x);
double to_double(const Rational& x);
/// %.6g rendering.
std::string format_decimal(double x);
/// Accepts "3", "3/2", "1.5".
Rational parse_rational(const std::string& text);

}  // namespace wdc
