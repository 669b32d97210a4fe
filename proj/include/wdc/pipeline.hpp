#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdc/beamforming.hpp"
#include "wdc/metrics.hpp"
#include "wdc/model.hpp"
#include "wdc/scheduler.hpp"

namespace wdc {

struct SimulationConfig {
  double power = 1e4;  // linear, per node
  bool noise = false;
  int tau = 64;
  std::uint64_t seed = 1;
  int workers = 1;
  Tolerances tol;
};

struct ResidualRow {
  std::size_t block = 0;  // 1-based
  int receiver = 0;
  ValueId value;
  bool padding = false;
  double intended_gain = 0.0;  // |h_{k,S_n}^T v|
  double max_residual = 0.0;
  double snr_db = 0.0;  // measured with noise, predicted without
  double relative_error = 0.0;
  int symbol_errors = 0;
  bool ok = false;
};

struct BlockOutcome {
  std::size_t block = 0;  // 1-based
  bool ok = false;
  std::string error;  // set when beamforming or decoding threw
  std::vector<ResidualRow> rows;
};

struct SimulationResult {
  std::vector<BlockOutcome> blocks;
  std::size_t deliveries = 0;
  std::size_t real_deliveries = 0;
  std::size_t real_decoded = 0;
  double max_residual = 0.0;
  double max_relative_error = 0.0;

  bool all_ok() const;
  /// 1-based index of the first failing block.
  std::optional<std::size_t> first_failure() const;
};

/// Beamforms, transmits and decodes every block of `s`. Blocks are
/// independent; with workers > 1 they are spread over threads and the result
/// is identical to the sequential run. Packets are regenerated per block
/// from (seed, q, n); block noise from (seed, block index).
SimulationResult simulate(const Placement& p, const ReduceAssignment& a,
                          const Schedule& s, const ChannelMatrix& H,
                          const SimulationConfig& cfg);

/// Per-block noise seed derived from the run seed.
std::uint64_t block_noise_seed(std::uint64_t seed, std::size_t block);

std::string residual_csv(const SimulationResult& result);

/// Measured T and L for a schedule next to the closed forms. The converse
/// is evaluated on the padded placement the schedule actually serves.
LoadReport load_report(const Placement& p, const ReduceAssignment& a,
                       const Schedule& s);

/// Post-processing SNR per delivered stream, averaged over noise draws:
/// snr = ||a||^2 / mean ||estimate - a||^2, in dB.
struct SnrPoint {
  std::size_t block = 0;
  int receiver = 0;
  ValueId value;
  std::vector<double> snr_db;  // one per power
};

std::vector<SnrPoint> snr_sweep(const Placement& p, const Schedule& s,
                                const ChannelMatrix& H,
                                const std::vector<double>& power_db,
                                int draws, int tau, std::uint64_t seed,
                                const Tolerances& tol = {});

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wdc
