#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wdc/model.hpp"
#include "wdc/scheduler.hpp"

namespace wdc {

using Complex = std::complex<double>;

struct Tolerances {
  double zf_tol = 1e-9;
  double residual_tol = 1e-6;
  double gain_floor = 1e-6;
  double rank_tol = 1e-8;
};

/// K x K channel coefficients h_{k,i}: row = receiver k, column = transmitter
/// i. Indices on the public surface are 1-based.
class ChannelMatrix {
 public:
  static constexpr double kDefaultMinMagnitude = 0.1;
  static constexpr double kDefaultMaxMagnitude = 10.0;
  static constexpr int kMaxRejectionRounds = 100;

  /// Seeded i.i.d. CN(0,1) draw with magnitudes clamped into [h_min, h_max];
  /// redrawn until every tested square submatrix is well conditioned.
  static ChannelMatrix generate(int K, std::uint64_t seed,
                                double h_min = kDefaultMinMagnitude,
                                double h_max = kDefaultMaxMagnitude,
                                double rank_tol = 1e-8);

  static ChannelMatrix from_coefficients(Eigen::MatrixXcd h, double h_min,
                                         double h_max, std::uint64_t seed = 0);

  int K() const { return static_cast<int>(h_.rows()); }
  Complex at(int k, int i) const { return h_(k - 1, i - 1); }
  const Eigen::MatrixXcd& coefficients() const { return h_; }
  double h_min() const { return h_min_; }
  double h_max() const { return h_max_; }
  std::uint64_t seed() const { return seed_; }

  /// h_{k,S} = [h_{k,S^1}, ..., h_{k,S^|S|}]^T, S ascending.
  Eigen::VectorXcd channel_vector(int k, const std::vector<int>& S) const;

  /// Rows = receivers, columns = transmitters.
  Eigen::MatrixXcd submatrix(const std::vector<int>& receivers,
                             const std::vector<int>& transmitters) const;

 private:
  ChannelMatrix(Eigen::MatrixXcd h, double h_min, double h_max,
                std::uint64_t seed)
      : h_(std::move(h)), h_min_(h_min), h_max_(h_max), seed_(seed) {}

  Eigen::MatrixXcd h_;
  double h_min_;
  double h_max_;
  std::uint64_t seed_;
};

/// sigma_min > rank_tol * sigma_max for every square submatrix, exhaustively
/// when there are at most `exhaustive_limit` of them; otherwise all 2x2 ones
/// plus `samples` seeded random larger ones.
bool submatrices_well_conditioned(const Eigen::MatrixXcd& h, double rank_tol,
                                  std::size_t exhaustive_limit = 20000,
                                  std::size_t samples = 2000,
                                  std::uint64_t seed = 0);

/// Unit-norm v with h_{j,S}^T v = 0 for all j in J. Obtained from the reduced
/// row echelon form of H_{J,S} (row pivoting, columns in fixed order): the
/// first free column is set to one. Throws Error(kInfeasible) when H_{J,S}
/// has numerically full column rank, which for generic channels happens
/// exactly when |J| >= |S|.
Eigen::VectorXcd zero_forcing_vector(const ChannelMatrix& H,
                                     const std::vector<int>& S,
                                     const std::vector<int>& J,
                                     const Tolerances& tol = {});

/// Beamformer for one delivered value a_{q,n} -> receiver k.
struct StreamBeam {
  ValueId value;
  int receiver = 0;
  std::vector<int> support;  // S_n, the virtual transmitter
  std::vector<int> nulled;   // J_n
  Eigen::VectorXcd v;        // beta_{i,q,n} for i in S_n, unit norm
  Complex intended_gain;     // h_{k,S_n}^T v
};

struct BeamformingPlan {
  std::vector<StreamBeam> streams;  // aligned with Block::deliveries

  /// beta_{i,q,n}; zero when node i is not part of the stream's support.
  Complex beta(int i, ValueId value) const;
};

BeamformingPlan build_block_beamformers(const ChannelMatrix& H,
                                        const Block& block, const Placement& p,
                                        const Tolerances& tol = {});

/// tau complex symbols. Real values carry seeded QPSK symbols of unit
/// average power; padding values are all-zero.
struct Packet {
  ValueId id;
  Eigen::VectorXcd symbols;
};

Packet make_packet(ValueId id, int tau, std::uint64_t seed, bool padding = false);

using PacketMap = std::map<ValueId, Packet>;

/// Per-stream amplitude sqrt(P / max_{i in S_n} m_i), m_i being the number
/// of streams node i serves in the block. Keeps E|x_i|^2 <= P for all i.
std::vector<double> stream_amplitudes(const BeamformingPlan& plan,
                                      double power);

/// x_1..x_K for the block.
std::vector<Eigen::VectorXcd> node_signals(int K, const BeamformingPlan& plan,
                                           const PacketMap& packets,
                                           double power);

/// y_k for every k in block.receivers (same order). Noise is i.i.d.
/// CN(0,1), drawn from a generator seeded by (noise_seed, receiver).
std::vector<Eigen::VectorXcd> transmit_block(const ChannelMatrix& H,
                                             const Block& block,
                                             const BeamformingPlan& plan,
                                             const PacketMap& packets,
                                             double power, bool noise,
                                             std::uint64_t noise_seed);

struct ReceiverResult {
  int receiver = 0;
  ValueId value;
  bool padding = false;
  Eigen::VectorXcd raw;
  Eigen::VectorXcd cancelled;  // after side-information subtraction
  Eigen::VectorXcd estimate;   // cancelled / (gain * amplitude)
  Complex intended_gain;
  double residual_interference = 0.0;  // leaked power, beam level
  double relative_error = 0.0;         // ||estimate - a|| / ||a||
  double measured_snr_db = 0.0;
  double predicted_snr_db = 0.0;       // |gain|^2 * amplitude^2 / 1
  int symbol_errors = 0;
  bool ok = false;
};

struct BlockReception {
  std::vector<ReceiverResult> receivers;

  bool all_ok() const;
};

/// Side-information cancellation and one-tap decoding at every receiver of
/// the block. side_info[i] holds the packets cached at block.receivers[i];
/// it must cover every co-scheduled value whose file that node maps.
/// `reference` is the transmitted packet content, used only to score the
/// decode: noise off -> ok iff relative error <= residual_tol; noise on ->
/// ok iff every QPSK hard decision is correct.
BlockReception decode_block(const ChannelMatrix& H, const BeamformingPlan& plan,
                            const Block& block, const Placement& p,
                            std::span<const PacketMap> side_info,
                            std::span<const Eigen::VectorXcd> raw,
                            const PacketMap& reference, double power,
                            bool noise, const Tolerances& tol = {});

/// Per receiver of the block: max |h_{k,S_n}^T v|^2 over streams that are
/// neither intended for k nor cancellable from k's cache.
std::vector<double> residual_interference(const ChannelMatrix& H,
                                          const BeamformingPlan& plan,
                                          const Block& block,
                                          const Placement& p);

}  // namespace wdc
