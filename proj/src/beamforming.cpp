#include "wdc/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "wdc/combinatorics.hpp"
#include "wdc/error.hpp"

namespace wdc {

Eigen::VectorXcd zero_forcing_vector(const ChannelMatrix& H,
                                     const std::vector<int>& S,
                                     const std::vector<int>& J,
                                     const Tolerances& tol) {
  require(!S.empty(), "zero_forcing_vector: support set must be non-empty");
  const auto cols = static_cast<Eigen::Index>(S.size());
  if (J.empty()) return Eigen::VectorXcd::Unit(cols, 0);

  Eigen::MatrixXcd a = H.submatrix(J, S);
  const Eigen::Index rows = a.rows();
  const double scale = a.cwiseAbs().maxCoeff();

  // Reduced row echelon form, columns visited left to right.
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index row = 0;
  std::vector<bool> is_pivot(cols, false);
  for (Eigen::Index c = 0; c < cols && row < rows; ++c) {
    Eigen::Index best = row;
    for (Eigen::Index i = row + 1; i < rows; ++i)
      if (std::abs(a(i, c)) > std::abs(a(best, c))) best = i;
    if (std::abs(a(best, c)) <= tol.rank_tol * scale) continue;
    a.row(row).swap(a.row(best));
    a.row(row) /= a(row, c);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != row && a(i, c) != Complex(0.0)) a.row(i) -= a(i, c) * a.row(row);
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++row;
  }

  const auto free_it = std::find(is_pivot.begin(), is_pivot.end(), false);
  if (free_it == is_pivot.end())
    fail(ErrorCode::kInfeasible,
         "zero_forcing_vector: no null space (|S| = " + std::to_string(S.size()) +
             ", |J| = " + std::to_string(J.size()) + ")");
  const auto free_col = static_cast<Eigen::Index>(free_it - is_pivot.begin());

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cols);
  v(free_col) = 1.0;
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    v(pivot_col[i]) = -a(static_cast<Eigen::Index>(i), free_col);
  v.normalize();
  return v;
}

Complex BeamformingPlan::beta(int i, ValueId value) const {
  for (const auto& s : streams) {
    if (s.value != value) continue;
    for (std::size_t j = 0; j < s.support.size(); ++j)
      if (s.support[j] == i) return s.v(static_cast<Eigen::Index>(j));
    return Complex(0.0);
  }
  return Complex(0.0);
}

BeamformingPlan build_block_beamformers(const ChannelMatrix& H,
                                        const Block& block, const Placement& p,
                                        const Tolerances& tol) {
  require(H.K() == p.K(), "build_block_beamformers: channel and placement "
                          "disagree on K");
  std::vector<int> receivers = block.receivers;
  std::sort(receivers.begin(), receivers.end());
  BeamformingPlan plan;
  for (const auto& d : block.deliveries) {
    StreamBeam beam;
    beam.value = d.value;
    beam.receiver = d.receiver;
    beam.support = p.support_set(d.value.n);
    beam.nulled = nulled_receivers(receivers, d.receiver, beam.support);
    beam.v = zero_forcing_vector(H, beam.support, beam.nulled, tol);
    beam.intended_gain =
        H.channel_vector(d.receiver, beam.support).transpose() * beam.v;
    if (std::abs(beam.intended_gain) < tol.gain_floor)
      fail(ErrorCode::kInfeasible,
           "build_block_beamformers: intended gain below floor for a(" +
               std::to_string(d.value.q) + "," + std::to_string(d.value.n) +
               ")");
    plan.streams.push_back(std::move(beam));
  }
  return plan;
}

Packet make_packet(ValueId id, int tau, std::uint64_t seed, bool padding) {
  require(tau >= 1, "make_packet: tau must be >= 1");
  Packet pk{id, Eigen::VectorXcd::Zero(tau)};
  if (padding) return pk;
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id.q),
                    static_cast<std::uint32_t>(id.n)};
  std::mt19937_64 rng(seq);
  const double a = 1.0 / std::sqrt(2.0);
  for (int t = 0; t < tau; ++t) {
    const auto bits = rng();
    pk.symbols(t) = Complex((bits & 1) ? a : -a, (bits & 2) ? a : -a);
  }
  return pk;
}

std::vector<double> stream_amplitudes(const BeamformingPlan& plan,
                                      double power) {
  require(power > 0.0, "transmit power must be positive");
  std::map<int, int> load;
  for (const auto& s : plan.streams)
    for (int i : s.support) ++load[i];
  std::vector<double> amp;
  amp.reserve(plan.streams.size());
  for (const auto& s : plan.streams) {
    int busiest = 1;
    for (int i : s.support) busiest = std::max(busiest, load[i]);
    amp.push_back(std::sqrt(power / busiest));
  }
  return amp;
}

std::vector<Eigen::VectorXcd> node_signals(int K, const BeamformingPlan& plan,
                                           const PacketMap& packets,
                                           double power) {
  const auto amp = stream_amplitudes(plan, power);
  Eigen::Index tau = 0;
  for (const auto& s : plan.streams) {
    auto it = packets.find(s.value);
    if (it == packets.end())
      fail(ErrorCode::kInvalidArgument,
           "transmit_block: missing packet for a(" + std::to_string(s.value.q) +
               "," + std::to_string(s.value.n) + ")");
    if (tau == 0) tau = it->second.symbols.size();
    require(it->second.symbols.size() == tau,
            "transmit_block: packets differ in length");
  }
  std::vector<Eigen::VectorXcd> x(K, Eigen::VectorXcd::Zero(tau));
  for (std::size_t j = 0; j < plan.streams.size(); ++j) {
    const auto& s = plan.streams[j];
    const auto& sym = packets.at(s.value).symbols;
    for (std::size_t m = 0; m < s.support.size(); ++m)
      x[s.support[m] - 1] += (s.v(static_cast<Eigen::Index>(m)) * amp[j]) * sym;
  }
  return x;
}

std::vector<Eigen::VectorXcd> transmit_block(const ChannelMatrix& H,
                                             const Block& block,
                                             const BeamformingPlan& plan,
                                             const PacketMap& packets,
                                             double power, bool noise,
                                             std::uint64_t noise_seed) {
  const auto x = node_signals(H.K(), plan, packets, power);
  const Eigen::Index tau = x.empty() ? 0 : x.front().size();
  std::vector<Eigen::VectorXcd> y;
  y.reserve(block.receivers.size());
  for (int k : block.receivers) {
    Eigen::VectorXcd yk = Eigen::VectorXcd::Zero(tau);
    for (int i = 1; i <= H.K(); ++i) yk += H.at(k, i) * x[i - 1];
    if (noise) {
      std::seed_seq seq{static_cast<std::uint32_t>(noise_seed),
                        static_cast<std::uint32_t>(noise_seed >> 32),
                        static_cast<std::uint32_t>(k)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
      for (Eigen::Index t = 0; t < tau; ++t)
        yk(t) += Complex(gauss(rng), gauss(rng));
    }
    y.push_back(std::move(yk));
  }
  return y;
}

bool BlockReception::all_ok() const {
  return std::all_of(receivers.begin(), receivers.end(),
                     [](const ReceiverResult& r) { return r.ok; });
}

namespace {

Complex qpsk_decision(Complex s) {
  const double a = 1.0 / std::sqrt(2.0);
  return Complex(s.real() >= 0 ? a : -a, s.imag() >= 0 ? a : -a);
}

double to_db(double x) {
  return x > 0.0 ? 10.0 * std::log10(x)
                 : -std::numeric_limits<double>::infinity();
}

}  // namespace

BlockReception decode_block(const ChannelMatrix& H, const BeamformingPlan& plan,
                            const Block& block, const Placement& p,
                            std::span<const PacketMap> side_info,
                            std::span<const Eigen::VectorXcd> raw,
                            const PacketMap& reference, double power,
                            bool noise, const Tolerances& tol) {
  require(side_info.size() == block.receivers.size(),
          "decode_block: side information must be given per receiver");
  require(raw.size() == block.receivers.size(),
          "decode_block: one received signal per receiver expected");
  require(plan.streams.size() == block.deliveries.size(),
          "decode_block: plan does not match block");
  const auto amp = stream_amplitudes(plan, power);
  const auto leak = residual_interference(H, plan, block, p);

  BlockReception out;
  for (std::size_t idx = 0; idx < block.receivers.size(); ++idx) {
    const int k = block.receivers[idx];
    ReceiverResult res;
    res.receiver = k;
    res.raw = raw[idx];
    res.cancelled = raw[idx];
    res.residual_interference = leak[idx];

    std::ptrdiff_t intended = -1;
    for (std::size_t j = 0; j < plan.streams.size(); ++j) {
      const auto& s = plan.streams[j];
      if (s.receiver == k) {
        intended = static_cast<std::ptrdiff_t>(j);
        continue;
      }
      if (!p.caches(k, s.value.n)) continue;  // zero-forced at k
      auto it = side_info[idx].find(s.value);
      if (it == side_info[idx].end())
        fail(ErrorCode::kDecodeFailure,
             "decode_block: receiver " + std::to_string(k) +
                 " lacks side information a(" + std::to_string(s.value.q) +
                 "," + std::to_string(s.value.n) + ")");
      const Complex g = H.channel_vector(k, s.support).transpose() * s.v;
      res.cancelled -= (g * amp[j]) * it->second.symbols;
    }
    if (intended < 0)
      fail(ErrorCode::kDecodeFailure, "decode_block: receiver " +
                                          std::to_string(k) +
                                          " has no intended stream");
    const auto& s = plan.streams[static_cast<std::size_t>(intended)];
    res.value = s.value;
    res.padding = p.is_padding(s.value.n);
    res.intended_gain = s.intended_gain;
    if (std::abs(s.intended_gain) < tol.gain_floor)
      fail(ErrorCode::kDecodeFailure, "decode_block: vanishing intended gain");
    const double a = amp[static_cast<std::size_t>(intended)];
    res.estimate = res.cancelled / (s.intended_gain * a);
    res.predicted_snr_db = to_db(std::norm(s.intended_gain) * a * a);

    auto ref = reference.find(s.value);
    if (ref == reference.end())
      fail(ErrorCode::kInvalidArgument,
           "decode_block: reference packet missing for scoring");
    const Eigen::VectorXcd& truth = ref->second.symbols;
    const double err = (res.estimate - truth).squaredNorm();
    const double sig = truth.squaredNorm();
    if (res.padding || sig == 0.0) {
      // Empty files: nothing to recover.
      res.relative_error = 0.0;
      res.measured_snr_db = res.predicted_snr_db;
      res.ok = true;
    } else {
      res.relative_error = std::sqrt(err / sig);
      res.measured_snr_db = to_db(sig / std::max(err, 1e-300));
      for (Eigen::Index t = 0; t < truth.size(); ++t)
        if (qpsk_decision(res.estimate(t)) != truth(t)) ++res.symbol_errors;
      res.ok = noise ? res.symbol_errors == 0
                     : res.relative_error <= tol.residual_tol;
    }
    out.receivers.push_back(std::move(res));
  }
  return out;
}

std::vector<double> residual_interference(const ChannelMatrix& H,
                                          const BeamformingPlan& plan,
                                          const Block& block,
                                          const Placement& p) {
  std::vector<double> out;
  out.reserve(block.receivers.size());
  for (int k : block.receivers) {
    double worst = 0.0;
    for (const auto& s : plan.streams) {
      if (s.receiver == k || p.caches(k, s.value.n)) continue;
      const Complex g = H.channel_vector(k, s.support).transpose() * s.v;
      worst = std::max(worst, std::norm(g));
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace wdc
