#include "wdc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "wdc/error.hpp"

namespace wdc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct BlockIo {
  PacketMap reference;
  std::vector<PacketMap> side_info;
};

BlockIo block_packets(const Block& block, const Placement& p, int tau,
                      std::uint64_t seed) {
  BlockIo io;
  for (const auto& d : block.deliveries)
    io.reference.emplace(d.value, make_packet(d.value, tau, seed,
                                              p.is_padding(d.value.n)));
  for (int k : block.receivers) {
    PacketMap cache;
    for (const auto& d : block.deliveries)
      if (d.receiver != k && p.caches(k, d.value.n))
        cache.emplace(d.value, io.reference.at(d.value));
    io.side_info.push_back(std::move(cache));
  }
  return io;
}

BlockOutcome run_block(const Placement& p, const Block& block,
                       std::size_t index, const ChannelMatrix& H,
                       const SimulationConfig& cfg) {
  BlockOutcome out;
  out.block = index + 1;
  try {
    const auto plan = build_block_beamformers(H, block, p, cfg.tol);
    const auto io = block_packets(block, p, cfg.tau, cfg.seed);
    const auto y = transmit_block(H, block, plan, io.reference, cfg.power,
                                  cfg.noise, block_noise_seed(cfg.seed, index));
    const auto rx = decode_block(H, plan, block, p, io.side_info, y,
                                 io.reference, cfg.power, cfg.noise, cfg.tol);
    out.ok = true;
    for (const auto& r : rx.receivers) {
      ResidualRow row;
      row.block = out.block;
      row.receiver = r.receiver;
      row.value = r.value;
      row.padding = r.padding;
      row.intended_gain = std::abs(r.intended_gain);
      row.max_residual = r.residual_interference;
      row.snr_db = cfg.noise ? r.measured_snr_db : r.predicted_snr_db;
      row.relative_error = r.relative_error;
      row.symbol_errors = r.symbol_errors;
      // Leakage above zf_tol^2 counts as a failure even if decoding passed.
      row.ok = r.ok &&
               r.residual_interference <= cfg.tol.zf_tol * cfg.tol.zf_tol;
      out.ok = out.ok && row.ok;
      out.rows.push_back(row);
    }
  } catch (const Error& e) {
    out.ok = false;
    out.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return out;
}

}  // namespace

std::uint64_t block_noise_seed(std::uint64_t seed, std::size_t block) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(block));
}

bool SimulationResult::all_ok() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const BlockOutcome& b) { return b.ok; });
}

std::optional<std::size_t> SimulationResult::first_failure() const {
  for (const auto& b : blocks)
    if (!b.ok) return b.block;
  return std::nullopt;
}

SimulationResult simulate(const Placement& p, const ReduceAssignment& a,
                          const Schedule& s, const ChannelMatrix& H,
                          const SimulationConfig& cfg) {
  require(cfg.power > 0.0, "power must be positive");
  require(cfg.tau >= 1, "tau must be >= 1");
  require(cfg.workers >= 1, "workers must be >= 1");
  require(H.K() == p.K() && a.K() == p.K() && s.K == p.K(),
          "simulate: K differs between placement, assignment, schedule and "
          "channel");

  SimulationResult result;
  result.blocks.resize(s.blocks.size());
  const auto workers = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.workers), std::max<std::size_t>(1, s.T()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < s.T(); ++i)
      result.blocks[i] = run_block(p, s.blocks[i], i, H, cfg);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < s.T(); i = next++)
          result.blocks[i] = run_block(p, s.blocks[i], i, H, cfg);
      });
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < s.T(); ++i) {
    const auto& block = s.blocks[i];
    result.deliveries += block.deliveries.size();
    for (const auto& d : block.deliveries)
      if (!p.is_padding(d.value.n)) ++result.real_deliveries;
    for (const auto& row : result.blocks[i].rows) {
      if (!row.padding && row.ok) ++result.real_decoded;
      result.max_residual = std::max(result.max_residual, row.max_residual);
      result.max_relative_error =
          std::max(result.max_relative_error, row.relative_error);
    }
  }
  return result;
}

std::string residual_csv(const SimulationResult& result) {
  std::ostringstream out;
  out << "block,receiver,intended_gain,max_residual,snr_db\n";
  for (const auto& b : result.blocks)
    for (const auto& row : b.rows)
      out << row.block << ',' << row.receiver << ','
          << format_decimal(row.intended_gain) << ','
          << format_decimal(row.max_residual) << ','
          << format_decimal(row.snr_db) << '\n';
  return out.str();
}

LoadReport load_report(const Placement& p, const ReduceAssignment& a,
                       const Schedule& s) {
  LoadReport row;
  row.K = p.K();
  row.Q = a.Q();
  row.N = p.n_real();
  row.r = p.computation_load();
  row.L_optimal = time_shared_load(p.K(), row.r);
  if (row.integral_r()) {
    const int r = static_cast<int>(row.r.numerator());
    row.L_uncoded = uncoded_tdma_load(p.K(), r);
    row.L_coded = coded_tdma_load(p.K(), r);
  }
  row.T_measured = static_cast<std::int64_t>(s.T());
  row.T_effective = static_cast<std::int64_t>(effective_block_count(s, p));
  row.L_measured = Rational(*row.T_measured,
                            static_cast<std::int64_t>(p.n_real()) * a.Q());
  row.padding = p.padding();
  row.converse_T =
      converse_lower_bound(ReplicationProfile::from_placement(p), p.K(), a.Q())
          .blocks;
  return row;
}

std::vector<SnrPoint> snr_sweep(const Placement& p, const Schedule& s,
                                const ChannelMatrix& H,
                                const std::vector<double>& power_db,
                                int draws, int tau, std::uint64_t seed,
                                const Tolerances& tol) {
  require(draws >= 1, "draws must be >= 1");
  require(!power_db.empty(), "power grid must not be empty");
  std::vector<SnrPoint> points;
  for (std::size_t b = 0; b < s.T(); ++b) {
    const Block& block = s.blocks[b];
    const auto plan = build_block_beamformers(H, block, p, tol);
    const auto io = block_packets(block, p, tau, seed);
    const std::size_t first = points.size();
    for (const auto& d : block.deliveries)
      if (!p.is_padding(d.value.n))
        points.push_back(SnrPoint{b + 1, d.receiver, d.value, {}});
    for (double pdb : power_db) {
      const double power = std::pow(10.0, pdb / 10.0);
      std::vector<double> err(block.receivers.size(), 0.0);
      std::vector<double> sig(block.receivers.size(), 0.0);
      for (int draw = 0; draw < draws; ++draw) {
        const auto noise_seed = splitmix64(
            block_noise_seed(seed, b) ^ static_cast<std::uint64_t>(draw));
        const auto y = transmit_block(H, block, plan, io.reference, power,
                                      true, noise_seed);
        const auto rx = decode_block(H, plan, block, p, io.side_info, y,
                                     io.reference, power, true, tol);
        for (std::size_t i = 0; i < rx.receivers.size(); ++i) {
          const auto& r = rx.receivers[i];
          const auto& truth = io.reference.at(r.value).symbols;
          err[i] += (r.estimate - truth).squaredNorm();
          sig[i] += truth.squaredNorm();
        }
      }
      std::size_t j = first;
      for (std::size_t i = 0; i < block.deliveries.size(); ++i) {
        if (p.is_padding(block.deliveries[i].value.n)) continue;
        points[j++].snr_db.push_back(10.0 * std::log10(sig[i] / err[i]));
      }
    }
  }
  return points;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2,
          "fit_slope needs two or more paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  require(sxx > 0.0, "fit_slope: x values must not all coincide");
  return sxy / sxx;
}

}  // namespace wdc
