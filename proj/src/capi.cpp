#include "wdc/wdc.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "wdc/error.hpp"
#include "wdc/json_io.hpp"
#include "wdc/metrics.hpp"
#include "wdc/pipeline.hpp"
#include "wdc/scheduler.hpp"

struct wdc_system {
  wdc::Placement placement;
  wdc::ReduceAssignment assignment;
};

struct wdc_schedule {
  wdc::Schedule schedule;
};

struct wdc_channel {
  wdc::ChannelMatrix H;
};

struct wdc_simulation {
  wdc::SimulationResult result;
};

namespace {

thread_local std::string g_last_error;

wdc_status status_of(wdc::ErrorCode code) {
  switch (code) {
    case wdc::ErrorCode::kInvalidArgument: return WDC_ERR_INVALID_ARGUMENT;
    case wdc::ErrorCode::kInfeasible: return WDC_ERR_INFEASIBLE;
    case wdc::ErrorCode::kLimitExceeded: return WDC_ERR_LIMIT_EXCEEDED;
    case wdc::ErrorCode::kParse: return WDC_ERR_PARSE;
    case wdc::ErrorCode::kDecodeFailure: return WDC_ERR_DECODE;
    case wdc::ErrorCode::kInternal: return WDC_ERR_INTERNAL;
  }
  return WDC_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
wdc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return WDC_OK;
  } catch (const wdc::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return WDC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WDC_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr)
    wdc::fail(wdc::ErrorCode::kInvalidArgument,
              std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_string(char** out, const std::string& s) {
  if (out != nullptr) *out = dup_string(s);
}

wdc_rational to_c(const wdc::Rational& x) {
  return {x.numerator(), x.denominator()};
}

wdc::Rational from_c(wdc_rational x) {
  if (x.den == 0)
    wdc::fail(wdc::ErrorCode::kInvalidArgument, "rational with zero denominator");
  return wdc::Rational(x.num, x.den);
}

wdc_converse to_c(const wdc::ConverseBound& b) {
  return {to_c(b.sigma_sum), b.blocks, b.averaged_blocks};
}

void check_pair(const wdc_system* sys, const wdc_schedule* s) {
  need(sys, "system");
  need(s, "schedule");
  if (s->schedule.K != sys->placement.K())
    wdc::fail(wdc::ErrorCode::kInvalidArgument,
              "schedule and system disagree on K");
}

}  // namespace

extern "C" {

const char* wdc_version(void) { return "0.1.0"; }

const char* wdc_status_name(wdc_status status) {
  switch (status) {
    case WDC_OK: return "ok";
    case WDC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WDC_ERR_INFEASIBLE: return "infeasible";
    case WDC_ERR_LIMIT_EXCEEDED: return "limit exceeded";
    case WDC_ERR_PARSE: return "parse error";
    case WDC_ERR_DECODE: return "decode failure";
    case WDC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* wdc_last_error(void) { return g_last_error.c_str(); }

void wdc_string_free(char* s) { std::free(s); }

wdc_status wdc_system_symmetric(int K, int N, int Q, int r, wdc_system** out) {
  return guarded([&] {
    need(out, "out");
    wdc::SystemParams params{K, N, Q, r};
    params.validate();
    *out = new wdc_system{wdc::Placement::symmetric(params),
                          wdc::ReduceAssignment::contiguous(K, Q)};
  });
}

wdc_status wdc_system_from_json(const char* json, wdc_system** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    auto doc = wdc::placement_from_json(wdc::parse_json(json, "placement"));
    *out = new wdc_system{std::move(doc.placement), std::move(doc.assignment)};
  });
}

wdc_status wdc_system_to_json(const wdc_system* sys, char** out) {
  return guarded([&] {
    need(sys, "system");
    need(out, "out");
    *out = dup_string(
        wdc::placement_to_json(sys->placement, sys->assignment).dump());
  });
}

wdc_status wdc_system_without_padding(const wdc_system* sys, wdc_system** out) {
  return guarded([&] {
    need(sys, "system");
    need(out, "out");
    *out = new wdc_system{sys->placement.without_padding(), sys->assignment};
  });
}

void wdc_system_free(wdc_system* sys) { delete sys; }

wdc_status wdc_system_get_info(const wdc_system* sys, wdc_system_info* out) {
  return guarded([&] {
    need(sys, "system");
    need(out, "out");
    const auto& p = sys->placement;
    out->K = p.K();
    out->Q = sys->assignment.Q();
    out->n_real = p.n_real();
    out->n_total = p.n_total();
    out->padding = p.padding();
    out->computation_load = to_c(p.computation_load());
    out->total_demand = wdc::total_demand(p, sys->assignment.Q());
    out->symmetric = p.is_symmetric() ? 1 : 0;
  });
}

wdc_status wdc_system_support(const wdc_system* sys, int n, int* nodes,
                              size_t cap, size_t* len) {
  return guarded([&] {
    need(sys, "system");
    need(len, "len");
    const auto& S = sys->placement.support_set(n);
    *len = S.size();
    if (cap < S.size())
      wdc::fail(wdc::ErrorCode::kInvalidArgument,
                "support buffer too small: need " + std::to_string(S.size()));
    if (!S.empty()) need(nodes, "nodes");
    std::copy(S.begin(), S.end(), nodes);
  });
}

wdc_status wdc_schedule_build(const wdc_system* sys, int compact_padding,
                              wdc_schedule** out) {
  return guarded([&] {
    need(sys, "system");
    need(out, "out");
    wdc::ScheduleOptions opts;
    opts.compact_padding = compact_padding != 0;
    *out = new wdc_schedule{
        wdc::schedule(sys->placement, sys->assignment, opts)};
  });
}

wdc_status wdc_schedule_from_json(const wdc_system* sys, const char* json,
                                  wdc_schedule** out) {
  return guarded([&] {
    need(sys, "system");
    need(json, "json");
    need(out, "out");
    *out = new wdc_schedule{wdc::schedule_from_json(
        wdc::parse_json(json, "schedule"), sys->placement.K(),
        sys->assignment.Q())};
  });
}

wdc_status wdc_schedule_to_json(const wdc_schedule* s, char** out) {
  return guarded([&] {
    need(s, "schedule");
    need(out, "out");
    *out = dup_string(wdc::schedule_to_json(s->schedule).dump());
  });
}

size_t wdc_schedule_block_count(const wdc_schedule* s) {
  return s == nullptr ? 0 : s->schedule.T();
}

wdc_status wdc_schedule_effective_count(const wdc_schedule* s,
                                        const wdc_system* sys, size_t* out) {
  return guarded([&] {
    check_pair(sys, s);
    need(out, "out");
    *out = wdc::effective_block_count(s->schedule, sys->placement);
  });
}

wdc_status wdc_schedule_drop_padding(const wdc_schedule* s,
                                     const wdc_system* sys,
                                     wdc_schedule** out) {
  return guarded([&] {
    check_pair(sys, s);
    need(out, "out");
    *out = new wdc_schedule{wdc::drop_padding(s->schedule, sys->placement)};
  });
}

void wdc_schedule_free(wdc_schedule* s) { delete s; }

wdc_status wdc_validate(const wdc_system* sys, const wdc_schedule* s,
                        int* feasible, char** text, char** json) {
  return guarded([&] {
    check_pair(sys, s);
    need(feasible, "feasible");
    const auto report =
        wdc::validate_schedule(s->schedule, sys->placement, sys->assignment);
    *feasible = report.ok ? 1 : 0;
    put_string(text, wdc::render_text(report));
    put_string(json, wdc::report_to_json(report).dump());
  });
}

wdc_status wdc_oracle(const wdc_system* sys, int cap, int* min_blocks,
                      wdc_schedule** witness) {
  return guarded([&] {
    need(sys, "system");
    need(min_blocks, "min_blocks");
    auto res =
        wdc::brute_force_min_blocks(sys->placement, sys->assignment, cap);
    *min_blocks = res.min_blocks;
    if (witness != nullptr)
      *witness = new wdc_schedule{std::move(res.witness)};
  });
}

wdc_status wdc_converse_bound(const wdc_system* sys, int include_padding,
                              wdc_converse* out) {
  return guarded([&] {
    need(sys, "system");
    need(out, "out");
    *out = to_c(wdc::converse_lower_bound(
        wdc::ReplicationProfile::from_placement(sys->placement,
                                                include_padding != 0),
        sys->placement.K(), sys->assignment.Q()));
  });
}

wdc_status wdc_converse_bound_theta(int K, int Q, const int* theta, size_t n,
                                    wdc_converse* out) {
  return guarded([&] {
    need(theta, "theta");
    need(out, "out");
    *out = to_c(wdc::converse_lower_bound(
        wdc::ReplicationProfile::from_theta(std::vector<int>(theta, theta + n)),
        K, Q));
  });
}

wdc_status wdc_load_optimal(int K, wdc_rational r, wdc_rational* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_c(wdc::time_shared_load(K, from_c(r)));
  });
}

wdc_status wdc_load_uncoded_tdma(int K, int r, wdc_rational* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_c(wdc::uncoded_tdma_load(K, r));
  });
}

wdc_status wdc_load_coded_tdma(int K, int r, wdc_rational* out) {
  return guarded([&] {
    need(out, "out");
    *out = to_c(wdc::coded_tdma_load(K, r));
  });
}

wdc_status wdc_tradeoff(int K, int Q, int N, const wdc_rational* r, size_t n,
                        int simulate, char** csv, char** report, char** json) {
  return guarded([&] {
    need(r, "r");
    std::vector<wdc::Rational> grid;
    for (size_t i = 0; i < n; ++i) grid.push_back(from_c(r[i]));
    const auto rows = wdc::tradeoff_table(K, Q, N, grid, simulate != 0);
    std::string csv_s = wdc::tradeoff_csv(rows);
    std::string report_s = wdc::figure_discrepancy_report(rows);
    std::string json_s;
    if (json != nullptr) {
      wdc::Json arr = wdc::Json::array();
      for (const auto& row : rows) arr.push_back(wdc::load_report_to_json(row));
      json_s = arr.dump();
    }
    // Allocate only after everything that can throw has run.
    put_string(csv, csv_s);
    put_string(report, report_s);
    put_string(json, json_s);
  });
}

wdc_status wdc_channel_generate(int K, uint64_t seed, double h_min,
                                double h_max, double rank_tol,
                                wdc_channel** out) {
  return guarded([&] {
    need(out, "out");
    *out = new wdc_channel{
        wdc::ChannelMatrix::generate(K, seed, h_min, h_max, rank_tol)};
  });
}

wdc_status wdc_channel_from_json(const char* json, wdc_channel** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new wdc_channel{
        wdc::channel_from_json(wdc::parse_json(json, "channel"))};
  });
}

wdc_status wdc_channel_to_json(const wdc_channel* H, char** out) {
  return guarded([&] {
    need(H, "channel");
    need(out, "out");
    *out = dup_string(wdc::channel_to_json(H->H).dump());
  });
}

void wdc_channel_free(wdc_channel* H) { delete H; }

void wdc_sim_config_default(wdc_sim_config* cfg) {
  if (cfg == nullptr) return;
  const wdc::SimulationConfig d;
  cfg->power = d.power;
  cfg->noise = d.noise ? 1 : 0;
  cfg->tau = d.tau;
  cfg->seed = d.seed;
  cfg->workers = d.workers;
  cfg->zf_tol = d.tol.zf_tol;
  cfg->residual_tol = d.tol.residual_tol;
  cfg->gain_floor = d.tol.gain_floor;
  cfg->rank_tol = d.tol.rank_tol;
}

wdc_status wdc_simulate(const wdc_system* sys, const wdc_schedule* s,
                        const wdc_channel* H, const wdc_sim_config* cfg,
                        wdc_simulation** out) {
  return guarded([&] {
    check_pair(sys, s);
    need(H, "channel");
    need(cfg, "config");
    need(out, "out");
    wdc::SimulationConfig c;
    c.power = cfg->power;
    c.noise = cfg->noise != 0;
    c.tau = cfg->tau;
    c.seed = cfg->seed;
    c.workers = cfg->workers;
    c.tol = {cfg->zf_tol, cfg->residual_tol, cfg->gain_floor, cfg->rank_tol};
    *out = new wdc_simulation{
        wdc::simulate(sys->placement, sys->assignment, s->schedule, H->H, c)};
  });
}

void wdc_simulation_free(wdc_simulation* sim) { delete sim; }

wdc_status wdc_simulation_summary(const wdc_simulation* sim,
                                  wdc_sim_summary* out) {
  return guarded([&] {
    need(sim, "simulation");
    need(out, "out");
    const auto& r = sim->result;
    out->blocks = r.blocks.size();
    out->deliveries = r.deliveries;
    out->real_deliveries = r.real_deliveries;
    out->real_decoded = r.real_decoded;
    out->all_ok = r.all_ok() ? 1 : 0;
    out->first_failing_block = r.first_failure().value_or(0);
    out->max_residual = r.max_residual;
    out->max_relative_error = r.max_relative_error;
  });
}

wdc_status wdc_simulation_residual_csv(const wdc_simulation* sim, char** out) {
  return guarded([&] {
    need(sim, "simulation");
    need(out, "out");
    *out = dup_string(wdc::residual_csv(sim->result));
  });
}

wdc_status wdc_simulation_to_json(const wdc_simulation* sim, char** out) {
  return guarded([&] {
    need(sim, "simulation");
    need(out, "out");
    *out = dup_string(wdc::simulation_summary_to_json(sim->result).dump());
  });
}

wdc_status wdc_load_report_json(const wdc_system* sys, const wdc_schedule* s,
                                char** out) {
  return guarded([&] {
    check_pair(sys, s);
    need(out, "out");
    *out = dup_string(wdc::load_report_to_json(
                          wdc::load_report(sys->placement, sys->assignment,
                                           s->schedule))
                          .dump());
  });
}

}  // extern "C"
