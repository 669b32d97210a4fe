// wdcsim: command-line front end over the wdc C API.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "run_config.hpp"
#include "wdc/wdc.h"

namespace fs = std::filesystem;
using nlohmann::json;
using wdc_cli::RunConfig;

namespace {

enum ExitCode { kOk = 0, kInvalid = 1, kFailed = 2, kIo = 3 };

struct CliFailure {
  int exit_code;
  std::string message;
};

struct Deleter {
  void operator()(wdc_system* p) const { wdc_system_free(p); }
  void operator()(wdc_schedule* p) const { wdc_schedule_free(p); }
  void operator()(wdc_channel* p) const { wdc_channel_free(p); }
  void operator()(wdc_simulation* p) const { wdc_simulation_free(p); }
  void operator()(char* p) const { wdc_string_free(p); }
};
using System = std::unique_ptr<wdc_system, Deleter>;
using Sched = std::unique_ptr<wdc_schedule, Deleter>;
using Channel = std::unique_ptr<wdc_channel, Deleter>;
using Simulation = std::unique_ptr<wdc_simulation, Deleter>;
using CString = std::unique_ptr<char, Deleter>;

void check(wdc_status st, const std::string& what) {
  if (st == WDC_OK) return;
  const int code = st == WDC_ERR_DECODE ? kFailed : kInvalid;
  throw CliFailure{code, what + ": " + wdc_last_error()};
}

std::string take(char* s) {
  CString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kIo, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec)
    throw CliFailure{kIo, "cannot create " + path.parent_path().string() +
                              ": " + ec.message()};
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw CliFailure{kIo, "cannot write " + path.string()};
}

std::string rational(wdc_rational x) {
  return x.den == 1 ? std::to_string(x.num)
                    : std::to_string(x.num) + "/" + std::to_string(x.den);
}

System make_system(const RunConfig& cfg) {
  wdc_system* raw = nullptr;
  if (cfg.placement_file || cfg.placement) {
    const std::string doc =
        cfg.placement_file ? read_file(*cfg.placement_file) : cfg.placement->dump();
    check(wdc_system_from_json(doc.c_str(), &raw), "placement");
  } else {
    check(wdc_system_symmetric(cfg.K, cfg.N, cfg.Q, cfg.r, &raw), "placement");
  }
  return System(raw);
}

wdc_system_info info_of(const wdc_system* sys) {
  wdc_system_info info{};
  check(wdc_system_get_info(sys, &info), "placement");
  return info;
}

Sched build_schedule(const wdc_system* sys, const RunConfig& cfg) {
  wdc_schedule* raw = nullptr;
  check(wdc_schedule_build(sys, cfg.compact_padding ? 1 : 0, &raw), "schedule");
  return Sched(raw);
}

wdc_converse converse_of(const wdc_system* sys, bool include_padding) {
  wdc_converse c{};
  check(wdc_converse_bound(sys, include_padding ? 1 : 0, &c), "converse");
  return c;
}

// ---- commands -----------------------------------------------------------

int cmd_tradeoff(const RunConfig& cfg) {
  std::vector<wdc_rational> grid;
  if (cfg.r_values.empty()) {
    for (int r = 1; r <= cfg.K; ++r) grid.push_back({r, 1});
  } else {
    for (const auto& t : cfg.r_values) {
      const auto r = wdc_cli::parse_r(t);
      grid.push_back({r.num, r.den});
    }
  }
  char *csv = nullptr, *report = nullptr, *js = nullptr;
  check(wdc_tradeoff(cfg.K, cfg.Q, cfg.N, grid.data(), grid.size(),
                     cfg.simulate_grid ? 1 : 0, &csv, &report, &js),
        "tradeoff");
  const std::string csv_s = take(csv), report_s = take(report), js_s = take(js);
  const fs::path out(cfg.out);
  write_file(out / "tradeoff.csv", csv_s);
  write_file(out / "tradeoff.json", json::parse(js_s).dump(2) + "\n");
  const std::string note =
      report_s.empty() ? "no figure discrepancies\n"
                       : "figure discrepancies (closed form used):\n" + report_s;
  write_file(out / "figure_report.txt", note);
  std::cout << csv_s << note;
  std::cout << "wrote " << (out / "tradeoff.csv").string() << "\n";
  return kOk;
}

int cmd_simulate(const RunConfig& cfg) {
  auto sys = make_system(cfg);
  const auto info = info_of(sys.get());
  auto sched = build_schedule(sys.get(), cfg);

  wdc_channel* hraw = nullptr;
  check(wdc_channel_generate(info.K, cfg.seed, cfg.h_min, cfg.h_max,
                             cfg.tol.rank_tol, &hraw),
        "channel");
  Channel H(hraw);

  wdc_sim_config sc;
  wdc_sim_config_default(&sc);
  sc.power = cfg.power_linear();
  sc.noise = cfg.noise ? 1 : 0;
  sc.tau = cfg.tau;
  sc.seed = cfg.seed;
  sc.workers = cfg.workers;
  sc.zf_tol = cfg.tol.zf_tol;
  sc.residual_tol = cfg.tol.residual_tol;
  sc.gain_floor = cfg.tol.gain_floor;
  sc.rank_tol = cfg.tol.rank_tol;
  wdc_simulation* simraw = nullptr;
  check(wdc_simulate(sys.get(), sched.get(), H.get(), &sc, &simraw),
        "simulate");
  Simulation sim(simraw);
  wdc_sim_summary sum{};
  check(wdc_simulation_summary(sim.get(), &sum), "simulate");

  const fs::path out(cfg.out);
  char* s = nullptr;
  check(wdc_schedule_to_json(sched.get(), &s), "schedule");
  write_file(out / "schedule.json", json::parse(take(s)).dump(2) + "\n");
  check(wdc_simulation_residual_csv(sim.get(), &s), "simulate");
  write_file(out / "residuals.csv", take(s));
  check(wdc_load_report_json(sys.get(), sched.get(), &s), "load report");
  write_file(out / "load_report.json", json::parse(take(s)).dump(2) + "\n");
  check(wdc_channel_to_json(H.get(), &s), "channel");
  write_file(out / "channel.json", json::parse(take(s)).dump(2) + "\n");
  check(wdc_simulation_to_json(sim.get(), &s), "simulate");
  write_file(out / "simulation.json", json::parse(take(s)).dump(2) + "\n");

  const std::size_t T = wdc_schedule_block_count(sched.get());
  std::cout << "K=" << info.K << " Q=" << info.Q << " N=" << info.n_real
            << " r=" << rational(info.computation_load)
            << " padded N=" << info.n_total << " (" << info.padding
            << " empty files)\n";
  std::cout << "T = " << T << "\n";
  std::cout << "L = T/(NQ) = " << T << "/"
            << static_cast<long long>(info.n_real) * info.Q << "\n";

  if (info.padding > 0) {
    wdc_schedule* fraw = nullptr;
    check(wdc_schedule_drop_padding(sched.get(), sys.get(), &fraw), "filter");
    Sched filtered(fraw);
    wdc_system* praw = nullptr;
    check(wdc_system_without_padding(sys.get(), &praw), "filter");
    System real(praw);
    int feasible = 0;
    check(wdc_validate(real.get(), filtered.get(), &feasible, nullptr, nullptr),
          "filter");
    check(wdc_schedule_to_json(filtered.get(), &s), "schedule");
    write_file(out / "schedule_real.json", json::parse(take(s)).dump(2) + "\n");
    std::cout << "restricted to files 1.." << info.n_real << ": "
              << wdc_schedule_block_count(filtered.get()) << " blocks ("
              << (feasible ? "valid" : "INVALID") << ")\n";
  }

  std::cout << "deliveries: " << sum.deliveries << " (" << sum.real_deliveries
            << " real, " << sum.real_decoded << " decoded)\n";
  std::cout << "noise: " << (cfg.noise ? "on" : "off")
            << ", power: " << cfg.power_db << " dB\n";
  std::printf("max residual interference: %.3g, max relative error: %.3g\n",
              sum.max_residual, sum.max_relative_error);
  std::cout << "wrote " << out.string() << "/{schedule.json,residuals.csv,"
            << "load_report.json,channel.json,simulation.json"
            << (info.padding > 0 ? ",schedule_real.json}\n" : "}\n");
  if (!sum.all_ok) {
    const auto sim_json = [&] {
      char* t = nullptr;
      check(wdc_simulation_to_json(sim.get(), &t), "simulate");
      return json::parse(take(t));
    }();
    std::cerr << "decode failure in block " << sum.first_failing_block;
    for (const auto& f : sim_json["failures"])
      if (f["block"] == sum.first_failing_block &&
          !f["error"].get<std::string>().empty())
        std::cerr << ": " << f["error"].get<std::string>();
    std::cerr << "\n";
    return kFailed;
  }
  return kOk;
}

std::optional<int> try_oracle(const wdc_system* sys, int cap,
                              std::string& why) {
  int blocks = 0;
  const wdc_status st = wdc_oracle(sys, cap, &blocks, nullptr);
  if (st == WDC_OK) return blocks;
  if (st != WDC_ERR_LIMIT_EXCEEDED) check(st, "oracle");
  why = wdc_last_error();
  return std::nullopt;
}

int cmd_verify(const RunConfig& cfg) {
  auto sys = make_system(cfg);
  const auto info = info_of(sys.get());
  const auto bound = converse_of(sys.get(), true);
  std::ostringstream rep;
  rep << "K=" << info.K << " Q=" << info.Q << " N=" << info.n_real
      << " padded N=" << info.n_total
      << " r=" << rational(info.computation_load) << "\n";
  rep << "converse: sigma_sum = " << rational(bound.sigma_sum)
      << ", bound = " << bound.blocks
      << ", averaged bound = " << bound.averaged_blocks << "\n";

  std::string why;
  std::optional<int> oracle;
  if (info.total_demand <= 12) oracle = try_oracle(sys.get(), cfg.oracle_cap, why);

  bool pass = true;
  if (info.symmetric) {
    auto sched = build_schedule(sys.get(), cfg);
    int feasible = 0;
    char* text = nullptr;
    check(wdc_validate(sys.get(), sched.get(), &feasible, &text, nullptr),
          "validate");
    const std::size_t T = wdc_schedule_block_count(sched.get());
    rep << take(text);
    rep << "measured T = " << T << "\n";
    pass = feasible && static_cast<std::int64_t>(T) == bound.blocks;
    if (oracle) pass = pass && *oracle == static_cast<int>(T);
  } else {
    rep << "placement is not symmetric: no scheduler, oracle only\n";
    pass = oracle.has_value() && *oracle >= bound.blocks;
  }
  if (oracle) {
    rep << "oracle T_opt = " << *oracle << "\n";
    if (*oracle > bound.blocks)
      rep << "note: the converse bound is not attained on this placement\n";
  } else {
    rep << "oracle: skipped (" << (why.empty() ? "demand above 12 values" : why)
        << ")\n";
  }
  rep << (pass ? "PASS" : "FAIL") << "\n";
  write_file(fs::path(cfg.out) / "verify.txt", rep.str());
  std::cout << rep.str();
  return pass ? kOk : kFailed;
}

int cmd_oracle(const RunConfig& cfg) {
  auto sys = make_system(cfg);
  const auto bound = converse_of(sys.get(), true);
  int blocks = 0;
  wdc_schedule* wraw = nullptr;
  check(wdc_oracle(sys.get(), cfg.oracle_cap, &blocks, &wraw), "oracle");
  Sched witness(wraw);
  int feasible = 0;
  check(wdc_validate(sys.get(), witness.get(), &feasible, nullptr, nullptr),
        "validate");
  char* s = nullptr;
  check(wdc_schedule_to_json(witness.get(), &s), "schedule");
  const json doc{{"min_blocks", blocks},
                 {"converse_bound", bound.blocks},
                 {"sigma_sum", rational(bound.sigma_sum)},
                 {"witness", json::parse(take(s))}};
  write_file(fs::path(cfg.out) / "oracle.json", doc.dump(2) + "\n");
  std::cout << "oracle T_opt = " << blocks << "\n";
  std::cout << "converse bound = " << bound.blocks << " (sigma_sum = "
            << rational(bound.sigma_sum) << ")\n";
  std::cout << "witness " << (feasible ? "validates" : "FAILS validation")
            << "\n";
  return feasible ? kOk : kFailed;
}

// ---- flags --------------------------------------------------------------

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<bool> noise;
  std::optional<double> power_db;
  std::optional<int> K, N, Q, r, tau, cap;
  std::vector<std::string> r_values;
  std::optional<std::string> placement;
  bool no_compact = false;
  bool no_simulate = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration");
  sub->add_option("--preset", f.preset, "fig1, example-4-6, example-5-10, "
                                        "table2, fig2, asymmetric-1-2-3");
  sub->add_option("--seed", f.seed, "channel, packet and noise seed");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--workers", f.workers, "block simulation threads");
  sub->add_flag("--noise,!--no-noise", f.noise, "AWGN on or off");
  sub->add_option("--power-db", f.power_db, "per-node transmit power in dB");
  sub->add_option("--K", f.K, "nodes");
  sub->add_option("--N", f.N, "input files");
  sub->add_option("--Q", f.Q, "reduce functions");
  sub->add_option("--r", f.r, "computation load (integer)");
  sub->add_option("--tau", f.tau, "packet length in symbols");
  sub->add_option("--placement", f.placement, "placement JSON file");
  sub->add_option("--cap", f.cap, "oracle block cap");
  sub->add_flag("--no-compact", f.no_compact,
                "keep plain lexicographic padding order");
}

RunConfig resolve(const Flags& f) {
  std::optional<std::string> text;
  if (f.config) text = read_file(*f.config);
  RunConfig cfg = wdc_cli::load_config(text, f.preset);
  if (f.seed) cfg.seed = *f.seed;
  if (f.out) cfg.out = *f.out;
  if (f.workers) cfg.workers = *f.workers;
  if (f.noise) cfg.noise = *f.noise;
  if (f.power_db) cfg.power_db = *f.power_db;
  if (f.K) cfg.K = *f.K;
  if (f.N) cfg.N = *f.N;
  if (f.Q) cfg.Q = *f.Q;
  if (f.r) cfg.r = *f.r;
  if (f.tau) cfg.tau = *f.tau;
  if (f.cap) cfg.oracle_cap = *f.cap;
  if (!f.r_values.empty()) cfg.r_values = f.r_values;
  if (f.placement) {
    cfg.placement_file = *f.placement;
    cfg.placement.reset();
  }
  if (f.no_compact) cfg.compact_padding = false;
  if (f.no_simulate) cfg.simulate_grid = false;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless MapReduce shuffle simulator"};
  app.require_subcommand(1);
  Flags flags;
  auto* tradeoff = app.add_subcommand("tradeoff", "load table over an r grid");
  auto* simulate = app.add_subcommand("simulate", "place, schedule, beamform, "
                                                  "transmit and decode");
  auto* verify = app.add_subcommand("verify", "schedule vs converse vs oracle");
  auto* oracle = app.add_subcommand("oracle", "exhaustive minimum block count");
  for (auto* sub : {tradeoff, simulate, verify, oracle}) add_common(sub, flags);
  tradeoff->add_option("--r-values", flags.r_values,
                       "comma separated grid, e.g. 1,1.5,2,5/2")
      ->delimiter(',');
  tradeoff->add_flag("--no-simulate", flags.no_simulate,
                     "skip schedule construction per row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    const RunConfig cfg = resolve(flags);
    wdc_cli::validate(cfg, command);
    if (command == "tradeoff") return cmd_tradeoff(cfg);
    if (command == "simulate") return cmd_simulate(cfg);
    if (command == "verify") return cmd_verify(cfg);
    return cmd_oracle(cfg);
  } catch (const wdc_cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const CliFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed library output: " << e.what() << "\n";
    return kInvalid;
  }
}
