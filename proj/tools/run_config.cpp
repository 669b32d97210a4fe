#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

namespace wdc_cli {

using nlohmann::json;

double RunConfig::power_linear() const { return std::pow(10.0, power_db / 10.0); }

namespace {

struct Preset {
  const char* name;
  int K, Q, N, r;
};

constexpr Preset kPresets[] = {
    {"fig1", 3, 3, 3, 2},
    {"example-4-6", 4, 4, 6, 2},
    {"example-5-10", 5, 5, 10, 2},
    {"table2", 5, 5, 20, 2},
    {"fig2", 10, 360, 2520, 1},
    {"asymmetric-1-2-3", 3, 3, 3, 2},
};

template <typename T>
T get(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key +
                      "' has the wrong type");
  }
}

std::string r_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  throw ConfigError("config field 'r_values' must hold numbers or strings");
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
  for (const auto& p : kPresets) {
    if (name != p.name) continue;
    cfg.preset = name;
    cfg.K = p.K;
    cfg.Q = p.Q;
    cfg.N = p.N;
    cfg.r = p.r;
    cfg.r_values.clear();
    cfg.placement.reset();
    if (name == "fig2")
      for (int r = 1; r <= 10; ++r) cfg.r_values.push_back(std::to_string(r));
    if (name == "asymmetric-1-2-3")
      // M_1 = {1}, M_2 = {1,2}, M_3 = {1,2,3}: theta = (3, 2, 1).
      cfg.placement = json{{"K", 3},
                           {"Q", 3},
                           {"n_real", 3},
                           {"n_total", 3},
                           {"mapped_files", {{1}, {1, 2}, {1, 2, 3}}},
                           {"reduce_sets", {{1}, {2}, {3}}}};
    return;
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

void apply_json(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "K",       "N",         "Q",      "r",          "r_values",
      "seed",    "power",     "power_db", "noise",    "tau",
      "workers", "tolerances", "h_min", "h_max",      "out",
      "preset",  "placement", "oracle_cap", "compact_padding",
      "simulate_grid"};
  for (const auto& [key, value] : doc.items())
    if (!kKeys.count(key))
      throw ConfigError("unknown config field '" + key + "'");

  if (doc.contains("K")) cfg.K = get<int>(doc, "K");
  if (doc.contains("N")) cfg.N = get<int>(doc, "N");
  if (doc.contains("Q")) cfg.Q = get<int>(doc, "Q");
  if (doc.contains("r")) {
    if (!doc.at("r").is_number_integer())
      throw ConfigError("config field 'r' must be an integer for placement "
                        "construction (use r_values for rational grids)");
    cfg.r = get<int>(doc, "r");
  }
  if (doc.contains("r_values")) {
    if (!doc.at("r_values").is_array())
      throw ConfigError("config field 'r_values' must be an array");
    cfg.r_values.clear();
    for (const auto& v : doc.at("r_values")) cfg.r_values.push_back(r_text(v));
  }
  if (doc.contains("seed")) cfg.seed = get<std::uint64_t>(doc, "seed");
  if (doc.contains("power") && doc.contains("power_db"))
    throw ConfigError("config sets both 'power' and 'power_db'");
  if (doc.contains("power")) {
    const double p = get<double>(doc, "power");
    if (!(p > 0.0)) throw ConfigError("power must be positive");
    cfg.power_db = 10.0 * std::log10(p);
  }
  if (doc.contains("power_db")) cfg.power_db = get<double>(doc, "power_db");
  if (doc.contains("noise")) cfg.noise = get<bool>(doc, "noise");
  if (doc.contains("tau")) cfg.tau = get<int>(doc, "tau");
  if (doc.contains("workers")) cfg.workers = get<int>(doc, "workers");
  if (doc.contains("h_min")) cfg.h_min = get<double>(doc, "h_min");
  if (doc.contains("h_max")) cfg.h_max = get<double>(doc, "h_max");
  if (doc.contains("out")) cfg.out = get<std::string>(doc, "out");
  if (doc.contains("oracle_cap")) cfg.oracle_cap = get<int>(doc, "oracle_cap");
  if (doc.contains("compact_padding"))
    cfg.compact_padding = get<bool>(doc, "compact_padding");
  if (doc.contains("simulate_grid"))
    cfg.simulate_grid = get<bool>(doc, "simulate_grid");
  if (doc.contains("placement")) {
    const auto& p = doc.at("placement");
    if (p.is_string())
      cfg.placement_file = p.get<std::string>();
    else if (p.is_object())
      cfg.placement = p;
    else
      throw ConfigError("config field 'placement' must be a path or object");
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc.at("tolerances");
    if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
    for (const auto& [key, value] : t.items()) {
      if (!value.is_number())
        throw ConfigError("tolerance '" + key + "' must be a number");
      const double v = value.get<double>();
      if (key == "zf_tol") cfg.tol.zf_tol = v;
      else if (key == "residual_tol") cfg.tol.residual_tol = v;
      else if (key == "gain_floor") cfg.tol.gain_floor = v;
      else if (key == "rank_tol") cfg.tol.rank_tol = v;
      else throw ConfigError("unknown tolerance '" + key + "'");
    }
  }
}

RunConfig load_config(const std::optional<std::string>& file_text,
                      const std::optional<std::string>& preset_override) {
  RunConfig cfg;
  std::optional<json> doc;
  if (file_text) {
    try {
      doc = json::parse(*file_text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc->is_object()) throw ConfigError("config must be a JSON object");
  }
  std::optional<std::string> preset = preset_override;
  if (!preset && doc && doc->contains("preset"))
    preset = get<std::string>(*doc, "preset");
  if (preset) apply_preset(cfg, *preset);
  if (doc) {
    json rest = *doc;
    rest.erase("preset");
    apply_json(cfg, rest);
  }
  return cfg;
}

RationalText parse_r(const std::string& text) {
  auto bad = [&]() -> RationalText {
    throw ConfigError("r value '" + text + "' is not a number");
  };
  auto digits = [](const std::string& s) {
    return !s.empty() && s.size() <= 12 &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  RationalText out;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const auto a = text.substr(0, slash), b = text.substr(slash + 1);
    if (!digits(a) || !digits(b) || std::stoll(b) == 0) return bad();
    out = {std::stoll(a), std::stoll(b)};
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    auto a = text.substr(0, dot), b = text.substr(dot + 1);
    if (a.empty()) a = "0";
    if (!digits(a) || !digits(b) || b.size() > 9) return bad();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < b.size(); ++i) scale *= 10;
    out = {std::stoll(a) * scale + std::stoll(b), scale};
  } else {
    if (!digits(text)) return bad();
    out = {std::stoll(text), 1};
  }
  const auto g = std::gcd(out.num, out.den);
  out.num /= g;
  out.den /= g;
  return out;
}

void validate(const RunConfig& cfg, const std::string& command) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  const bool explicit_placement = cfg.placement || cfg.placement_file;
  need(cfg.K >= 1, "K must be >= 1 (got " + std::to_string(cfg.K) + ")");
  need(cfg.Q >= 1, "Q must be >= 1 (got " + std::to_string(cfg.Q) + ")");
  need(cfg.Q % cfg.K == 0, "Q must be a multiple of K (got Q = " +
                               std::to_string(cfg.Q) + ", K = " +
                               std::to_string(cfg.K) + ")");
  if (!explicit_placement) {
    need(cfg.N >= cfg.K, "N must be >= K (got N = " + std::to_string(cfg.N) +
                             ", K = " + std::to_string(cfg.K) + ")");
    if (command != "tradeoff")
      need(cfg.r >= 1 && cfg.r <= cfg.K,
           "r must be an integer in [1, K] (got r = " + std::to_string(cfg.r) +
               ", K = " + std::to_string(cfg.K) + ")");
  }
  for (const auto& text : cfg.r_values) {
    const auto r = parse_r(text);
    need(r.num >= r.den && r.num <= static_cast<std::int64_t>(cfg.K) * r.den,
         "r value " + text + " lies outside [1, K = " + std::to_string(cfg.K) +
             "]");
  }
  need(cfg.tau >= 1, "tau must be >= 1 (got " + std::to_string(cfg.tau) + ")");
  need(cfg.workers >= 1 && cfg.workers <= 256,
       "workers must lie in [1, 256] (got " + std::to_string(cfg.workers) + ")");
  need(std::isfinite(cfg.power_db) && cfg.power_db >= -100.0 &&
           cfg.power_db <= 200.0,
       "power_db must lie in [-100, 200]");
  need(cfg.tol.zf_tol > 0, "tolerance zf_tol must be positive");
  need(cfg.tol.residual_tol > 0, "tolerance residual_tol must be positive");
  need(cfg.tol.gain_floor > 0, "tolerance gain_floor must be positive");
  need(cfg.tol.rank_tol > 0 && cfg.tol.rank_tol < 1,
       "tolerance rank_tol must lie in (0, 1)");
  need(cfg.h_min > 0 && cfg.h_min <= cfg.h_max,
       "channel bounds must satisfy 0 < h_min <= h_max");
  need(cfg.oracle_cap >= 1, "oracle_cap must be >= 1");
  need(!cfg.out.empty(), "output directory must not be empty");
}

}  // namespace wdc_cli
