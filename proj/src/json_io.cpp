#include "wdc/json_io.hpp"

#include <algorithm>

#include "wdc/error.hpp"

namespace wdc {
namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorCode::kParse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse,
         std::string("field '") + key + "' has the wrong type: " + e.what());
  }
}

Json rational_json(const Rational& x) {
  if (x.denominator() == 1) return x.numerator();
  return to_double(x);
}

}  // namespace

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParse, what + ": " + e.what());
  }
}

Json placement_to_json(const Placement& p, const ReduceAssignment& a) {
  require(p.K() == a.K(), "placement and reduce assignment disagree on K");
  Json mapped = Json::array();
  Json reduce = Json::array();
  for (int k = 1; k <= p.K(); ++k) {
    mapped.push_back(p.mapped_files(k));
    reduce.push_back(a.functions(k));
  }
  return Json{{"K", p.K()},
              {"Q", a.Q()},
              {"r", rational_json(p.computation_load())},
              {"n_real", p.n_real()},
              {"n_total", p.n_total()},
              {"mapped_files", std::move(mapped)},
              {"reduce_sets", std::move(reduce)}};
}

PlacementDocument placement_from_json(const Json& j) {
  const int K = field<int>(j, "K");
  const int Q = field<int>(j, "Q");
  const int n_total = field<int>(j, "n_total");
  const int n_real =
      j.contains("n_real") ? field<int>(j, "n_real") : n_total;
  auto mapped = field<std::vector<std::vector<int>>>(j, "mapped_files");
  require(K >= 1, "K must be >= 1 (got " + std::to_string(K) + ")");
  require(static_cast<int>(mapped.size()) == K,
          "mapped_files must list one set per node");
  auto placement = Placement::from_sets(K, n_real, n_total, std::move(mapped));
  auto assignment =
      j.contains("reduce_sets")
          ? ReduceAssignment::from_sets(
                K, Q, field<std::vector<std::vector<int>>>(j, "reduce_sets"))
          : ReduceAssignment::contiguous(K, Q);
  if (j.contains("r")) {
    const double r = field<double>(j, "r");
    if (std::abs(r - to_double(placement.computation_load())) > 1e-9)
      fail(ErrorCode::kInvalidArgument,
           "field 'r' does not match the mapped files (sum |M_k| / n_total = " +
               to_string(placement.computation_load()) + ")");
  }
  return {std::move(placement), std::move(assignment)};
}

Json schedule_to_json(const Schedule& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks) {
    Json deliveries = Json::array();
    for (const auto& d : b.deliveries)
      deliveries.push_back(
          Json{{"q", d.value.q}, {"n", d.value.n}, {"to", d.receiver}});
    blocks.push_back(
        Json{{"receivers", b.receivers}, {"deliveries", std::move(deliveries)}});
  }
  return Json{{"T", s.T()}, {"blocks", std::move(blocks)}};
}

Schedule schedule_from_json(const Json& j, int K, int Q) {
  Schedule s;
  s.K = K;
  s.Q = Q;
  const auto blocks = field<std::vector<Json>>(j, "blocks");
  if (j.contains("T") && field<std::size_t>(j, "T") != blocks.size())
    fail(ErrorCode::kParse, "field 'T' does not match the number of blocks");
  for (const auto& jb : blocks) {
    Block b;
    b.receivers = field<std::vector<int>>(jb, "receivers");
    for (const auto& jd : field<std::vector<Json>>(jb, "deliveries"))
      b.deliveries.push_back(Delivery{
          ValueId{field<int>(jd, "q"), field<int>(jd, "n")},
          field<int>(jd, "to")});
    // Stored order is receiver order; validation reports mismatches.
    std::sort(b.deliveries.begin(), b.deliveries.end(),
              [](const Delivery& x, const Delivery& y) {
                return x.receiver < y.receiver;
              });
    s.blocks.push_back(std::move(b));
  }
  return s;
}

Json report_to_json(const FeasibilityReport& r) {
  Json blocks = Json::array();
  for (const auto& b : r.per_block) {
    Json values = Json::array();
    for (const auto& v : b.values)
      values.push_back(Json{{"q", v.value.q},
                            {"n", v.value.n},
                            {"to", v.receiver},
                            {"support_size", v.support_size},
                            {"nulled", v.nulled},
                            {"zf_slack", v.zf_slack}});
    blocks.push_back(Json{{"index", b.index},
                          {"deliveries", b.deliveries},
                          {"bound", b.bound},
                          {"vacuous", b.vacuous},
                          {"values", std::move(values)}});
  }
  return Json{{"ok", r.ok},
              {"blocks", std::move(blocks)},
              {"violations", r.violations}};
}

Json channel_to_json(const ChannelMatrix& H) {
  Json rows = Json::array();
  for (int k = 1; k <= H.K(); ++k) {
    Json row = Json::array();
    for (int i = 1; i <= H.K(); ++i) {
      const Complex h = H.at(k, i);
      row.push_back(Json::array({h.real(), h.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"K", H.K()},
              {"h_min", H.h_min()},
              {"h_max", H.h_max()},
              {"seed", H.seed()},
              {"coefficients", std::move(rows)}};
}

ChannelMatrix channel_from_json(const Json& j) {
  const auto rows =
      field<std::vector<std::vector<std::vector<double>>>>(j, "coefficients");
  const int K = static_cast<int>(rows.size());
  require(K >= 1, "channel must have at least one row");
  Eigen::MatrixXcd h(K, K);
  for (int k = 0; k < K; ++k) {
    require(static_cast<int>(rows[k].size()) == K, "channel must be square");
    for (int i = 0; i < K; ++i) {
      if (rows[k][i].size() != 2)
        fail(ErrorCode::kParse, "channel entries must be [re, im] pairs");
      h(k, i) = Complex(rows[k][i][0], rows[k][i][1]);
    }
  }
  const double h_min = j.contains("h_min")
                           ? field<double>(j, "h_min")
                           : ChannelMatrix::kDefaultMinMagnitude;
  const double h_max = j.contains("h_max")
                           ? field<double>(j, "h_max")
                           : ChannelMatrix::kDefaultMaxMagnitude;
  const auto seed = j.contains("seed") ? field<std::uint64_t>(j, "seed") : 0;
  return ChannelMatrix::from_coefficients(std::move(h), h_min, h_max, seed);
}

Json load_report_to_json(const LoadReport& r) {
  auto opt = [](const auto& x) -> Json {
    if (!x) return nullptr;
    if constexpr (std::is_same_v<std::decay_t<decltype(*x)>, Rational>)
      return Json{{"value", to_double(*x)}, {"exact", to_string(*x)}};
    else
      return *x;
  };
  return Json{{"K", r.K},
              {"Q", r.Q},
              {"N", r.N},
              {"r", to_string(r.r)},
              {"T_measured", opt(r.T_measured)},
              {"T_effective", opt(r.T_effective)},
              {"padding", opt(r.padding)},
              {"L_measured", opt(r.L_measured)},
              {"L_optimal", opt(std::optional<Rational>(r.L_optimal))},
              {"L_uncoded_tdma", opt(r.L_uncoded)},
              {"L_coded_tdma", opt(r.L_coded)},
              {"converse_T", opt(r.converse_T)},
              {"figure_discrepancy", r.figure_discrepancy},
              {"figure_note", r.figure_note}};
}

Json simulation_summary_to_json(const SimulationResult& r) {
  Json failures = Json::array();
  for (const auto& b : r.blocks)
    if (!b.ok) failures.push_back(Json{{"block", b.block}, {"error", b.error}});
  const auto first = r.first_failure();
  return Json{{"all_ok", r.all_ok()},
              {"deliveries", r.deliveries},
              {"real_deliveries", r.real_deliveries},
              {"real_decoded", r.real_decoded},
              {"max_residual", r.max_residual},
              {"max_relative_error", r.max_relative_error},
              {"first_failing_block", first ? Json(*first) : Json(nullptr)},
              {"failures", std::move(failures)}};
}

}  // namespace wdc
