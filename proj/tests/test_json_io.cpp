#include "doctest.h"

#include "wdc/error.hpp"
#include "wdc/json_io.hpp"

using namespace wdc;

TEST_CASE("placement json round trip") {
  const auto p = Placement::symmetric({4, 6, 4, 2});
  const auto a = ReduceAssignment::contiguous(4, 4);
  const auto j = placement_to_json(p, a);
  CHECK(j["K"] == 4);
  CHECK(j["Q"] == 4);
  CHECK(j["r"] == 2);
  CHECK(j["r"].is_number_integer());
  CHECK(j["n_real"] == 6);
  CHECK(j["n_total"] == 6);
  CHECK(j["mapped_files"][1] == Json::array({1, 4, 5}));
  CHECK(j["reduce_sets"][3] == Json::array({4}));
  const auto back = placement_from_json(j);
  for (int k = 1; k <= 4; ++k) {
    CHECK(back.placement.mapped_files(k) == p.mapped_files(k));
    CHECK(back.assignment.functions(k) == a.functions(k));
  }
}

TEST_CASE("placement json errors") {
  CHECK_THROWS_AS(placement_from_json(Json::parse(R"({"K":3})")), Error);
  try {
    placement_from_json(Json::parse(
        R"({"K":2,"Q":2,"n_total":2,"mapped_files":[[1],"x"]})"));
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
  // r must match the mapped files.
  CHECK_THROWS_AS(placement_from_json(Json::parse(
                      R"({"K":2,"Q":2,"r":2,"n_total":2,"mapped_files":[[1],[2]]})")),
                  Error);
  try {
    parse_json("{", "config");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}

TEST_CASE("schedule json round trip") {
  const auto p = Placement::symmetric({5, 20, 5, 2});
  const auto a = ReduceAssignment::contiguous(5, 5);
  const auto s = schedule(p, a);
  const auto j = schedule_to_json(s);
  CHECK(j["T"] == 15);
  CHECK(j["blocks"][0]["receivers"] == Json::array({1, 2, 3, 4}));
  CHECK(j["blocks"][0]["deliveries"][0].contains("to"));
  CHECK(schedule_from_json(j, 5, 5) == s);
  auto bad = j;
  bad["T"] = 3;
  CHECK_THROWS_AS(schedule_from_json(bad, 5, 5), Error);
}

TEST_CASE("channel json round trip") {
  const auto H = ChannelMatrix::generate(3, 42);
  const auto j = channel_to_json(H);
  CHECK(j["coefficients"].size() == 3);
  CHECK(j["coefficients"][0][0].size() == 2);
  const auto back = channel_from_json(j);
  CHECK(back.coefficients() == H.coefficients());
  CHECK(back.seed() == 42);
}

TEST_CASE("report and load report json") {
  const auto p = Placement::symmetric({4, 6, 4, 2});
  const auto a = ReduceAssignment::contiguous(4, 4);
  const auto s = schedule(p, a);
  const auto r = report_to_json(validate_schedule(s, p, a));
  CHECK(r["ok"] == true);
  CHECK(r["blocks"].size() == 3);
  CHECK(r["blocks"][0]["bound"] == 4);
  const auto rows = tradeoff_table(10, 10, 10, {Rational(3)}, false);
  const auto lj = load_report_to_json(rows[0]);
  CHECK(lj["L_optimal"]["exact"] == "7/60");
  CHECK(lj["figure_discrepancy"] == true);
  CHECK(lj["T_measured"].is_null());
}
