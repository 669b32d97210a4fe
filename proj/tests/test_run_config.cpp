#include "doctest.h"

#include "run_config.hpp"

using namespace wdc_cli;

TEST_CASE("defaults and presets") {
  const auto d = load_config(std::nullopt, std::nullopt);
  CHECK(d.K == 4);
  CHECK(d.power_db == 40.0);
  CHECK_FALSE(d.noise);
  const auto t2 = load_config(std::nullopt, std::string("table2"));
  CHECK(t2.K == 5);
  CHECK(t2.N == 20);
  CHECK(t2.Q == 5);
  CHECK(t2.r == 2);
  const auto f2 = load_config(std::nullopt, std::string("fig2"));
  CHECK(f2.Q == 360);
  CHECK(f2.N == 2520);
  CHECK(f2.r_values.size() == 10);
  const auto asym = load_config(std::nullopt, std::string("asymmetric-1-2-3"));
  REQUIRE(asym.placement.has_value());
  CHECK((*asym.placement)["mapped_files"][2].size() == 3);
  CHECK_THROWS_AS(load_config(std::nullopt, std::string("nope")), ConfigError);
  CHECK(preset_names().size() == 6);
}

TEST_CASE("precedence: preset < file, flag preset beats file preset") {
  const std::string file = R"({"preset":"table2","N":40,"seed":9})";
  const auto c = load_config(file, std::nullopt);
  CHECK(c.K == 5);
  CHECK(c.N == 40);
  CHECK(c.seed == 9);
  const auto d = load_config(file, std::string("fig1"));
  CHECK(d.K == 3);
  CHECK(d.N == 40);
}

TEST_CASE("config file fields") {
  const auto c = load_config(
      R"({"power":100,"noise":true,"tau":16,"r_values":[1,"3/2",2.5],
          "tolerances":{"zf_tol":1e-10},"workers":2})",
      std::nullopt);
  CHECK(c.power_db == doctest::Approx(20.0));
  CHECK(c.noise);
  CHECK(c.tau == 16);
  CHECK(c.r_values == std::vector<std::string>{"1", "3/2", "2.5"});
  CHECK(c.tol.zf_tol == 1e-10);
  CHECK(c.workers == 2);
  CHECK_THROWS_AS(load_config(R"({"bogus":1})", std::nullopt), ConfigError);
  CHECK_THROWS_AS(load_config(R"({"K":"four"})", std::nullopt), ConfigError);
  CHECK_THROWS_AS(load_config(R"({"r":1.5})", std::nullopt), ConfigError);
  CHECK_THROWS_AS(load_config("[1,2]", std::nullopt), ConfigError);
  CHECK_THROWS_AS(load_config("{", std::nullopt), ConfigError);
  CHECK_THROWS_AS(load_config(R"({"power":1,"power_db":1})", std::nullopt),
                  ConfigError);
  CHECK_THROWS_AS(load_config(R"({"tolerances":{"x":1}})", std::nullopt),
                  ConfigError);
}

TEST_CASE("validation names the violated constraint") {
  auto expect = [](RunConfig c, const std::string& cmd, const std::string& msg) {
    try {
      validate(c, cmd);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(msg) != std::string::npos);
    }
  };
  RunConfig c;
  validate(c, "simulate");
  RunConfig bad = c;
  bad.Q = 6;
  expect(bad, "simulate", "Q must be a multiple of K");
  bad = c;
  bad.N = 2;
  expect(bad, "simulate", "N must be >= K");
  bad = c;
  bad.r = 0;
  expect(bad, "simulate", "r must be an integer in [1, K]");
  validate(bad, "tradeoff");  // r unused there
  bad = c;
  bad.r_values = {"0.5"};
  expect(bad, "tradeoff", "outside [1, K");
  bad = c;
  bad.tau = 0;
  expect(bad, "simulate", "tau");
  bad = c;
  bad.workers = 0;
  expect(bad, "simulate", "workers");
  bad = c;
  bad.tol.rank_tol = 2;
  expect(bad, "simulate", "rank_tol");
  bad = c;
  bad.h_min = 5;
  bad.h_max = 1;
  expect(bad, "simulate", "h_min");
}

TEST_CASE("r grid parsing") {
  CHECK(parse_r("3").num == 3);
  const auto h = parse_r("1.5");
  CHECK(h.num == 3);
  CHECK(h.den == 2);
  const auto q = parse_r("10/4");
  CHECK(q.num == 5);
  CHECK(q.den == 2);
  CHECK_THROWS_AS(parse_r("x"), ConfigError);
  CHECK_THROWS_AS(parse_r("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_r("-1"), ConfigError);
}
