#include "doctest.h"

#include "wdc/error.hpp"
#include "wdc/pipeline.hpp"

using namespace wdc;

namespace {

struct Setup {
  Placement p;
  ReduceAssignment a;
  Schedule s;
  ChannelMatrix H;
};

Setup make(int K, int N, int Q, int r, std::uint64_t seed) {
  auto p = Placement::symmetric({K, N, Q, r});
  auto a = ReduceAssignment::contiguous(K, Q);
  auto s = schedule(p, a);
  auto H = ChannelMatrix::generate(K, seed);
  return {std::move(p), std::move(a), std::move(s), std::move(H)};
}

}  // namespace

TEST_CASE("noise-free simulation decodes every delivery") {
  const auto x = make(5, 20, 5, 2, 3);
  const auto res = simulate(x.p, x.a, x.s, x.H, {});
  CHECK(res.all_ok());
  CHECK(res.blocks.size() == 15);
  CHECK(res.deliveries == 60);
  CHECK(res.real_deliveries == 60);
  CHECK(res.real_decoded == 60);
  CHECK(res.max_relative_error <= 1e-9);
  CHECK(res.max_residual <= 1e-18);
  CHECK_FALSE(res.first_failure().has_value());
}

TEST_CASE("padding deliveries are carried but not counted") {
  const auto x = make(5, 10, 5, 2, 8);
  const auto res = simulate(x.p, x.a, x.s, x.H, {});
  CHECK(res.all_ok());
  CHECK(res.deliveries == 60);
  CHECK(res.real_deliveries == 30);
  CHECK(res.real_decoded == 30);
}

TEST_CASE("worker count does not change results") {
  const auto x = make(5, 20, 10, 2, 4);
  SimulationConfig cfg;
  cfg.noise = true;
  cfg.power = 1e3;
  const auto one = simulate(x.p, x.a, x.s, x.H, cfg);
  cfg.workers = 4;
  const auto four = simulate(x.p, x.a, x.s, x.H, cfg);
  CHECK(residual_csv(one) == residual_csv(four));
  CHECK(one.real_decoded == four.real_decoded);
}

TEST_CASE("noise at very low power produces a failing block") {
  const auto x = make(4, 6, 4, 2, 1);
  SimulationConfig cfg;
  cfg.noise = true;
  cfg.power = 1e-2;
  const auto res = simulate(x.p, x.a, x.s, x.H, cfg);
  CHECK_FALSE(res.all_ok());
  REQUIRE(res.first_failure().has_value());
  CHECK(*res.first_failure() == 1);
  CHECK(res.real_decoded < res.real_deliveries);
}

TEST_CASE("noisy simulation at 40 dB decodes") {
  const auto x = make(4, 6, 4, 2, 6);
  SimulationConfig cfg;
  cfg.noise = true;
  cfg.power = 1e4;
  const auto res = simulate(x.p, x.a, x.s, x.H, cfg);
  CHECK(res.all_ok());
}

TEST_CASE("bad configuration") {
  const auto x = make(4, 6, 4, 2, 1);
  SimulationConfig cfg;
  cfg.tau = 0;
  CHECK_THROWS_AS(simulate(x.p, x.a, x.s, x.H, cfg), Error);
  cfg = {};
  cfg.power = -1;
  CHECK_THROWS_AS(simulate(x.p, x.a, x.s, x.H, cfg), Error);
  const auto H5 = ChannelMatrix::generate(5, 1);
  CHECK_THROWS_AS(simulate(x.p, x.a, x.s, H5, {}), Error);
}

TEST_CASE("residual csv") {
  const auto x = make(4, 6, 4, 2, 1);
  const auto csv = residual_csv(simulate(x.p, x.a, x.s, x.H, {}));
  CHECK(csv.rfind("block,receiver,intended_gain,max_residual,snr_db\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE("load report") {
  const auto x = make(4, 6, 4, 2, 1);
  const auto row = load_report(x.p, x.a, x.s);
  CHECK(*row.T_measured == 3);
  CHECK(*row.L_measured == Rational(1, 8));
  CHECK(row.L_optimal == Rational(1, 8));
  CHECK(*row.converse_T == 3);
  CHECK(*row.L_uncoded == Rational(1, 2));
  CHECK(*row.L_coded == Rational(1, 4));
  const auto y = make(5, 10, 5, 2, 1);
  const auto padded = load_report(y.p, y.a, y.s);
  CHECK(*padded.T_measured == 15);
  CHECK(*padded.T_effective == 8);
  CHECK(*padded.converse_T <= *padded.T_measured);
  CHECK(*padded.L_measured == Rational(15, 50));
}

TEST_CASE("snr grows one dB per dB of power") {
  const auto x = make(4, 6, 4, 2, 2);
  const std::vector<double> grid{20, 30, 40};
  const auto pts = snr_sweep(x.p, x.s, x.H, grid, 200, 64, 9);
  CHECK(pts.size() == 12);
  for (const auto& pt : pts) {
    REQUIRE(pt.snr_db.size() == 3);
    CHECK(fit_slope(grid, pt.snr_db) == doctest::Approx(1.0).epsilon(0.05));
  }
  CHECK(fit_slope({0, 1, 2}, {1, 3, 5}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(fit_slope({1}, {1}), Error);
}

TEST_CASE("block noise seeds differ per block") {
  CHECK(block_noise_seed(1, 0) != block_noise_seed(1, 1));
  CHECK(block_noise_seed(1, 0) != block_noise_seed(2, 0));
  CHECK(block_noise_seed(1, 5) == block_noise_seed(1, 5));
}
