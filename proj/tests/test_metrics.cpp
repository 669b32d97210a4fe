#include "doctest.h"

#include "wdc/error.hpp"
#include "wdc/metrics.hpp"
#include "wdc/scheduler.hpp"

using namespace wdc;

TEST_CASE("closed-form loads for K=10") {
  CHECK(optimal_load(10, 1) == Rational(45, 100));
  CHECK(optimal_load(10, 2) == Rational(1, 5));
  CHECK(optimal_load(10, 3) == Rational(7, 60));
  CHECK(optimal_load(10, 4) == Rational(3, 40));
  CHECK(optimal_load(10, 5) == Rational(1, 20));
  CHECK(optimal_load(10, 10) == Rational(0));
  CHECK(uncoded_tdma_load(10, 1) == Rational(9, 10));
  CHECK(uncoded_tdma_load(10, 10) == Rational(0));
  CHECK(uncoded_tdma_load(4, 2) == Rational(1, 2));
  CHECK(coded_tdma_load(10, 2) == Rational(2, 5));
  CHECK(coded_tdma_load(10, 5) == Rational(1, 10));
  CHECK(coded_tdma_load(10, 1) == uncoded_tdma_load(10, 1));
  CHECK_THROWS_AS(optimal_load(10, 0), Error);
  CHECK_THROWS_AS(optimal_load(10, 11), Error);
  CHECK_THROWS_AS(coded_tdma_load(0, 1), Error);
}

TEST_CASE("time sharing") {
  CHECK(time_shared_load(10, Rational(3, 2)) == Rational(13, 40));  // 0.325
  CHECK(time_shared_load(10, Rational(15, 2)) == Rational(1, 40));  // 0.025
  for (int r = 1; r <= 10; ++r)
    CHECK(time_shared_load(10, Rational(r)) == optimal_load(10, r));
  // Linear regime: closed form holds for every real r in [K/2, K].
  for (int num = 10; num <= 20; ++num) {
    const Rational r(num, 2);
    CHECK(time_shared_load(10, r) == (Rational(1) - r / 10) / 10);
  }
  CHECK_THROWS_AS(time_shared_load(10, Rational(1, 2)), Error);
  CHECK_THROWS_AS(time_shared_load(10, Rational(21, 2)), Error);
}

TEST_CASE("load orderings and improvement identities") {
  for (int K = 1; K <= 12; ++K)
    for (int r = 1; r <= K; ++r) {
      const auto opt = optimal_load(K, r);
      const auto cod = coded_tdma_load(K, r);
      const auto unc = uncoded_tdma_load(K, r);
      CAPTURE(K);
      CAPTURE(r);
      CHECK(opt <= cod);
      CHECK(cod <= unc);
      CHECK((cod == unc) == (r == 1 || r == K));
      if (r < K) {
        const int m = std::min(K, 2 * r);
        CHECK(Rational(1) - opt / unc == Rational(1) - Rational(1, m));
        CHECK(Rational(1) - opt / cod == Rational(1) - Rational(r, m));
      }
      if (r > 1) CHECK(optimal_load(K, r) < optimal_load(K, r - 1));
    }
}

TEST_CASE("converse bound") {
  SUBCASE("symmetric K=Q=5 N=20 r=2") {
    const auto b = converse_lower_bound(ReplicationProfile::symmetric(20, 2), 5, 5);
    CHECK(b.sigma_sum == Rational(15));
    CHECK(b.blocks == 15);
    CHECK(b.averaged_blocks == 15);
  }
  SUBCASE("asymmetric theta 1,2,3") {
    const auto prof = ReplicationProfile::from_theta({3, 1, 2});
    CHECK(prof.theta == std::vector<int>{1, 2, 3});
    CHECK(prof.r_avg == Rational(2));
    const auto b = converse_lower_bound(prof, 3, 3);
    CHECK(b.sigma_sum == Rational(4, 3));
    CHECK(b.blocks == 2);
    CHECK(b.averaged_blocks == 1);
  }
  SUBCASE("full replication") {
    const auto b = converse_lower_bound(ReplicationProfile::symmetric(7, 4), 4, 8);
    CHECK(b.blocks == 0);
  }
  SUBCASE("bad theta") {
    CHECK_THROWS_AS(
        converse_lower_bound(ReplicationProfile::from_theta({0, 2}), 3, 3), Error);
    CHECK_THROWS_AS(
        converse_lower_bound(ReplicationProfile::from_theta({4}), 3, 3), Error);
  }
}

TEST_CASE("converse dominates the averaged bound and meets the scheduler") {
  for (int K = 2; K <= 7; ++K)
    for (int r = 1; r < K; ++r) {
      const auto p = Placement::symmetric({K, K, K, r});
      const auto prof = ReplicationProfile::from_placement(p);
      const auto b = converse_lower_bound(prof, K, K);
      CHECK(b.blocks >= b.averaged_blocks);
      CHECK(static_cast<std::int64_t>(
                schedule(p, ReduceAssignment::contiguous(K, K)).T()) == b.blocks);
    }
  // Mixed profiles.
  for (int K = 2; K <= 6; ++K)
    for (unsigned mask = 0; mask < 64; ++mask) {
      std::vector<int> theta;
      for (int i = 0; i < 6; ++i) theta.push_back(1 + static_cast<int>((mask >> i) % K));
      const auto b = converse_lower_bound(ReplicationProfile::from_theta(theta), K, K);
      CHECK(b.blocks >= b.averaged_blocks);
    }
}

TEST_CASE("tradeoff table for the K=10 grid") {
  std::vector<Rational> grid;
  for (int r = 10; r >= 1; --r) grid.push_back(Rational(r));
  const auto rows = tradeoff_table(10, 360, 2520, grid, false);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].r == Rational(1));  // sorted
  CHECK(rows[1].L_uncoded == Rational(4, 5));
  CHECK(rows[1].L_coded == Rational(2, 5));
  CHECK(rows[1].L_optimal == Rational(1, 5));
  CHECK(rows[9].L_optimal == Rational(0));
  CHECK(*rows[9].L_uncoded == Rational(0));
  CHECK(*rows[9].converse_T == 0);
  CHECK(rows[2].L_optimal == Rational(7, 60));
  CHECK(rows[3].L_optimal == Rational(3, 40));
  for (const auto& row : rows) {
    const bool flagged = row.r == Rational(3) || row.r == Rational(4);
    CHECK(row.figure_discrepancy == flagged);
    CHECK_FALSE(row.T_measured.has_value());
  }
  CHECK(rows[2].figure_note.find("optimal curve plotted at 0.07") != std::string::npos);
  const auto report = figure_discrepancy_report(rows);
  CHECK(report.find("r=3") != std::string::npos);
  CHECK(report.find("7/60") != std::string::npos);
  CHECK(report.find("3/40") != std::string::npos);
  CHECK(report.find("r=5") == std::string::npos);
}

TEST_CASE("tradeoff table with simulation") {
  const auto rows = tradeoff_table(4, 4, 6, {Rational(2)}, true);
  REQUIRE(rows.size() == 1);
  CHECK(*rows[0].T_measured == 3);
  CHECK(*rows[0].L_measured == Rational(1, 8));
  CHECK(*rows[0].L_measured == rows[0].L_optimal);
  CHECK(*rows[0].converse_T == 3);
  CHECK(*rows[0].padding == 0);

  const auto padded = tradeoff_table(5, 5, 10, {Rational(2)}, true);
  CHECK(*padded[0].T_measured == 15);
  CHECK(*padded[0].T_effective == 8);
  CHECK(*padded[0].padding == 10);
  CHECK(*padded[0].L_measured >= padded[0].L_optimal);
}

TEST_CASE("tradeoff csv") {
  const auto rows = tradeoff_table(
      10, 10, 10, {Rational(1), Rational(3, 2), Rational(2), Rational(10)}, false);
  const auto csv = tradeoff_csv(rows);
  CHECK(csv ==
        "K,Q,N,r,L_uncoded,L_coded,L_optimal,T_measured,L_measured,converse_T\n"
        "10,10,10,1,0.9,0.9,0.45,,,45\n"
        "10,10,10,1.5,,,0.325,,,\n"
        "10,10,10,2,0.8,0.4,0.2,,,20\n"
        "10,10,10,10,0,0,0,,,0\n");
  const auto k2 = tradeoff_csv(tradeoff_table(2, 2, 2, {Rational(1), Rational(2)}, true));
  CHECK(k2.find("2,2,2,2,0,0,0,0,0,0\n") != std::string::npos);
  CHECK_THROWS_AS(tradeoff_table(4, 6, 6, {Rational(2)}, false), Error);
  CHECK_THROWS_AS(tradeoff_table(4, 4, 6, {}, false), Error);
}

TEST_CASE("rational helpers") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("1.5") == Rational(3, 2));
  CHECK(parse_rational("0.025") == Rational(1, 40));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1."), Error);
  CHECK(to_string(Rational(7, 60)) == "7/60");
  CHECK(to_string(Rational(4)) == "4");
  CHECK(format_decimal(7.0 / 60) == "0.116667");
  CHECK(format_decimal(-0.0) == "0");
}
