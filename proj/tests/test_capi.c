/* Plain C client of the shared library. Each function returns the number of
 * failed expectations. */
#include <stdio.h>
#include <string.h>

#include "wdc/wdc.h"

#define EXPECT(cond)                                                    \
  do {                                                                  \
    if (!(cond)) {                                                      \
      fprintf(stderr, "%s:%d: expectation failed: %s (%s)\n", __FILE__, \
              __LINE__, #cond, wdc_last_error());                       \
      ++failures;                                                       \
    }                                                                   \
  } while (0)

int capi_status_names(void) {
  int failures = 0;
  EXPECT(strcmp(wdc_version(), "0.1.0") == 0);
  EXPECT(strcmp(wdc_status_name(WDC_OK), "ok") == 0);
  EXPECT(strcmp(wdc_status_name(WDC_ERR_DECODE), "decode failure") == 0);
  return failures;
}

int capi_placement(void) {
  int failures = 0;
  wdc_system* sys = NULL;
  wdc_system_info info;
  int nodes[4];
  size_t len = 0;
  char* json = NULL;
  wdc_system* back = NULL;

  EXPECT(wdc_system_symmetric(4, 6, 4, 2, &sys) == WDC_OK);
  EXPECT(wdc_system_get_info(sys, &info) == WDC_OK);
  EXPECT(info.K == 4 && info.Q == 4 && info.n_total == 6 && info.padding == 0);
  EXPECT(info.computation_load.num == 2 && info.computation_load.den == 1);
  EXPECT(info.total_demand == 12);
  EXPECT(info.symmetric == 1);
  EXPECT(wdc_system_support(sys, 4, nodes, 4, &len) == WDC_OK);
  EXPECT(len == 2 && nodes[0] == 2 && nodes[1] == 3);
  EXPECT(wdc_system_support(sys, 4, nodes, 1, &len) == WDC_ERR_INVALID_ARGUMENT);
  EXPECT(len == 2);
  EXPECT(wdc_system_support(sys, 9, nodes, 4, &len) == WDC_ERR_INVALID_ARGUMENT);

  EXPECT(wdc_system_to_json(sys, &json) == WDC_OK);
  EXPECT(json != NULL && strstr(json, "\"mapped_files\":[[1,2,3],[1,4,5]") != NULL);
  EXPECT(wdc_system_from_json(json, &back) == WDC_OK);
  EXPECT(wdc_system_get_info(back, &info) == WDC_OK && info.n_total == 6);
  wdc_string_free(json);
  wdc_system_free(back);
  wdc_system_free(sys);

  sys = NULL;
  EXPECT(wdc_system_symmetric(4, 3, 4, 2, &sys) == WDC_ERR_INVALID_ARGUMENT);
  EXPECT(sys == NULL);
  EXPECT(strstr(wdc_last_error(), "N must be >= K") != NULL);
  EXPECT(wdc_system_from_json("{not json", &sys) == WDC_ERR_PARSE);
  EXPECT(wdc_system_symmetric(4, 6, 4, 2, NULL) == WDC_ERR_INVALID_ARGUMENT);
  wdc_system_free(NULL);
  return failures;
}

int capi_schedule(void) {
  int failures = 0;
  wdc_system* sys = NULL;
  wdc_schedule* s = NULL;
  wdc_schedule* again = NULL;
  int feasible = 0;
  char* text = NULL;
  char* json = NULL;
  size_t eff = 0;

  EXPECT(wdc_system_symmetric(4, 6, 4, 2, &sys) == WDC_OK);
  EXPECT(wdc_schedule_build(sys, 1, &s) == WDC_OK);
  EXPECT(wdc_schedule_block_count(s) == 3);
  EXPECT(wdc_schedule_effective_count(s, sys, &eff) == WDC_OK && eff == 3);
  EXPECT(wdc_validate(sys, s, &feasible, &text, &json) == WDC_OK);
  EXPECT(feasible == 1);
  EXPECT(text != NULL && strstr(text, "feasible (0 violations)") != NULL);
  EXPECT(json != NULL && strstr(json, "\"ok\":true") != NULL);
  wdc_string_free(text);
  wdc_string_free(json);

  EXPECT(wdc_schedule_to_json(s, &json) == WDC_OK);
  EXPECT(strstr(json, "\"T\":3") != NULL);
  EXPECT(wdc_schedule_from_json(sys, json, &again) == WDC_OK);
  EXPECT(wdc_schedule_block_count(again) == 3);
  wdc_string_free(json);

  /* A schedule missing a block fails validation without erroring. */
  EXPECT(wdc_schedule_from_json(sys, "{\"blocks\":[]}", &again) == WDC_OK);
  EXPECT(wdc_validate(sys, again, &feasible, NULL, NULL) == WDC_OK);
  EXPECT(feasible == 0);
  wdc_schedule_free(again);
  EXPECT(wdc_schedule_block_count(NULL) == 0);
  wdc_schedule_free(s);
  wdc_system_free(sys);
  return failures;
}

int capi_padding(void) {
  int failures = 0;
  wdc_system* sys = NULL;
  wdc_system* real = NULL;
  wdc_schedule* s = NULL;
  wdc_schedule* f = NULL;
  size_t eff = 0;
  int feasible = 0;

  EXPECT(wdc_system_symmetric(5, 10, 5, 2, &sys) == WDC_OK);
  EXPECT(wdc_schedule_build(sys, 1, &s) == WDC_OK);
  EXPECT(wdc_schedule_block_count(s) == 15);
  EXPECT(wdc_schedule_effective_count(s, sys, &eff) == WDC_OK && eff == 8);
  EXPECT(wdc_schedule_drop_padding(s, sys, &f) == WDC_OK);
  EXPECT(wdc_schedule_block_count(f) == 8);
  EXPECT(wdc_system_without_padding(sys, &real) == WDC_OK);
  EXPECT(wdc_validate(real, f, &feasible, NULL, NULL) == WDC_OK && feasible);
  wdc_schedule_free(f);
  wdc_schedule_free(s);
  EXPECT(wdc_schedule_build(sys, 0, &s) == WDC_OK);
  EXPECT(wdc_schedule_effective_count(s, sys, &eff) == WDC_OK && eff == 9);
  wdc_schedule_free(s);
  wdc_system_free(real);
  wdc_system_free(sys);
  return failures;
}

int capi_oracle_and_bounds(void) {
  int failures = 0;
  wdc_system* sys = NULL;
  wdc_schedule* w = NULL;
  int blocks = -1;
  wdc_converse c;
  const int theta[3] = {1, 2, 3};
  const char* asym =
      "{\"K\":3,\"Q\":3,\"n_total\":3,\"mapped_files\":[[1],[1,2],[1,2,3]]}";

  EXPECT(wdc_system_symmetric(3, 3, 3, 2, &sys) == WDC_OK);
  EXPECT(wdc_oracle(sys, 8, &blocks, &w) == WDC_OK && blocks == 1);
  EXPECT(wdc_schedule_block_count(w) == 1);
  wdc_schedule_free(w);
  wdc_system_free(sys);

  EXPECT(wdc_system_from_json(asym, &sys) == WDC_OK);
  EXPECT(wdc_oracle(sys, 8, &blocks, NULL) == WDC_OK && blocks == 3);
  EXPECT(wdc_converse_bound(sys, 1, &c) == WDC_OK);
  EXPECT(c.sigma_sum.num == 4 && c.sigma_sum.den == 3 && c.blocks == 2);
  EXPECT(wdc_schedule_build(sys, 1, &w) == WDC_ERR_INVALID_ARGUMENT);
  wdc_system_free(sys);

  EXPECT(wdc_converse_bound_theta(3, 3, theta, 3, &c) == WDC_OK && c.blocks == 2);
  EXPECT(wdc_converse_bound_theta(3, 3, theta, 0, &c) == WDC_ERR_INVALID_ARGUMENT);

  EXPECT(wdc_system_symmetric(5, 20, 5, 2, &sys) == WDC_OK);
  EXPECT(wdc_oracle(sys, 8, &blocks, NULL) == WDC_ERR_LIMIT_EXCEEDED);
  EXPECT(wdc_converse_bound(sys, 1, &c) == WDC_OK && c.blocks == 15);
  wdc_system_free(sys);
  return failures;
}

int capi_loads(void) {
  int failures = 0;
  wdc_rational out;
  wdc_rational r3 = {3, 1};
  wdc_rational half = {3, 2};
  wdc_rational grid[3] = {{1, 1}, {3, 1}, {4, 1}};
  char* csv = NULL;
  char* report = NULL;
  char* json = NULL;
  const char* header =
      "K,Q,N,r,L_uncoded,L_coded,L_optimal,T_measured,L_measured,converse_T\n";

  EXPECT(wdc_load_optimal(10, r3, &out) == WDC_OK && out.num == 7 && out.den == 60);
  EXPECT(wdc_load_optimal(10, half, &out) == WDC_OK && out.num == 13 && out.den == 40);
  EXPECT(wdc_load_coded_tdma(10, 2, &out) == WDC_OK && out.num == 2 && out.den == 5);
  EXPECT(wdc_load_uncoded_tdma(10, 1, &out) == WDC_OK && out.num == 9 && out.den == 10);
  EXPECT(wdc_load_uncoded_tdma(10, 11, &out) == WDC_ERR_INVALID_ARGUMENT);
  r3.den = 0;
  EXPECT(wdc_load_optimal(10, r3, &out) == WDC_ERR_INVALID_ARGUMENT);

  EXPECT(wdc_tradeoff(10, 10, 10, grid, 3, 0, &csv, &report, &json) == WDC_OK);
  EXPECT(strncmp(csv, header, strlen(header)) == 0);
  EXPECT(strstr(report, "7/60") != NULL && strstr(report, "3/40") != NULL);
  EXPECT(strstr(json, "\"figure_discrepancy\":true") != NULL);
  wdc_string_free(csv);
  wdc_string_free(report);
  wdc_string_free(json);
  EXPECT(wdc_tradeoff(4, 6, 6, grid, 1, 0, &csv, NULL, NULL) ==
         WDC_ERR_INVALID_ARGUMENT);
  return failures;
}

int capi_simulation(void) {
  int failures = 0;
  wdc_system* sys = NULL;
  wdc_schedule* s = NULL;
  wdc_channel* H = NULL;
  wdc_channel* H2 = NULL;
  wdc_simulation* sim = NULL;
  wdc_sim_config cfg;
  wdc_sim_summary sum;
  char* text = NULL;

  EXPECT(wdc_system_symmetric(4, 6, 4, 2, &sys) == WDC_OK);
  EXPECT(wdc_schedule_build(sys, 1, &s) == WDC_OK);
  EXPECT(wdc_channel_generate(4, 7, 0.1, 10.0, 1e-8, &H) == WDC_OK);
  wdc_sim_config_default(&cfg);
  EXPECT(cfg.tau == 64 && cfg.noise == 0 && cfg.power == 1e4);
  EXPECT(wdc_simulate(sys, s, H, &cfg, &sim) == WDC_OK);
  EXPECT(wdc_simulation_summary(sim, &sum) == WDC_OK);
  EXPECT(sum.all_ok == 1 && sum.blocks == 3 && sum.real_decoded == 12);
  EXPECT(sum.first_failing_block == 0);
  EXPECT(sum.max_relative_error <= 1e-9);
  EXPECT(wdc_simulation_residual_csv(sim, &text) == WDC_OK);
  EXPECT(strncmp(text, "block,receiver,intended_gain,max_residual,snr_db\n", 49) == 0);
  wdc_string_free(text);
  EXPECT(wdc_simulation_to_json(sim, &text) == WDC_OK);
  EXPECT(strstr(text, "\"all_ok\":true") != NULL);
  wdc_string_free(text);
  EXPECT(wdc_load_report_json(sys, s, &text) == WDC_OK);
  EXPECT(strstr(text, "\"exact\":\"1/8\"") != NULL);
  wdc_string_free(text);
  wdc_simulation_free(sim);

  EXPECT(wdc_channel_to_json(H, &text) == WDC_OK);
  EXPECT(wdc_channel_from_json(text, &H2) == WDC_OK);
  wdc_string_free(text);

  cfg.noise = 1;
  cfg.power = 1e-2;
  EXPECT(wdc_simulate(sys, s, H2, &cfg, &sim) == WDC_OK);
  EXPECT(wdc_simulation_summary(sim, &sum) == WDC_OK);
  EXPECT(sum.all_ok == 0 && sum.first_failing_block >= 1);
  wdc_simulation_free(sim);

  cfg.tau = 0;
  EXPECT(wdc_simulate(sys, s, H, &cfg, &sim) == WDC_ERR_INVALID_ARGUMENT);
  EXPECT(wdc_simulate(sys, s, NULL, &cfg, &sim) == WDC_ERR_INVALID_ARGUMENT);
  EXPECT(wdc_channel_generate(0, 1, 0.1, 10.0, 1e-8, &H2) == WDC_ERR_INVALID_ARGUMENT);
  wdc_channel_free(H2);
  wdc_channel_free(H);
  wdc_schedule_free(s);
  wdc_system_free(sys);
  return failures;
}
