/* C interface to the wireless distributed computing shuffle simulator.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Every function returning wdc_status leaves a message retrievable with
 * wdc_last_error() (per thread) when it fails. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * wdc_string_free(). Node, file and function indices are 1-based. */
#ifndef WDC_WDC_H
#define WDC_WDC_H

#include <stddef.h>
#include <stdint.h>

#if defined(WDC_BUILDING_LIBRARY)
#define WDC_API __attribute__((visibility("default")))
#else
#define WDC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wdc_status {
  WDC_OK = 0,
  WDC_ERR_INVALID_ARGUMENT = 1,
  WDC_ERR_INFEASIBLE = 2,
  WDC_ERR_LIMIT_EXCEEDED = 3,
  WDC_ERR_PARSE = 4,
  WDC_ERR_DECODE = 5,
  WDC_ERR_INTERNAL = 6
} wdc_status;

typedef struct wdc_system wdc_system; /* placement + reduce assignment */
typedef struct wdc_schedule wdc_schedule;
typedef struct wdc_channel wdc_channel;
typedef struct wdc_simulation wdc_simulation;

typedef struct wdc_rational {
  int64_t num;
  int64_t den;
} wdc_rational;

WDC_API const char* wdc_version(void);
WDC_API const char* wdc_status_name(wdc_status status);
WDC_API const char* wdc_last_error(void);
WDC_API void wdc_string_free(char* s);

/* ---- placement ---------------------------------------------------------- */

WDC_API wdc_status wdc_system_symmetric(int K, int N, int Q, int r,
                                        wdc_system** out);
WDC_API wdc_status wdc_system_from_json(const char* json, wdc_system** out);
WDC_API wdc_status wdc_system_to_json(const wdc_system* sys, char** out);
WDC_API wdc_status wdc_system_without_padding(const wdc_system* sys,
                                              wdc_system** out);
WDC_API void wdc_system_free(wdc_system* sys);

typedef struct wdc_system_info {
  int K;
  int Q;
  int n_real;
  int n_total;
  int padding;
  wdc_rational computation_load;
  int64_t total_demand;
  int symmetric;
} wdc_system_info;

WDC_API wdc_status wdc_system_get_info(const wdc_system* sys,
                                       wdc_system_info* out);

/* Writes S_n into nodes[0..cap) and its size into *len. Fails with
 * WDC_ERR_INVALID_ARGUMENT when cap is too small (len still set). */
WDC_API wdc_status wdc_system_support(const wdc_system* sys, int n, int* nodes,
                                      size_t cap, size_t* len);

/* ---- scheduling --------------------------------------------------------- */

WDC_API wdc_status wdc_schedule_build(const wdc_system* sys,
                                      int compact_padding, wdc_schedule** out);
WDC_API wdc_status wdc_schedule_from_json(const wdc_system* sys,
                                          const char* json, wdc_schedule** out);
WDC_API wdc_status wdc_schedule_to_json(const wdc_schedule* s, char** out);
WDC_API size_t wdc_schedule_block_count(const wdc_schedule* s);
WDC_API wdc_status wdc_schedule_effective_count(const wdc_schedule* s,
                                                const wdc_system* sys,
                                                size_t* out);
WDC_API wdc_status wdc_schedule_drop_padding(const wdc_schedule* s,
                                             const wdc_system* sys,
                                             wdc_schedule** out);
WDC_API void wdc_schedule_free(wdc_schedule* s);

/* Collects counting-feasibility violations. *feasible is 1 or 0; text and
 * json receive the rendered report when non-null. */
WDC_API wdc_status wdc_validate(const wdc_system* sys, const wdc_schedule* s,
                                int* feasible, char** text, char** json);

/* Exhaustive minimum block count; WDC_ERR_LIMIT_EXCEEDED beyond the demand
 * guard or when the optimum exceeds cap. witness may be null. */
WDC_API wdc_status wdc_oracle(const wdc_system* sys, int cap, int* min_blocks,
                              wdc_schedule** witness);

/* ---- metrics ------------------------------------------------------------ */

typedef struct wdc_converse {
  wdc_rational sigma_sum;
  int64_t blocks;
  int64_t averaged_blocks;
} wdc_converse;

/* include_padding selects the replication profile over n_total files
 * (1) or the real ones only (0). */
WDC_API wdc_status wdc_converse_bound(const wdc_system* sys,
                                      int include_padding, wdc_converse* out);
WDC_API wdc_status wdc_converse_bound_theta(int K, int Q, const int* theta,
                                            size_t n, wdc_converse* out);

/* Optimal load, time-shared for non-integer r. */
WDC_API wdc_status wdc_load_optimal(int K, wdc_rational r, wdc_rational* out);
WDC_API wdc_status wdc_load_uncoded_tdma(int K, int r, wdc_rational* out);
WDC_API wdc_status wdc_load_coded_tdma(int K, int r, wdc_rational* out);

/* Tradeoff rows for the given r grid. csv, report (flagged figure
 * deviations, possibly empty) and json may each be null. */
WDC_API wdc_status wdc_tradeoff(int K, int Q, int N, const wdc_rational* r,
                                size_t n, int simulate, char** csv,
                                char** report, char** json);

/* ---- channel & simulation ---------------------------------------------- */

WDC_API wdc_status wdc_channel_generate(int K, uint64_t seed, double h_min,
                                        double h_max, double rank_tol,
                                        wdc_channel** out);
WDC_API wdc_status wdc_channel_from_json(const char* json, wdc_channel** out);
WDC_API wdc_status wdc_channel_to_json(const wdc_channel* H, char** out);
WDC_API void wdc_channel_free(wdc_channel* H);

typedef struct wdc_sim_config {
  double power; /* linear */
  int noise;
  int tau;
  uint64_t seed;
  int workers;
  double zf_tol;
  double residual_tol;
  double gain_floor;
  double rank_tol;
} wdc_sim_config;

WDC_API void wdc_sim_config_default(wdc_sim_config* cfg);

/* Runs every block. Decode failures are recorded in the result, not
 * returned as a status; check wdc_simulation_summary().all_ok. */
WDC_API wdc_status wdc_simulate(const wdc_system* sys, const wdc_schedule* s,
                                const wdc_channel* H, const wdc_sim_config* cfg,
                                wdc_simulation** out);
WDC_API void wdc_simulation_free(wdc_simulation* sim);

typedef struct wdc_sim_summary {
  size_t blocks;
  size_t deliveries;
  size_t real_deliveries;
  size_t real_decoded;
  int all_ok;
  size_t first_failing_block; /* 0 when none */
  double max_residual;
  double max_relative_error;
} wdc_sim_summary;

WDC_API wdc_status wdc_simulation_summary(const wdc_simulation* sim,
                                          wdc_sim_summary* out);
WDC_API wdc_status wdc_simulation_residual_csv(const wdc_simulation* sim,
                                               char** out);
WDC_API wdc_status wdc_simulation_to_json(const wdc_simulation* sim,
                                          char** out);

/* Measured T/L of a schedule next to the closed-form and converse values. */
WDC_API wdc_status wdc_load_report_json(const wdc_system* sys,
                                        const wdc_schedule* s, char** out);

#ifdef __cplusplus
}
#endif

#endif /* WDC_WDC_H */
