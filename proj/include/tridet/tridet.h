/* C interface to the tridet shared library.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Every fallible call returns a tdt_status; on failure a message for the
 * calling thread is available from tdt_last_error(). Strings returned through
 * char** are heap-allocated and released with tdt_string_free(). */
#ifndef TRIDET_H
#define TRIDET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TRIDET_BUILDING)
#    define TDT_API __declspec(dllexport)
#  else
#    define TDT_API __declspec(dllimport)
#  endif
#else
#  define TDT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tdt_status {
  TDT_OK = 0,
  TDT_E_INVALID_ARGUMENT = 1,
  TDT_E_PARSE = 2,
  TDT_E_IO = 3,
  TDT_E_UNDEFINED = 4,      /* statistic undefined for this graph (e.g. no wedges) */
  TDT_E_CAPACITY = 5,       /* dense path above the node cap */
  TDT_E_NO_CONVERGENCE = 6, /* power iteration did not converge */
  TDT_E_GENERATION = 7,
  TDT_E_INTERNAL = 8
} tdt_status;

typedef enum tdt_classification {
  TDT_UNDETECTABLE = 0,
  TDT_INDETERMINATE = 1,
  TDT_DETECTABLE = 2
} tdt_classification;

typedef enum tdt_lambda1_source { TDT_LAMBDA1_CHUNG = 0, TDT_LAMBDA1_POWER_ITERATION = 1 } tdt_lambda1_source;

typedef struct tdt_graph tdt_graph;
typedef struct tdt_gen_params tdt_gen_params;
typedef struct tdt_gen_report tdt_gen_report;

TDT_API const char* tdt_version(void);
TDT_API const char* tdt_last_error(void);
TDT_API const char* tdt_status_name(tdt_status status);
TDT_API void tdt_string_free(char* s);

/* ---- graphs ---------------------------------------------------------- */

typedef struct tdt_graph_info {
  uint64_t nodes;
  uint64_t edges;
  uint64_t self_loops_dropped;
  uint64_t duplicates_dropped;
} tdt_graph_info;

/* node_count_override < 0 keeps the node set equal to the tokens seen. */
TDT_API tdt_status tdt_graph_read_edge_list(const char* path, int64_t node_count_override, tdt_graph** out);
TDT_API tdt_status tdt_graph_parse_edge_list(const char* text, size_t length, int64_t node_count_override,
                                             tdt_graph** out);
TDT_API tdt_status tdt_graph_write_edge_list(const tdt_graph* graph, const char* path);
TDT_API tdt_status tdt_graph_get_info(const tdt_graph* graph, tdt_graph_info* out);
TDT_API void tdt_graph_free(tdt_graph* graph);

/* ---- statistics ------------------------------------------------------ */

typedef struct tdt_census {
  uint64_t total_triangles;
  uint64_t wedge_count;
  double gcc;                   /* NaN when wedge_count == 0 */
  double mean_local_clustering;
} tdt_census;

TDT_API tdt_status tdt_triangle_census(const tdt_graph* graph, unsigned workers, tdt_census* out);

typedef struct tdt_triangle_estimate {
  double estimate;
  double standard_error;
  double closure_rate;
  uint64_t samples;
} tdt_triangle_estimate;

TDT_API tdt_status tdt_approx_triangle_count(const tdt_graph* graph, uint64_t sample_size, uint64_t seed,
                                             tdt_triangle_estimate* out);

typedef struct tdt_oracle_result {
  double gcc_triangles;  /* 3 T / wedges */
  double gcc_trace;      /* (trace(A^3)/N) / (<k^2> - <k>) */
  double residual;       /* |gcc_triangles - gcc_trace| */
  uint64_t trace_a3;
} tdt_oracle_result;

/* dense_cap == 0 selects the default cap (2000 nodes). */
TDT_API tdt_status tdt_spectral_oracle(const tdt_graph* graph, size_t dense_cap, tdt_oracle_result* out);

TDT_API tdt_status tdt_lambda1_power_iteration(const tdt_graph* graph, double tol, uint64_t max_iter,
                                               double* out);
TDT_API tdt_status tdt_bulk_third_moment(const tdt_graph* graph, size_t n_isolated, size_t dense_cap,
                                         double* out);

/* ---- assessment ------------------------------------------------------ */

typedef struct tdt_assess_options {
  tdt_lambda1_source lambda1;
  double power_tol;
  uint64_t power_max_iter;
  uint64_t small_n_threshold;
  double density_threshold;
  unsigned workers;
} tdt_assess_options;

typedef struct tdt_verdict {
  tdt_classification classification;
  double gcc;
  double c_uc;
  double bound;
  double lambda1_used;
  tdt_lambda1_source lambda1_source;
} tdt_verdict;

TDT_API void tdt_assess_options_default(tdt_assess_options* options);

/* options may be NULL for defaults; assessment_json may be NULL. */
TDT_API tdt_status tdt_assess(const tdt_graph* graph, const tdt_assess_options* options, tdt_verdict* verdict,
                              char** assessment_json);
TDT_API tdt_status tdt_verdict_from_values(double gcc, double c_uc, double bound, tdt_classification* out);

/* ---- generators ------------------------------------------------------ */

/* model: "er", "ba", "ws", "ng" or "lfr". */
TDT_API tdt_status tdt_gen_params_create(const char* model, tdt_gen_params** out);
TDT_API tdt_status tdt_gen_params_set(tdt_gen_params* params, const char* name, double value);
TDT_API void tdt_gen_params_free(tdt_gen_params* params);

/* report may be NULL. */
TDT_API tdt_status tdt_generate(const tdt_gen_params* params, uint64_t seed, tdt_graph** graph,
                                tdt_gen_report** report);
TDT_API tdt_status tdt_gen_report_json(const tdt_gen_report* report, char** json);
TDT_API tdt_status tdt_gen_report_write_membership(const tdt_gen_report* report, const char* path);
TDT_API void tdt_gen_report_free(tdt_gen_report* report);

/* ---- sweeps ---------------------------------------------------------- */

/* Runs the JSON sweep description and renders rows as "csv" or "json".
 * threads > 0 overrides the sweep file's thread count. */
TDT_API tdt_status tdt_run_sweep(const char* spec_json, const char* format, unsigned threads, char** output);

#ifdef __cplusplus
}
#endif

#endif /* TRIDET_H */
