/*
 * dhms: hostel operations engine.
 *
 * C API over the C++ core: opaque handles plus status codes. Bulk data
 * crosses the boundary as JSON or CSV text; every char* output parameter is
 * allocated by the library and must be released with dhms_string_free().
 * On any non-OK status, dhms_last_error() returns a thread-local message.
 */
#ifndef DHMS_H
#define DHMS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DHMS_API __declspec(dllexport)
#else
#define DHMS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dhms_status {
    DHMS_OK = 0,
    DHMS_ERR_VALIDATION = 1, /* bad argument values, rejected config */
    DHMS_ERR_STRUCTURAL = 2, /* malformed documents, id/range violations */
    DHMS_ERR_TRANSITION = 3, /* illegal state machine move */
    DHMS_ERR_FIT = 4,        /* model fitting rejected the data */
    DHMS_ERR_IO = 5,         /* file system failure */
    DHMS_ERR_UNKNOWN = 6
} dhms_status;

DHMS_API const char* dhms_version(void);

/* Message for the last failing call on this thread; never NULL. */
DHMS_API const char* dhms_last_error(void);

DHMS_API void dhms_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Max-flow solver                                                     */
/* ------------------------------------------------------------------ */

typedef struct dhms_flow_network dhms_flow_network;

DHMS_API dhms_flow_network* dhms_flow_create(uint32_t node_count, uint32_t source, uint32_t sink);
DHMS_API dhms_status dhms_flow_add_edge(dhms_flow_network* net, uint32_t from, uint32_t to,
                                        uint64_t capacity);
/* Solves (or re-reads a prior solve); augmentations may be NULL. */
DHMS_API dhms_status dhms_flow_solve(dhms_flow_network* net, uint64_t* max_flow_value,
                                     uint64_t* augmentations);
DHMS_API dhms_status dhms_flow_edge_flow(dhms_flow_network* net, size_t edge_index,
                                         uint64_t* flow);
/* Source side of a minimum cut. Call after dhms_flow_solve. */
DHMS_API dhms_status dhms_flow_min_cut(dhms_flow_network* net, uint32_t* out_nodes,
                                       size_t out_capacity, size_t* out_count);
/* Text dump, one edge per line: "from to cap flow". */
DHMS_API dhms_status dhms_flow_dump(dhms_flow_network* net, char** out_text);
DHMS_API void dhms_flow_destroy(dhms_flow_network* net);

/* ------------------------------------------------------------------ */
/* Room allocation                                                     */
/* ------------------------------------------------------------------ */

/* instance_json: {group_policy, students[], rooms[]}. baseline != 0 runs the
 * greedy seniority comparator instead of the tiered engine. */
DHMS_API dhms_status dhms_allocate(const char* instance_json, int baseline, unsigned jobs,
                                   char** result_json);
DHMS_API dhms_status dhms_allocation_result_csv(const char* instance_json,
                                                const char* result_json, char** csv_text);
DHMS_API dhms_status dhms_jain_index(const double* values, size_t count, double* out_index);

/* ------------------------------------------------------------------ */
/* Complaint triage                                                    */
/* ------------------------------------------------------------------ */

/* weights_json may be NULL for defaults; otherwise
 * {"type_weights":{category:weight,...},
 *  "age_saturation_hours":h, "impact_saturation":n}. */
DHMS_API dhms_status dhms_priority_score(const char* complaint_json, const char* weights_json,
                                         const char* now_iso8601, double* out_score);
DHMS_API dhms_status dhms_triage_queue(const char* complaints_json, const char* weights_json,
                                       const char* now_iso8601, char** queue_json);
DHMS_API dhms_status dhms_complaint_transition(const char* complaint_json,
                                               const char* next_status, const char* note,
                                               const char* at_iso8601, char** updated_json);
/* report_csv may be NULL when only the JSON document is wanted. */
DHMS_API dhms_status dhms_kpi_report(const char* complaints_json, const char* window_start_iso,
                                     const char* window_end_iso, char** report_json,
                                     char** report_csv);

/* Append-only JSON-lines complaint log (one event per line). */
DHMS_API dhms_status dhms_complaint_log_append_created(const char* log_path,
                                                       const char* complaint_json);
DHMS_API dhms_status dhms_complaint_log_append_transition(const char* log_path, const char* id,
                                                          const char* next_status,
                                                          const char* note,
                                                          const char* at_iso8601);
/* Replays a log into the complaint-array JSON the other calls consume. */
DHMS_API dhms_status dhms_complaint_log_replay(const char* log_path, char** complaints_json);

/* ------------------------------------------------------------------ */
/* Sentiment                                                           */
/* ------------------------------------------------------------------ */

typedef struct dhms_lexicon dhms_lexicon;

DHMS_API dhms_lexicon* dhms_lexicon_load(const char* lexicon_path, const char* stopwords_path);
DHMS_API dhms_status dhms_sentiment_score(const dhms_lexicon* lexicon, const char* text,
                                          double* out_score, double* out_confidence,
                                          char* label_buf, size_t label_capacity);
DHMS_API void dhms_lexicon_destroy(dhms_lexicon* lexicon);

/* ------------------------------------------------------------------ */
/* Anomaly detection                                                   */
/* ------------------------------------------------------------------ */

typedef struct dhms_forest dhms_forest;

/* Turns a complaint stream into feature vectors:
 * [{"complaint_id":..., "features":{...}}, ...]. keywords_csv may be NULL
 * for the built-in alert terms. */
DHMS_API dhms_status dhms_featurize(const char* complaints_json, const char* lexicon_path,
                                    const char* stopwords_path, const char* keywords_csv,
                                    int64_t window_days, char** features_json);
DHMS_API dhms_status dhms_forest_fit(const char* features_json, uint32_t subsample,
                                     uint32_t tree_count, uint64_t seed,
                                     double threshold_percentile, unsigned jobs,
                                     dhms_forest** out_forest);
DHMS_API dhms_status dhms_forest_score(const dhms_forest* forest, const char* feature_json,
                                       double* out_score);
DHMS_API dhms_status dhms_forest_threshold(const dhms_forest* forest, double* out_threshold);
/* threshold < 0 uses the forest's fitted training percentile threshold. */
DHMS_API dhms_status dhms_forest_flag(const dhms_forest* forest, const char* features_json,
                                      double threshold, char** cases_json);
DHMS_API dhms_status dhms_forest_save(const dhms_forest* forest, char** forest_json);
DHMS_API dhms_status dhms_forest_load(const char* forest_json, dhms_forest** out_forest);
DHMS_API void dhms_forest_destroy(dhms_forest* forest);

/* decision is "Confirmed" or "Dismissed"; a decided case cannot change. */
DHMS_API dhms_status dhms_review_case(const char* case_json, const char* decision,
                                      const char* note, char** updated_json);

/* ------------------------------------------------------------------ */
/* Forecasting                                                         */
/* ------------------------------------------------------------------ */

DHMS_API dhms_status dhms_aggregate_weekly(const char* complaints_json, const char* category,
                                           const char* block, char** series_json);
DHMS_API dhms_status dhms_forecast_fit(const char* series_json, uint32_t harmonics,
                                       char** model_json);
DHMS_API dhms_status dhms_forecast_predict(const char* model_json, uint32_t steps, double z,
                                           char** forecast_csv);
/* forecasts_json: [{"block":..., "category":..., "model":{...}}, ...] */
DHMS_API dhms_status dhms_risk_heatmap(const char* forecasts_json, uint32_t steps, double z,
                                       double medium_at, double high_at, char** heatmap_csv);

/* ------------------------------------------------------------------ */
/* Gate passes                                                         */
/* ------------------------------------------------------------------ */

typedef struct dhms_pass_store dhms_pass_store;

DHMS_API dhms_pass_store* dhms_pass_store_create(const uint8_t* key, size_t key_len,
                                                 int64_t exit_grace_seconds,
                                                 uint64_t nonce_seed);
DHMS_API dhms_pass_store* dhms_pass_store_load(const char* path, const uint8_t* key,
                                               size_t key_len, int64_t exit_grace_seconds,
                                               uint64_t nonce_seed);
DHMS_API dhms_status dhms_pass_store_save(dhms_pass_store* store, const char* path);
/* request_json: {student_id, reason, destination, exit_at, return_by,
 * emergency_contact}. */
DHMS_API dhms_status dhms_pass_request(dhms_pass_store* store, const char* request_json,
                                       const char* at_iso8601, char** pass_json);
DHMS_API dhms_status dhms_pass_decide(dhms_pass_store* store, const char* pass_id, int approve,
                                      const char* remarks, const char* at_iso8601,
                                      char** pass_json);
/* direction is "exit" or "entry"; every outcome is a recorded event. */
DHMS_API dhms_status dhms_pass_scan(dhms_pass_store* store, const char* token_text,
                                    const char* direction, const char* at_iso8601,
                                    char** event_json);
DHMS_API dhms_status dhms_pass_get(dhms_pass_store* store, const char* pass_id,
                                   char** pass_json);
/* now_iso8601 (optional) applies lazy expiry to the overdue counter;
 * stats_csv may be NULL. */
DHMS_API dhms_status dhms_pass_stats(dhms_pass_store* store, const char* now_iso8601,
                                     char** stats_json, char** stats_csv);
DHMS_API void dhms_pass_store_destroy(dhms_pass_store* store);

/* ------------------------------------------------------------------ */
/* Synthetic workloads                                                 */
/* ------------------------------------------------------------------ */

DHMS_API dhms_status dhms_gen_allocation(const char* spec_json, char** instance_json);
/* labels_json receives the ground-truth anomaly labels; callers must keep
 * them away from detector inputs. */
DHMS_API dhms_status dhms_gen_complaints(const char* spec_json, char** complaints_json,
                                         char** labels_json);

#ifdef __cplusplus
}
#endif

#endif /* DHMS_H */
