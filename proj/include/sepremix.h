/* include/sepremix.h
 *
 * Copyright 2026 The sepremix authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 * THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
 * ANY KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY
 * IMPLIED WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR
 * PURPOSE, MERCHANTABLITY OR NON-INFRINGEMENT.
 * See the Apache 2 License for the specific language governing permissions
 * and limitations under the License.
 *
 * C interface of the sepremix shared library: quality estimation for
 * separated dialogue (2f measure and DNN surrogates), quality-driven
 * remixing, synthetic corpus generation, training, and evaluation.
 *
 * Conventions: functions return SX_OK (0) or a nonzero sx_status; on error
 * sx_last_error() carries a message for the calling thread. Out-parameters
 * are written only on success. Objects returned through sx_*_free functions
 * own their memory.
 */

#ifndef SEPREMIX_H_
#define SEPREMIX_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sx_status {
  SX_OK = 0,
  SX_ERR_INVALID = 1,
  SX_ERR_IO = 2,
  SX_ERR_FORMAT = 3,     /* codec / alignment / parse problems */
  SX_ERR_CHECKPOINT = 4, /* checkpoint incompatible with request */
  SX_ERR_EMPTY = 5,      /* empty dataset or stem directory */
  SX_ERR_JOIN = 6        /* evaluation join failure */
} sx_status;

/* Message describing the most recent failure on this thread. */
const char* sx_last_error(void);

const char* sx_version(void);

/* Worker threads for internal parallel loops; 0 restores the default. */
void sx_set_threads(int threads);

/* -------------------------------------------------------------------- */
/* Audio buffers                                                        */

typedef struct sx_buffer sx_buffer;

sx_status sx_buffer_load_wav(const char* path, sx_buffer** out);
/* bit_depth: 16/24/32 integer PCM, or 32 with is_float for IEEE floats. */
sx_status sx_buffer_save_wav(const sx_buffer* buffer, const char* path,
                             int bit_depth, int is_float);
sx_status sx_buffer_create(const float* interleaved, int64_t frames,
                           int channels, int sample_rate, sx_buffer** out);
void sx_buffer_free(sx_buffer* buffer);

int sx_buffer_channels(const sx_buffer* buffer);
int64_t sx_buffer_length(const sx_buffer* buffer);
int sx_buffer_sample_rate(const sx_buffer* buffer);
/* Copies one channel into out (length samples). */
sx_status sx_buffer_copy_channel(const sx_buffer* buffer, int channel,
                                 float* out, int64_t capacity);
sx_status sx_buffer_downmix_mono(const sx_buffer* buffer, sx_buffer** out);

/* -------------------------------------------------------------------- */
/* 2f quality measure                                                   */

typedef struct sx_score sx_score;

/* boundary_enabled = 0 uses the adapted mode (silent-reference segments are
 * kept); nonzero restores the legacy discard behavior. playback_level_db is
 * the SPL assumed for digital full scale (0 selects the 92 dB default).
 * coeff_path may be NULL: the SEPREMIX_TWOF_COEFFS environment variable or
 * built-in constants are used. */
sx_status sx_score_2f(const sx_buffer* reference, const sx_buffer* probe,
                      int boundary_enabled, double playback_level_db,
                      const char* coeff_path, sx_score** out);

double sx_score_value(const sx_score* score);
int sx_score_channel_count(const sx_score* score);
double sx_score_channel_value(const sx_score* score, int channel);
int64_t sx_score_segment_count(const sx_score* score);
sx_status sx_score_segment(const sx_score* score, int64_t index, int* channel,
                           int64_t* offset, double* value);
/* PEAQ-derived features for one segment; any pointer may be NULL. */
sx_status sx_score_segment_features(const sx_score* score, int64_t index,
                                    double* adb, double* avg_mod_diff_1,
                                    int64_t* frames_used, int64_t* frames_total);
void sx_score_free(sx_score* score);

/* Feature pair for a whole mono item (no segmentation). */
sx_status sx_compute_features(const sx_buffer* reference,
                              const sx_buffer* probe, int boundary_enabled,
                              double* adb, double* avg_mod_diff_1,
                              int64_t* frames_used, int64_t* frames_total);

/* -------------------------------------------------------------------- */
/* DNN estimators                                                       */

typedef struct sx_model sx_model;

typedef enum sx_variant {
  SX_VARIANT_INTRUSIVE = 0,      /* iDNN2f: reference = clean target */
  SX_VARIANT_NON_INTRUSIVE = 1,  /* nDNN2f: reference = input mixture */
  SX_VARIANT_REFERENCE_FREE = 2  /* rDNN2f: no reference */
} sx_variant;

sx_status sx_model_load(const char* path, sx_model** out);
void sx_model_free(sx_model* model);
int sx_model_input_channels(const sx_model* model);
uint64_t sx_model_seed(const sx_model* model);
/* Checkpoint fingerprint (CRC) as an 8-character hex string. */
const char* sx_model_hash(const sx_model* model);

/* reference must be NULL exactly for SX_VARIANT_REFERENCE_FREE. */
sx_status sx_predict(sx_model* model, sx_variant variant,
                     const sx_buffer* probe, const sx_buffer* reference,
                     sx_score** out);

/* -------------------------------------------------------------------- */
/* Remixing                                                             */

typedef struct sx_remix_plan {
  double q_hat;
  double g_db;   /* clamped background attenuation */
  double gamma;  /* 10^(-g/20) */
} sx_remix_plan;

/* preset: "initial" (0.71 q - 22.28) or "refined" (0.45 q - 12.67); k_db
 * shifts the mapping; the gain is clamped to [4, 26] dB. */
sx_status sx_map_gain(double q_hat, const char* preset, double k_db,
                      sx_remix_plan* out);

/* y = separated + gamma * (mixture - separated). */
sx_status sx_remix_apply(const sx_buffer* mixture, const sx_buffer* separated,
                         double gamma, sx_buffer** out);

/* -------------------------------------------------------------------- */
/* Corpus synthesis, training, evaluation                               */

typedef struct sx_synth_result {
  char* manifest_path; /* free with sx_string_free */
  int64_t items;
  int64_t rows;
} sx_synth_result;

/* config_path may be NULL for defaults. */
sx_status sx_synth_corpus(const char* speech_dir, const char* background_dir,
                          const char* config_path, uint64_t seed,
                          const char* out_dir, sx_synth_result* out);

typedef struct sx_train_options {
  int epochs;          /* default 50 when <= 0 */
  int batch_size;      /* default 64 when <= 0 */
  uint64_t seed;
  const char* network_config_path; /* NULL: full-size architecture */
} sx_train_options;

/* Per-epoch progress callback; return 0 to stop early. */
typedef int (*sx_train_progress)(int epoch, double train_mse, double valid_mse,
                                 double lr_scale, void* user);

sx_status sx_train(const char* train_manifest, const char* valid_manifest,
                   sx_variant variant, const sx_train_options* options,
                   const char* checkpoint_out, const char* log_out,
                   sx_train_progress progress, void* user);

typedef struct sx_eval_report sx_eval_report;

/* predictions/references are line-delimited JSON records with an "id" and a
 * "value" (or "label"/"q_hat") field; optional "variant" and "split". */
sx_status sx_evaluate(const char* predictions_path, const char* references_path,
                      sx_eval_report** out);

int64_t sx_eval_report_rows(const sx_eval_report* report);
sx_status sx_eval_report_row(const sx_eval_report* report, int64_t index,
                             const char** variant, const char** split,
                             int64_t* pairs, double* pearson, double* slope,
                             double* mae, double* rmse);
int64_t sx_eval_report_aggregates(const sx_eval_report* report);
sx_status sx_eval_report_aggregate(const sx_eval_report* report, int64_t index,
                                   const char** variant, double* fisher_rho);
/* Human-readable table; free with sx_string_free. */
sx_status sx_eval_report_table(const sx_eval_report* report, char** out);
void sx_eval_report_free(sx_eval_report* report);

void sx_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SEPREMIX_H_ */
