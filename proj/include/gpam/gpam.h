/* C interface to the gpam spectral laboratory. All functions return a
 * gpam_status; on failure gpam_last_error() describes the cause for the
 * calling thread. Handles are owned by the caller and released with the
 * matching *_free function. */
#ifndef GPAM_H
#define GPAM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GPAM_API __declspec(dllexport)
#else
#define GPAM_API __attribute__((visibility("default")))
#endif

typedef enum gpam_status {
  GPAM_OK = 0,
  GPAM_ERR_INVALID_ARGUMENT = 1,
  GPAM_ERR_NONZERO_MEAN = 2,
  GPAM_ERR_GRID_MISMATCH = 3,
  GPAM_ERR_BANDWIDTH = 4,
  GPAM_ERR_OUT_OF_RANGE = 5,
  GPAM_ERR_SYMMETRY = 6,
  GPAM_ERR_NUMERICAL = 7,
  GPAM_ERR_IO = 8,
  GPAM_ERR_CONFIG = 9,
  GPAM_ERR_INTERNAL = 100
} gpam_status;

typedef struct gpam_field gpam_field;
typedef struct gpam_partition gpam_partition;

GPAM_API const char* gpam_version(void);
GPAM_API const char* gpam_last_error(void);
GPAM_API const char* gpam_status_name(gpam_status status);

/* Fields */
GPAM_API gpam_status gpam_field_create(int n, gpam_field** out);
GPAM_API gpam_status gpam_field_read(const char* path, gpam_field** out);
GPAM_API gpam_status gpam_field_write(const gpam_field* f, const char* path);
GPAM_API void gpam_field_free(gpam_field* f);
GPAM_API int gpam_field_grid_size(const gpam_field* f);
GPAM_API gpam_status gpam_field_get(const gpam_field* f, int k1, int k2,
                                    double* re, double* im);
/* Sets the coefficient at k and its conjugate partner at -k. */
GPAM_API gpam_status gpam_field_set_mode(gpam_field* f, int k1, int k2,
                                         double re, double im);
GPAM_API gpam_status gpam_field_hash(const gpam_field* f, char* buf,
                                     size_t cap);
GPAM_API gpam_status gpam_field_holder_norm(const gpam_field* f,
                                            const gpam_partition* p,
                                            double alpha, double* out);

/* Noise. band < 0 selects n/2 - 1. */
GPAM_API gpam_status gpam_noise_sample(int n, uint64_t seed, uint64_t stream,
                                       int band, gpam_field** out);
/* c_eps and b_eps over 0 < max|k_i| <= k_cut; tail bounds the omitted terms
 * of either sum. */
GPAM_API gpam_status gpam_noise_constants(const char* psi, double eps,
                                          int k_cut, double* c_eps,
                                          double* b_eps, double* tail);

/* Littlewood-Paley partition */
GPAM_API gpam_status gpam_partition_create(int n, gpam_partition** out);
GPAM_API void gpam_partition_free(gpam_partition* p);
GPAM_API gpam_status gpam_partition_hash(const gpam_partition* p, char* buf,
                                         size_t cap);
/* CSV with columns j,k_abs,weight for every distinct |k| on the grid where
 * the block weight is nonzero. */
GPAM_API gpam_status gpam_partition_dump_csv(const gpam_partition* p,
                                             const char* path);

/* Enhancement: writes the pair next to manifest_path. */
GPAM_API gpam_status gpam_enhance_write(const gpam_field* theta, double c,
                                        const gpam_partition* p, double alpha,
                                        const char* manifest_path);

/* Classical solver; writes a trajectory directory. */
typedef struct gpam_solve_options {
  double T;
  double dt;
  const char* scheme; /* etd1, etd2rk, picard */
  int snap_every;
  double picard_tol;
  int picard_max_iter;
} gpam_solve_options;

GPAM_API void gpam_solve_options_default(gpam_solve_options* opt);
GPAM_API gpam_status gpam_solve(const gpam_field* u0, const gpam_field* h,
                                double c, const char* f,
                                const gpam_solve_options* opt,
                                const char* out_dir, int* exploded);

/* Experiments. Names are written comma-separated into buf. */
GPAM_API gpam_status gpam_experiment_names(char* buf, size_t cap);
/* config_text is flat key=value text overriding the defaults. Writes
 * report.csv, verdict.txt, manifest.txt and plots/ under out_dir. */
GPAM_API gpam_status gpam_experiment_run(const char* name,
                                         const char* config_text, int jobs,
                                         const char* out_dir, int* passed);
/* Recomputes verdicts for every report under dir. *passed is 1 iff every
 * recomputed verdict passes and matches the stored one. A per-report
 * summary is written into summary (truncated to cap). */
GPAM_API gpam_status gpam_experiment_verify(const char* dir, int* passed,
                                            char* summary, size_t cap);

#ifdef __cplusplus
}
#endif

#endif
