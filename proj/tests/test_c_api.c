/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "gpam/gpam.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: check failed: %s (%s)\n", __FILE__, \
              __LINE__, #cond, gpam_last_error());                \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void test_fields(const char* dir) {
  gpam_field* f = NULL;
  EXPECT(gpam_field_create(12, &f) == GPAM_ERR_INVALID_ARGUMENT);
  EXPECT(f == NULL);
  EXPECT(strlen(gpam_last_error()) > 0);
  EXPECT(gpam_field_create(16, &f) == GPAM_OK);
  EXPECT(gpam_field_grid_size(f) == 16);
  EXPECT(gpam_field_set_mode(f, 2, -1, 0.5, 0.25) == GPAM_OK);
  double re = 0, im = 0;
  EXPECT(gpam_field_get(f, -2, 1, &re, &im) == GPAM_OK);
  EXPECT(re == 0.5 && im == -0.25);
  EXPECT(gpam_field_set_mode(f, 0, 0, 1.0, 0.5) == GPAM_ERR_SYMMETRY);

  char path[512];
  snprintf(path, sizeof path, "%s/f.field", dir);
  EXPECT(gpam_field_write(f, path) == GPAM_OK);
  gpam_field* g = NULL;
  EXPECT(gpam_field_read(path, &g) == GPAM_OK);
  char h1[32], h2[32];
  EXPECT(gpam_field_hash(f, h1, sizeof h1) == GPAM_OK);
  EXPECT(gpam_field_hash(g, h2, sizeof h2) == GPAM_OK);
  EXPECT(strcmp(h1, h2) == 0);
  EXPECT(gpam_field_hash(f, h1, 4) == GPAM_ERR_OUT_OF_RANGE);
  EXPECT(gpam_field_read("/nonexistent/x.field", &g) == GPAM_ERR_IO);

  gpam_partition* p = NULL;
  EXPECT(gpam_partition_create(16, &p) == GPAM_OK);
  double norm = 0;
  EXPECT(gpam_field_holder_norm(f, p, -1.25, &norm) == GPAM_OK);
  EXPECT(norm > 0);
  gpam_partition* q = NULL;
  EXPECT(gpam_partition_create(32, &q) == GPAM_OK);
  EXPECT(gpam_field_holder_norm(f, q, 0.5, &norm) == GPAM_ERR_GRID_MISMATCH);
  snprintf(path, sizeof path, "%s/partition.csv", dir);
  EXPECT(gpam_partition_dump_csv(p, path) == GPAM_OK);
  snprintf(path, sizeof path, "%s/lift.enh", dir);
  EXPECT(gpam_enhance_write(f, 0.0, p, 0.75, path) == GPAM_OK);

  gpam_partition_free(q);
  gpam_partition_free(p);
  gpam_field_free(g);
  gpam_field_free(f);
  gpam_field_free(NULL);
}

static void test_noise(void) {
  double c = 0, b = 0, tail = 0;
  EXPECT(gpam_noise_constants("sharp", 0.5, 2, &c, &b, &tail) == GPAM_OK);
  EXPECT(c == 7.0 && b == 7.0 && tail == 0.0);
  EXPECT(gpam_noise_constants("box", 0.5, 2, &c, &b, &tail) ==
         GPAM_ERR_INVALID_ARGUMENT);
  gpam_field *a = NULL, *z = NULL;
  EXPECT(gpam_noise_sample(32, 1, 0, 8, &a) == GPAM_OK);
  EXPECT(gpam_noise_sample(32, 1, 0, 8, &z) == GPAM_OK);
  char h1[32], h2[32];
  gpam_field_hash(a, h1, sizeof h1);
  gpam_field_hash(z, h2, sizeof h2);
  EXPECT(strcmp(h1, h2) == 0);
  gpam_field_free(a);
  gpam_field_free(z);
}

static void test_solve(const char* dir) {
  gpam_field *u0 = NULL, *h = NULL;
  gpam_field_create(16, &u0);
  gpam_field_create(16, &h);
  gpam_field_set_mode(u0, 0, 0, 1.0, 0.0);
  gpam_field_set_mode(h, 1, 0, 0.2, 0.0);
  gpam_solve_options opt;
  gpam_solve_options_default(&opt);
  opt.T = 0.1;
  opt.dt = 0.01;
  char out[512];
  snprintf(out, sizeof out, "%s/traj", dir);
  int exploded = -1;
  EXPECT(gpam_solve(u0, h, 0.5, "identity", &opt, out, &exploded) == GPAM_OK);
  EXPECT(exploded == 0);
  EXPECT(gpam_solve(u0, u0, 0.5, "identity", &opt, out, &exploded) ==
         GPAM_ERR_NONZERO_MEAN);
  opt.scheme = "rk4";
  EXPECT(gpam_solve(u0, h, 0.5, "identity", &opt, out, &exploded) ==
         GPAM_ERR_INVALID_ARGUMENT);
  gpam_field_free(u0);
  gpam_field_free(h);
}

static void test_experiments(const char* dir) {
  char names[512];
  EXPECT(gpam_experiment_names(names, sizeof names) == GPAM_OK);
  EXPECT(strstr(names, "zero-translation") != NULL);
  char out[512];
  snprintf(out, sizeof out, "%s/runs/se", dir);
  int passed = -1;
  EXPECT(gpam_experiment_run("strict-embedding",
                             "grid=32\nsamples=2\nh_band=4\nn=1..2\n", 1, out,
                             &passed) == GPAM_OK);
  EXPECT(passed == 1);
  EXPECT(gpam_experiment_run("strict-embedding", "bogus=1\n", 1, out,
                             &passed) == GPAM_ERR_CONFIG);
  char summary[1024];
  snprintf(out, sizeof out, "%s/runs", dir);
  EXPECT(gpam_experiment_verify(out, &passed, summary, sizeof summary) ==
         GPAM_OK);
  EXPECT(passed == 1);
  EXPECT(strstr(summary, "strict-embedding") != NULL);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    fprintf(stderr, "usage: %s <scratch-dir>\n", argv[0]);
    return 2;
  }
  EXPECT(strcmp(gpam_status_name(GPAM_ERR_BANDWIDTH), "bandwidth") == 0);
  EXPECT(strncmp(gpam_version(), "gpam", 4) == 0);
  test_fields(argv[1]);
  test_noise();
  test_solve(argv[1]);
  test_experiments(argv[1]);
  if (failures) fprintf(stderr, "%d check(s) failed\n", failures);
  return failures ? 1 : 0;
}
