/* Exercises the shared library through its C header only. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "toricsm/toricsm.h"

static int failures = 0;

#define EXPECT(cond)                                                          \
  do {                                                                        \
    if (!(cond)) {                                                            \
      fprintf(stderr, "%s:%d: expected %s (%s)\n", __FILE__, __LINE__, #cond, \
              tsm_last_error());                                              \
      ++failures;                                                             \
    }                                                                         \
  } while (0)

static char path_buf[4][1024];

static const char* join(int slot, const char* dir, const char* name) {
  snprintf(path_buf[slot], sizeof path_buf[slot], "%s/%s", dir, name);
  return path_buf[slot];
}

int main(int argc, char** argv) {
  if (argc < 3) {
    fprintf(stderr, "usage: test_capi CORPUS_DIR DATA_DIR\n");
    return 2;
  }
  const char* corpus = argv[1];
  const char* data = argv[2];

  tsm_fan* p2 = NULL;
  EXPECT(tsm_fan_load(join(0, corpus, "P2.fan.json"), &p2) == TSM_OK);
  int dim = 0, complete = 0;
  size_t rays = 0, cones = 0, maxes = 0;
  EXPECT(tsm_fan_info(p2, &dim, &rays, &cones, &maxes, &complete) == TSM_OK);
  EXPECT(dim == 2 && rays == 3 && cones == 7 && maxes == 3 && complete == 1);

  /* csm of the constant function: 7 terms, degree 3. */
  tsm_function* one = NULL;
  EXPECT(tsm_function_load(join(1, data, "p2_one.function.json"), p2, &one) == TSM_OK);
  tsm_class* c = NULL;
  EXPECT(tsm_csm(one, &c) == TSM_OK);
  size_t terms = 0;
  EXPECT(tsm_class_term_count(c, &terms) == TSM_OK && terms == 7);
  char* s = NULL;
  EXPECT(tsm_class_degree(c, &s) == TSM_OK && strcmp(s, "3") == 0);
  tsm_string_free(s);
  EXPECT(tsm_function_euler(one, &s) == TSM_OK && strcmp(s, "3") == 0);
  tsm_string_free(s);
  EXPECT(tsm_class_to_text(c, &s) == TSM_OK && strncmp(s, "1*[] + ", 7) == 0);
  tsm_string_free(s);

  /* local data of P2 minus a line agrees with csm of the affine plane only up to
     rational equivalence; here just the degree. */
  tsm_closure* gc = NULL;
  EXPECT(tsm_closure_load(join(1, data, "p2_a2.closure.json"), &gc) == TSM_OK);
  tsm_class* ld = NULL;
  EXPECT(tsm_local_data(gc, &ld) == TSM_OK);
  EXPECT(tsm_class_degree(ld, &s) == TSM_OK && strcmp(s, "1") == 0);
  tsm_string_free(s);
  int equal = -1;
  EXPECT(tsm_class_equal(ld, c, &equal) == TSM_OK && equal == 0);
  EXPECT(tsm_class_equal(c, c, &equal) == TSM_OK && equal == 1);

  /* Push-forward along the blow-down. */
  tsm_morphism* down = NULL;
  EXPECT(tsm_morphism_load(join(0, corpus, "blowdown.morphism.json"), &down) == TSM_OK);
  tsm_fan* blp = NULL;
  EXPECT(tsm_morphism_source(down, &blp) == TSM_OK);
  tsm_function* e = NULL;
  EXPECT(tsm_function_load(join(1, data, "blp_exceptional.function.json"), blp, &e) == TSM_OK);
  tsm_function* pushed = NULL;
  EXPECT(tsm_pushforward_function(down, e, &pushed) == TSM_OK);
  EXPECT(tsm_function_values_json(pushed, &s) == TSM_OK && strcmp(s, "{\"0,1\":2}") == 0);
  tsm_string_free(s);
  tsm_class* point = NULL;
  EXPECT(tsm_class_load(join(1, data, "blp_point.class.json"), blp, &point) == TSM_OK);
  tsm_class* pushed_point = NULL;
  EXPECT(tsm_pushforward_class(down, point, &pushed_point) == TSM_OK);
  EXPECT(tsm_class_coefficients_json(pushed_point, &s) == TSM_OK && strcmp(s, "{\"0,1\":1}") == 0);
  tsm_string_free(s);
  /* Wrong source fan. */
  tsm_function* wrong = NULL;
  EXPECT(tsm_pushforward_function(down, one, &wrong) == TSM_VALIDATION_ERROR && wrong == NULL);

  /* Blow-up through the API. */
  tsm_fan* p3 = NULL;
  EXPECT(tsm_fan_load(join(0, corpus, "P3.fan.json"), &p3) == TSM_OK);
  tsm_fan* bl = NULL;
  tsm_morphism* bl_down = NULL;
  EXPECT(tsm_fan_blowup(p3, "0,1,2", &bl, &bl_down) == TSM_OK);
  EXPECT(tsm_fan_info(bl, NULL, NULL, NULL, &maxes, NULL) == TSM_OK && maxes == 6);
  EXPECT(tsm_morphism_to_json(bl_down, "a.fan.json", "b.fan.json", &s) == TSM_OK && strstr(s, "\"matrix\"") != NULL);
  tsm_string_free(s);
  tsm_fan* bad = NULL;
  tsm_morphism* bad_down = NULL;
  EXPECT(tsm_fan_blowup(p3, "0", &bad, &bad_down) == TSM_VALIDATION_ERROR);
  EXPECT(strlen(tsm_last_error()) > 0);
  EXPECT(tsm_fan_blowup(p3, "0,x", &bad, &bad_down) == TSM_PARSE_ERROR);

  /* JSON round-trip. */
  EXPECT(tsm_fan_to_json(p2, &s) == TSM_OK);
  tsm_fan* again = NULL;
  EXPECT(tsm_fan_from_json(s, &again) == TSM_OK);
  tsm_string_free(s);
  EXPECT(tsm_fan_from_json("{\"dim\": 2", &bad) == TSM_PARSE_ERROR);

  /* Error classes for files. */
  EXPECT(tsm_fan_load(join(0, data, "truncated.json"), &bad) == TSM_PARSE_ERROR);
  EXPECT(tsm_fan_load(join(0, data, "singular.fan.json"), &bad) == TSM_VALIDATION_ERROR);
  tsm_morphism* incompatible = NULL;
  EXPECT(tsm_morphism_load(join(0, data, "p2_to_p1.morphism.json"), &incompatible) == TSM_VALIDATION_ERROR);
  int valid = -1;
  EXPECT(tsm_fan_validate_file(join(0, data, "singular.fan.json"), &s, &valid) == TSM_OK && valid == 0);
  EXPECT(strstr(s, "index 2") != NULL);
  tsm_string_free(s);
  EXPECT(tsm_fan_load(NULL, &bad) == TSM_VALIDATION_ERROR);

  /* Verification. */
  size_t checks = 0, failed = 0;
  EXPECT(tsm_verify("gluing", corpus, 0, 100, &s, &checks, &failed) == TSM_OK);
  EXPECT(checks > 0 && failed == 0);
  EXPECT(strstr(s, "\"check\":\"gluing\"") != NULL);
  tsm_string_free(s);
  EXPECT(tsm_verify("nosuch", corpus, 0, 100, &s, &checks, &failed) == TSM_VALIDATION_ERROR);
  EXPECT(tsm_corpus_inputs(corpus, &s) == TSM_OK && strstr(s, "P2.fan.json") != NULL);
  tsm_string_free(s);

  tsm_class_free(pushed_point);
  tsm_class_free(point);
  tsm_function_free(pushed);
  tsm_function_free(e);
  tsm_fan_free(blp);
  tsm_morphism_free(down);
  tsm_class_free(ld);
  tsm_closure_free(gc);
  tsm_class_free(c);
  tsm_function_free(one);
  tsm_fan_free(again);
  tsm_morphism_free(bl_down);
  tsm_fan_free(bl);
  tsm_fan_free(p3);
  tsm_fan_free(p2);

  if (failures) {
    fprintf(stderr, "%d C API expectations failed\n", failures);
    return 1;
  }
  printf("C API: all expectations met\n");
  return 0;
}
