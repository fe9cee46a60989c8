#include "toricsm/toricsm.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "toricsm/error.hpp"
#include "toricsm/io.hpp"
#include "toricsm/verify.hpp"

struct tsm_fan {
  toricsm::FanPtr fan;
};
struct tsm_morphism {
  toricsm::ToricMorphism morphism;
};
struct tsm_function {
  toricsm::ConstructibleFunction function;
};
struct tsm_class {
  toricsm::CycleClass cls;
};
struct tsm_closure {
  toricsm::GoodClosure closure;
};

namespace {

thread_local std::string last_error;

tsm_status fail(tsm_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions to status codes.
template <typename Body>
tsm_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const toricsm::Error& e) {
    return fail(e.kind() == toricsm::ErrorKind::Parse ? TSM_PARSE_ERROR : TSM_VALIDATION_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TSM_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(TSM_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(TSM_INTERNAL_ERROR, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define TSM_REQUIRE(cond)                                                    \
  do {                                                                       \
    if (!(cond)) return fail(TSM_VALIDATION_ERROR, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* tsm_last_error(void) { return last_error.c_str(); }

void tsm_string_free(char* s) { std::free(s); }

tsm_status tsm_fan_load(const char* path, tsm_fan** out) {
  TSM_REQUIRE(path && out);
  return guarded([&] {
    *out = new tsm_fan{toricsm::io::load_fan(path)};
    return TSM_OK;
  });
}

tsm_status tsm_fan_from_json(const char* json_text, tsm_fan** out) {
  TSM_REQUIRE(json_text && out);
  return guarded([&] {
    toricsm::io::json j;
    try {
      j = toricsm::io::json::parse(json_text);
    } catch (const toricsm::io::json::exception& e) {
      throw toricsm::Error(toricsm::ErrorKind::Parse, e.what());
    }
    *out = new tsm_fan{toricsm::io::parse_fan(j)};
    return TSM_OK;
  });
}

void tsm_fan_free(tsm_fan* fan) { delete fan; }

tsm_status tsm_fan_to_json(const tsm_fan* fan, char** out) {
  TSM_REQUIRE(fan && out);
  return guarded([&] {
    *out = duplicate(toricsm::io::fan_to_json(*fan->fan).dump());
    return TSM_OK;
  });
}

tsm_status tsm_fan_info(const tsm_fan* fan, int* dim, size_t* rays, size_t* cones, size_t* maximal_cones,
                        int* complete) {
  TSM_REQUIRE(fan);
  if (dim) *dim = fan->fan->dim();
  if (rays) *rays = fan->fan->ray_count();
  if (cones) *cones = fan->fan->cones().size();
  if (maximal_cones) *maximal_cones = fan->fan->maximal_cones().size();
  if (complete) *complete = fan->fan->is_complete() ? 1 : 0;
  return TSM_OK;
}

tsm_status tsm_fan_validate_file(const char* path, char** report_json, int* valid) {
  TSM_REQUIRE(path && report_json && valid);
  return guarded([&] {
    const toricsm::FanPtr fan = toricsm::io::parse_fan_unchecked(toricsm::io::read_json(path));
    const toricsm::FanReport& report = fan->report();
    toricsm::io::json issues = toricsm::io::json::array();
    for (const auto& issue : report.issues) issues.push_back({{"cone", issue.cone.key()}, {"message", issue.message}});
    const bool ok = report.valid() && report.smooth;
    *report_json = duplicate(toricsm::io::json{{"name", fan->name()},
                                               {"valid", ok},
                                               {"smooth", report.smooth},
                                               {"complete", report.complete && report.valid()},
                                               {"issues", std::move(issues)}}
                                 .dump());
    *valid = ok ? 1 : 0;
    return TSM_OK;
  });
}

tsm_status tsm_fan_blowup(const tsm_fan* fan, const char* center_key, tsm_fan** out_fan,
                          tsm_morphism** out_blow_down) {
  TSM_REQUIRE(fan && center_key && out_fan && out_blow_down);
  return guarded([&] {
    const toricsm::Subdivision sub = toricsm::star_subdivision(fan->fan, toricsm::Cone::from_key(center_key));
    *out_fan = new tsm_fan{sub.fan};
    *out_blow_down = new tsm_morphism{sub.blow_down};
    return TSM_OK;
  });
}

tsm_status tsm_morphism_load(const char* path, tsm_morphism** out) {
  TSM_REQUIRE(path && out);
  return guarded([&] {
    *out = new tsm_morphism{toricsm::io::load_morphism(path)};
    return TSM_OK;
  });
}

void tsm_morphism_free(tsm_morphism* m) { delete m; }

tsm_status tsm_morphism_to_json(const tsm_morphism* m, const char* source_ref, const char* target_ref, char** out) {
  TSM_REQUIRE(m && source_ref && target_ref && out);
  return guarded([&] {
    *out = duplicate(toricsm::io::morphism_to_json(m->morphism, source_ref, target_ref).dump());
    return TSM_OK;
  });
}

tsm_status tsm_morphism_source(const tsm_morphism* m, tsm_fan** out) {
  TSM_REQUIRE(m && out);
  return guarded([&] {
    *out = new tsm_fan{m->morphism.source};
    return TSM_OK;
  });
}

tsm_status tsm_morphism_target(const tsm_morphism* m, tsm_fan** out) {
  TSM_REQUIRE(m && out);
  return guarded([&] {
    *out = new tsm_fan{m->morphism.target};
    return TSM_OK;
  });
}

tsm_status tsm_function_load(const char* path, const tsm_fan* fan, tsm_function** out) {
  TSM_REQUIRE(path && out);
  return guarded([&] {
    *out = new tsm_function{toricsm::io::load_function(path, fan ? fan->fan : nullptr)};
    return TSM_OK;
  });
}

void tsm_function_free(tsm_function* f) { delete f; }

tsm_status tsm_function_values_json(const tsm_function* f, char** out) {
  TSM_REQUIRE(f && out);
  return guarded([&] {
    *out = duplicate(toricsm::io::coefficients_to_json(f->function.values()).dump());
    return TSM_OK;
  });
}

tsm_status tsm_function_euler(const tsm_function* f, char** out_decimal) {
  TSM_REQUIRE(f && out_decimal);
  return guarded([&] {
    *out_decimal = duplicate(toricsm::euler_characteristic(f->function).get_str());
    return TSM_OK;
  });
}

tsm_status tsm_pushforward_function(const tsm_morphism* m, const tsm_function* f, tsm_function** out) {
  TSM_REQUIRE(m && f && out);
  return guarded([&] {
    if (!toricsm::structurally_equal(*m->morphism.source, *f->function.fan()))
      throw toricsm::Error(toricsm::ErrorKind::Validation, "function does not live on the morphism's source");
    toricsm::ConstructibleFunction phi(m->morphism.source);
    for (const auto& [cone, v] : f->function.values()) phi.set(cone, v);
    *out = new tsm_function{toricsm::pushforward_function(m->morphism, phi)};
    return TSM_OK;
  });
}

tsm_status tsm_class_load(const char* path, const tsm_fan* fan, tsm_class** out) {
  TSM_REQUIRE(path && out);
  return guarded([&] {
    *out = new tsm_class{toricsm::io::load_class(path, fan ? fan->fan : nullptr)};
    return TSM_OK;
  });
}

void tsm_class_free(tsm_class* c) { delete c; }

tsm_status tsm_class_coefficients_json(const tsm_class* c, char** out) {
  TSM_REQUIRE(c && out);
  return guarded([&] {
    *out = duplicate(toricsm::io::coefficients_to_json(c->cls.coefficients()).dump());
    return TSM_OK;
  });
}

tsm_status tsm_class_to_text(const tsm_class* c, char** out) {
  TSM_REQUIRE(c && out);
  return guarded([&] {
    *out = duplicate(c->cls.to_string());
    return TSM_OK;
  });
}

tsm_status tsm_class_degree(const tsm_class* c, char** out_decimal) {
  TSM_REQUIRE(c && out_decimal);
  return guarded([&] {
    *out_decimal = duplicate(toricsm::degree(c->cls).get_str());
    return TSM_OK;
  });
}

tsm_status tsm_class_term_count(const tsm_class* c, size_t* out) {
  TSM_REQUIRE(c && out);
  *out = c->cls.coefficients().size();
  return TSM_OK;
}

tsm_status tsm_class_equal(const tsm_class* a, const tsm_class* b, int* equal) {
  TSM_REQUIRE(a && b && equal);
  return guarded([&] {
    *equal = toricsm::classes_equal(a->cls, b->cls) ? 1 : 0;
    return TSM_OK;
  });
}

tsm_status tsm_pushforward_class(const tsm_morphism* m, const tsm_class* c, tsm_class** out) {
  TSM_REQUIRE(m && c && out);
  return guarded([&] {
    if (!toricsm::structurally_equal(*m->morphism.source, *c->cls.fan()))
      throw toricsm::Error(toricsm::ErrorKind::Validation, "class does not live on the morphism's source");
    const toricsm::CycleClass alpha(m->morphism.source, c->cls.coefficients());
    *out = new tsm_class{toricsm::pushforward_cycle(m->morphism, alpha)};
    return TSM_OK;
  });
}

tsm_status tsm_csm(const tsm_function* f, tsm_class** out) {
  TSM_REQUIRE(f && out);
  return guarded([&] {
    *out = new tsm_class{toricsm::csm_class(f->function)};
    return TSM_OK;
  });
}

tsm_status tsm_closure_load(const char* path, tsm_closure** out) {
  TSM_REQUIRE(path && out);
  return guarded([&] {
    *out = new tsm_closure{toricsm::io::load_good_closure(path)};
    return TSM_OK;
  });
}

void tsm_closure_free(tsm_closure* gc) { delete gc; }

tsm_status tsm_local_data(const tsm_closure* gc, tsm_class** out) {
  TSM_REQUIRE(gc && out);
  return guarded([&] {
    *out = new tsm_class{toricsm::local_data(gc->closure)};
    return TSM_OK;
  });
}

tsm_status tsm_verify(const char* suite, const char* corpus_dir, uint64_t seed, uint32_t trials, char** report_jsonl,
                      size_t* checks, size_t* failures) {
  TSM_REQUIRE(suite && corpus_dir && report_jsonl);
  return guarded([&] {
    const toricsm::Corpus corpus = toricsm::load_corpus(corpus_dir);
    const toricsm::RunReport report = toricsm::run_suite(suite, corpus, toricsm::SuiteOptions{seed, trials});
    std::string lines;
    for (const auto& r : report.results) lines += toricsm::io::check_to_json(r).dump() + "\n";
    *report_jsonl = duplicate(lines);
    if (checks) *checks = report.results.size();
    if (failures) *failures = report.failures();
    if (report.exit_status != 0) return fail(TSM_CHECK_FAILED, std::to_string(report.failures()) + " checks failed");
    return TSM_OK;
  });
}

tsm_status tsm_corpus_inputs(const char* corpus_dir, char** out_json) {
  TSM_REQUIRE(corpus_dir && out_json);
  return guarded([&] {
    const toricsm::Corpus corpus = toricsm::load_corpus(corpus_dir);
    toricsm::io::json arr = toricsm::io::json::array();
    for (const auto& [file, digest] : corpus.inputs) arr.push_back({{"file", file}, {"digest", digest}});
    *out_json = duplicate(arr.dump());
    return TSM_OK;
  });
}

}  // extern "C"
