#include "doctest.h"
#include "toricsm/error.hpp"
#include "toricsm/io.hpp"
#include "toricsm/verify.hpp"

using namespace toricsm;

namespace {

std::string dump(const RunReport& r) {
  std::string out;
  for (const CheckResult& c : r.results) out += io::check_to_json(c).dump() + "\n";
  return out;
}

std::size_t count(const RunReport& r, const std::string& check) {
  std::size_t n = 0;
  for (const CheckResult& c : r.results) n += c.check == check;
  return n;
}

}  // namespace

TEST_CASE("every suite passes on the bundled corpus") {
  const Corpus corpus = load_corpus(TORICSM_CORPUS_DIR);
  CHECK(corpus.inputs.size() == corpus.fans.size() + corpus.morphisms.size());
  for (const std::string& suite : suite_names()) {
    if (suite == "all") continue;
    const RunReport r = run_suite(suite, corpus, SuiteOptions{0, 10});
    CAPTURE(suite);
    CHECK_FALSE(r.results.empty());
    CHECK(r.failures() == 0);
    CHECK(r.exit_status == 0);
  }
}

TEST_CASE("reports are deterministic under a fixed seed") {
  const Corpus corpus = builtin_corpus();
  for (const char* suite : {"naturality", "covariance", "chow"}) {
    const std::string a = dump(run_suite(suite, corpus, SuiteOptions{42, 5}));
    const std::string b = dump(run_suite(suite, corpus, SuiteOptions{42, 5}));
    CHECK(a == b);
    CHECK(a != dump(run_suite(suite, corpus, SuiteOptions{43, 5})));
  }
}

TEST_CASE("suite coverage") {
  const Corpus corpus = builtin_corpus();
  const RunReport blowup = run_suite("blowup", corpus, {});
  std::size_t empty = 0, open = 0, p3_codim2 = 0;
  for (const CheckResult& c : blowup.results) {
    if (c.check == "blowup") (c.note == "Z empty" ? empty : open)++;
    if (c.check == "exceptional_fiber" && c.instance.rfind("P3 ", 0) == 0 && c.note == "chi=2") ++p3_codim2;
  }
  CHECK(empty >= 5);
  CHECK(open >= 5);
  CHECK(p3_codim2 > 0);
  CHECK(count(blowup, "blowup_branch_coverage") == 1);

  const RunReport chow = run_suite("chow", corpus, SuiteOptions{0, 1});
  for (const char* check : {"divisor_choice", "divisor_commutativity", "degree_preservation", "point_classes"})
    CHECK(count(chow, check) >= 100);

  const RunReport prochow = run_suite("prochow", corpus, {});
  CHECK(count(prochow, "prochow_corruption_detected") == 1);
  CHECK(count(prochow, "prochow") > 0);

  const RunReport fibration = run_suite("fibration", corpus, {});
  CHECK(fibration.results.size() == 7);

  const RunReport gluing = run_suite("gluing", corpus, {});
  std::size_t subsets = 0;
  for (const FanPtr& f : corpus.fans) subsets += std::size_t{1} << f->ray_count();
  CHECK(gluing.results.size() == subsets);
}

TEST_CASE("all runs every suite") {
  const Corpus corpus = builtin_corpus();
  const SuiteOptions opt{0, 3};
  std::size_t total = 0;
  for (const std::string& suite : suite_names())
    if (suite != "all") total += run_suite(suite, corpus, opt).results.size();
  CHECK(run_suite("all", corpus, opt).results.size() == total);
}

TEST_CASE("unknown suites and bad corpora") {
  CHECK_THROWS_AS(run_suite("nosuch", builtin_corpus(), {}), Error);
  CHECK_THROWS_AS(load_corpus(std::string(TORICSM_TEST_DATA) + "/absent"), Error);
  CHECK_THROWS_AS(load_corpus(std::string(TORICSM_TEST_DATA) + "/corrupted_corpus"), Error);
}
