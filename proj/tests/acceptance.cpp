// Acceptance run: one line per criterion, exact comparisons, wall-clock
// budgets enforced. Exit status 0 iff every line reads PASS.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "toricsm/csm.hpp"
#include "toricsm/verify.hpp"

using namespace toricsm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::size_t count_checks(const RunReport& r, const std::string& check) {
  std::size_t n = 0;
  for (const CheckResult& c : r.results) n += c.check == check;
  return n;
}

std::string failures_detail(const RunReport& r) {
  std::string out = std::to_string(r.results.size() - r.failures()) + "/" + std::to_string(r.results.size()) + " checks";
  for (const CheckResult& c : r.results)
    if (!c.pass) {
      out += "; first failure " + c.check + " [" + c.instance + "]";
      break;
    }
  return out;
}

Outcome normalization(const Corpus& corpus) {
  const std::map<std::string, long> expected{{"P1", 2}, {"P2", 3}, {"P1xP1", 4}, {"BlpP2", 4}, {"F1", 4}, {"P3", 4}};
  Outcome o{true, ""};
  for (const auto& [name, count] : expected) {
    const FanPtr fan = corpus.find_fan(name);
    if (!fan) return {false, "corpus lacks " + name};
    const Integer d = degree(csm_class(constant_function(fan, 1)));
    const bool ok = d == count && static_cast<long>(fan->maximal_cones().size()) == count;
    o.pass = o.pass && ok;
    o.detail += name + ":" + d.get_str() + (ok ? " " : "(expected " + std::to_string(count) + ") ");
  }
  return o;
}

Outcome gluing(const Corpus& corpus, const SuiteOptions& opt) {
  const RunReport r = run_suite("gluing", corpus, opt);
  std::size_t expected = 0;
  bool small = true;
  for (const FanPtr& f : corpus.fans)
    if (f->is_complete()) {
      expected += std::size_t{1} << f->ray_count();
      small = small && f->ray_count() <= 6;
    }
  const bool pass = r.failures() == 0 && r.results.size() == expected && small;
  return {pass, failures_detail(r) + ", exhaustive over " + std::to_string(expected) + " subsets"};
}

Outcome blowup(const Corpus& corpus, const SuiteOptions& opt) {
  const RunReport r = run_suite("blowup", corpus, opt);
  std::size_t empty = 0, open = 0;
  bool p3_codim2 = false;
  for (const CheckResult& c : r.results) {
    if (c.check == "blowup") (c.note == "Z empty" ? empty : open)++;
    if (c.check == "exceptional_fiber" && c.pass && c.note == "chi=2" && c.instance.rfind("P3 ", 0) == 0)
      p3_codim2 = true;
  }
  const bool pass = r.failures() == 0 && empty >= 5 && open >= 5 && p3_codim2;
  return {pass, failures_detail(r) + ", Z empty " + std::to_string(empty) + ", Z nonempty " + std::to_string(open) +
                    (p3_codim2 ? ", P3 codim-2 centre chi=2" : ", no P3 codim-2 centre")};
}

// Instances look like "<label> trial <t>"; counts trials per label.
std::map<std::string, std::size_t> trials_per_label(const RunReport& r, const std::string& check) {
  std::map<std::string, std::size_t> out;
  for (const CheckResult& c : r.results) {
    if (c.check != check) continue;
    const auto pos = c.instance.find(" trial ");
    if (pos != std::string::npos) ++out[c.instance.substr(0, pos)];
  }
  return out;
}

Outcome covariance(const Corpus& corpus, const SuiteOptions& opt) {
  const RunReport r = run_suite("covariance", corpus, opt);
  const auto per = trials_per_label(r, "covariance");
  std::size_t composable = 0;
  bool enough = !per.empty();
  for (const auto& [label, n] : per) {
    enough = enough && n >= 100;
    composable += label.rfind("id then ", 0) != 0;
  }
  return {r.failures() == 0 && enough && composable > 0,
          failures_detail(r) + ", " + std::to_string(composable) + " composable pairs x 100 functions"};
}

Outcome naturality(const Corpus& corpus, const SuiteOptions& opt) {
  const RunReport r = run_suite("naturality", corpus, opt);
  const auto per = trials_per_label(r, "naturality");
  const std::set<std::string> required{"blowdown", "p1p1_first", "p1p1_second", "f1_to_p1", "P1_to_pt", "P2_to_pt",
                                       "P1xP1_to_pt", "BlpP2_to_pt", "F1_to_pt", "P3_to_pt"};
  std::string missing;
  for (const std::string& name : required) {
    const auto it = per.find(name);
    if (it == per.end() || it->second < 100) missing += " " + name;
  }
  return {r.failures() == 0 && missing.empty(),
          failures_detail(r) + (missing.empty() ? ", all required maps x 100 functions" : ", missing:" + missing)};
}

Outcome fibration(const Corpus& corpus, const SuiteOptions& opt) {
  const RunReport r = run_suite("fibration", corpus, opt);
  const std::set<std::string> required{"P1xP1->P1", "P1xP2->P1", "P2xP1->P2", "P2xP2->P2"};
  std::set<std::string> seen;
  bool tower = false;
  for (const CheckResult& c : r.results) {
    if (c.check == "fibration" && c.pass) seen.insert(c.instance);
    if (c.check == "fibration_tower" && c.pass && c.note.find("chi=4") != std::string::npos) tower = true;
  }
  bool all = true;
  for (const std::string& s : required) all = all && seen.contains(s);
  return {r.failures() == 0 && all && tower, failures_detail(r) + (tower ? ", tower factor 2*2=4" : ", tower missing")};
}

Outcome prochow(const Corpus& corpus, const SuiteOptions& opt) {
  const RunReport r = run_suite("prochow", corpus, opt);
  const std::size_t diagrams = count_checks(r, "prochow");
  const bool corruption = count_checks(r, "prochow_corruption_detected") == 1;
  return {r.failures() == 0 && diagrams > 0 && corruption,
          failures_detail(r) + ", " + std::to_string(diagrams) + " diagrams, corruption " +
              (corruption ? "detected" : "not run")};
}

Outcome chow(const Corpus& corpus, const SuiteOptions& opt) {
  const RunReport r = run_suite("chow", corpus, opt);
  bool enough = true;
  for (const char* check : {"divisor_choice", "divisor_commutativity", "degree_preservation", "point_classes"})
    enough = enough && count_checks(r, check) >= 100;
  return {r.failures() == 0 && enough, failures_detail(r) + ", >=100 instances per property"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : TORICSM_CORPUS_DIR;
  const Corpus corpus = load_corpus(dir);
  const SuiteOptions opt{0, 100};

  struct Criterion {
    int number;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "normalization", 1.0, [&] { return normalization(corpus); }},
      {2, "gluing", 5.0, [&] { return gluing(corpus, opt); }},
      {3, "blow-up formula", 10.0, [&] { return blowup(corpus, opt); }},
      {4, "covariance", 5.0, [&] { return covariance(corpus, opt); }},
      {5, "naturality", 10.0, [&] { return naturality(corpus, opt); }},
      {6, "fibration", 5.0, [&] { return fibration(corpus, opt); }},
      {7, "proChow compatibility", 5.0, [&] { return prochow(corpus, opt); }},
      {8, "Chow arithmetic", 5.0, [&] { return chow(corpus, opt); }},
  };

  using clock = std::chrono::steady_clock;
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = clock::now();
    const Outcome o = c.run();
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    const bool pass = o.pass && secs < c.budget;
    all = all && pass;
    std::printf("criterion %d %-22s %s  %.3fs (budget %.0fs)  %s\n", c.number, c.name, pass ? "PASS" : "FAIL", secs,
                c.budget, o.detail.c_str());
  }

  const auto start = clock::now();
  const RunReport everything = run_suite("all", corpus, opt);
  const double secs = std::chrono::duration<double>(clock::now() - start).count();
  const bool pass = everything.exit_status == 0 && secs < 60.0;
  all = all && pass;
  std::printf("verify all %-22s %s  %.3fs (budget 60s)  %s\n", "", pass ? "PASS" : "FAIL", secs,
              failures_detail(everything).c_str());
  return all ? 0 : 1;
}
