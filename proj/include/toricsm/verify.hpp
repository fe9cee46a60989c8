#pragma once

// Corpus handling and the named verification suites behind `verify`.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "toricsm/csm.hpp"

namespace toricsm {

FanPtr projective_space(int n, std::string name = {});
FanPtr hirzebruch(int a, std::string name = {});

struct NamedMorphism {
  std::string name;
  ToricMorphism morphism;
};

struct Corpus {
  std::vector<FanPtr> fans;
  std::vector<NamedMorphism> morphisms;
  std::vector<std::pair<std::string, std::string>> inputs;  // file name, digest

  FanPtr find_fan(const std::string& name) const;  // nullptr if absent
};

/// Reads every *.fan.json and *.morphism.json in `dir`, in file-name order.
Corpus load_corpus(const std::filesystem::path& dir);

/// The standard corpus built programmatically (mirrors corpus/).
Corpus builtin_corpus();

struct SuiteOptions {
  std::uint64_t seed = 0;
  unsigned trials = 100;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<CheckResult> results;
  int exit_status = 0;  // 0 iff every check passed, else 1

  std::size_t failures() const;
};

/// Suite names accepted by run_suite, "all" last.
const std::vector<std::string>& suite_names();

/// Throws Precondition for an unknown suite.
RunReport run_suite(const std::string& suite, const Corpus& corpus, const SuiteOptions& options);

/// Seeded constructible function with values in [lo, hi] on every orbit.
ConstructibleFunction random_function(const FanPtr& fan, std::uint64_t seed, int lo = -3, int hi = 3);

}  // namespace toricsm
