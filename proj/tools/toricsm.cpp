// toricsm command-line front end. Talks to the library only through toricsm.h.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "toricsm/toricsm.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kParse = 2, kValidation = 3 };

struct Failure {
  int code;
  std::string message;
};

int exit_code(tsm_status s) {
  switch (s) {
    case TSM_OK: return kOk;
    case TSM_CHECK_FAILED: return kCheckFailed;
    case TSM_PARSE_ERROR: return kParse;
    default: return kValidation;
  }
}

void check(tsm_status s) {
  if (s != TSM_OK) throw Failure{exit_code(s), tsm_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using FanHandle = std::unique_ptr<tsm_fan, Deleter<tsm_fan, tsm_fan_free>>;
using MorphismHandle = std::unique_ptr<tsm_morphism, Deleter<tsm_morphism, tsm_morphism_free>>;
using FunctionHandle = std::unique_ptr<tsm_function, Deleter<tsm_function, tsm_function_free>>;
using ClassHandle = std::unique_ptr<tsm_class, Deleter<tsm_class, tsm_class_free>>;
using ClosureHandle = std::unique_ptr<tsm_closure, Deleter<tsm_closure, tsm_closure_free>>;

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  tsm_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kParse, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kValidation, "cannot write " + path.string()};
  out << text << '\n';
}

json report_line(const std::string& check_name, const std::string& instance, bool pass, json lhs, json rhs,
                 json degree_lhs, json degree_rhs) {
  return json{{"check", check_name},       {"instance", instance},     {"pass", pass},
              {"lhs", std::move(lhs)},     {"rhs", std::move(rhs)},    {"degree_lhs", std::move(degree_lhs)},
              {"degree_rhs", std::move(degree_rhs)}};
}

json decimal(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::out_of_range&) {
  }
  return s;
}

int cmd_csm(const std::string& fan_path, const std::string& function_path, bool as_json) {
  tsm_fan* raw_fan = nullptr;
  check(tsm_fan_load(fan_path.c_str(), &raw_fan));
  FanHandle fan(raw_fan);
  tsm_function* raw_phi = nullptr;
  check(tsm_function_load(function_path.c_str(), fan.get(), &raw_phi));
  FunctionHandle phi(raw_phi);
  tsm_class* raw_cls = nullptr;
  check(tsm_csm(phi.get(), &raw_cls));
  ClassHandle cls(raw_cls);

  char* s = nullptr;
  check(tsm_class_degree(cls.get(), &s));
  const std::string deg = take(s);
  check(tsm_function_euler(phi.get(), &s));
  const std::string chi = take(s);
  const bool pass = deg == chi;

  if (as_json) {
    check(tsm_class_coefficients_json(cls.get(), &s));
    json lhs = take_json(s);
    check(tsm_function_values_json(phi.get(), &s));
    std::cout << report_line("csm", function_path, pass, std::move(lhs), take_json(s), decimal(deg), decimal(chi))
              << '\n';
  } else {
    check(tsm_class_to_text(cls.get(), &s));
    std::cout << take(s) << '\n' << "degree " << deg << '\n';
  }
  return pass ? kOk : kCheckFailed;
}

int cmd_verify(const std::string& suite, const std::string& corpus, std::uint64_t seed, unsigned trials,
               bool as_json, const std::string& report_path) {
  char* jsonl = nullptr;
  std::size_t checks = 0;
  std::size_t failures = 0;
  const tsm_status status = tsm_verify(suite.c_str(), corpus.c_str(), seed, trials, &jsonl, &checks, &failures);
  if (status != TSM_OK && status != TSM_CHECK_FAILED) check(status);
  const std::string lines = take(jsonl);

  json results = json::array();
  std::istringstream in(lines);
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    json r = json::parse(line);
    if (as_json) {
      std::cout << line << '\n';
    } else if (!r.at("pass").get<bool>()) {
      std::cout << "FAIL " << r.at("check").get<std::string>() << " " << r.at("instance").get<std::string>();
      if (r.contains("note")) std::cout << " (" << r.at("note").get<std::string>() << ")";
      std::cout << '\n';
    }
    results.push_back(std::move(r));
  }
  const int code = status == TSM_OK ? kOk : kCheckFailed;
  if (!as_json)
    std::cout << suite << ": " << checks - failures << "/" << checks << " checks passed, seed " << seed << '\n';

  if (!report_path.empty()) {
    char* inputs = nullptr;
    check(tsm_corpus_inputs(corpus.c_str(), &inputs));
    const json report{{"command", "verify " + suite + " " + corpus + " --seed " + std::to_string(seed) +
                                      " --trials " + std::to_string(trials)},
                      {"inputs", take_json(inputs)},
                      {"results", std::move(results)},
                      {"exit_status", code}};
    write_file(report_path, report.dump(2));
  }
  return code;
}

int cmd_pushforward(const std::string& morphism_path, const std::string& input_path, bool as_json) {
  tsm_morphism* raw_m = nullptr;
  check(tsm_morphism_load(morphism_path.c_str(), &raw_m));
  MorphismHandle m(raw_m);
  tsm_fan* raw_source = nullptr;
  check(tsm_morphism_source(m.get(), &raw_source));
  FanHandle source(raw_source);

  json input;
  try {
    input = json::parse(read_file(input_path));
  } catch (const json::exception& e) {
    throw Failure{kParse, input_path + ": " + e.what()};
  }
  char* s = nullptr;
  if (input.is_object() && input.contains("class")) {
    tsm_class* raw_in = nullptr;
    check(tsm_class_load(input_path.c_str(), source.get(), &raw_in));
    ClassHandle in(raw_in);
    tsm_class* raw_out = nullptr;
    check(tsm_pushforward_class(m.get(), in.get(), &raw_out));
    ClassHandle out(raw_out);
    if (as_json) {
      check(tsm_class_coefficients_json(out.get(), &s));
      json lhs = take_json(s);
      check(tsm_class_coefficients_json(in.get(), &s));
      json rhs = take_json(s);
      json deg_out = nullptr, deg_in = nullptr;
      if (tsm_class_degree(out.get(), &s) == TSM_OK) deg_out = decimal(take(s));
      if (tsm_class_degree(in.get(), &s) == TSM_OK) deg_in = decimal(take(s));
      std::cout << report_line("pushforward_class", input_path, true, std::move(lhs), std::move(rhs),
                               std::move(deg_out), std::move(deg_in))
                << '\n';
    } else {
      check(tsm_class_to_text(out.get(), &s));
      std::cout << take(s) << '\n';
    }
    return kOk;
  }

  tsm_function* raw_in = nullptr;
  check(tsm_function_load(input_path.c_str(), source.get(), &raw_in));
  FunctionHandle in(raw_in);
  tsm_function* raw_out = nullptr;
  check(tsm_pushforward_function(m.get(), in.get(), &raw_out));
  FunctionHandle out(raw_out);
  check(tsm_function_values_json(out.get(), &s));
  json values = take_json(s);
  if (as_json) {
    check(tsm_function_values_json(in.get(), &s));
    json rhs = take_json(s);
    check(tsm_function_euler(out.get(), &s));
    json chi_out = decimal(take(s));
    check(tsm_function_euler(in.get(), &s));
    json chi_in = decimal(take(s));
    std::cout << report_line("pushforward_function", input_path, true, std::move(values), std::move(rhs),
                             std::move(chi_out), std::move(chi_in))
              << '\n';
  } else {
    for (const auto& [key, v] : values.items()) std::cout << "{" << key << "} " << v.dump() << '\n';
  }
  return kOk;
}

std::string center_tag(std::string center) {
  for (char& c : center)
    if (c == ',') c = '-';
  return center;
}

int cmd_blowup(const std::string& fan_path, const std::string& center, const std::string& out_dir, bool as_json) {
  tsm_fan* raw_fan = nullptr;
  check(tsm_fan_load(fan_path.c_str(), &raw_fan));
  FanHandle fan(raw_fan);
  tsm_fan* raw_sub = nullptr;
  tsm_morphism* raw_m = nullptr;
  check(tsm_fan_blowup(fan.get(), center.c_str(), &raw_sub, &raw_m));
  FanHandle sub(raw_sub);
  MorphismHandle m(raw_m);

  const fs::path dir = out_dir.empty() ? fs::path(fan_path).parent_path() : fs::path(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::string stem = fs::path(fan_path).filename().string();
  if (const auto pos = stem.find(".fan.json"); pos != std::string::npos) stem.resize(pos);
  const std::string base = stem + "_bl" + center_tag(center);
  const fs::path fan_out = dir / (base + ".fan.json");
  const fs::path morphism_out = dir / (base + ".morphism.json");

  char* s = nullptr;
  check(tsm_fan_to_json(sub.get(), &s));
  write_file(fan_out, take_json(s).dump());
  const fs::path target_ref = fs::relative(fs::absolute(fan_path), fs::absolute(dir), ec);
  const std::string target = ec ? fs::absolute(fan_path).string() : target_ref.generic_string();
  check(tsm_morphism_to_json(m.get(), fan_out.filename().string().c_str(), target.c_str(), &s));
  write_file(morphism_out, take_json(s).dump());

  int max_cones = 0;
  std::size_t count = 0;
  check(tsm_fan_info(sub.get(), nullptr, nullptr, nullptr, &count, nullptr));
  max_cones = static_cast<int>(count);
  if (as_json) {
    std::cout << json{{"fan", fan_out.string()}, {"morphism", morphism_out.string()}, {"max_cones", max_cones}}
              << '\n';
  } else {
    std::cout << "wrote " << fan_out.string() << " (" << max_cones << " maximal cones)\n"
              << "wrote " << morphism_out.string() << '\n';
  }
  return kOk;
}

int cmd_validate(const std::string& fan_path, bool as_json) {
  char* s = nullptr;
  int valid = 0;
  check(tsm_fan_validate_file(fan_path.c_str(), &s, &valid));
  const json report = take_json(s);
  if (as_json) {
    std::cout << report << '\n';
  } else {
    std::cout << report.at("name").get<std::string>() << ": " << (valid ? "valid" : "invalid")
              << (report.at("complete").get<bool>() ? ", complete" : "") << '\n';
    for (const json& issue : report.at("issues"))
      std::cout << "  {" << issue.at("cone").get<std::string>() << "} " << issue.at("message").get<std::string>()
                << '\n';
  }
  return valid ? kOk : kValidation;
}

int cmd_local_data(const std::string& closure_path, bool as_json) {
  tsm_closure* raw = nullptr;
  check(tsm_closure_load(closure_path.c_str(), &raw));
  ClosureHandle gc(raw);
  tsm_class* raw_cls = nullptr;
  check(tsm_local_data(gc.get(), &raw_cls));
  ClassHandle cls(raw_cls);
  char* s = nullptr;
  check(tsm_class_degree(cls.get(), &s));
  const std::string deg = take(s);
  if (as_json) {
    check(tsm_class_coefficients_json(cls.get(), &s));
    std::cout << report_line("local_data", closure_path, true, take_json(s), json::object(), decimal(deg), nullptr)
              << '\n';
  } else {
    check(tsm_class_to_text(cls.get(), &s));
    std::cout << take(s) << '\n' << "degree " << deg << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern-Schwartz-MacPherson classes on smooth complete toric varieties"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit machine-readable JSON lines");

  std::string fan_path, function_path, morphism_path, input_path, closure_path, suite, corpus, center, out_dir,
      report_path;
  std::uint64_t seed = 0;
  unsigned trials = 100;

  auto* csm = app.add_subcommand("csm", "CSM class of a constructible function");
  csm->add_option("fan", fan_path, "Fan file")->required();
  csm->add_option("function", function_path, "Constructible function file")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite over a corpus directory");
  verify->add_option("suite", suite, "gluing | blowup | naturality | covariance | fibration | prochow | "
                                     "normalization | chow | all")
      ->required();
  verify->add_option("corpus", corpus, "Directory of *.fan.json and *.morphism.json files")->required();
  verify->add_option("--seed", seed, "Seed for randomized functions");
  verify->add_option("--trials", trials, "Random trials per instance");
  verify->add_option("--report", report_path, "Also write the full run report (JSON) to this file");

  auto* push = app.add_subcommand("pushforward", "Push a constructible function or a class forward");
  push->add_option("morphism", morphism_path, "Morphism file")->required();
  push->add_option("input", input_path, "Function or class file on the source fan")->required();

  auto* blowup = app.add_subcommand("blowup", "Star-subdivide a fan at a cone");
  blowup->add_option("fan", fan_path, "Fan file")->required();
  blowup->add_option("--center", center, "Comma-joined ray indices of the center cone")->required();
  blowup->add_option("--out-dir", out_dir, "Output directory (default: next to the fan file)");

  auto* validate = app.add_subcommand("validate", "Check a fan file");
  validate->add_option("fan", fan_path, "Fan file")->required();

  auto* local = app.add_subcommand("local-data", "Log-tangent local data of a good closure");
  local->add_option("closure", closure_path, "Good-closure descriptor file")->required();

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", as_json, "Emit machine-readable JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*csm) return cmd_csm(fan_path, function_path, as_json);
    if (*verify) return cmd_verify(suite, corpus, seed, trials, as_json, report_path);
    if (*push) return cmd_pushforward(morphism_path, input_path, as_json);
    if (*blowup) return cmd_blowup(fan_path, center, out_dir, as_json);
    if (*validate) return cmd_validate(fan_path, as_json);
    if (*local) return cmd_local_data(closure_path, as_json);
  } catch (const Failure& f) {
    std::cerr << "toricsm: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "toricsm: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
