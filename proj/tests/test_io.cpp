#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "toricsm/error.hpp"
#include "toricsm/io.hpp"
#include "toricsm/verify.hpp"

using namespace toricsm;
namespace fs = std::filesystem;

namespace {

const fs::path corpus_dir = TORICSM_CORPUS_DIR;
const fs::path data_dir = TORICSM_TEST_DATA;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Parse;
}

fs::path scratch(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "toricsm_io_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("fan files round-trip") {
  for (const FanPtr& f : builtin_corpus().fans) {
    const FanPtr back = io::parse_fan(io::json::parse(io::fan_to_json(*f).dump()));
    CHECK(structurally_equal(*f, *back));
    CHECK(back->name() == f->name());
  }
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (entry.path().string().find(".fan.json") == std::string::npos) continue;
    const FanPtr f = io::load_fan(entry.path());
    CHECK(structurally_equal(*f, *io::parse_fan(io::fan_to_json(*f))));
  }
}

TEST_CASE("integers beyond 64 bits") {
  const Integer big("-98765432109876543210987654321");
  CHECK(io::integer_from_json(io::integer_to_json(big)) == big);
  CHECK(io::integer_to_json(Integer(-7)) == io::json(-7));
  CHECK(io::integer_from_json(io::json(std::uint64_t{18446744073709551615ULL})) == Integer("18446744073709551615"));
  CHECK(kind_of([] { io::integer_from_json(io::json("12x")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::integer_from_json(io::json(1.5)); }) == ErrorKind::Parse);
}

TEST_CASE("malformed and invalid fan files") {
  CHECK(kind_of([] { io::load_fan(data_dir / "truncated.json"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::load_fan(data_dir / "missing.fan.json"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::load_fan(data_dir / "singular.fan.json"); }) == ErrorKind::Validation);
  CHECK(kind_of([] { io::load_fan(scratch("nodim.fan.json", R"({"rays": [], "max_cones": []})")); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] { io::load_fan(scratch("neg.fan.json", R"({"dim": 1, "rays": [[1],[-1]], "max_cones": [[-1]]})")); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] {
          io::load_fan(scratch("len.fan.json", R"({"dim": 2, "rays": [[1,0],[0]], "max_cones": [[0,1]]})"));
        }) == ErrorKind::Validation);
  CHECK(kind_of([] { io::load_fan(data_dir / "corrupted_corpus" / "broken.fan.json"); }) == ErrorKind::Validation);
  const FanPtr unchecked = io::parse_fan_unchecked(io::read_json(data_dir / "singular.fan.json"));
  CHECK_FALSE(unchecked->is_smooth());
}

TEST_CASE("morphism files") {
  const ToricMorphism m = io::load_morphism(corpus_dir / "blowdown.morphism.json");
  CHECK(m.source->name() == "BlpP2");
  CHECK(m.target->name() == "P2");
  CHECK(m.map == LatticeMatrix::identity(2));
  CHECK(io::morphism_to_json(m, "BlpP2.fan.json", "P2.fan.json") == io::read_json(corpus_dir / "blowdown.morphism.json"));
  CHECK(kind_of([] { io::load_morphism(data_dir / "p2_to_p1.morphism.json"); }) == ErrorKind::Validation);
  const fs::path bad_shape = scratch("shape.morphism.json", "{\"source\": \"" + (corpus_dir / "P2.fan.json").string() +
                                                                "\", \"target\": \"" + (corpus_dir / "P1.fan.json").string() +
                                                                "\", \"matrix\": [[1, 0], [0, 1]]}");
  CHECK(kind_of([&] { io::load_morphism(bad_shape); }) == ErrorKind::Validation);
}

TEST_CASE("function, class and closure files") {
  const ConstructibleFunction one = io::load_function(data_dir / "p2_one.function.json");
  CHECK(one == constant_function(one.fan(), 1));
  CHECK(io::parse_function(io::function_to_json(one, "P2.fan.json"), one.fan()) == one);
  CHECK(io::load_function(data_dir / "p2_zero.function.json").values().empty());
  CHECK(kind_of([] { io::load_function(data_dir / "p2_one.function.json", projective_space(1)); }) ==
        ErrorKind::Validation);

  const CycleClass point = io::load_class(data_dir / "blp_point.class.json");
  CHECK(point.coefficient(Cone({0, 3})) == 1);
  CHECK(io::class_to_json(point, "x")["class"] == io::json{{"0,3", 1}});

  const GoodClosure a2 = io::load_good_closure(data_dir / "p2_a2.closure.json");
  CHECK(a2.boundary == std::vector<int>{2});
  CHECK(kind_of([] { io::load_good_closure(scratch("c.json", "{\"fan\": \"" + (corpus_dir / "P2.fan.json").string() +
                                                                   "\", \"boundary_rays\": [9]}")); }) ==
        ErrorKind::Validation);
  CHECK(kind_of([] { Cone::from_key("0,,1"); }) == ErrorKind::Parse);
}

TEST_CASE("report lines") {
  CheckResult r;
  r.check = "gluing";
  r.instance = "P2 S={2}";
  r.pass = true;
  r.lhs[Cone({0, 1})] = 1;
  r.degree_lhs = Integer(1);
  const io::json j = io::check_to_json(r);
  CHECK(j.at("check") == "gluing");
  CHECK(j.at("pass") == true);
  CHECK(j.at("lhs") == io::json{{"0,1", 1}});
  CHECK(j.at("rhs") == io::json::object());
  CHECK(j.at("degree_lhs") == 1);
  CHECK(j.at("degree_rhs").is_null());
  CHECK_FALSE(j.contains("note"));
}

TEST_CASE("digests are stable") {
  CHECK(io::digest("") == "cbf29ce484222325");
  CHECK(io::digest("a") == "af63dc4c8601ec8c");
  CHECK(io::digest("a") != io::digest("b"));
}
