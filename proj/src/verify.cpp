#include "toricsm/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "toricsm/error.hpp"
#include "toricsm/io.hpp"

namespace toricsm {

// ---------------------------------------------------------------- standard fans

FanPtr projective_space(int n, std::string name) {
  if (n < 1) throw_precondition("projective space needs n >= 1");
  const auto dim = static_cast<std::size_t>(n);
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < dim; ++i) {
    LatticeVector e(dim);
    e[i] = 1;
    rays.push_back(std::move(e));
  }
  rays.emplace_back(dim, Integer(-1));
  std::vector<Cone> maximal;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> idx;
    for (int r = 0; r <= n; ++r)
      if (r != skip) idx.push_back(r);
    maximal.emplace_back(std::move(idx));
  }
  if (name.empty()) name = "P" + std::to_string(n);
  return Fan::from_maximal_cones(std::move(name), n, std::move(rays), std::move(maximal));
}

FanPtr hirzebruch(int a, std::string name) {
  std::vector<LatticeVector> rays{{1, 0}, {0, 1}, {-1, a}, {0, -1}};
  std::vector<Cone> maximal{Cone({0, 1}), Cone({1, 2}), Cone({2, 3}), Cone({0, 3})};
  if (name.empty()) name = "F" + std::to_string(a);
  return Fan::from_maximal_cones(std::move(name), 2, std::move(rays), std::move(maximal));
}

namespace {

FanPtr renamed(const FanPtr& fan, std::string name) {
  return Fan::from_maximal_cones(std::move(name), fan->dim(), fan->rays(), fan->maximal_cones());
}

}  // namespace

FanPtr Corpus::find_fan(const std::string& name) const {
  for (const FanPtr& f : fans)
    if (f->name() == name) return f;
  return nullptr;
}

Corpus builtin_corpus() {
  Corpus c;
  const FanPtr p1 = projective_space(1);
  const FanPtr p2 = projective_space(2);
  const FanPtr p3 = projective_space(3);
  const FanPtr p1p1 = product_fan(p1, p1, "P1xP1");
  const FanPtr blp = renamed(star_subdivision(p2, Cone({0, 1})).fan, "BlpP2");
  const FanPtr bl2 = renamed(star_subdivision(blp, Cone({1, 2})).fan, "Bl2P2");
  const FanPtr f1 = hirzebruch(1);
  const FanPtr f2 = hirzebruch(2);
  const FanPtr p1cubed = product_fan(p1p1, p1, "P1xP1xP1");
  c.fans = {p1, p2, p3, p1p1, blp, bl2, f1, f2, p1cubed};

  auto named = [](std::string name, ToricMorphism m) { return NamedMorphism{std::move(name), std::move(m)}; };
  c.morphisms = {
      named("blowdown", make_morphism(blp, p2, LatticeMatrix::identity(2))),
      named("blowdown2", make_morphism(bl2, blp, LatticeMatrix::identity(2))),
      named("f1_to_p1", make_morphism(f1, p1, LatticeMatrix{{1, 0}})),
      named("f2_to_p1", make_morphism(f2, p1, LatticeMatrix{{1, 0}})),
      named("p1p1_first", first_projection(p1p1, p1, p1)),
      named("p1p1_second", second_projection(p1p1, p1, p1)),
      named("p1cubed_to_p1p1", first_projection(p1cubed, p1p1, p1)),
  };
  return c;
}

Corpus load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::Parse, "corpus directory " + dir.string() + " not found");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  auto ends_with = [](const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  Corpus c;
  for (const auto& f : files) {
    const std::string name = f.filename().string();
    if (ends_with(name, ".fan.json")) {
      c.fans.push_back(io::load_fan(f));
    } else if (ends_with(name, ".morphism.json")) {
      c.morphisms.push_back({name.substr(0, name.size() - std::string(".morphism.json").size()), io::load_morphism(f)});
    } else {
      continue;
    }
    c.inputs.emplace_back(name, io::digest(io::read_text(f)));
  }
  return c;
}

// ---------------------------------------------------------------- helpers

std::size_t RunReport::failures() const {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.pass; }));
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix(seed)) {}
  // Modular reduction keeps streams identical across standard libraries.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::vector<int>> all_subsets(std::size_t n) {
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(static_cast<int>(i));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<FanPtr> complete_fans(const Corpus& c) {
  std::vector<FanPtr> out;
  for (const FanPtr& f : c.fans)
    if (f->is_complete()) out.push_back(f);
  return out;
}

std::vector<NamedMorphism> morphisms_with_structure_maps(const Corpus& c) {
  std::vector<NamedMorphism> out = c.morphisms;
  for (const FanPtr& f : complete_fans(c)) out.push_back({f->name() + "_to_pt", structure_map(f)});
  return out;
}

using Sink = std::vector<CheckResult>;

void suite_normalization(const Corpus& c, Sink& out) {
  for (const FanPtr& fan : complete_fans(c)) {
    const CycleClass total = csm_class(constant_function(fan, 1));
    CheckResult r;
    r.check = "normalization";
    r.instance = fan->name();
    r.lhs = total.coefficients();
    r.degree_lhs = degree(total);
    r.degree_rhs = Integer(static_cast<long>(fan->maximal_cones().size()));
    r.pass = *r.degree_lhs == *r.degree_rhs;
    r.note = "degree vs fixed-point count";
    out.push_back(std::move(r));

    for (const Cone& sigma : fan->cones()) out.push_back(verify_orbit_closure_normalization(fan, sigma));
    if (fan->cones().size() <= 30)
      for (const Cone& a : fan->cones())
        for (const Cone& b : fan->cones())
          if (a < b) out.push_back(verify_inclusion_exclusion(fan, a, b));
  }
}

void suite_gluing(const Corpus& c, Sink& out) {
  for (const FanPtr& fan : complete_fans(c))
    for (const auto& s : all_subsets(fan->ray_count())) out.push_back(verify_gluing(make_good_closure(fan, s)));
}

void suite_blowup(const Corpus& c, Sink& out) {
  std::size_t empty_branch = 0, open_branch = 0;
  for (const FanPtr& fan : complete_fans(c)) {
    if (fan->dim() < 2) continue;
    for (const auto& s : all_subsets(fan->ray_count())) {
      const GoodClosure gc = make_good_closure(fan, s);
      for (const Cone& center : fan->cones()) {
        if (center.dim() < 2) continue;
        BlowupCheck r = verify_blowup_formula(gc, center);
        (r.center_meets_open ? open_branch : empty_branch)++;
        const bool meets = r.center_meets_open;
        out.push_back(std::move(r));
        if (meets) out.push_back(verify_exceptional_pushforward(gc, center));
      }
    }
  }
  if (empty_branch + open_branch == 0) return;
  CheckResult coverage;
  coverage.check = "blowup_branch_coverage";
  coverage.instance = "corpus";
  coverage.pass = empty_branch >= 5 && open_branch >= 5;
  coverage.note = "Z empty: " + std::to_string(empty_branch) + ", Z nonempty: " + std::to_string(open_branch);
  out.push_back(std::move(coverage));
}

void suite_naturality(const Corpus& c, const SuiteOptions& opt, Sink& out) {
  const auto morphisms = morphisms_with_structure_maps(c);
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const ToricMorphism& m = morphisms[i].morphism;
    if (!m.source->is_complete()) continue;
    CheckResult one = verify_naturality(m, constant_function(m.source, 1));
    one.instance = morphisms[i].name;
    out.push_back(std::move(one));


    for (unsigned t = 0; t < opt.trials; ++t) {
      CheckResult r = verify_naturality(m, random_function(m.source, opt.seed * 1000003 + i * 7919 + t));
      r.instance = morphisms[i].name + " trial " + std::to_string(t);
      out.push_back(std::move(r));
    }
  }
}

void suite_covariance(const Corpus& c, const SuiteOptions& opt, Sink& out) {
  const auto morphisms = morphisms_with_structure_maps(c);
  std::vector<std::pair<NamedMorphism, NamedMorphism>> pairs;
  for (const auto& g : morphisms) {
    if (!g.morphism.source->is_complete()) continue;
    pairs.push_back({{"id", identity_morphism(g.morphism.source)}, g});
    for (const auto& f : morphisms)
      if (f.morphism.source->is_complete() && structurally_equal(*f.morphism.target, *g.morphism.source))
        pairs.push_back({f, g});
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [f, g] = pairs[i];
    const std::string label = f.name + " then " + g.name;
    CheckResult base = verify_covariance(f.morphism, g.morphism, constant_function(f.morphism.source, 1));
    base.instance = label;
    out.push_back(std::move(base));
    for (unsigned t = 0; t < opt.trials; ++t) {
      CheckResult r =
          verify_covariance(f.morphism, g.morphism, random_function(f.morphism.source, opt.seed * 1000003 + i * 6007 + t));
      r.instance = label + " trial " + std::to_string(t);
      out.push_back(std::move(r));
    }
  }
}

void suite_fibration(const Corpus& c, Sink& out) {
  FanPtr p1 = c.find_fan("P1");
  FanPtr p2 = c.find_fan("P2");
  if (!p1) p1 = projective_space(1);
  if (!p2) p2 = projective_space(2);
  const std::vector<FanPtr> bases{p1, p2};
  const std::vector<FanPtr> fibers{p1, p2, point_fan()};
  for (const FanPtr& x : bases)
    for (const FanPtr& f : fibers) {
      const FanPtr total = product_fan(x, f);
      out.push_back(verify_fibration(first_projection(total, x, f), f));
    }
  const FanPtr p1p1 = product_fan(p1, p1);
  const FanPtr p1cubed = product_fan(p1p1, p1);
  out.push_back(verify_fibration_tower({first_projection(p1cubed, p1p1, p1), first_projection(p1p1, p1, p1)}, {p1, p1}));
}

void suite_prochow(const Corpus& c, Sink& out) {
  std::optional<ProChowElement> first;
  for (const FanPtr& fan : complete_fans(c)) {
    if (fan->dim() < 2) continue;
    for (const auto& s : all_subsets(fan->ray_count())) {
      const GoodClosure gc = make_good_closure(fan, s);
      for (const Cone& center : admissible_diagram_centers(gc)) {
        ProChowElement e = two_node_diagram(gc, center);
        for (CheckResult& r : verify_prochow_edges(e)) out.push_back(std::move(r));
        if (!first) first = std::move(e);
      }
    }
  }
  if (!first) return;
  // A class that is not the local data must be caught.
  ProChowElement corrupted = *first;
  const BlowupEdge& edge = corrupted.edges.front();
  CycleClass& cls = corrupted.classes.at(edge.source);
  cls.add(cls.fan()->maximal_cones().front(), 1);
  CheckResult r;
  r.check = "prochow_corruption_detected";
  r.instance = edge.source + " -> " + edge.target;
  r.pass = !verify_prochow_compatibility(corrupted);
  out.push_back(std::move(r));
}

CycleClass random_class(const FanPtr& fan, Rng& rng, std::size_t terms) {
  CycleClass alpha(fan);
  for (std::size_t i = 0; i < terms; ++i) alpha.add(fan->cones()[rng.index(fan->cones().size())], rng.uniform(-3, 3));
  return alpha;
}

void suite_chow(const Corpus& c, const SuiteOptions& opt, Sink& out) {
  const auto fans = complete_fans(c);
  if (fans.empty()) return;
  const auto morphisms = morphisms_with_structure_maps(c);
  const unsigned trials = std::max(opt.trials, 100U);
  auto record = [&](const char* check, std::string instance, const CycleClass& lhs, const CycleClass& rhs, bool pass) {
    CheckResult r;
    r.check = check;
    r.instance = std::move(instance);
    r.pass = pass;
    r.lhs = lhs.coefficients();
    r.rhs = rhs.coefficients();
    r.degree_lhs = degree(lhs);
    r.degree_rhs = degree(rhs);
    out.push_back(std::move(r));
  };

  for (unsigned t = 0; t < trials; ++t) {
    Rng rng(opt.seed * 1000003 + t);
    const FanPtr& fan = fans[rng.index(fans.size())];

    // Divisor-choice independence: shift m by a random vector orthogonal to sigma.
    std::vector<Cone> nonzero;
    for (const Cone& s : fan->cones())
      if (s.dim() > 0) nonzero.push_back(s);
    const Cone sigma = nonzero[rng.index(nonzero.size())];
    const int ray = sigma.rays[rng.index(sigma.dim())];
    LinearFormChooser perturbed = [&rng](const Fan& f, int r, const Cone& cone) {
      LatticeVector m = default_linear_form(f, r, cone);
      const LatticeMatrix k = integer_kernel(f.ray_matrix(cone).transposed());
      for (std::size_t j = 0; j < k.cols(); ++j) {
        const int shift = rng.uniform(-3, 3);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += shift * k(i, j);
      }
      return m;
    };
    CycleClass alpha = random_class(fan, rng, 3);
    alpha.add(sigma, 1);
    const CycleClass a = multiply_divisor(fan, ray, alpha);
    const CycleClass b = multiply_divisor(fan, ray, alpha, perturbed);
    record("divisor_choice", fan->name() + " D" + std::to_string(ray) + " trial " + std::to_string(t), a, b,
           classes_equal(a, b));

    // Commutativity modulo relations.
    const int r1 = static_cast<int>(rng.index(fan->ray_count()));
    const int r2 = static_cast<int>(rng.index(fan->ray_count()));
    const CycleClass beta = random_class(fan, rng, 4);
    const CycleClass ab = multiply_divisor(fan, r1, multiply_divisor(fan, r2, beta));
    const CycleClass ba = multiply_divisor(fan, r2, multiply_divisor(fan, r1, beta));
    record("divisor_commutativity",
           fan->name() + " D" + std::to_string(r1) + "D" + std::to_string(r2) + " trial " + std::to_string(t), ab, ba,
           classes_equal(ab, ba));

    // Degree preservation under push-forward of zero-cycles.
    const NamedMorphism& nm = morphisms[rng.index(morphisms.size())];
    const auto& points = nm.morphism.source->maximal_cones();
    CycleClass zero_cycle(nm.morphism.source);
    for (int k = 0; k < 3; ++k) zero_cycle.add(points[rng.index(points.size())], rng.uniform(-3, 3));
    const CycleClass pushed = pushforward_cycle(nm.morphism, zero_cycle);
    record("degree_preservation", nm.name + " trial " + std::to_string(t), zero_cycle, pushed,
           degree(zero_cycle) == degree(pushed));

    // Every fixed point has the same class.
    const auto& maxes = fan->maximal_cones();
    CycleClass p(fan), q(fan);
    const Cone& pc = maxes[rng.index(maxes.size())];
    const Cone& qc = maxes[rng.index(maxes.size())];
    p.add(pc, 1);
    q.add(qc, 1);
    record("point_classes", fan->name() + " {" + pc.key() + "}~{" + qc.key() + "} trial " + std::to_string(t), p, q,
           classes_equal(p, q));
  }
}

}  // namespace

ConstructibleFunction random_function(const FanPtr& fan, std::uint64_t seed, int lo, int hi) {
  Rng rng(seed);
  ConstructibleFunction phi(fan);
  for (const Cone& c : fan->cones()) phi.set(c, rng.uniform(lo, hi));
  return phi;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"normalization", "gluing",      "blowup", "naturality", "covariance",
                                              "fibration",     "prochow",     "chow",   "all"};
  return names;
}

RunReport run_suite(const std::string& suite, const Corpus& corpus, const SuiteOptions& options) {
  const std::map<std::string, std::function<void(Sink&)>> suites{
      {"normalization", [&](Sink& s) { suite_normalization(corpus, s); }},
      {"gluing", [&](Sink& s) { suite_gluing(corpus, s); }},
      {"blowup", [&](Sink& s) { suite_blowup(corpus, s); }},
      {"naturality", [&](Sink& s) { suite_naturality(corpus, options, s); }},
      {"covariance", [&](Sink& s) { suite_covariance(corpus, options, s); }},
      {"fibration", [&](Sink& s) { suite_fibration(corpus, s); }},
      {"prochow", [&](Sink& s) { suite_prochow(corpus, s); }},
      {"chow", [&](Sink& s) { suite_chow(corpus, options, s); }},
  };
  RunReport report;
  report.command = "verify " + suite;
  report.inputs = corpus.inputs;
  if (suite == "all") {
    for (const std::string& name : suite_names())
      if (name != "all") suites.at(name)(report.results);
  } else {
    auto it = suites.find(suite);
    if (it == suites.end()) throw_precondition("unknown suite '" + suite + "'");
    it->second(report.results);
  }
  report.exit_status = report.failures() == 0 ? 0 : 1;
  return report;
}

}  // namespace toricsm
