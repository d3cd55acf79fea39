#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>

#include "fixtures.hpp"
#include "mnpp/errors.hpp"
#include "mnpp/instance_io.hpp"
#include "mnpp/instgen.hpp"
#include "mnpp/rng.hpp"

using namespace mnpp;
using namespace fixtures;

namespace {

std::string message_of(std::string_view text) {
  try {
    instance_from_text(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

std::string replace_once(std::string s, std::string_view from, std::string_view to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  s.replace(at, from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("rng streams are reproducible and seeds differ per draw") {
  Xoshiro256 a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  Xoshiro256 r(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform(2, 3);
    CHECK(u >= 2);
    CHECK(u < 3);
    CHECK(r.below(7) < 7);
  }
}

TEST_CASE("edge count rounds half up") {
  CHECK(edge_count(5, 15, 0.1) == 8);  // 7.5
  CHECK(edge_count(5, 15, 0.9) == 68);  // 67.5
  CHECK(edge_count(10, 30, 0.25) == 75);
  CHECK(edge_count(15, 50, 0.75) == 563);  // 562.5
  CHECK(edge_count(3, 4, 1.0) == 12);
}

TEST_CASE("generated graphs have the requested size and no duplicate pairs") {
  GenParams p;
  p.n_outlets = 5;
  p.n_demands = 15;
  p.density = 0.1;
  p.seed = 3;
  const Instance inst = generate(p);
  CHECK(inst.n_edges() == 8);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : inst.edges()) {
    CHECK(seen.insert({e.demand, e.outlet}).second);
    CHECK(e.demand < 15);
    CHECK(e.outlet < 5);
  }
}

TEST_CASE("generation is deterministic") {
  GenParams p;
  p.seed = 11;
  p.model = ModelKind::kBmnpp;
  CHECK(instance_to_text(generate(p)) == instance_to_text(generate(p)));
  GenParams q = p;
  q.seed = 12;
  CHECK(instance_to_text(generate(p)) != instance_to_text(generate(q)));
}

TEST_CASE("a shared graph seed fixes the edge set across draws") {
  GenParams p;
  p.graph_seed = 99;
  p.seed = 1;
  GenParams q = p;
  q.seed = 2;
  const Instance a = generate(p), b = generate(q);
  REQUIRE(a.n_edges() == b.n_edges());
  for (std::size_t i = 0; i < a.n_edges(); ++i) {
    CHECK(a.edge(i).demand == b.edge(i).demand);
    CHECK(a.edge(i).outlet == b.edge(i).outlet);
  }
  CHECK_FALSE(a.demands()[0] == b.demands()[0]);
}

TEST_CASE("competitor prices are spread over their range") {
  GenParams p;
  p.n_outlets = 1;
  p.n_demands = 10000;
  p.density = 0.1;
  p.seed = 4;
  const Instance inst = generate(p);
  double sum = 0, dsum = 0;
  for (const DemandNode& n : inst.demands()) {
    sum += n.competitor_price.value();
    dsum += n.volume.value();
    CHECK(n.volume.value() >= 50);
    CHECK(n.volume.value() <= 150);
  }
  CHECK(sum / 10000 == doctest::Approx(12.5).epsilon(0.04));
  CHECK(dsum / 10000 == doctest::Approx(100).epsilon(0.02));
}

TEST_CASE("logit coefficients are drawn only when needed") {
  GenParams p;
  p.seed = 5;
  const Instance fixed = generate(p);
  for (const Edge& e : fixed.edges()) CHECK(e.war_intercept == 0);
  p.model = ModelKind::kBmnpp;
  const Instance logit = generate(p);
  for (const Edge& e : logit.edges()) {
    CHECK(e.war_intercept >= 200);
    CHECK(e.war_intercept <= 400);
    CHECK(e.match_slope >= 0);
    CHECK(e.match_slope <= 20);
  }
}

TEST_CASE("invalid generator parameters are rejected") {
  GenParams p;
  p.density = 1.5;
  CHECK_THROWS_AS(generate(p), InputError);
  p = {};
  p.n_outlets = 0;
  CHECK_THROWS_AS(generate(p), InputError);
  p = {};
  p.volume = {10, 5};
  CHECK_THROWS_AS(generate(p), InputError);
}

TEST_CASE("the full design has 450 instances with distinct seeds") {
  const auto suite = full_design_params(1, ModelKind::kMnpp);
  CHECK(suite.size() == 450);
  std::set<std::uint64_t> seeds;
  for (const auto& s : suite) seeds.insert(s.params.seed);
  CHECK(seeds.size() == 450);
  // draws of one graph share its graph seed
  CHECK(suite[0].params.graph_seed == suite[9].params.graph_seed);
  CHECK(suite[0].params.graph_seed != suite[10].params.graph_seed);
}

TEST_CASE("a stored instance matches regeneration from its parameters") {
  GenParams p;
  p.model = ModelKind::kBmnpp;
  p.n_outlets = 3;
  p.n_demands = 4;
  p.density = 0.5;
  p.seed = 7;
  p.grid.step = money(2.5);
  const Instance stored = load_instance(std::filesystem::path(MNPP_TEST_DATA_DIR) / "tiny_seed7.json");
  CHECK(stored == generate(p));
  CHECK(instance_to_text(stored) == read_file(std::filesystem::path(MNPP_TEST_DATA_DIR) / "tiny_seed7.json"));
}

TEST_CASE("text round trip is the identity") {
  for (auto model : {ModelKind::kMnpp, ModelKind::kBmnpp}) {
    const Instance inst = random_tiny(21, model, 4, 7).with_pi(money(3.5));
    const std::string text = instance_to_text(inst);
    const Instance back = instance_from_text(text);
    CHECK(back == inst);
    CHECK(instance_to_text(back) == text);
  }
  const Instance explicit_grid(1, {node(10)}, {edge(0, 0)}, PriceGrid({money(3), money(9.5)}),
                               ModelKind::kMnpp);
  CHECK(instance_from_text(instance_to_text(explicit_grid)) == explicit_grid);
}

TEST_CASE("files round trip through save and load") {
  const auto dir = std::filesystem::temp_directory_path() / "mnpp_instgen_test";
  std::filesystem::remove_all(dir);
  const Instance inst = random_tiny(8, ModelKind::kBmnpp, 3, 5);
  save_instance(inst, dir / "nested" / "a.json");
  CHECK(load_instance(dir / "nested" / "a.json") == inst);
  CHECK_THROWS_AS(load_instance(dir / "missing.json"), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed instance files name the offending field") {
  const std::string good = instance_to_text(disjoint_pair());
  CHECK(message_of(good).empty());

  CHECK(message_of(replace_once(good, "\"outlets\": 2,", "")).find("outlets") != std::string::npos);
  CHECK(message_of(replace_once(good, "\"outlets\": 2,", "\"outlets\": 2, \"colour\": 1,"))
            .find("colour") != std::string::npos);
  CHECK(message_of(replace_once(good, "\"beta\": 0.5", "\"beta\": \"half\""))
            .find("beta") != std::string::npos);
  CHECK(message_of(replace_once(good, "mnpp-instance/1", "mnpp-instance/9"))
            .find("format") != std::string::npos);
  CHECK_FALSE(message_of("{ not json").empty());
  // an edge pointing at a missing outlet
  CHECK_FALSE(message_of(replace_once(good, "\"f\": 1", "\"f\": 5")).empty());
}
