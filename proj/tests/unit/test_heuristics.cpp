#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "mnpp/errors.hpp"
#include "mnpp/exact.hpp"
#include "mnpp/heuristics.hpp"

using namespace mnpp;
using namespace fixtures;

namespace {

const std::vector<OutletId> kPair{0, 1};

}  // namespace

TEST_CASE("algorithm names round-trip") {
  for (auto alg : {Algorithm::kSp, Algorithm::kGreedy, Algorithm::kOrder, Algorithm::kFi,
                   Algorithm::kGreedyI, Algorithm::kOrderI, Algorithm::kIp1I, Algorithm::kIp2I,
                   Algorithm::kIp1, Algorithm::kIp2}) {
    CHECK(parse_algorithm(to_string(alg)) == alg);
  }
  CHECK_THROWS_AS(parse_algorithm("tabu"), InputError);
}

TEST_CASE("single price") {
  const auto disjoint = single_price(disjoint_pair());
  CHECK(disjoint.price == money(7));
  CHECK(disjoint.revenue.value() == 1400.0);

  const auto single = single_price(single_demand());
  CHECK(single.price == money(9));
  CHECK(single.revenue.value() == 900.0);

  const Instance unlinked(2, {node(10)}, {}, integer_grid(), ModelKind::kMnpp);
  CHECK(single_price(unlinked).revenue.raw() == 0);
}

TEST_CASE("single price ignores match demand unless asked") {
  // c = 10 with beta = 0.95: matching at 10 earns 950 > war at 9 (900)
  const Instance inst(1, {node(10, 100, 0.95)}, {edge(0, 0)}, integer_grid(), ModelKind::kMnpp);
  CHECK(single_price(inst).price == money(9));
  CHECK(single_price(inst, true).price == money(10));
  CHECK(single_price(inst, true).revenue.value() == 950.0);
}

TEST_CASE("greedy selection on the disjoint pair") {
  const Instance inst = disjoint_pair();
  const auto sel = greedy_select(inst, kPair);
  CHECK(sel.ladder == PriceLadder{0, 1});
  CHECK(sel.dp.revenue.value() == 1400.0);

  const Instance one = single_demand();
  const std::vector<OutletId> solo{0};
  const auto s = greedy_select(one, solo);
  CHECK(s.ladder == PriceLadder{0});
  CHECK(s.dp.revenue.value() == 900.0);
}

TEST_CASE("greedy never picks an isolated outlet while covering ones remain") {
  const Instance inst(3, {node(10), node(8)}, {edge(0, 1), edge(1, 2)}, integer_grid(),
                      ModelKind::kMnpp);
  const std::vector<OutletId> pool{0, 1, 2};
  const auto sel = greedy_select(inst, pool);
  CHECK(sel.ladder.back() == 0);
}

TEST_CASE("order selection") {
  CHECK(order_select(disjoint_pair(), kPair) == PriceLadder{1, 0});
  // all scores equal: lowest index first
  const Instance same(2, {node(10)}, {edge(0, 0), edge(0, 1)}, integer_grid(), ModelKind::kMnpp);
  CHECK(order_select(same, kPair) == PriceLadder{0, 1});
}

TEST_CASE("order selection scores by d * gamma * c, argmin by default") {
  // e0 (c=5) links f0 and f1; f0 also serves e1 (c=20) so its score is larger
  const Instance inst(2, {node(5), node(20)}, {edge(0, 0), edge(0, 1), edge(1, 0)},
                      integer_grid(), ModelKind::kMnpp);
  CHECK(order_select(inst, kPair).front() == 1);
  CHECK(order_select(inst, kPair, true).front() == 0);
}

TEST_CASE("insert") {
  const Instance inst = disjoint_pair();
  const auto first = insert(inst, PriceLadder{}, 0);
  CHECK(first.position == 0);
  CHECK(first.ladder == PriceLadder{0});

  const auto second = insert(inst, PriceLadder{0}, 1);
  CHECK(second.position == 0);
  CHECK(second.ladder == PriceLadder{1, 0});
  CHECK(second.dp.revenue.value() == 1600.0);

  const Instance iso(2, {node(10)}, {edge(0, 0)}, integer_grid(), ModelKind::kMnpp);
  CHECK(insert(iso, PriceLadder{0}, 1).position == 0);
  CHECK_THROWS_AS(insert(inst, PriceLadder{0}, 0), InputError);
}

TEST_CASE("full insertion and the composed heuristics on the disjoint pair") {
  const Instance inst = disjoint_pair();
  const auto fi = full_insertion(inst);
  CHECK(fi.revenue.value() == 1600.0);
  CHECK(fi.ladder == PriceLadder{1, 0});
  CHECK(compose_selection_insertion(inst, Selector::kOrder).revenue.value() == 1600.0);
  CHECK(run_heuristic(inst, Algorithm::kGreedyI).revenue.value() == 1600.0);
  CHECK(run_heuristic(inst, Algorithm::kOrder).revenue.value() == 1600.0);
  CHECK(run_heuristic(inst, Algorithm::kGreedy).revenue.value() == 1400.0);
  CHECK(run_heuristic(inst, Algorithm::kSp).revenue.value() == 1400.0);
}

TEST_CASE("full insertion on one outlet equals greedy") {
  const Instance inst = single_demand();
  CHECK(full_insertion(inst).revenue == run_greedy(inst).revenue);
}

TEST_CASE("one outlet per demand: full insertion sums standalone optima") {
  const Instance inst(3, {node(10), node(8), node(12.5)}, {edge(0, 0), edge(1, 1), edge(2, 2)},
                      PriceGrid::uniform(money(0), money(25), money(0.5)), ModelKind::kMnpp);
  double standalone = 0;
  for (int f = 0; f < 3; ++f) {
    const PriceLadder t{f};
    standalone += ladder_revenue(inst, allocate(inst, t), t).value();
  }
  CHECK(full_insertion(inst).revenue.value() == doctest::Approx(standalone));
}

TEST_CASE("relaxation selectors without a solver fail loudly") {
  const Instance inst = disjoint_pair();
  CHECK_THROWS_AS(run_heuristic(inst, Algorithm::kIp1I), SolverError);
  CHECK_THROWS_AS(run_heuristic(inst, Algorithm::kIp2I), SolverError);
  CHECK_THROWS_AS(run_heuristic(inst, Algorithm::kIp2), InputError);
}

TEST_CASE("heuristic revenue is the market revenue of the emitted prices") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = random_tiny(seed, ModelKind::kMnpp, 3, 6);
    for (auto alg : {Algorithm::kSp, Algorithm::kGreedy, Algorithm::kOrder, Algorithm::kFi,
                     Algorithm::kGreedyI, Algorithm::kOrderI}) {
      const auto r = run_heuristic(inst, alg);
      CHECK(r.revenue == evaluate_prices(inst, r.prices).revenue);
      if (alg != Algorithm::kSp) CHECK(r.revenue == r.search_revenue);
    }
  }
}

TEST_CASE("dominance: brute >= FI >= SP for MNPP, brute >= all for BMNPP") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance mn = random_tiny(seed, ModelKind::kMnpp, 3, 6);
    const Revenue opt = brute_force(mn).revenue;
    const Revenue fi = full_insertion(mn).revenue;
    CHECK(opt >= fi);
    CHECK(fi >= run_single_price(mn).revenue);

    const Instance bm = mn.with_model(ModelKind::kBmnpp);
    const Revenue bopt = brute_force(bm).revenue;
    for (auto alg : {Algorithm::kSp, Algorithm::kGreedy, Algorithm::kOrder, Algorithm::kFi,
                     Algorithm::kGreedyI, Algorithm::kOrderI}) {
      CHECK(run_heuristic(bm, alg).revenue <= bopt);
    }
  }
}

TEST_CASE("insertion never does worse than appending at the end") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_tiny(seed, ModelKind::kMnpp, 4, 6);
    const PriceLadder base{2, 0};
    PriceLadder appended = base;
    appended.push_back(3);
    const Revenue tail = ladder_revenue(inst, allocate(inst, appended), appended);
    CHECK(insert(inst, base, 3).dp.revenue >= tail);
  }
}

TEST_CASE("DP call counts") {
  const Instance inst = random_tiny(3, ModelKind::kMnpp, 10, 20, 0.5);
  const int n = 10;
  const std::size_t selection_bound = n * (n + 1) / 2;
  CHECK(run_heuristic(inst, Algorithm::kOrderI).dp_calls == selection_bound);
  CHECK(run_heuristic(inst, Algorithm::kFi).dp_calls <= selection_bound * selection_bound);
  CHECK(run_heuristic(inst, Algorithm::kGreedy).dp_calls <= selection_bound + 1);
}

TEST_CASE("an expired deadline aborts a heuristic") {
  const Instance inst = random_tiny(3, ModelKind::kMnpp, 5, 10);
  HeuristicOptions opt;
  opt.deadline = Deadline::after(std::chrono::duration<double>(-1.0));
  CHECK_THROWS_AS(full_insertion(inst, opt), TimeoutError);
}
