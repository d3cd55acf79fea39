#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "mnpp/errors.hpp"
#include "mnpp/model.hpp"

using namespace mnpp;
using namespace fixtures;

TEST_CASE("fixed point money is exact and rejects excess precision") {
  CHECK(Money::from_double(7.3).units() == 730);
  CHECK(Money::from_double(0.1) + Money::from_double(0.2) == Money::from_double(0.3));
  CHECK_THROWS_AS(Money::from_double(1.005), InputError);
  CHECK(Money::rounded(1.006).units() == 101);
  CHECK(Share::from_double(0.5).units() == 5000);
}

TEST_CASE("price_below") {
  const PriceGrid grid = integer_grid();
  CHECK(price_below(grid, money(10)) == money(9));
  CHECK_FALSE(price_below(grid, money(0)).has_value());
  const PriceGrid half = PriceGrid::uniform(money(0), money(25), money(0.5));
  CHECK(price_below(half, money(7.3)) == money(7.0));
  CHECK(price_below(half, money(7.5)) == money(7.0));
}

TEST_CASE("price grid construction and snapping") {
  CHECK_THROWS_AS(PriceGrid({}), InputError);
  CHECK_THROWS_AS(PriceGrid({money(1), money(1)}), InputError);
  CHECK_THROWS_AS(PriceGrid({money(2), money(1)}), InputError);
  const PriceGrid g = PriceGrid::uniform(money(0), money(10), money(2.5));
  CHECK(g.size() == 5);
  CHECK(g.snap_index(money(1.25)) == 0);  // equidistant: snaps down
  CHECK(g.snap_index(money(1.26)) == 1);
  CHECK(g.snap_index(money(99)) == 4);
  CHECK(g.index_of(money(7.5)) == 3u);
  CHECK_FALSE(g.index_of(money(7.4)).has_value());
}

TEST_CASE("demand_mnpp branches") {
  const PriceGrid grid = integer_grid();
  const DemandNode n = node(10, 100, 0.5, 1.0);
  // units are volume hundredths times share ten-thousandths
  const double unit = 100.0 * 10000.0;
  CHECK(demand_mnpp(n, money(10), grid).units / unit == doctest::Approx(50));
  CHECK(demand_mnpp(n, money(10), grid).kind == CaptureKind::kMatch);
  CHECK(demand_mnpp(n, money(9), grid).units / unit == doctest::Approx(100));
  CHECK(demand_mnpp(n, money(9), grid).kind == CaptureKind::kWar);
  CHECK(demand_mnpp(n, money(11), grid).units == 0);
  CHECK(demand_mnpp(n, money(11), grid).kind == CaptureKind::kNone);
}

TEST_CASE("demand_bmnpp branches") {
  const PriceGrid grid = integer_grid();
  const double unit = 100.0 * 10000.0;
  const DemandNode n = node(20);
  CHECK(demand_bmnpp(n, edge(0, 0, 300, 20), money(15), grid).units / unit ==
        doctest::Approx(50.0));
  CHECK(demand_bmnpp(n, edge(0, 0, 300, 20), money(21), grid).units == 0);
  const DemandNode ten = node(10);
  CHECK(demand_bmnpp(ten, edge(0, 0), money(5), grid).units / unit == doctest::Approx(50.0));
  // match branch only at p == c, using the match coefficients at c
  const Demand m = demand_bmnpp(ten, edge(0, 0, 0, 0, 10, 1), money(10), grid);
  CHECK(m.kind == CaptureKind::kMatch);
  CHECK(m.units / unit == doctest::Approx(50.0));
}

TEST_CASE("basket floor limits the war branch") {
  const PriceGrid grid = integer_grid();
  DemandNode n = node(10);
  n.basket_floor = money(5);
  CHECK(demand_bmnpp(n, edge(0, 0), money(4), grid).units == 0);
  CHECK(demand_bmnpp(n, edge(0, 0), money(5), grid).units > 0);
}

TEST_CASE("logit share saturates without overflow") {
  CHECK(logit_share(0.0) == doctest::Approx(0.5));
  CHECK(logit_share(1e6) == doctest::Approx(1.0));
  CHECK(logit_share(-1e6) == doctest::Approx(0.0));
  CHECK(std::isfinite(logit_share(1e300)));
  CHECK(logit_share(-1e6) >= 0.0);
}

TEST_CASE("match and war never coincide") {
  const PriceGrid grid = integer_grid();
  const DemandNode n = node(10);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const Demand d = demand_mnpp(n, grid[m], grid);
    if (grid[m] > money(10)) CHECK(d.units == 0);
    CHECK(d.units >= 0);
  }
}

TEST_CASE("evaluate_prices on the shared pair") {
  const Instance inst = shared_pair();
  const Evaluation ev = evaluate_prices(inst, prices({25, 7}));
  CHECK(ev.revenue.value() == 1400.0);
  CHECK(ev.allocation.outlet_of(0) == 1);
  CHECK(ev.allocation.outlet_of(1) == 1);
  CHECK(ev.labels[0] == CaptureKind::kWar);
}

TEST_CASE("evaluate_prices: prices above every budget earn nothing") {
  const Instance inst = shared_pair();
  const Evaluation ev = evaluate_prices(inst, prices({25, 25}));
  CHECK(ev.revenue.raw() == 0);
  CHECK(ev.allocation.assigned_count() == 0);
}

TEST_CASE("evaluate_prices: equal prices go to the lower index") {
  const Instance inst = shared_pair();
  const Evaluation ev = evaluate_prices(inst, prices({8, 8}));
  CHECK(ev.allocation.outlet_of(0) == 0);
  CHECK(ev.allocation.outlet_of(1) == 1);
  CHECK(ev.labels[1] == CaptureKind::kMatch);
}

TEST_CASE("evaluate_prices rejects off-grid and wrong-size price vectors") {
  const Instance inst = shared_pair();
  CHECK_THROWS_AS(evaluate_prices(inst, prices({7.5, 7})), InputError);
  CHECK_THROWS_AS(evaluate_prices(inst, prices({7})), InputError);
}

TEST_CASE("the shared pair optimum is 1400 over all 26^2 price pairs") {
  const Instance inst = shared_pair();
  double best = 0;
  for (int a = 0; a <= 25; ++a) {
    for (int b = 0; b <= 25; ++b) {
      best = std::max(best, evaluate_prices(inst, prices({double(a), double(b)})).revenue.value());
    }
  }
  CHECK(best == 1400.0);
}

TEST_CASE("instance validation") {
  const PriceGrid g = integer_grid();
  CHECK_THROWS_AS(Instance(1, {node(10, 100, 0.0)}, {}, g, ModelKind::kMnpp), InputError);
  CHECK_THROWS_AS(Instance(1, {node(10, 100, 0.6, 0.5)}, {}, g, ModelKind::kMnpp), InputError);
  CHECK_THROWS_AS(Instance(1, {node(10, 0)}, {}, g, ModelKind::kMnpp), InputError);
  CHECK_THROWS_AS(Instance(1, {node(10)}, {edge(0, 1)}, g, ModelKind::kMnpp), InputError);
  CHECK_THROWS_AS(Instance(1, {node(10)}, {edge(0, 0), edge(0, 0)}, g, ModelKind::kMnpp),
                  InputError);
  CHECK_THROWS_AS(Instance(1, {node(10)}, {edge(0, 0, 0, -1)}, g, ModelKind::kBmnpp), InputError);
}

TEST_CASE("competitor prices snap to the grid, ties down") {
  const PriceGrid g = PriceGrid::uniform(money(0), money(10), money(2));
  const Instance inst(1, {node(5), node(5.01)}, {edge(0, 0)}, g, ModelKind::kMnpp);
  CHECK(inst.demand(0).competitor_price == money(4));
  CHECK(inst.demand(1).competitor_price == money(6));
  CHECK(inst.demand(0).basket_floor == money(0));
}

TEST_CASE("revenue is invariant under demand order and identity override") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_tiny(seed, ModelKind::kMnpp, 3, 5);
    std::vector<DemandNode> nodes(inst.demands().begin(), inst.demands().end());
    std::vector<Edge> edges(inst.edges().begin(), inst.edges().end());
    const int n = inst.n_demands();
    std::reverse(nodes.begin(), nodes.end());
    for (auto& e : edges) e.demand = n - 1 - e.demand;
    const Instance flipped(inst.n_outlets(), nodes, edges, inst.grid(), inst.model());
    const std::vector<Money> p = prices({5, 7.5, 10});
    const Revenue r = evaluate_prices(inst, p).revenue;
    CHECK(r == evaluate_prices(flipped, p).revenue);
    CHECK(r == evaluate_prices(inst, p, ModelKind::kMnpp).revenue);
  }
}
