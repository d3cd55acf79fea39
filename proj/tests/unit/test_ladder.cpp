#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>

#include "fixtures.hpp"
#include "mnpp/ladder.hpp"
#include "mnpp/rng.hpp"

using namespace mnpp;
using namespace fixtures;

namespace {

// Independent oracle: best revenue over every non-decreasing assignment of
// grid indices to the ladder, with the allocation held fixed.
double enumerate_ladder(const Instance& inst, const PriceLadder& ladder, const Allocation& alloc,
                        std::optional<Money> pi = std::nullopt) {
  const std::size_t n_m = inst.grid().size();
  std::vector<std::size_t> idx(ladder.size(), 0);
  double best = 0;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t lo) {
    if (pos == ladder.size()) {
      if (pi && !idx.empty() && inst.grid()[idx.back()] - inst.grid()[idx.front()] > *pi) return;
      double r = 0;
      for (int e = 0; e < inst.n_demands(); ++e) {
        const auto f = alloc.outlet_of(e);
        if (!f) continue;
        const auto it = std::find(ladder.begin(), ladder.end(), *f);
        const std::size_t m = idx[static_cast<std::size_t>(it - ladder.begin())];
        r += inst.edge_revenue(*inst.find_edge(e, *f), m).raw();
      }
      best = std::max(best, r);
      return;
    }
    for (std::size_t m = lo; m < n_m; ++m) {
      idx[pos] = m;
      rec(pos + 1, m);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("allocate is first-fit along the ladder") {
  const Instance inst = shared_pair();
  const Allocation a = allocate(inst, PriceLadder{1, 0});
  CHECK(a.outlet_of(0) == 1);
  CHECK(a.outlet_of(1) == 1);

  const Allocation partial = allocate(inst, PriceLadder{0});
  CHECK(partial.outlet_of(0) == 0);
  CHECK_FALSE(partial.is_assigned(1));

  const Instance lonely(1, {node(10)}, {}, integer_grid(), ModelKind::kMnpp);
  CHECK_FALSE(allocate(lonely, PriceLadder{0}).is_assigned(0));
}

TEST_CASE("dp_prices: single demand prefers war at 9") {
  const Instance inst = single_demand();
  const PriceLadder t{0};
  const DpResult r = dp_prices(inst, t, allocate(inst, t));
  CHECK(r.revenue.value() == 900.0);
  CHECK(inst.grid()[r.price_index[0]] == money(9));
}

TEST_CASE("dp_prices: empty allocation prices everything at the top") {
  const Instance inst = shared_pair();
  const PriceLadder t{0, 1};
  const DpResult r = dp_prices(inst, t, Allocation(2));
  CHECK(r.revenue.raw() == 0);
  CHECK(r.price_index == std::vector<std::size_t>{25, 25});
  CHECK(ladder_revenue(inst, Allocation(2), t).raw() == 0);
}

TEST_CASE("dp_prices: disjoint pair along [f1, f0]") {
  const Instance inst = disjoint_pair();
  const PriceLadder t{1, 0};
  const DpResult r = dp_prices(inst, t, allocate(inst, t));
  CHECK(r.revenue.value() == 1600.0);
  CHECK(inst.grid()[r.price_index[0]] == money(7));
  CHECK(inst.grid()[r.price_index[1]] == money(9));
  CHECK(ladder_revenue(inst, allocate(inst, t), t).value() == 1600.0);
  const auto full = ladder_prices(inst, t, r);
  CHECK(full == prices({9, 7}));
}

TEST_CASE("dp_prices matches enumeration over non-decreasing tuples") {
  Xoshiro256 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const auto model = trial % 2 ? ModelKind::kBmnpp : ModelKind::kMnpp;
    GenParams p;
    p.seed = 1000 + trial;
    p.model = model;
    p.n_outlets = 3;
    p.n_demands = 5;
    p.density = 0.7;
    p.grid.step = money(2.5);
    p.grid.max = money(17.5);  // 8 prices
    p.competitor_price = {0, 17.5};
    const Instance inst = generate(p);
    PriceLadder t{0, 1, 2};
    for (std::size_t i = 2; i > 0; --i) std::swap(t[i], t[rng.below(i + 1)]);
    t.resize(1 + rng.below(3));
    const Allocation a = allocate(inst, t);
    const DpResult r = dp_prices(inst, t, a);
    CHECK(r.revenue.raw() == enumerate_ladder(inst, t, a));
    for (std::size_t i = 1; i < r.price_index.size(); ++i) {
      CHECK(r.price_index[i - 1] <= r.price_index[i]);
    }
  }
}

TEST_CASE("dp_prices with the spread window respects pi and stays optimal") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = random_tiny(seed, ModelKind::kMnpp, 3, 5).with_pi(money(5));
    const PriceLadder t{2, 0, 1};
    const Allocation a = allocate(inst, t);
    DpOptions opt;
    opt.enforce_pi = true;
    const DpResult r = dp_prices(inst, t, a, opt);
    const Money spread = inst.grid()[r.price_index.back()] - inst.grid()[r.price_index.front()];
    CHECK(spread <= money(5));
    CHECK(r.revenue.raw() == enumerate_ladder(inst, t, a, money(5)));
  }
}

TEST_CASE("appending an outlet never lowers the MNPP ladder optimum") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = random_tiny(seed, ModelKind::kMnpp, 3, 6);
    PriceLadder t{1};
    Revenue prev = ladder_revenue(inst, allocate(inst, t), t);
    for (OutletId f : {2, 0}) {
      t.push_back(f);
      const Revenue now = ladder_revenue(inst, allocate(inst, t), t);
      CHECK(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("index-order ties make the DP value equal the market revenue") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = random_tiny(seed, ModelKind::kBmnpp, 3, 5);
    const PriceLadder t{2, 0, 1};
    DpOptions opt;
    opt.ties = LadderTies::kIndexOrder;
    const DpResult r = dp_prices(inst, t, allocate(inst, t), opt);
    const auto p = ladder_prices(inst, t, r);
    CHECK(evaluate_prices(inst, p).revenue.raw() == doctest::Approx(r.revenue.raw()));
  }
}
