#pragma once

// Small hand-checkable instances shared by the unit tests.

#include <vector>

#include "mnpp/instgen.hpp"
#include "mnpp/model.hpp"

namespace fixtures {

using namespace mnpp;

inline Money money(double v) { return Money::from_double(v); }

inline std::vector<Money> prices(std::initializer_list<double> values) {
  std::vector<Money> out;
  for (double v : values) out.push_back(money(v));
  return out;
}

/// 0, 1, ..., 25.
inline PriceGrid integer_grid() { return PriceGrid::uniform(money(0), money(25), money(1)); }

inline DemandNode node(double c, double d = 100, double beta = 0.5, double gamma = 1.0) {
  DemandNode n;
  n.competitor_price = money(c);
  n.volume = Volume::from_double(d);
  n.match_share = Share::from_double(beta);
  n.war_share = Share::from_double(gamma);
  return n;
}

inline Edge edge(DemandId e, OutletId f, double a_hat = 0, double b_hat = 0, double a_bar = 0,
                 double b_bar = 0) {
  return Edge{e, f, a_hat, b_hat, a_bar, b_bar};
}

/// Two outlets, two demands, c = (10, 8); e0 sees both outlets, e1 only f1.
inline Instance shared_pair(ModelKind model = ModelKind::kMnpp) {
  return Instance(2, {node(10), node(8)}, {edge(0, 0), edge(0, 1), edge(1, 1)}, integer_grid(),
                  model);
}

/// Same nodes, but each demand sees exactly one outlet: e0-f0, e1-f1.
inline Instance disjoint_pair(ModelKind model = ModelKind::kMnpp) {
  return Instance(2, {node(10), node(8)}, {edge(0, 0), edge(1, 1)}, integer_grid(), model);
}

/// One outlet, one demand with c = 10.
inline Instance single_demand() {
  return Instance(1, {node(10)}, {edge(0, 0)}, integer_grid(), ModelKind::kMnpp);
}

/// Seeded random instance on an 11-price grid (0, 2.5, ..., 25).
inline Instance random_tiny(std::uint64_t seed, ModelKind model, int n_outlets, int n_demands,
                            double density = 0.6) {
  GenParams p;
  p.seed = seed;
  p.model = model;
  p.n_outlets = n_outlets;
  p.n_demands = n_demands;
  p.density = density;
  p.grid.step = money(2.5);
  p.sample_logit = true;
  return generate(p);
}

}  // namespace fixtures
