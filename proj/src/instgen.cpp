#include "mnpp/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mnpp/errors.hpp"
#include "mnpp/rng.hpp"

namespace mnpp {

void validate(const GenParams& p) {
  if (p.n_outlets < 1) throw InputError("generator needs at least one outlet");
  if (p.n_demands < 1) throw InputError("generator needs at least one demand node");
  if (!(p.density > 0.0 && p.density <= 1.0)) throw InputError("density must lie in (0, 1]");
  auto check = [](const Range& r, const char* what) {
    if (!(r.lo < r.hi)) throw InputError(std::string(what) + " range is degenerate");
  };
  check(p.competitor_price, "competitor price");
  check(p.volume, "demand volume");
  if (p.model == ModelKind::kBmnpp || p.sample_logit) {
    check(p.intercept, "logit intercept");
    check(p.slope, "logit slope");
    if (p.slope.lo < 0.0) throw InputError("logit slope range must be non-negative");
  }
  if (p.volume.lo <= 0.0) throw InputError("demand volume range must be positive");
  if (!(p.grid.min < p.grid.max)) throw InputError("grid range is degenerate");
}

std::size_t edge_count(int n_outlets, int n_demands, double density) {
  const double exact = density * n_outlets * n_demands;
  // nudge so that products like 0.1 * 75 = 7.5000000000000009 and 7.4999999 round alike
  return static_cast<std::size_t>(std::floor(exact + 0.5 + 1e-9));
}

Instance generate(const GenParams& params) {
  validate(params);
  const auto n_o = static_cast<std::size_t>(params.n_outlets);
  const auto n_n = static_cast<std::size_t>(params.n_demands);
  const std::size_t k = std::min(edge_count(params.n_outlets, params.n_demands, params.density),
                                 n_o * n_n);

  Xoshiro256 graph_rng(params.graph_seed.value_or(params.seed));
  std::vector<std::size_t> pairs(n_o * n_n);
  std::iota(pairs.begin(), pairs.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + graph_rng.below(pairs.size() - i);
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(k);
  std::sort(pairs.begin(), pairs.end());

  Xoshiro256 rng(params.seed);
  std::vector<DemandNode> demands(n_n);
  for (auto& node : demands) {
    node.competitor_price = Money::rounded(rng.uniform(params.competitor_price.lo,
                                                       params.competitor_price.hi));
    node.volume = Volume::rounded(rng.uniform(params.volume.lo, params.volume.hi));
    if (node.volume <= Volume{}) node.volume = Volume::from_units(1);
    node.match_share = params.beta;
    node.war_share = params.gamma;
  }

  const bool logit = params.model == ModelKind::kBmnpp || params.sample_logit;
  std::vector<Edge> edges;
  edges.reserve(k);
  for (std::size_t idx : pairs) {
    Edge edge;
    edge.demand = static_cast<DemandId>(idx / n_o);
    edge.outlet = static_cast<OutletId>(idx % n_o);
    if (logit) {
      edge.war_intercept = rng.uniform(params.intercept.lo, params.intercept.hi);
      edge.war_slope = rng.uniform(params.slope.lo, params.slope.hi);
      edge.match_intercept = rng.uniform(params.intercept.lo, params.intercept.hi);
      edge.match_slope = rng.uniform(params.slope.lo, params.slope.hi);
    }
    edges.push_back(edge);
  }

  return Instance(params.n_outlets, std::move(demands), std::move(edges), params.grid.build(),
                  params.model, params.pi, params.seed);
}

std::vector<SuiteEntry> suite_params(std::uint64_t master_seed, ModelKind model,
                                     const std::vector<int>& outlets,
                                     const std::vector<int>& demands,
                                     const std::vector<double>& densities, int draws,
                                     const GenParams& base) {
  std::vector<SuiteEntry> out;
  std::size_t graph = 0;
  for (int n_o : outlets) {
    for (int n_n : demands) {
      for (double p : densities) {
        const std::uint64_t graph_seed = derive_seed(master_seed, graph, ~std::uint64_t{0});
        for (int d = 0; d < draws; ++d) {
          SuiteEntry entry;
          entry.graph_index = graph;
          entry.draw_index = static_cast<std::size_t>(d);
          entry.params = base;
          entry.params.n_outlets = n_o;
          entry.params.n_demands = n_n;
          entry.params.density = p;
          entry.params.model = model;
          entry.params.graph_seed = graph_seed;
          entry.params.seed = derive_seed(master_seed, graph, static_cast<std::uint64_t>(d));
          out.push_back(entry);
        }
        ++graph;
      }
    }
  }
  return out;
}

std::vector<SuiteEntry> full_design_params(std::uint64_t master_seed, ModelKind model) {
  return suite_params(master_seed, model, {5, 10, 15}, {15, 30, 50}, {0.9, 0.75, 0.5, 0.25, 0.1},
                      10);
}

}  // namespace mnpp
