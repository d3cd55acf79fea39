#include "mnpp/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mnpp/errors.hpp"

namespace mnpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinShare = 1e-12;

std::string id(const char* prefix, int v) { return prefix + std::to_string(v); }

// Demand volume times a capture fraction, in plain volume units.
double captured_volume(const DemandNode& node, Share fraction) {
  return node.volume.value() * fraction.value();
}

}  // namespace

LinearModel build_ip1(const Instance& inst) {
  if (inst.model() != ModelKind::kMnpp) {
    throw InputError("IP1 encodes fixed match/war fractions and requires an MNPP instance");
  }
  const auto& grid = inst.grid();
  const double big_m = grid.max().value() + 1.0;
  const double lo = grid.min().value();
  const double hi = grid.max().value();

  LinearModel model("ip1");
  std::vector<std::size_t> x_f(inst.n_outlets());
  for (OutletId f = 0; f < inst.n_outlets(); ++f) {
    x_f[f] = model.add_variable(id("x_f", f), lo, hi, VarKind::kContinuous, {"x_outlet", -1, f});
  }

  struct DemandVars {
    std::size_t x, y, z;
    std::size_t w[5];
    std::vector<std::pair<OutletId, std::size_t>> mu;
  };
  std::vector<DemandVars> dv(inst.n_demands());
  for (DemandId e = 0; e < inst.n_demands(); ++e) {
    const std::string tag = id("_e", e);
    auto& v = dv[e];
    v.x = model.add_variable("x" + tag, lo, hi, VarKind::kContinuous, {"x_demand", e});
    for (auto idx : inst.demand_edges(e)) {
      const OutletId f = inst.edge(idx).outlet;
      v.mu.emplace_back(f, model.add_variable("mu" + tag + id("_f", f), 0, 1, VarKind::kBinary,
                                              {"mu", e, f}));
    }
    v.y = model.add_variable("y" + tag, 0, kInf, VarKind::kContinuous, {"y", e});
    v.z = model.add_variable("z" + tag, 0, kInf, VarKind::kContinuous, {"z", e});
    const bool war_possible = inst.war_ceiling(e).has_value();
    for (int k = 0; k < 5; ++k) {
      const double ub = (k == 4 && !war_possible) ? 0.0 : 1.0;
      v.w[k] = model.add_variable("w" + std::to_string(k + 1) + tag, 0, ub, VarKind::kBinary,
                                  {"w", e, -1, -1, k + 1});
    }
  }

  for (DemandId e = 0; e < inst.n_demands(); ++e) {
    const auto& node = inst.demand(e);
    const auto& v = dv[e];
    const std::string tag = id("_e", e);
    const double c = node.competitor_price.value();
    const double match_vol = captured_volume(node, node.match_share);
    const double war_vol = captured_volume(node, node.war_share);

    std::vector<Term> assigned;
    for (const auto& [f, mu] : v.mu) assigned.push_back({mu, 1.0});
    if (!assigned.empty()) model.add_constraint("assign" + tag, assigned, Sense::kLe, 1.0);

    for (const auto& [f, mu] : v.mu) {
      const std::string ft = tag + id("_f", f);
      model.add_constraint("link_a" + ft, {{v.x, 1.0}, {x_f[f], -1.0}, {mu, big_m}}, Sense::kLe, big_m);
      model.add_constraint("link_b" + ft, {{x_f[f], 1.0}, {v.x, -1.0}, {mu, big_m}}, Sense::kLe, big_m);
      for (const auto& [g, mu_g] : v.mu) {
        if (g == f) continue;
        model.add_constraint("cheap" + ft + id("_g", g), {{x_f[f], 1.0}, {x_f[g], -1.0}, {mu, big_m}},
                             Sense::kLe, big_m);
      }
    }

    // match selector: w3 = 1 only when x_e = c_e and e is served
    model.add_constraint("below" + tag, {{v.x, -1.0}, {v.w[0], -big_m}}, Sense::kLe, -c);
    model.add_constraint("above" + tag, {{v.x, 1.0}, {v.w[1], -big_m}}, Sense::kLe, c);
    model.add_constraint("ymatch" + tag, {{v.y, 1.0}, {v.w[2], -match_vol * c}}, Sense::kLe, 0.0);
    model.add_constraint("yprice" + tag, {{v.y, 1.0}, {v.x, -match_vol}}, Sense::kLe, 0.0);
    {
      std::vector<Term> gate{{v.w[2], 1.0}};
      for (const auto& t : assigned) gate.push_back({t.var, -1.0});
      model.add_constraint("gate3" + tag, gate, Sense::kLe, 0.0);
    }
    model.add_constraint("pick3" + tag, {{v.w[0], 1.0}, {v.w[1], 1.0}, {v.w[2], 1.0}}, Sense::kEq, 1.0);

    // war selector: w5 = 1 only when x_e <= c_e^- and e is served
    if (auto ceiling = inst.war_ceiling(e)) {
      const double c_minus = inst.grid()[*ceiling].value();
      model.add_constraint("warcap" + tag, {{v.x, 1.0}, {v.w[3], -big_m}}, Sense::kLe, c_minus);
      model.add_constraint("zwar" + tag, {{v.z, 1.0}, {v.w[4], -war_vol * c_minus}}, Sense::kLe, 0.0);
    } else {
      model.add_constraint("zwar" + tag, {{v.z, 1.0}}, Sense::kLe, 0.0);
    }
    model.add_constraint("zprice" + tag, {{v.z, 1.0}, {v.x, -war_vol}}, Sense::kLe, 0.0);
    {
      std::vector<Term> gate{{v.w[4], 1.0}};
      for (const auto& t : assigned) gate.push_back({t.var, -1.0});
      model.add_constraint("gate5" + tag, gate, Sense::kLe, 0.0);
    }
    model.add_constraint("pick2" + tag, {{v.w[3], 1.0}, {v.w[4], 1.0}}, Sense::kEq, 1.0);
  }

  if (inst.pi()) {
    const double pi = inst.pi()->value();
    std::vector<std::size_t> prices(x_f.begin(), x_f.end());
    for (const auto& v : dv) prices.push_back(v.x);
    for (std::size_t a = 0; a < prices.size(); ++a) {
      for (std::size_t b = a + 1; b < prices.size(); ++b) {
        const auto& na = model.variable(prices[a]).name;
        const auto& nb = model.variable(prices[b]).name;
        model.add_constraint("diff_" + na + "_" + nb, {{prices[a], 1.0}, {prices[b], -1.0}}, Sense::kLe, pi);
        model.add_constraint("diff_" + nb + "_" + na, {{prices[b], 1.0}, {prices[a], -1.0}}, Sense::kLe, pi);
      }
    }
  }

  for (const auto& v : dv) {
    model.add_objective(v.y, 1.0);
    model.add_objective(v.z, 1.0);
  }
  return model;
}

LinearModel build_ip2(const Instance& inst, const Ip2Options& options) {
  const auto& grid = inst.grid();
  const std::size_t n_m = grid.size();
  LinearModel model("ip2");

  // v[f][m]
  std::vector<std::vector<std::size_t>> v(inst.n_outlets(), std::vector<std::size_t>(n_m));
  for (OutletId f = 0; f < inst.n_outlets(); ++f) {
    for (std::size_t m = 0; m < n_m; ++m) {
      v[f][m] = model.add_variable(id("v_f", f) + id("_m", static_cast<int>(m)), 0, 1,
                                   VarKind::kBinary, {"v", -1, f, static_cast<int>(m)});
    }
  }

  struct Serve {
    DemandId e;
    OutletId f;
    std::size_t m;
    std::size_t var;
  };
  std::vector<Serve> serves;
  for (DemandId e = 0; e < inst.n_demands(); ++e) {
    const double full = static_cast<double>(inst.demand(e).volume.units()) * Share::kScale;
    for (auto idx : inst.demand_edges(e)) {
      const OutletId f = inst.edge(idx).outlet;
      for (std::size_t m = 0; m < n_m; ++m) {
        const double units = inst.edge_demand(idx, m).units;
        if (units <= kMinShare * full) continue;
        const std::size_t var = model.add_variable(
            id("y_e", e) + id("_f", f) + id("_m", static_cast<int>(m)), 0, 1, VarKind::kBinary,
            {"y_assign", e, f, static_cast<int>(m)});
        serves.push_back({e, f, m, var});
        const double volume = units / (static_cast<double>(Volume::kScale) * Share::kScale);
        model.add_objective(var, options.price_factor ? volume * grid[m].value() : volume);
      }
    }
  }

  for (DemandId e = 0; e < inst.n_demands(); ++e) {
    std::vector<Term> terms;
    for (const auto& s : serves) {
      if (s.e == e) terms.push_back({s.var, 1.0});
    }
    if (!terms.empty()) model.add_constraint(id("assign_e", e), terms, Sense::kLe, 1.0);
  }
  for (OutletId f = 0; f < inst.n_outlets(); ++f) {
    std::vector<Term> terms;
    for (std::size_t m = 0; m < n_m; ++m) terms.push_back({v[f][m], 1.0});
    model.add_constraint(id("price_f", f), terms, Sense::kEq, 1.0);
  }
  for (const auto& s : serves) {
    const auto edges = inst.demand_edges(s.e);
    const double n_links = static_cast<double>(edges.size());
    const std::string tag = id("_e", s.e) + id("_f", s.f) + id("_m", static_cast<int>(s.m));
    // served at b(m) only if no other connected outlet is strictly cheaper
    std::vector<Term> terms{{v[s.f][s.m], 1.0}};
    for (auto idx : edges) {
      const OutletId g = inst.edge(idx).outlet;
      if (g == s.f) continue;
      for (std::size_t k = 0; k < s.m; ++k) terms.push_back({v[g][k], 1.0});
    }
    terms.push_back({s.var, n_links - 1.0});
    model.add_constraint("cheap" + tag, terms, Sense::kLe, n_links);
    model.add_constraint("uses" + tag, {{s.var, 1.0}, {v[s.f][s.m], -1.0}}, Sense::kLe, 0.0);
  }
  if (inst.pi()) {
    for (std::size_t m = 0; m < n_m; ++m) {
      for (std::size_t k = 0; k < n_m; ++k) {
        if (!(grid[k] > grid[m] + *inst.pi())) continue;
        for (OutletId f = 0; f < inst.n_outlets(); ++f) {
          for (OutletId j = 0; j < inst.n_outlets(); ++j) {
            if (j == f) continue;
            model.add_constraint("spread" + id("_f", f) + id("_m", static_cast<int>(m)) +
                                     id("_f", j) + id("_m", static_cast<int>(k)),
                                 {{v[f][m], 1.0}, {v[j][k], 1.0}}, Sense::kLe, 1.0);
          }
        }
      }
    }
  }
  return model;
}

LinearModel build_formulation(const Instance& inst, Formulation which) {
  return which == Formulation::kIp1 ? build_ip1(inst) : build_ip2(inst);
}

std::vector<double> fractional_prices(const Instance& inst, const LinearModel& model,
                                      std::span<const double> values) {
  std::vector<double> prices(inst.n_outlets(), 0.0);
  for (std::size_t i = 0; i < model.variables().size(); ++i) {
    const auto& role = model.role(i);
    if (role.family == "x_outlet") {
      prices[role.outlet] = values[i];
    } else if (role.family == "v") {
      prices[role.outlet] += inst.grid()[role.price_index].value() * values[i];
    }
  }
  return prices;
}

std::vector<Money> decode_prices(const Instance& inst, const LinearModel& model,
                                 std::span<const double> values) {
  const auto& grid = inst.grid();
  std::vector<Money> prices(inst.n_outlets(), grid.max());
  std::vector<double> best(inst.n_outlets(), -1.0);
  for (std::size_t i = 0; i < model.variables().size(); ++i) {
    const auto& role = model.role(i);
    if (role.family == "x_outlet") {
      prices[role.outlet] = grid[grid.snap_index(Money::rounded(values[i]))];
    } else if (role.family == "v") {
      if (values[i] > best[role.outlet]) {
        best[role.outlet] = values[i];
        prices[role.outlet] = grid[role.price_index];
      }
    }
  }
  return prices;
}

std::vector<OutletId> order_by_price(std::span<const double> prices) {
  std::vector<OutletId> order(prices.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](OutletId a, OutletId b) { return prices[a] < prices[b]; });
  return order;
}

std::vector<OutletId> relax_order(const Instance& inst, Formulation which,
                                  const SolverAdapter& adapter, double time_limit_seconds) {
  const LinearModel lp = relax(build_formulation(inst, which));
  const SolveResult res = solve_external(lp, adapter, time_limit_seconds);
  if (res.status != SolveStatus::kOptimal) {
    throw SolverError("LP relaxation not solved (" + std::string(to_string(res.status)) +
                      "): " + res.diagnostic);
  }
  return order_by_price(fractional_prices(inst, lp, res.values));
}

}  // namespace mnpp
