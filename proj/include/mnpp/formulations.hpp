#pragma once

#include <span>
#include <vector>

#include "mnpp/linear_model.hpp"
#include "mnpp/model.hpp"
#include "mnpp/solver_adapter.hpp"

namespace mnpp {

enum class Formulation { kIp1, kIp2 };

/// Assignment formulation with continuous prices and match/war selector
/// binaries. MNPP only; throws InputError for logit instances.
///
/// Variables, in order: x_f per outlet, then per demand x_e, mu_e_f (f in O_e),
/// y_e (match revenue), z_e (war revenue), w1..w5 selectors. Big-M is the grid
/// maximum plus one.
LinearModel build_ip1(const Instance& inst);

struct Ip2Options {
  /// Objective coefficient D * b(m); false drops the price factor (volume
  /// objective) for comparison runs.
  bool price_factor = true;
};

/// Price-index formulation: v_f_m picks one grid price per outlet, y_e_f_m
/// serves e from f at b(m). y variables exist only where the captured share
/// is non-negligible (relative share above 1e-12).
LinearModel build_ip2(const Instance& inst, const Ip2Options& options = {});

LinearModel build_formulation(const Instance& inst, Formulation which);

/// Per-outlet price read from a (possibly fractional) solution: x_f for IP1,
/// sum_m b(m) v_f_m for IP2.
std::vector<double> fractional_prices(const Instance& inst, const LinearModel& model,
                                      std::span<const double> values);

/// Grid price vector from an integral solution (nearest grid price for IP1,
/// largest v_f_m for IP2).
std::vector<Money> decode_prices(const Instance& inst, const LinearModel& model,
                                 std::span<const double> values);

/// Outlets sorted by ascending fractional price, ties by id.
std::vector<OutletId> order_by_price(std::span<const double> prices);

/// Solves the LP relaxation and orders outlets by their fractional price.
/// Throws SolverError if the relaxation is not solved to optimality.
std::vector<OutletId> relax_order(const Instance& inst, Formulation which,
                                  const SolverAdapter& adapter, double time_limit_seconds);

}  // namespace mnpp
