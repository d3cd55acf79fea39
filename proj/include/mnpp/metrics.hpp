#pragma once

#include <optional>
#include <span>

#include "mnpp/model.hpp"

namespace mnpp {

/// Percentage gap to the optimum, 100 * (opt - h) / opt; nullopt when opt <= 0.
///
/// Positive for sub-optimal heuristics (the sign convention of the reported gaps).
std::optional<double> opt_gap(Revenue heuristic, Revenue optimum);
std::optional<double> opt_gap(double heuristic, double optimum);

/// Percentage gain over single-price, 100 * (h - sp) / sp; nullopt when sp == 0.
std::optional<double> gain_over_sp(Revenue heuristic, Revenue single_price);
std::optional<double> gain_over_sp(double heuristic, double single_price);

/// Split of captured demand and revenue between price matching and price war.
struct PmAccounting {
  int pm_count = 0;  ///< demand nodes served at their competitor price
  int pw_count = 0;
  double d_pm = 0.0;  ///< volume units
  double d_pw = 0.0;
  double r_pm = 0.0;  ///< currency
  double r_pw = 0.0;
  /// Percent shares; nullopt when the respective total is zero.
  std::optional<double> d_pct_pm() const;
  std::optional<double> d_pct_pw() const;
  std::optional<double> r_pct_pm() const;
  std::optional<double> r_pct_pw() const;
};

/// Classifies each served demand node by how its serving outlet captured it.
PmAccounting pm_accounting(const Instance& inst, std::span<const Money> prices,
                           std::optional<ModelKind> model = std::nullopt);

/// Revenue lost by pricing with MNPP-optimal prices in a logit world:
/// 100 * (opt_bmnpp - r_bmnpp(mnpp_prices)) / opt_bmnpp.
std::optional<double> cross_model_gap(const Instance& inst, std::span<const Money> mnpp_prices,
                                      Revenue bmnpp_optimum);

}  // namespace mnpp
