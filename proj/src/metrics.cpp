#include "mnpp/metrics.hpp"

namespace mnpp {

namespace {

constexpr double kUnitsPerVolume =
    static_cast<double>(Volume::kScale) * static_cast<double>(Share::kScale);

std::optional<double> percent(double part, double whole) {
  if (whole <= 0.0) return std::nullopt;
  return 100.0 * part / whole;
}

}  // namespace

std::optional<double> opt_gap(double heuristic, double optimum) {
  if (optimum <= 0.0) return std::nullopt;
  return 100.0 * (optimum - heuristic) / optimum;
}

std::optional<double> opt_gap(Revenue heuristic, Revenue optimum) {
  if (optimum.raw() <= 0.0) return std::nullopt;
  // difference first so equal fixed-point revenues give exactly zero
  return 100.0 * (optimum - heuristic).raw() / optimum.raw();
}

std::optional<double> gain_over_sp(double heuristic, double single_price) {
  if (single_price == 0.0) return std::nullopt;
  return 100.0 * (heuristic - single_price) / single_price;
}

std::optional<double> gain_over_sp(Revenue heuristic, Revenue single_price) {
  if (single_price.raw() == 0.0) return std::nullopt;
  return 100.0 * (heuristic - single_price).raw() / single_price.raw();
}

std::optional<double> PmAccounting::d_pct_pm() const { return percent(d_pm, d_pm + d_pw); }
std::optional<double> PmAccounting::d_pct_pw() const { return percent(d_pw, d_pm + d_pw); }
std::optional<double> PmAccounting::r_pct_pm() const { return percent(r_pm, r_pm + r_pw); }
std::optional<double> PmAccounting::r_pct_pw() const { return percent(r_pw, r_pm + r_pw); }

PmAccounting pm_accounting(const Instance& inst, std::span<const Money> prices,
                           std::optional<ModelKind> model) {
  const Evaluation ev = evaluate_prices(inst, prices, model);
  PmAccounting out;
  Revenue r_pm;
  Revenue r_pw;
  for (int e = 0; e < inst.n_demands(); ++e) {
    const auto f = ev.allocation.outlet_of(e);
    if (!f) continue;
    const Revenue r = Revenue::term(prices[*f], ev.captured[e]);
    if (ev.labels[e] == CaptureKind::kMatch) {
      ++out.pm_count;
      out.d_pm += ev.captured[e];
      r_pm += r;
    } else if (ev.labels[e] == CaptureKind::kWar) {
      ++out.pw_count;
      out.d_pw += ev.captured[e];
      r_pw += r;
    }
  }
  out.d_pm /= kUnitsPerVolume;
  out.d_pw /= kUnitsPerVolume;
  out.r_pm = r_pm.value();
  out.r_pw = r_pw.value();
  return out;
}

std::optional<double> cross_model_gap(const Instance& inst, std::span<const Money> mnpp_prices,
                                      Revenue bmnpp_optimum) {
  const Revenue r = evaluate_prices(inst, mnpp_prices, ModelKind::kBmnpp).revenue;
  return opt_gap(r, bmnpp_optimum);
}

}  // namespace mnpp
