#include "mnpp/exact.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mnpp/errors.hpp"

namespace mnpp {

namespace {

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

struct Enumerator {
  const Instance& inst;
  TieRule ties;
  std::vector<Money> current;
  BruteForceResult best;
  bool have_best = false;

  void visit(std::size_t f, Money lo, Money hi) {
    const auto& grid = inst.grid();
    if (f == current.size()) {
      const Revenue r = evaluate_prices(inst, current, std::nullopt, ties).revenue;
      ++best.evaluated;
      if (!have_best || r > best.revenue) {
        best.revenue = r;
        best.prices = current;
        have_best = true;
      }
      return;
    }
    for (std::size_t m = 0; m < grid.size(); ++m) {
      const Money p = grid[m];
      Money new_lo = f == 0 ? p : std::min(lo, p);
      Money new_hi = f == 0 ? p : std::max(hi, p);
      if (inst.pi() && new_hi - new_lo > *inst.pi()) continue;
      current[f] = p;
      visit(f + 1, new_lo, new_hi);
    }
  }
};

}  // namespace

BruteForceResult brute_force(const Instance& inst, std::uint64_t limit, TieRule ties) {
  const std::uint64_t count = checked_power(inst.grid().size(), inst.n_outlets(), limit);
  if (count > limit) {
    throw EnumerationTooLarge("brute force needs |M|^|O| = " + std::to_string(inst.grid().size()) +
                              "^" + std::to_string(inst.n_outlets()) + " evaluations, limit " +
                              std::to_string(limit));
  }
  Enumerator en{inst, ties, std::vector<Money>(inst.n_outlets()), {}, false};
  en.visit(0, Money{}, Money{});
  return en.best;
}

LadderExactResult ladder_exact(const Instance& inst, const DpOptions& options) {
  if (inst.n_outlets() > kMaxLadderOutlets) {
    throw EnumerationTooLarge("ladder enumeration supports at most " +
                              std::to_string(kMaxLadderOutlets) + " outlets, got " +
                              std::to_string(inst.n_outlets()));
  }
  PriceLadder perm(inst.n_outlets());
  std::iota(perm.begin(), perm.end(), 0);
  LadderExactResult best;
  bool have_best = false;
  do {
    const DpResult dp = dp_prices(inst, perm, allocate(inst, perm), options);
    ++best.ladders;
    if (!have_best || dp.revenue > best.revenue) {
      best.revenue = dp.revenue;
      best.ladder = perm;
      best.prices = ladder_prices(inst, perm, dp);
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace mnpp
