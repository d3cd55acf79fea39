#include "mnpp/linear_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "mnpp/errors.hpp"

namespace mnpp {

bool is_valid_name(const std::string& name) {
  if (name.empty() || name.size() > 255) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char ch) {
    return std::isalnum(ch) != 0 || ch == '_';
  });
}

std::size_t LinearModel::add_variable(std::string name, double lower, double upper, VarKind kind,
                                      VarRole role) {
  if (!is_valid_name(name)) throw InputError("invalid variable name '" + name + "'");
  if (index_.count(name) != 0) throw InputError("duplicate variable name '" + name + "'");
  if (lower > upper) throw InputError("variable '" + name + "' has lower > upper");
  const std::size_t id = variables_.size();
  index_.emplace(name, id);
  variables_.push_back({std::move(name), lower, upper, kind});
  roles_.push_back(std::move(role));
  return id;
}

void LinearModel::add_constraint(std::string name, std::vector<Term> terms, Sense sense,
                                 double rhs) {
  if (!is_valid_name(name)) throw InputError("invalid constraint name '" + name + "'");
  for (const auto& t : terms) {
    if (t.var >= variables_.size()) {
      throw InputError("constraint '" + name + "' references an undeclared variable");
    }
  }
  std::erase_if(terms, [](const Term& t) { return t.coef == 0.0; });
  constraints_.push_back({std::move(name), std::move(terms), sense, rhs});
}

void LinearModel::add_objective(std::size_t var, double coef) {
  if (var >= variables_.size()) throw InputError("objective references an undeclared variable");
  if (coef != 0.0) objective_.push_back({var, coef});
}

std::optional<std::size_t> LinearModel::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double LinearModel::objective_value(std::span<const double> values) const {
  double total = 0.0;
  for (const auto& t : objective_) total += t.coef * values[t.var];
  return total;
}

double LinearModel::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    worst = std::max({worst, variables_[i].lower - values[i], values[i] - variables_[i].upper});
  }
  for (const auto& c : constraints_) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * values[t.var];
    switch (c.sense) {
      case Sense::kLe: worst = std::max(worst, lhs - c.rhs); break;
      case Sense::kGe: worst = std::max(worst, c.rhs - lhs); break;
      case Sense::kEq: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

LinearModel relax(LinearModel model) {
  for (std::size_t i = 0; i < model.variables().size(); ++i) {
    auto& v = model.mutable_variable(i);
    if (v.kind == VarKind::kBinary) {
      v.kind = VarKind::kContinuous;
      v.lower = std::max(v.lower, 0.0);
      v.upper = std::min(v.upper, 1.0);
    }
  }
  return model;
}

}  // namespace mnpp
