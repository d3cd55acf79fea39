#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mnpp {

enum class VarKind { kContinuous, kBinary };
enum class Sense { kLe, kEq, kGe };

/// Maps a variable back to the pricing quantity it models.
struct VarRole {
  std::string family;  ///< "x_outlet", "x_demand", "mu", "y", "z", "w", "v", "y_assign"
  int demand = -1;
  int outlet = -1;
  int price_index = -1;
  int slot = -1;  ///< w1..w5 selector

  bool operator==(const VarRole&) const = default;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  VarKind kind = VarKind::kContinuous;

  bool operator==(const Variable&) const = default;
};

struct Term {
  std::size_t var = 0;
  double coef = 0.0;

  bool operator==(const Term&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;

  bool operator==(const Constraint&) const = default;
};

/// Solver-agnostic maximization model. Equality compares the mathematical
/// content only; role metadata is ignored.
class LinearModel {
 public:
  explicit LinearModel(std::string name = "model") : name_(std::move(name)) {}

  /// Names must be unique, at most 255 characters, [A-Za-z0-9_] only.
  std::size_t add_variable(std::string name, double lower, double upper, VarKind kind,
                           VarRole role = {});
  void add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs);
  void add_objective(std::size_t var, double coef);

  const std::string& name() const { return name_; }
  std::span<const Variable> variables() const { return variables_; }
  std::span<const Constraint> constraints() const { return constraints_; }
  std::span<const Term> objective() const { return objective_; }
  const Variable& variable(std::size_t i) const { return variables_[i]; }
  const VarRole& role(std::size_t i) const { return roles_[i]; }
  std::optional<std::size_t> find(const std::string& name) const;

  Variable& mutable_variable(std::size_t i) { return variables_[i]; }

  double objective_value(std::span<const double> values) const;
  /// Largest constraint or bound violation of a point.
  double max_violation(std::span<const double> values) const;

  bool operator==(const LinearModel& o) const {
    return variables_ == o.variables_ && constraints_ == o.constraints_ &&
           objective_ == o.objective_;
  }

 private:
  std::string name_;
  std::vector<Variable> variables_;
  std::vector<VarRole> roles_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  std::unordered_map<std::string, std::size_t> index_;
};

bool is_valid_name(const std::string& name);

/// LP relaxation: binaries become continuous on [0, 1].
LinearModel relax(LinearModel model);

}  // namespace mnpp
