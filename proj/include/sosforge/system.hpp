#pragma once

#include <vector>

#include "json.hpp"
#include "sosforge/polynomial.hpp"

namespace sosforge {

/// Polynomial constraints over 0/1 variables.
struct ConstraintSystem {
  std::vector<VarId> vars;
  std::vector<PolynomialConstraint> constraints;

  /// Appends variables of the constraints not yet listed.
  void collect_vars();
  int max_degree() const;
};

nlohmann::json system_to_json(const ConstraintSystem& s);
ConstraintSystem system_from_json(const nlohmann::json& j);

}  // namespace sosforge
