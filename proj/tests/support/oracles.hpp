#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sosforge/cnf.hpp"
#include "sosforge/formulas.hpp"
#include "sosforge/graph.hpp"
#include "sosforge/sos.hpp"
#include "sosforge/system.hpp"

namespace oracle {

using sosforge::VarId;
using Point = std::map<VarId, bool>;

// Plain DPLL with unit propagation.
std::optional<Point> cnf_model(const sosforge::CnfFormula& f);

// Walks every 0/1 point when there are at most 16 variables, otherwise
// backtracks and cuts a branch once a constraint can no longer hold.
std::optional<Point> system_model(const sosforge::ConstraintSystem& s);

// True when every point up to 2^16 was visited, false for the pruned search.
bool system_sweep_exhaustive(const sosforge::ConstraintSystem& s);

sosforge::Rational value(const sosforge::Polynomial& p, const Point& a);

// Compares both sides of the certificate identity pointwise. Multilinear
// polynomials that agree on the cube are equal, so up to 16 variables this is
// a complete check; above that it samples `samples` seeded points.
bool identity_on_cube(const sosforge::ConstraintSystem& s, const sosforge::SosCertificate& c,
                      int samples = 4000, std::uint64_t seed = 1);

std::optional<std::vector<int>> clique_by_subsets(const sosforge::Graph& g, int k);

// The clique clauses written out from the definition, one string per clause.
std::set<std::string> clique_clause_strings(const sosforge::Graph& g, int k);
std::set<std::string> clause_strings(const sosforge::CnfFormula& f);

// Gray-code walk over all assignments.
int xor_max_sat(const sosforge::XorSystem& s);

}  // namespace oracle
