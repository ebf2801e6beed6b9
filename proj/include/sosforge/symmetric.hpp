#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "sosforge/cnf.hpp"

namespace sosforge {

/// parts[eta] holds the clauses mentioning exactly the indices {1..eta}.
struct SymmetricTemplate {
  int domain_width = 0;
  std::vector<std::vector<Clause>> parts;
  std::map<std::string, std::string> meta;
};

class SymmetryError : public std::runtime_error {
 public:
  SymmetryError(const std::string& what, std::vector<int> perm, Clause missing)
      : std::runtime_error(what), permutation(std::move(perm)), missing(std::move(missing)) {}
  /// permutation[i-1] is the image of domain element i.
  std::vector<int> permutation;
  /// Image of a clause under the permutation that is absent from the formula.
  Clause missing;
};

/// Sorted domain indices mentioned by c.
std::vector<int> clause_indices(const Clause& c);

/// Renames the domain index of every domain variable through map (old -> new).
Clause rename_clause(const Clause& c, const std::map<int, int>& map);

/// Throws SymmetryError when f is not invariant under permutations of [domain_size].
SymmetricTemplate symmetric_template(const CnfFormula& f);

/// Copies of each part on every index subset of [m] of matching size.
CnfFormula generalize_domain(const SymmetricTemplate& t, int m);

/// Threshold formula over selectors plus one guarded copy of each clause of f[m].
CnfFormula relativize(const CnfFormula& f, int k, int m);

}  // namespace sosforge
