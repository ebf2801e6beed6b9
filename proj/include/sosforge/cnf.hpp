#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sosforge/polynomial.hpp"
#include "sosforge/variable.hpp"

namespace sosforge {

struct Literal {
  VarId var = 0;
  bool positive = true;

  Literal negated() const { return {var, !positive}; }
  auto operator<=>(const Literal&) const = default;
};

/// Set of literals; construction sorts, deduplicates and rejects a variable
/// occurring with both polarities.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> lits);

  const std::vector<Literal>& literals() const { return lits_; }
  std::size_t width() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  int domain_width() const;
  bool contains(const Literal& l) const;
  bool subset_of(const Clause& other) const;
  std::optional<bool> polarity_of(VarId v) const;

  /// Union as a set of literals; throws if the result would be tautological.
  Clause merged(const Clause& other) const;
  Clause without(VarId v) const;

  bool operator==(const Clause& o) const { return lits_ == o.lits_; }
  bool operator<(const Clause& o) const { return lits_ < o.lits_; }

 private:
  std::vector<Literal> lits_;
};

struct ClauseHash {
  std::size_t operator()(const Clause& c) const noexcept;
};

std::string clause_text(const Clause& c);

/// Clause set preserving first-insertion order.
class CnfFormula {
 public:
  /// Returns false when the clause was already present.
  bool add(const Clause& c);
  bool contains(const Clause& c) const { return index_.count(c) != 0; }
  std::optional<std::size_t> index_of(const Clause& c) const;

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }

  /// Variables in order of first appearance.
  std::vector<VarId> variables() const;
  int width() const;
  int domain_width() const;

  int domain_size = 0;
  std::map<std::string, std::string> meta;

  bool same_clauses(const CnfFormula& other) const;

 private:
  std::vector<Clause> clauses_;
  std::unordered_map<Clause, std::size_t, ClauseHash> index_;
};

/// The literal polynomial sum minus one, as an inequality.
PolynomialConstraint encode_clause(const Clause& c);

/// Indicator of the assignments falsifying c.
Polynomial falsifier_indicator(const Clause& c);

bool satisfied_by(const Clause& c, const Assignment& rho);
/// Clause with falsified literals removed; nullopt when satisfied.
std::optional<Clause> restrict_clause(const Clause& c, const Assignment& rho);
CnfFormula restrict_formula(const CnfFormula& f, const Assignment& rho);

/// Variable numbering by first appearance, starting at 1.
std::unordered_map<VarId, int> dimacs_numbering(const CnfFormula& f);

/// DIMACS with `c param`, `c varmap <id> <name> <domain-index or 0>` comments.
std::string write_dimacs(const CnfFormula& f);

/// Parsed formula plus its id table.
struct DimacsFile {
  CnfFormula formula;
  std::map<int, VarId> ids;
};
DimacsFile read_dimacs(const std::string& text);

}  // namespace sosforge
