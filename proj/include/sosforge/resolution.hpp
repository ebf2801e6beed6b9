#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sosforge/cnf.hpp"

namespace sosforge {

enum class StepKind { Axiom, Weaken, Resolve };

/// Premise indices are 0-based positions of earlier steps. For Resolve the left
/// premise holds the pivot positively.
struct ProofStep {
  StepKind kind = StepKind::Axiom;
  std::size_t left = 0;
  std::size_t right = 0;
  VarId pivot = 0;
  Clause clause;
};

struct ResolutionProof {
  std::vector<ProofStep> steps;

  std::size_t axiom(const Clause& c);
  std::size_t weaken(std::size_t src, const Clause& c);
  /// Computes the resolvent; throws if the premises do not fit the pivot.
  std::size_t resolve(std::size_t left, std::size_t right, VarId pivot);
  /// Weakens only when c differs from the clause at src.
  std::size_t weaken_to(std::size_t src, const Clause& c);

  const Clause& clause(std::size_t i) const { return steps.at(i).clause; }
  std::size_t size() const { return steps.size(); }
};

struct ProofMeasures {
  std::size_t size = 0;
  int width = 0;
  int domain_width = 0;
  bool tree_like = true;
  bool refutation = false;
};

class ProofError : public std::runtime_error {
 public:
  ProofError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step + 1) + ": " + what), step(step) {}
  std::size_t step;
};

/// Throws ProofError on the first unsound step.
ProofMeasures check_proof(const CnfFormula& f, const ResolutionProof& pi);
ProofMeasures measure_proof(const ResolutionProof& pi);

/// Lifts a proof over f restricted by rho to one over f that derives the
/// clause falsified by rho joined with the original conclusion.
ResolutionProof lift_proof(const ResolutionProof& pi, const CnfFormula& f, const Assignment& rho);

/// Refutation of f restricted by rho obtained by restricting every step.
ResolutionProof restrict_proof(const ResolutionProof& pi, const Assignment& rho);

/// Drops steps that the last step does not depend on.
ResolutionProof prune_unreachable(const ResolutionProof& pi);
/// Keeps root and its ancestors; root becomes the last step.
ResolutionProof prune_from(const ResolutionProof& pi, std::size_t root);

/// Renames the domain index of every clause.
ResolutionProof rename_proof(const ResolutionProof& pi, const std::map<int, int>& map);

/// Trace lines `a <lits> 0`, `w <src> <lits> 0`, `r <left> <right> <pivot> <lits> 0`
/// with 1-based step ids and the DIMACS numbering of f. Variables absent from
/// f get fresh ids declared by `c varmap` lines.
std::string write_trace(const ResolutionProof& pi, const CnfFormula& f);
ResolutionProof read_trace(const std::string& text, const DimacsFile& cnf);

}  // namespace sosforge
