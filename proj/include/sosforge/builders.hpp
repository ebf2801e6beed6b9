#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sosforge/cnf.hpp"
#include "sosforge/graph.hpp"
#include "sosforge/resolution.hpp"

namespace sosforge {

/// Shape of a brute-force gadget: level i has m[i] choices x(i,j) and the
/// chain variables y(i,0..m[i]). Levels are 1-based in the callbacks.
struct GadgetShape {
  std::vector<int> m;
  std::function<VarId(int, int)> x;
  std::function<VarId(int, int)> y;
};

/// Emits a derivation of the clause of negated x(i, tuple[i-1]) and returns its step.
using WideFn = std::function<std::size_t(ResolutionProof&, const std::vector<int>&)>;
/// May derive prefix-clause OR ~x(level, j) directly; prefix holds (level, j) pairs.
using PruneFn = std::function<std::optional<std::size_t>(ResolutionProof&, const std::vector<std::pair<int, int>>&,
                                                         int, int)>;

/// Tree-like backward-induction refutation. Levels are processed in ascending
/// order of their size. Returns the step of the empty clause.
std::size_t build_gadget_refutation(ResolutionProof& pi, const GadgetShape& shape, const WideFn& wide,
                                    const PruneFn& prune = nullptr);

ResolutionProof build_bruteforce_refutation(int k, const std::vector<int>& m);

class CliqueExists : public std::runtime_error {
 public:
  explicit CliqueExists(std::vector<int> clique);
  std::vector<int> clique;
};

/// With prune set, prefixes that already fail to be cliques are closed
/// immediately instead of enumerating all |V|^k tuples.
ResolutionProof build_clique_refutation(const Graph& g, int k, bool prune = false);

/// THR(k, s) together with every clause OR_{i in D} ~s_i, |D| = k.
CnfFormula threshold_closure_formula(int k, int m);

/// Obtains OR_{i in D} ~s_i; the default emits it as an axiom.
using SelectorFn = std::function<std::size_t(ResolutionProof&, const std::vector<int>&)>;
ResolutionProof build_threshold_refutation(int k, int m, const SelectorFn& selector = nullptr);

/// Refutes relativize(base, k, m) from a refutation of base generalized to [k].
ResolutionProof build_relativized_refutation(const CnfFormula& base, int k, int m, const ResolutionProof& inner);

/// Appends src and returns the offset of its first step.
std::size_t append_proof(ResolutionProof& dst, const ResolutionProof& src);

}  // namespace sosforge
