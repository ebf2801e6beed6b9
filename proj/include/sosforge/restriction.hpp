#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "sosforge/cnf.hpp"
#include "sosforge/sos.hpp"

namespace sosforge {

struct Restriction {
  int k = 0;
  int m = 0;
  std::vector<int> survivors;  // sorted, 1-based
  Assignment assignment;
};

nlohmann::json restriction_to_json(const Restriction& r);

/// Survivors are a uniform k-subset D. Selectors are set to membership in D,
/// the threshold gadget maps j to the j-th element of D, and every domain
/// variable with index outside D gets an independent uniform bit (in variable
/// order of the formula). Requires the metadata written by relativize.
Restriction sample_restriction(const CnfFormula& rel, std::uint64_t seed);

CnfFormula apply_restriction(const CnfFormula& rel, const Restriction& r);

struct Recovery {
  bool ok = false;
  /// Order-preserving map D -> [k].
  std::map<int, int> renaming;
  /// A clause present on one side only, after renaming.
  std::optional<Clause> counterexample;
  /// Whether the counterexample comes from the restricted formula.
  bool counterexample_in_restricted = false;
};

nlohmann::json recovery_to_json(const Recovery& r);

Recovery check_recovers_base(const CnfFormula& rel, const Restriction& r, const CnfFormula& base_k);

/// Restricts every constraint and generator; the identity is preserved.
std::pair<ConstraintSystem, SosCertificate> restrict_certificate(const ConstraintSystem& sys,
                                                                 const SosCertificate& cert,
                                                                 const Assignment& rho);

using BoundFn = std::function<Rational(int m, int k, int l)>;

/// 1 / m^l.
Rational shrinkage_tail(int m, int k, int l);
/// C(lp, l) C(m - l, k - l) / C(m, k): union bound on l of lp fixed indices
/// all surviving.
Rational shrinkage_union(int m, int k, int l, int lp);
/// max(tail, union at the degree beyond which the surviving monomial vanishes
/// with probability at most the tail).
Rational default_bound(int m, int k, int l);

struct ShrinkageReport {
  int m = 0, k = 0, l = 0, lprime = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  bool in_lemma_regime = false;
  long survived = 0;
  double empirical_survival = 0;
  double stderr_survival = 0;
  Rational tail;
  Rational union_bound;
  Rational bound;
  std::vector<long> survivor_counts;  // per index 1..m
  double chi_square = 0;
  double chi_square_p = 0;
};

nlohmann::json shrinkage_to_json(const ShrinkageReport& r);

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Monomial on indices {1..lp}, one domain variable per index. It survives a
/// restriction when all its variables outside D are set to 1 and at least l of
/// its indices lie in D. Needs m >= 16 and l <= k <= m; in_lemma_regime reports
/// whether k <= m / (4 log2 m) also holds.
ShrinkageReport shrinkage_experiment(int m, int k, int l, int lp, long trials, std::uint64_t seed,
                                     const BoundFn& bound = default_bound);

/// 1 / bound(m, k, l). Throws ParameterError when the bound is 0 or exceeds 1.
Rational size_lower_bound(int m, int k, int l, const BoundFn& bound = default_bound);

}  // namespace sosforge
