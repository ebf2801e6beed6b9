#include "sosforge/compile.hpp"

#include <stdexcept>

namespace sosforge {

ConstraintSystem encode_formula(const CnfFormula& f) {
  ConstraintSystem sys;
  sys.vars = f.variables();
  for (const auto& c : f.clauses()) sys.constraints.push_back(encode_clause(c));
  return sys;
}

SosCertificate compile_resolution(const CnfFormula& f, const ResolutionProof& pi) {
  ProofMeasures pm = check_proof(f, pi);
  if (!pm.refutation) throw std::invalid_argument("compile_resolution: proof does not end in the empty clause");

  const std::size_t n = pi.steps.size();
  std::vector<Integer> weight(n, 0);
  weight[n - 1] = 1;
  for (std::size_t i = n; i-- > 0;) {
    if (weight[i] == 0) continue;
    const auto& s = pi.steps[i];
    if (s.kind != StepKind::Axiom) weight[s.left] += weight[i];
    if (s.kind == StepKind::Resolve) weight[s.right] += weight[i];
  }

  std::vector<Polynomial> indicator(n);
  for (std::size_t i = 0; i < n; ++i)
    if (weight[i] != 0) indicator[i] = falsifier_indicator(pi.steps[i].clause);

  auto scaled = [](const Integer& w, const Polynomial& p) {
    std::vector<Polynomial> gens;
    for (const auto& a : four_squares(w))
      if (a != 0) gens.push_back(p * Rational(a));
    return gens;
  };

  SosCertificate cert;
  cert.target = Polynomial::constant(-1);
  for (std::size_t i = 0; i < n; ++i) {
    if (weight[i] == 0) continue;
    const auto& s = pi.steps[i];
    switch (s.kind) {
      case StepKind::Axiom:
        cert.inequality.push_back({scaled(weight[i], indicator[i]), *f.index_of(s.clause)});
        break;
      case StepKind::Weaken: {
        Polynomial gap = indicator[s.left] - indicator[i];
        if (!gap.is_zero())
          for (auto& g : scaled(weight[i], gap)) cert.free.push_back(std::move(g));
        break;
      }
      case StepKind::Resolve: {
        Polynomial gap = indicator[s.left] + indicator[s.right] - indicator[i];
        if (!gap.is_zero())
          for (auto& g : scaled(weight[i], gap)) cert.free.push_back(std::move(g));
        break;
      }
    }
  }
  return cert;
}

}  // namespace sosforge
