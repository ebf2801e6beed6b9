#pragma once

#include "sosforge/cnf.hpp"
#include "sosforge/resolution.hpp"
#include "sosforge/sos.hpp"

namespace sosforge {

/// One GeqZero constraint per clause, in formula order.
ConstraintSystem encode_formula(const CnfFormula& f);

/// SOS refutation of encode_formula(f) simulating the refutation pi.
///
/// With T(D) the indicator that D is falsified and w_i the number of paths
/// from step i to the last step,
///   -1 = sum_axioms w_i T(C_i)^2 (encoding of C_i) + sum_inferences w_i S_i^2
/// where S_i is T(left) + T(right) - T(resolvent) for a resolution step and
/// T(source) - T(weakened) for a weakening. Each S_i takes only 0/1 values, so
/// S_i^2 reduces to S_i; weights become squares through four_squares.
SosCertificate compile_resolution(const CnfFormula& f, const ResolutionProof& pi);

}  // namespace sosforge
