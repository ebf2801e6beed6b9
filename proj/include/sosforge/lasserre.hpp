#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sosforge/sos.hpp"

namespace sosforge {

/// A coefficient of the identity sum: the entry multiplies monomial row.
struct MapEntry {
  std::size_t row = 0;
  Rational value;
};

struct GramBlock {
  /// Constraint index, or none for the free square u0.
  std::optional<std::size_t> constraint;
  std::vector<Monomial> basis;
  /// Upper-triangle entries (a, b), a <= b, in row-major order; each maps to
  /// the coefficients of basis[a] * basis[b] * h (doubled off the diagonal).
  std::vector<std::vector<MapEntry>> columns;
};

struct MultiplierBlock {
  std::size_t constraint = 0;
  std::vector<Monomial> basis;
  std::vector<std::vector<MapEntry>> columns;  // one per basis monomial
};

/// Linear system in the multiplier coefficients and Gram entries whose
/// solutions with psd Gram blocks are degree-d refutations:
/// sum g f + sum u h + u0 = -1 coefficientwise over the multilinear basis.
/// Constraints of degree above d get no multiplier.
struct CoefficientSystem {
  ConstraintSystem system;
  int degree = 0;
  std::vector<Monomial> basis;
  std::vector<MultiplierBlock> multipliers;
  std::vector<GramBlock> grams;
  std::vector<Rational> rhs;  // -1 on the empty monomial

  std::size_t multiplier_count() const;
  std::size_t gram_entry_count() const;
};

CoefficientSystem build_coefficient_system(const ConstraintSystem& sys, int d);

enum class SdpStatus { Feasible, Infeasible, Unknown };
std::string status_text(SdpStatus s);

struct SdpOptions {
  double tol_eq = 1e-8;
  double tol_psd = 1e-8;
  int max_iters = 200;
};

struct SdpOutcome {
  SdpStatus status = SdpStatus::Unknown;
  int degree = 0;
  std::string message;
  /// Multiplier coefficients, block by block.
  std::vector<Eigen::VectorXd> g;
  std::vector<Eigen::MatrixXd> gram;
  double residual = 0;
  std::vector<double> min_eigenvalues;
  /// Phase-one optimum: negative means a strictly feasible Gram choice exists.
  double lambda = 0;
  /// Linear functional on the monomial basis with L(1) = 1 that vanishes on
  /// every multiplier column and has psd moment blocks.
  std::vector<double> evidence;
  double evidence_min_eigenvalue = 0;
  int iterations = 0;
  std::optional<SosCertificate> exact;
};

SdpOutcome solve_feasibility(const CoefficientSystem& cs, const SdpOptions& opt = {});

/// Rounds numeric solutions to bounded-denominator rationals, projects them
/// exactly onto the identity and splits the Gram blocks by exact LDL^T.
/// Returns nullopt when no denominator up to 10^6 gives a psd result.
std::optional<SosCertificate> extract_exact(const SdpOutcome& outcome, const CoefficientSystem& cs,
                                            const SdpOptions& opt = {});

struct DegreeSearch {
  /// Smallest degree with a Feasible outcome, if any up to d_max.
  std::optional<int> degree;
  bool exact = false;
  std::optional<SosCertificate> certificate;
  std::vector<SdpOutcome> outcomes;
};

DegreeSearch min_degree(const ConstraintSystem& sys, int d_max, const SdpOptions& opt = {});

nlohmann::json outcome_to_json(const SdpOutcome& o, const CoefficientSystem& cs);

}  // namespace sosforge
