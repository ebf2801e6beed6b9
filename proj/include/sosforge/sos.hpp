#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "sosforge/polynomial.hpp"
#include "sosforge/system.hpp"

namespace sosforge {

struct EqualityTerm {
  Polynomial g;
  std::size_t f = 0;
};

/// The multiplier of constraint h is the sum of the squares of q.
struct InequalityTerm {
  std::vector<Polynomial> q;
  std::size_t h = 0;
};

/// sum g*f + sum (sum q^2)*h + sum q0^2 == target.
struct SosCertificate {
  std::vector<EqualityTerm> equality;
  std::vector<InequalityTerm> inequality;
  std::vector<Polynomial> free;
  Polynomial target = Polynomial::constant(-1);
};

struct SosMeasures {
  int degree = 0;
  std::size_t size = 0;
  int domain_degree = 0;
};

class CertificateError : public std::runtime_error {
 public:
  CertificateError(const std::string& what, Polynomial residual)
      : std::runtime_error(what), residual(std::move(residual)) {}
  /// Left-hand side minus target.
  Polynomial residual;
};

/// The left-hand side of the identity.
Polynomial certificate_sum(const ConstraintSystem& sys, const SosCertificate& cert);

/// Throws CertificateError unless the identity holds exactly.
SosMeasures check_certificate(const ConstraintSystem& sys, const SosCertificate& cert);

/// Degree and size over the expanded products g*f, q^2*h and q0^2, one product
/// per generator.
SosMeasures measure_certificate(const ConstraintSystem& sys, const SosCertificate& cert);

nlohmann::json certificate_to_json(const ConstraintSystem& sys, const SosCertificate& cert);
/// Returns the embedded system alongside the certificate.
std::pair<ConstraintSystem, SosCertificate> certificate_from_json(const nlohmann::json& j);

/// Polynomial with explicit exponents, for certificates written before
/// multilinear reduction.
class GeneralPolynomial {
 public:
  using Exponents = std::map<VarId, int>;

  GeneralPolynomial() = default;
  static GeneralPolynomial constant(const Rational& c);
  static GeneralPolynomial power(VarId v, int e);
  static GeneralPolynomial from(const Polynomial& p);

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  int degree() const;
  int domain_degree() const;

  GeneralPolynomial operator+(const GeneralPolynomial& o) const;
  GeneralPolynomial operator*(const GeneralPolynomial& o) const;
  GeneralPolynomial operator*(const Rational& c) const;

  Polynomial multilinearize() const;

 private:
  void add(const Exponents& e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

struct GeneralCertificate {
  std::vector<std::pair<GeneralPolynomial, std::size_t>> equality;
  std::vector<std::pair<std::vector<GeneralPolynomial>, std::size_t>> inequality;
  std::vector<GeneralPolynomial> free;
  Polynomial target = Polynomial::constant(-1);
};

SosMeasures measure_general(const ConstraintSystem& sys, const GeneralCertificate& cert);
SosCertificate multilinearize_certificate(const GeneralCertificate& cert);

}  // namespace sosforge
