#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sosforge/rational.hpp"
#include "sosforge/variable.hpp"

namespace sosforge {

/// Strictly increasing list of variable ids.
using Monomial = std::vector<VarId>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

Monomial monomial_product(const Monomial& a, const Monomial& b);
int monomial_domain_degree(const Monomial& m);
std::string monomial_text(const Monomial& m);

/// Multilinear polynomial with exact rational coefficients.
/// Terms are kept sorted by monomial and never carry a zero coefficient.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(VarId v);
  static Polynomial term(Monomial m, const Rational& c);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Zero for the zero polynomial.
  int degree() const;
  int domain_degree() const;
  std::vector<VarId> variables() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  friend class PolynomialBuilder;
  std::vector<Term> terms_;
};

Polynomial operator*(const Rational& c, const Polynomial& p);

/// Mutable accumulator; build() yields the canonical polynomial.
class PolynomialBuilder {
 public:
  void add(const Monomial& m, const Rational& c);
  void add(const Polynomial& p, const Rational& scale = 1);
  void add_product(const Polynomial& a, const Polynomial& b, const Rational& scale = 1);
  Polynomial build() const;

 private:
  std::unordered_map<Monomial, Rational, MonomialHash> acc_;
};

/// Collapses exponents and merges terms. Variables may repeat within a term.
Polynomial multilinear_reduce(const std::vector<std::pair<std::vector<VarId>, Rational>>& raw);

/// Product of x (bit 1) or 1-x (bit 0) factors.
Polynomial indicator_poly(const std::vector<VarId>& vars, const std::vector<bool>& bits);

/// x for a positive literal, 1-x for a negative one.
Polynomial literal_poly(VarId v, bool positive);

enum class Relation { EqZero, GeqZero };

struct PolynomialConstraint {
  Polynomial poly;
  Relation rel = Relation::GeqZero;
  bool operator==(const PolynomialConstraint&) const = default;
};

std::string relation_text(Relation r);
Relation parse_relation(std::string_view s);

Polynomial restrict_poly(const Polynomial& p, const Assignment& rho);

/// Throws std::invalid_argument when a variable of p is unassigned.
Rational eval_poly(const Polynomial& p, const Assignment& alpha);

/// Substitutes a polynomial for each mapped variable; others stay.
Polynomial substitute(const Polynomial& p, const std::unordered_map<VarId, Polynomial>& sigma);

/// `coef * v1*v2 + ...`, ordered by degree then variable names; `0` when empty.
std::string to_text(const Polynomial& p);

/// Accepts the canonical form and general expressions with + - * and parentheses.
Polynomial parse_polynomial(std::string_view text);

}  // namespace sosforge
