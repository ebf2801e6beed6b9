#include "sosforge/sos.hpp"

#include <algorithm>
#include <set>

namespace sosforge {

namespace {

void check_indices(const ConstraintSystem& sys, const SosCertificate& cert) {
  for (const auto& t : cert.equality) {
    if (t.f >= sys.constraints.size())
      throw CertificateError("equality term refers to constraint " + std::to_string(t.f) + " out of range", {});
    if (sys.constraints[t.f].rel != Relation::EqZero)
      throw CertificateError("equality term multiplies inequality constraint " + std::to_string(t.f), {});
  }
  for (const auto& t : cert.inequality)
    if (t.h >= sys.constraints.size())
      throw CertificateError("inequality term refers to constraint " + std::to_string(t.h) + " out of range", {});
}

void note(SosMeasures& m, const Polynomial& p) {
  m.size += p.size();
  m.degree = std::max(m.degree, p.degree());
  m.domain_degree = std::max(m.domain_degree, p.domain_degree());
}

// Expands each product once; feeds the identity sum and the measures.
Polynomial expand(const ConstraintSystem& sys, const SosCertificate& cert, SosMeasures* m) {
  check_indices(sys, cert);
  PolynomialBuilder total;
  for (const auto& t : cert.equality) {
    Polynomial p = t.g * sys.constraints[t.f].poly;
    if (m) note(*m, p);
    total.add(p);
  }
  for (const auto& t : cert.inequality)
    for (const auto& q : t.q) {
      Polynomial p = (q * q) * sys.constraints[t.h].poly;
      if (m) note(*m, p);
      total.add(p);
    }
  for (const auto& q : cert.free) {
    Polynomial p = q * q;
    if (m) note(*m, p);
    total.add(p);
  }
  return total.build();
}

}  // namespace

Polynomial certificate_sum(const ConstraintSystem& sys, const SosCertificate& cert) {
  return expand(sys, cert, nullptr);
}

SosMeasures check_certificate(const ConstraintSystem& sys, const SosCertificate& cert) {
  SosMeasures m;
  Polynomial residual = expand(sys, cert, &m) - cert.target;
  if (!residual.is_zero())
    throw CertificateError("identity fails; residual " + to_text(residual), residual);
  return m;
}

SosMeasures measure_certificate(const ConstraintSystem& sys, const SosCertificate& cert) {
  SosMeasures m;
  expand(sys, cert, &m);
  return m;
}

nlohmann::json certificate_to_json(const ConstraintSystem& sys, const SosCertificate& cert) {
  nlohmann::json j;
  j["system"] = system_to_json(sys);
  j["equality"] = nlohmann::json::array();
  for (const auto& t : cert.equality) j["equality"].push_back({{"g", to_text(t.g)}, {"f", t.f}});
  j["inequality"] = nlohmann::json::array();
  for (const auto& t : cert.inequality) {
    nlohmann::json q = nlohmann::json::array();
    for (const auto& p : t.q) q.push_back(to_text(p));
    j["inequality"].push_back({{"q", q}, {"h", t.h}});
  }
  nlohmann::json q0 = nlohmann::json::array();
  for (const auto& p : cert.free) q0.push_back(to_text(p));
  j["free"] = {{"q", q0}};
  j["target"] = to_text(cert.target);
  return j;
}

std::pair<ConstraintSystem, SosCertificate> certificate_from_json(const nlohmann::json& j) {
  ConstraintSystem sys = system_from_json(j.at("system"));
  SosCertificate cert;
  for (const auto& t : j.at("equality"))
    cert.equality.push_back({parse_polynomial(t.at("g").get<std::string>()), t.at("f").get<std::size_t>()});
  for (const auto& t : j.at("inequality")) {
    InequalityTerm it;
    it.h = t.at("h").get<std::size_t>();
    for (const auto& q : t.at("q")) it.q.push_back(parse_polynomial(q.get<std::string>()));
    cert.inequality.push_back(std::move(it));
  }
  if (j.contains("free"))
    for (const auto& q : j.at("free").at("q")) cert.free.push_back(parse_polynomial(q.get<std::string>()));
  cert.target = parse_polynomial(j.at("target").get<std::string>());
  return {std::move(sys), std::move(cert)};
}

GeneralPolynomial GeneralPolynomial::constant(const Rational& c) {
  GeneralPolynomial p;
  p.add({}, c);
  return p;
}

GeneralPolynomial GeneralPolynomial::power(VarId v, int e) {
  GeneralPolynomial p;
  if (e == 0) {
    p.add({}, 1);
  } else {
    p.add({{v, e}}, 1);
  }
  return p;
}

GeneralPolynomial GeneralPolynomial::from(const Polynomial& q) {
  GeneralPolynomial p;
  for (const auto& [m, c] : q.terms()) {
    Exponents e;
    for (VarId v : m) e[v] = 1;
    p.add(e, c);
  }
  return p;
}

void GeneralPolynomial::add(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int GeneralPolynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (const auto& [v, k] : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

int GeneralPolynomial::domain_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    std::set<int> seen;
    for (const auto& [v, k] : e)
      if (auto i = domain_index(v)) seen.insert(*i);
    d = std::max(d, static_cast<int>(seen.size()));
  }
  return d;
}

GeneralPolynomial GeneralPolynomial::operator+(const GeneralPolynomial& o) const {
  GeneralPolynomial p = *this;
  for (const auto& [e, c] : o.terms_) p.add(e, c);
  return p;
}

GeneralPolynomial GeneralPolynomial::operator*(const GeneralPolynomial& o) const {
  GeneralPolynomial p;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e = ea;
      for (const auto& [v, k] : eb) e[v] += k;
      p.add(e, ca * cb);
    }
  return p;
}

GeneralPolynomial GeneralPolynomial::operator*(const Rational& c) const {
  GeneralPolynomial p;
  for (const auto& [e, x] : terms_) p.add(e, x * c);
  return p;
}

Polynomial GeneralPolynomial::multilinearize() const {
  PolynomialBuilder b;
  for (const auto& [e, c] : terms_) {
    Monomial m;
    for (const auto& [v, k] : e)
      if (k > 0) m.push_back(v);
    b.add(m, c);
  }
  return b.build();
}

SosMeasures measure_general(const ConstraintSystem& sys, const GeneralCertificate& cert) {
  SosMeasures m;
  auto note_general = [&](const GeneralPolynomial& p) {
    m.size += p.terms().size();
    m.degree = std::max(m.degree, p.degree());
    m.domain_degree = std::max(m.domain_degree, p.domain_degree());
  };
  for (const auto& [g, f] : cert.equality) note_general(g * GeneralPolynomial::from(sys.constraints.at(f).poly));
  for (const auto& [qs, h] : cert.inequality)
    for (const auto& q : qs) note_general(q * q * GeneralPolynomial::from(sys.constraints.at(h).poly));
  for (const auto& q : cert.free) note_general(q * q);
  return m;
}

SosCertificate multilinearize_certificate(const GeneralCertificate& cert) {
  SosCertificate out;
  out.target = cert.target;
  for (const auto& [g, f] : cert.equality) out.equality.push_back({g.multilinearize(), f});
  for (const auto& [qs, h] : cert.inequality) {
    InequalityTerm t;
    t.h = h;
    for (const auto& q : qs) t.q.push_back(q.multilinearize());
    out.inequality.push_back(std::move(t));
  }
  for (const auto& q : cert.free) out.free.push_back(q.multilinearize());
  return out;
}

}  // namespace sosforge
