#include "sosforge/restriction.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "sosforge/formulas.hpp"
#include "sosforge/rng.hpp"
#include "sosforge/symmetric.hpp"

namespace sosforge {

namespace {

int meta_int(const CnfFormula& f, const std::string& key) {
  auto it = f.meta.find(key);
  if (it == f.meta.end()) throw std::invalid_argument("formula lacks relativization metadata '" + key + "'");
  return std::stoi(it->second);
}

Integer binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

Integer power(int base, int e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return out;
}

}  // namespace

nlohmann::json restriction_to_json(const Restriction& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["m"] = r.m;
  j["survivors"] = r.survivors;
  nlohmann::json a = nlohmann::json::object();
  for (const auto& [v, b] : r.assignment) a[var_name(v)] = b ? 1 : 0;
  j["assignment"] = a;
  return j;
}

Restriction sample_restriction(const CnfFormula& rel, std::uint64_t seed) {
  if (rel.meta.count("relativized") == 0) throw std::invalid_argument("formula lacks relativization metadata");
  Restriction r;
  r.k = meta_int(rel, "k");
  r.m = meta_int(rel, "m");
  Rng rng(seed);
  r.survivors = rng.subset(r.m, r.k);
  std::vector<bool> in_d(r.m + 1, false);
  for (int i : r.survivors) in_d[i] = true;
  for (int i = 1; i <= r.m; ++i) r.assignment[thr_s(i)] = in_d[i];
  for (int j = 1; j <= r.k; ++j) {
    const int dj = r.survivors[j - 1];
    for (int i = 1; i <= r.m; ++i) r.assignment[thr_p(j, i)] = (i == dj);
    for (int i = 0; i <= r.m; ++i) r.assignment[thr_y(j, i)] = (i < dj);
  }
  for (VarId v : rel.variables()) {
    auto idx = domain_index(v);
    if (idx && !in_d.at(*idx) && !r.assignment.count(v)) r.assignment[v] = rng.bit();
  }
  return r;
}

CnfFormula apply_restriction(const CnfFormula& rel, const Restriction& r) {
  return restrict_formula(rel, r.assignment);
}

nlohmann::json recovery_to_json(const Recovery& r) {
  nlohmann::json j;
  j["ok"] = r.ok;
  nlohmann::json ren = nlohmann::json::object();
  for (auto [a, b] : r.renaming) ren[std::to_string(a)] = b;
  j["renaming"] = ren;
  if (r.counterexample) {
    j["counterexample"] = clause_text(*r.counterexample);
    j["counterexample_side"] = r.counterexample_in_restricted ? "restricted" : "base";
  }
  return j;
}

Recovery check_recovers_base(const CnfFormula& rel, const Restriction& r, const CnfFormula& base_k) {
  Recovery out;
  for (std::size_t i = 0; i < r.survivors.size(); ++i) out.renaming[r.survivors[i]] = static_cast<int>(i) + 1;
  CnfFormula restricted = apply_restriction(rel, r);
  CnfFormula renamed;
  for (const auto& c : restricted.clauses()) renamed.add(rename_clause(c, out.renaming));
  for (const auto& c : renamed.clauses())
    if (!base_k.contains(c)) {
      out.counterexample = c;
      out.counterexample_in_restricted = true;
      return out;
    }
  for (const auto& c : base_k.clauses())
    if (!renamed.contains(c)) {
      out.counterexample = c;
      return out;
    }
  out.ok = true;
  return out;
}

std::pair<ConstraintSystem, SosCertificate> restrict_certificate(const ConstraintSystem& sys,
                                                                 const SosCertificate& cert,
                                                                 const Assignment& rho) {
  ConstraintSystem rs;
  for (VarId v : sys.vars)
    if (!rho.count(v)) rs.vars.push_back(v);
  for (const auto& c : sys.constraints) rs.constraints.push_back({restrict_poly(c.poly, rho), c.rel});
  SosCertificate rc;
  rc.target = restrict_poly(cert.target, rho);
  for (const auto& t : cert.equality) rc.equality.push_back({restrict_poly(t.g, rho), t.f});
  for (const auto& t : cert.inequality) {
    InequalityTerm it;
    it.h = t.h;
    for (const auto& q : t.q) it.q.push_back(restrict_poly(q, rho));
    rc.inequality.push_back(std::move(it));
  }
  for (const auto& q : cert.free) rc.free.push_back(restrict_poly(q, rho));
  return {std::move(rs), std::move(rc)};
}

Rational shrinkage_tail(int m, int, int l) { return Rational(1, 1) / Rational(power(m, l)); }

Rational shrinkage_union(int m, int k, int l, int lp) {
  Rational r(binomial(lp, l) * binomial(m - l, k - l), binomial(m, k));
  r.canonicalize();
  return r;
}

Rational default_bound(int m, int k, int l) {
  Rational tail = shrinkage_tail(m, k, l);
  // Beyond this degree at least bitlength(m^l) variables outside D must all be 1.
  const int bits = static_cast<int>(mpz_sizeinbase(power(m, l).get_mpz_t(), 2));
  const int cut = std::min(m, k + bits - 1);
  Rational u = shrinkage_union(m, k, l, cut);
  return u > tail ? u : tail;
}

nlohmann::json shrinkage_to_json(const ShrinkageReport& r) {
  nlohmann::json j;
  j["m"] = r.m;
  j["k"] = r.k;
  j["l"] = r.l;
  j["lprime"] = r.lprime;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["in_lemma_regime"] = r.in_lemma_regime;
  j["survived"] = r.survived;
  j["empirical_survival"] = r.empirical_survival;
  j["stderr"] = r.stderr_survival;
  j["bound_components"] = {{"tail", to_string(r.tail)},
                           {"union", to_string(r.union_bound)},
                           {"tail_approx", r.tail.get_d()},
                           {"union_approx", r.union_bound.get_d()}};
  j["bound"] = to_string(r.bound);
  j["bound_approx"] = r.bound.get_d();
  j["survivor_counts"] = r.survivor_counts;
  j["chi_square"] = r.chi_square;
  j["chi_square_p"] = r.chi_square_p;
  return j;
}

ShrinkageReport shrinkage_experiment(int m, int k, int l, int lp, long trials, std::uint64_t seed,
                                     const BoundFn& bound) {
  if (m < 16 || l < 0 || l > k || k > m || lp < 0 || lp > m || trials < 1)
    throw ParameterError("shrinkage: need m >= 16, 0 <= l <= k <= m, 0 <= l' <= m, trials >= 1");
  ShrinkageReport r;
  r.m = m;
  r.k = k;
  r.l = l;
  r.lprime = lp;
  r.trials = trials;
  r.seed = seed;
  r.in_lemma_regime = k <= m / (4.0 * std::log2(static_cast<double>(m)));
  r.survivor_counts.assign(m, 0);
  Rng rng(seed);
  std::vector<bool> in_d(m + 1);
  for (long t = 0; t < trials; ++t) {
    auto d = rng.subset(m, k);
    std::fill(in_d.begin(), in_d.end(), false);
    for (int i : d) {
      in_d[i] = true;
      ++r.survivor_counts[i - 1];
    }
    int kept = 0;
    bool alive = true;
    for (int i = 1; i <= lp; ++i) {
      if (in_d[i]) {
        ++kept;
      } else if (!rng.bit()) {
        alive = false;
      }
    }
    if (alive && kept >= l) ++r.survived;
  }
  r.empirical_survival = static_cast<double>(r.survived) / static_cast<double>(trials);
  r.stderr_survival = std::sqrt(r.empirical_survival * (1 - r.empirical_survival) / static_cast<double>(trials));
  r.tail = shrinkage_tail(m, k, l);
  const int bits = static_cast<int>(mpz_sizeinbase(power(m, l).get_mpz_t(), 2));
  r.union_bound = shrinkage_union(m, k, l, std::min(m, k + bits - 1));
  r.bound = bound(m, k, l);
  // Counts from k-subsets have covariance T p (1 - p) m / (m - 1) (I - J / m),
  // so this scaling makes the statistic chi-square with m - 1 degrees of freedom.
  const double p = static_cast<double>(k) / m;
  const double expected = static_cast<double>(trials) * p;
  const double scale = expected * (1 - p) * m / (m - 1);
  if (k < m)
    for (long c : r.survivor_counts) r.chi_square += (c - expected) * (c - expected) / scale;
  if (k < m) {
    boost::math::chi_squared dist(m - 1);
    r.chi_square_p = boost::math::cdf(boost::math::complement(dist, r.chi_square));
  } else {
    r.chi_square_p = 1;
  }
  return r;
}

Rational size_lower_bound(int m, int k, int l, const BoundFn& bound) {
  if (m < 16 || l < 0 || l > k || k > m) throw ParameterError("size_lower_bound: need m >= 16, 0 <= l <= k <= m");
  Rational b = bound(m, k, l);
  if (b <= 0 || b > 1) throw ParameterError("size_lower_bound: bound " + to_string(b) + " is not in (0, 1]");
  return Rational(1) / b;
}

}  // namespace sosforge
