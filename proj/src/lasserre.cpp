#include "sosforge/lasserre.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sosforge/sdp.hpp"

namespace sosforge {

std::size_t CoefficientSystem::multiplier_count() const {
  std::size_t n = 0;
  for (const auto& b : multipliers) n += b.basis.size();
  return n;
}

std::size_t CoefficientSystem::gram_entry_count() const {
  std::size_t n = 0;
  for (const auto& b : grams) n += b.columns.size();
  return n;
}

namespace {

std::vector<Monomial> monomials_up_to(const std::vector<VarId>& vars, int d) {
  std::vector<Monomial> out;
  const int n = static_cast<int>(vars.size());
  for (int deg = 0; deg <= std::min(d, n); ++deg) {
    std::vector<int> idx(deg);
    for (int i = 0; i < deg; ++i) idx[i] = i;
    for (;;) {
      Monomial m;
      for (int i : idx) m.push_back(vars[i]);
      out.push_back(std::move(m));
      int i = deg - 1;
      while (i >= 0 && idx[i] == n - deg + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < deg; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::size_t count_up_to(const std::vector<Monomial>& basis, int d) {
  if (d < 0) return 0;
  return static_cast<std::size_t>(std::count_if(basis.begin(), basis.end(), [&](const Monomial& m) {
    return static_cast<int>(m.size()) <= d;
  }));
}

using Index = std::unordered_map<Monomial, std::size_t, MonomialHash>;

std::vector<MapEntry> entries(const Polynomial& p, const Index& index, const Rational& scale) {
  std::vector<MapEntry> out;
  for (const auto& [m, c] : p.terms()) out.push_back({index.at(m), c * scale});
  return out;
}

}  // namespace

CoefficientSystem build_coefficient_system(const ConstraintSystem& sys, int d) {
  if (d < 0) throw std::invalid_argument("build_coefficient_system: degree must be nonnegative");
  CoefficientSystem cs;
  cs.system = sys;
  cs.system.collect_vars();
  cs.degree = d;
  std::vector<VarId> vars = cs.system.vars;
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  cs.basis = monomials_up_to(vars, d);
  Index index;
  for (std::size_t i = 0; i < cs.basis.size(); ++i) index[cs.basis[i]] = i;
  cs.rhs.assign(cs.basis.size(), Rational(0));
  cs.rhs[0] = -1;

  auto gram = [&](std::optional<std::size_t> constraint, const Polynomial& h, int half) {
    GramBlock g;
    g.constraint = constraint;
    g.basis.assign(cs.basis.begin(), cs.basis.begin() + static_cast<long>(count_up_to(cs.basis, half)));
    for (std::size_t a = 0; a < g.basis.size(); ++a)
      for (std::size_t b = a; b < g.basis.size(); ++b) {
        Polynomial p = Polynomial::term(monomial_product(g.basis[a], g.basis[b]), 1) * h;
        g.columns.push_back(entries(p, index, a == b ? 1 : 2));
      }
    cs.grams.push_back(std::move(g));
  };

  for (std::size_t i = 0; i < cs.system.constraints.size(); ++i) {
    const auto& c = cs.system.constraints[i];
    const int deg = c.poly.degree();
    if (deg > d) continue;
    if (c.rel == Relation::EqZero) {
      MultiplierBlock mb;
      mb.constraint = i;
      mb.basis.assign(cs.basis.begin(), cs.basis.begin() + static_cast<long>(count_up_to(cs.basis, d - deg)));
      for (const auto& m : mb.basis) mb.columns.push_back(entries(Polynomial::term(m, 1) * c.poly, index, 1));
      cs.multipliers.push_back(std::move(mb));
    } else {
      gram(i, c.poly, (d - deg) / 2);
    }
  }
  gram(std::nullopt, Polynomial::constant(1), d / 2);
  return cs;
}

std::string status_text(SdpStatus s) {
  switch (s) {
    case SdpStatus::Feasible:
      return "Feasible";
    case SdpStatus::Infeasible:
      return "Infeasible";
    case SdpStatus::Unknown:
      break;
  }
  return "Unknown";
}

namespace {

// Column layout: multiplier coefficients first, then Gram upper triangles.
std::vector<const std::vector<MapEntry>*> all_columns(const CoefficientSystem& cs) {
  std::vector<const std::vector<MapEntry>*> cols;
  for (const auto& b : cs.multipliers)
    for (const auto& c : b.columns) cols.push_back(&c);
  for (const auto& b : cs.grams)
    for (const auto& c : b.columns) cols.push_back(&c);
  return cols;
}

// Reduced row echelon form of [E | rhs] over the rationals.
struct Echelon {
  bool consistent = true;
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Rational>> rows;  // full width
  std::vector<Rational> rhs;
};

Echelon echelon(const CoefficientSystem& cs) {
  auto cols = all_columns(cs);
  const std::size_t nr = cs.basis.size(), nc = cols.size();
  std::vector<std::vector<Rational>> a(nr, std::vector<Rational>(nc));
  for (std::size_t j = 0; j < nc; ++j)
    for (const auto& e : *cols[j]) a[e.row][j] += e.value;
  std::vector<Rational> b = cs.rhs;
  Echelon out;
  std::size_t r = 0;
  for (std::size_t j = 0; j < nc && r < nr; ++j) {
    std::size_t p = r;
    while (p < nr && a[p][j] == 0) ++p;
    if (p == nr) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = 1 / a[r][j];
    for (std::size_t k = j; k < nc; ++k)
      if (a[r][k] != 0) a[r][k] *= inv;
    b[r] *= inv;
    std::vector<std::size_t> support;
    for (std::size_t k = j; k < nc; ++k)
      if (a[r][k] != 0) support.push_back(k);
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || a[i][j] == 0) continue;
      Rational f = a[i][j];
      for (std::size_t k : support) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    out.pivots.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < nr; ++i)
    if (b[i] != 0) out.consistent = false;
  a.resize(r);
  b.resize(r);
  out.rows = std::move(a);
  out.rhs = std::move(b);
  return out;
}

Eigen::MatrixXd dense_map(const CoefficientSystem& cs, std::size_t first, std::size_t last) {
  auto cols = all_columns(cs);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<long>(cs.basis.size()), static_cast<long>(last - first));
  for (std::size_t j = first; j < last; ++j)
    for (const auto& e : *cols[j]) m(static_cast<long>(e.row), static_cast<long>(j - first)) += e.value.get_d();
  return m;
}

Eigen::VectorXd dense_rhs(const CoefficientSystem& cs) {
  Eigen::VectorXd c(static_cast<long>(cs.rhs.size()));
  for (std::size_t i = 0; i < cs.rhs.size(); ++i) c[static_cast<long>(i)] = cs.rhs[i].get_d();
  return c;
}

// Gram entries in column order from symmetric matrices.
Eigen::VectorXd gram_vector(const CoefficientSystem& cs, const std::vector<Eigen::MatrixXd>& q) {
  Eigen::VectorXd v(static_cast<long>(cs.gram_entry_count()));
  long t = 0;
  for (std::size_t j = 0; j < cs.grams.size(); ++j) {
    const long n = static_cast<long>(cs.grams[j].basis.size());
    for (long a = 0; a < n; ++a)
      for (long b = a; b < n; ++b) v[t++] = q[j](a, b);
  }
  return v;
}

// Per Gram block, the symmetric matrices A_alpha with <A_alpha, Q> equal to
// the Gram part of the coefficient of basis monomial alpha, contracted with w.
std::vector<Eigen::MatrixXd> contract(const CoefficientSystem& cs, const Eigen::VectorXd& w) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& g : cs.grams) {
    const long n = static_cast<long>(g.basis.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::size_t t = 0;
    for (long a = 0; a < n; ++a)
      for (long b = a; b < n; ++b, ++t) {
        double s = 0;
        for (const auto& e : g.columns[t]) s += w[static_cast<long>(e.row)] * e.value.get_d();
        if (a == b) {
          m(a, a) = s;
        } else {
          m(a, b) = m(b, a) = s / 2;
        }
      }
    out.push_back(std::move(m));
  }
  return out;
}

Eigen::MatrixXd left_null(const Eigen::MatrixXd& ag, long rows) {
  if (ag.cols() == 0) return Eigen::MatrixXd::Identity(rows, rows);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ag);
  qr.setThreshold(1e-10);
  const long r = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, rows);
  return q.rightCols(rows - r);
}

Eigen::VectorXd solve_multipliers(const CoefficientSystem& cs, const Eigen::MatrixXd& ag,
                                  const std::vector<Eigen::MatrixXd>& q, double* residual) {
  const std::size_t ng = cs.multiplier_count();
  Eigen::MatrixXd agram = dense_map(cs, ng, ng + cs.gram_entry_count());
  Eigen::VectorXd c = dense_rhs(cs);
  Eigen::VectorXd rest = c - agram * gram_vector(cs, q);
  Eigen::VectorXd g = ng ? Eigen::VectorXd(ag.colPivHouseholderQr().solve(rest)) : Eigen::VectorXd();
  Eigen::VectorXd r = ng ? Eigen::VectorXd(rest - ag * g) : rest;
  if (residual) *residual = r.norm();
  return g;
}

std::vector<Eigen::VectorXd> split_multipliers(const CoefficientSystem& cs, const Eigen::VectorXd& g) {
  std::vector<Eigen::VectorXd> out;
  long t = 0;
  for (const auto& b : cs.multipliers) {
    const long n = static_cast<long>(b.basis.size());
    out.push_back(g.segment(t, n));
    t += n;
  }
  return out;
}

struct Projected {
  Eigen::MatrixXd ag;
  Eigen::MatrixXd null;            // basis rows x kept
  std::vector<BlockMatrix> a;      // reduced constraints on the Gram blocks
  Eigen::VectorXd c;
  std::vector<int> blocks;
};

Projected project(const CoefficientSystem& cs) {
  Projected p;
  const long nb = static_cast<long>(cs.basis.size());
  p.ag = dense_map(cs, 0, cs.multiplier_count());
  Eigen::MatrixXd n = left_null(p.ag, nb);
  for (const auto& g : cs.grams) p.blocks.push_back(static_cast<int>(g.basis.size()));
  Eigen::VectorXd c = dense_rhs(cs);
  std::vector<BlockMatrix> rows;
  Eigen::MatrixXd flat;
  long width = 0;
  for (int b : p.blocks) width += b * b;
  flat.resize(width, n.cols());
  for (long i = 0; i < n.cols(); ++i) {
    BlockMatrix a = contract(cs, n.col(i));
    long t = 0;
    for (const auto& blk : a)
      for (long x = 0; x < blk.size(); ++x) flat(t++, i) = blk.data()[x];
    rows.push_back(std::move(a));
  }
  std::vector<long> keep;
  if (n.cols() > 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(flat);
    qr.setThreshold(1e-10);
    for (long i = 0; i < qr.rank(); ++i) keep.push_back(qr.colsPermutation().indices()[i]);
    std::sort(keep.begin(), keep.end());
  }
  p.null.resize(nb, static_cast<long>(keep.size()));
  p.c.resize(static_cast<long>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    p.null.col(static_cast<long>(i)) = n.col(keep[i]);
    p.c[static_cast<long>(i)] = n.col(keep[i]).dot(c);
    p.a.push_back(std::move(rows[keep[i]]));
  }
  return p;
}

std::vector<double> block_min_eigenvalues(const std::vector<Eigen::MatrixXd>& q) {
  std::vector<double> out;
  for (const auto& b : q) out.push_back(min_eigenvalue({b}));
  return out;
}

}  // namespace

SdpOutcome solve_feasibility(const CoefficientSystem& cs, const SdpOptions& opt) {
  SdpOutcome out;
  out.degree = cs.degree;

  Echelon ech = echelon(cs);
  if (!ech.consistent) {
    // No choice of coefficients reaches -1 even without psd constraints.
    out.status = SdpStatus::Infeasible;
    out.message = "linear system inconsistent";
    Eigen::MatrixXd e = dense_map(cs, 0, cs.multiplier_count() + cs.gram_entry_count());
    Eigen::VectorXd c = dense_rhs(cs);
    Eigen::VectorXd r = c;
    if (e.cols() > 0) r = c - e * Eigen::VectorXd(e.colPivHouseholderQr().solve(c));
    if (std::abs(r[0]) > 1e-12) {
      r /= r[0];
      out.evidence.assign(r.data(), r.data() + r.size());
    }
    out.evidence_min_eigenvalue = 0;
    return out;
  }

  Projected p = project(cs);
  const long m = static_cast<long>(p.a.size());
  if (m == 0) {
    std::vector<Eigen::MatrixXd> q;
    for (int b : p.blocks) q.push_back(Eigen::MatrixXd::Identity(b, b));
    out.g = split_multipliers(cs, solve_multipliers(cs, p.ag, q, &out.residual));
    out.gram = q;
    out.min_eigenvalues = block_min_eigenvalues(q);
    out.lambda = -1;
    out.status = out.residual <= opt.tol_eq ? SdpStatus::Feasible : SdpStatus::Unknown;
    out.message = "no constraints on the Gram blocks";
    return out;
  }

  // Phase one: S psd, mu >= 0, Gram = S + (1 - mu) I, minimise mu.
  SdpProblem sp;
  sp.blocks = p.blocks;
  sp.blocks.push_back(1);
  sp.c = zeros_like(sp.blocks);
  sp.c.back()(0, 0) = 1;
  sp.b.resize(m);
  for (long i = 0; i < m; ++i) {
    BlockMatrix a = p.a[static_cast<std::size_t>(i)];
    double tr = 0;
    for (const auto& blk : a) tr += blk.trace();
    a.push_back(Eigen::MatrixXd::Constant(1, 1, -tr));
    sp.a.push_back(std::move(a));
    sp.b[i] = p.c[i] - tr;
  }
  SdpResult res = solve_sdp(sp, 1e-9, opt.max_iters);
  out.iterations = res.iterations;
  if (!res.converged) {
    out.status = SdpStatus::Unknown;
    out.message = "interior point method did not converge";
    return out;
  }
  const double mu = 0.5 * (res.primal_objective + res.dual_objective);
  out.lambda = mu - 1;
  if (out.lambda <= -opt.tol_psd) {
    std::vector<Eigen::MatrixXd> q;
    for (std::size_t j = 0; j < p.blocks.size(); ++j)
      q.push_back(res.x[j] + (1 - res.x.back()(0, 0)) * Eigen::MatrixXd::Identity(p.blocks[j], p.blocks[j]));
    out.g = split_multipliers(cs, solve_multipliers(cs, p.ag, q, &out.residual));
    out.gram = q;
    out.min_eigenvalues = block_min_eigenvalues(q);
    double lo = *std::min_element(out.min_eigenvalues.begin(), out.min_eigenvalues.end());
    if (out.residual <= opt.tol_eq && lo >= -opt.tol_psd) {
      out.status = SdpStatus::Feasible;
      out.message = "strictly feasible Gram matrices found";
    } else {
      out.status = SdpStatus::Unknown;
      out.message = "numeric solution fails the tolerances";
    }
    return out;
  }
  if (out.lambda >= opt.tol_psd) {
    Eigen::VectorXd l = -(p.null * res.y);
    if (l[0] <= 1e-12) {
      out.status = SdpStatus::Unknown;
      out.message = "dual functional does not normalise";
      return out;
    }
    l /= l[0];
    out.evidence.assign(l.data(), l.data() + l.size());
    auto moments = contract(cs, l);
    auto eig = block_min_eigenvalues(moments);
    out.evidence_min_eigenvalue = *std::min_element(eig.begin(), eig.end());
    out.status = SdpStatus::Infeasible;
    out.message = "no psd Gram matrices satisfy the identity";
    return out;
  }
  out.status = SdpStatus::Unknown;
  out.message = "phase-one optimum on the boundary";
  return out;
}

namespace {

std::optional<std::vector<std::vector<Rational>>> exact_ldl(std::vector<std::vector<Rational>> a,
                                                           std::vector<Rational>& d) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> l(n, std::vector<Rational>(n));
  d.assign(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    const Rational pivot = a[k][k];
    if (pivot < 0) return std::nullopt;
    if (pivot == 0) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (a[i][k] != 0) return std::nullopt;
      continue;
    }
    d[k] = pivot;
    l[k][k] = 1;
    for (std::size_t i = k + 1; i < n; ++i) l[i][k] = a[i][k] / pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (l[i][k] == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j)
        if (a[k][j] != 0) a[i][j] -= l[i][k] * a[k][j];
    }
  }
  return l;
}

std::optional<SosCertificate> assemble(const CoefficientSystem& cs, const std::vector<Rational>& z) {
  SosCertificate cert;
  cert.target = Polynomial::constant(-1);
  std::size_t t = 0;
  for (const auto& b : cs.multipliers) {
    PolynomialBuilder g;
    for (const auto& m : b.basis) g.add(m, z[t++]);
    Polynomial gp = g.build();
    if (!gp.is_zero()) cert.equality.push_back({std::move(gp), b.constraint});
  }
  for (const auto& b : cs.grams) {
    const std::size_t n = b.basis.size();
    std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = a; c < n; ++c) q[a][c] = q[c][a] = z[t++];
    std::vector<Rational> d;
    auto l = exact_ldl(q, d);
    if (!l) return std::nullopt;
    std::vector<Polynomial> gens;
    for (std::size_t k = 0; k < n; ++k) {
      if (d[k] == 0) continue;
      PolynomialBuilder pb;
      for (std::size_t i = k; i < n; ++i)
        if ((*l)[i][k] != 0) pb.add(b.basis[i], (*l)[i][k]);
      Polynomial pk = pb.build();
      for (const auto& r : rational_square_split(d[k])) gens.push_back(pk * r);
    }
    if (gens.empty()) continue;
    if (b.constraint)
      cert.inequality.push_back({std::move(gens), *b.constraint});
    else
      for (auto& g : gens) cert.free.push_back(std::move(g));
  }
  return cert;
}

}  // namespace

std::optional<SosCertificate> extract_exact(const SdpOutcome& outcome, const CoefficientSystem& cs,
                                            const SdpOptions& opt) {
  if (outcome.status != SdpStatus::Feasible) return std::nullopt;
  Echelon ech = echelon(cs);
  if (!ech.consistent) return std::nullopt;
  const std::size_t ng = cs.multiplier_count(), nc = ng + cs.gram_entry_count();

  std::vector<Eigen::VectorXd> candidates;
  auto pack = [&](const std::vector<Eigen::VectorXd>& g, const std::vector<Eigen::MatrixXd>& q) {
    Eigen::VectorXd v(static_cast<long>(nc));
    long t = 0;
    for (const auto& b : g)
      for (long i = 0; i < b.size(); ++i) v[t++] = b[i];
    Eigen::VectorXd gv = gram_vector(cs, q);
    v.tail(gv.size()) = gv;
    return v;
  };

  // Low-rank solutions from trace minimisation tend to round cleanly.
  Projected p = project(cs);
  if (p.a.empty()) {
    std::vector<Eigen::MatrixXd> q;
    for (int b : p.blocks) q.push_back(Eigen::MatrixXd::Zero(b, b));
    candidates.push_back(pack(split_multipliers(cs, solve_multipliers(cs, p.ag, q, nullptr)), q));
  } else {
    SdpProblem sp;
    sp.blocks = p.blocks;
    sp.c = identity_like(sp.blocks);
    sp.a = p.a;
    sp.b = p.c;
    SdpResult res = solve_sdp(sp, 1e-10, opt.max_iters);
    if (res.converged) {
      std::vector<Eigen::MatrixXd> q(res.x.begin(), res.x.end());
      candidates.push_back(pack(split_multipliers(cs, solve_multipliers(cs, p.ag, q, nullptr)), q));
    }
  }
  candidates.push_back(pack(outcome.g, outcome.gram));

  std::vector<bool> is_pivot(nc, false);
  for (std::size_t c : ech.pivots) is_pivot[c] = true;
  for (const auto& cand : candidates)
    for (long den = 1; den <= 1000000; den *= 10) {
      std::vector<Rational> z(nc);
      for (std::size_t j = 0; j < nc; ++j)
        if (!is_pivot[j]) z[j] = approximate(cand[static_cast<long>(j)], den);
      for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        Rational v = ech.rhs[r];
        for (std::size_t j = ech.pivots[r] + 1; j < nc; ++j)
          if (!is_pivot[j] && ech.rows[r][j] != 0) v -= ech.rows[r][j] * z[j];
        z[ech.pivots[r]] = v;
      }
      auto cert = assemble(cs, z);
      if (!cert) continue;
      try {
        check_certificate(cs.system, *cert);
      } catch (const CertificateError&) {
        continue;
      }
      return cert;
    }
  return std::nullopt;
}

DegreeSearch min_degree(const ConstraintSystem& sys, int d_max, const SdpOptions& opt) {
  DegreeSearch out;
  for (int d = 0; d <= d_max; ++d) {
    CoefficientSystem cs = build_coefficient_system(sys, d);
    SdpOutcome o = solve_feasibility(cs, opt);
    if (o.status == SdpStatus::Feasible) {
      o.exact = extract_exact(o, cs, opt);
      out.degree = d;
      out.exact = o.exact.has_value();
      out.certificate = o.exact;
      out.outcomes.push_back(std::move(o));
      return out;
    }
    out.outcomes.push_back(std::move(o));
  }
  return out;
}

namespace {

std::string label(const Monomial& m) { return m.empty() ? "1" : monomial_text(m); }

}  // namespace

nlohmann::json outcome_to_json(const SdpOutcome& o, const CoefficientSystem& cs) {
  nlohmann::json j;
  j["status"] = status_text(o.status);
  j["degree"] = o.degree;
  j["message"] = o.message;
  j["residual"] = o.residual;
  j["lambda"] = o.lambda;
  j["iterations"] = o.iterations;
  j["min_eigenvalues"] = o.min_eigenvalues;
  j["basis_size"] = cs.basis.size();
  nlohmann::json g = nlohmann::json::array();
  for (std::size_t b = 0; b < o.g.size() && b < cs.multipliers.size(); ++b) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (long i = 0; i < o.g[b].size(); ++i) coeffs[label(cs.multipliers[b].basis[i])] = o.g[b][i];
    g.push_back({{"constraint", cs.multipliers[b].constraint}, {"coefficients", coeffs}});
  }
  j["g"] = g;
  nlohmann::json grams = nlohmann::json::array();
  for (std::size_t b = 0; b < o.gram.size() && b < cs.grams.size(); ++b) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& m : cs.grams[b].basis) basis.push_back(label(m));
    nlohmann::json mat = nlohmann::json::array();
    for (long r = 0; r < o.gram[b].rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (long c = 0; c < o.gram[b].cols(); ++c) row.push_back(o.gram[b](r, c));
      mat.push_back(row);
    }
    nlohmann::json entry = {{"basis", basis}, {"matrix", mat}};
    entry["constraint"] = cs.grams[b].constraint ? nlohmann::json(*cs.grams[b].constraint) : nlohmann::json();
    grams.push_back(entry);
  }
  j["gram"] = grams;
  if (!o.evidence.empty()) {
    nlohmann::json ev = nlohmann::json::object();
    for (std::size_t i = 0; i < o.evidence.size(); ++i) ev[label(cs.basis[i])] = o.evidence[i];
    j["evidence"] = ev;
    j["evidence_min_eigenvalue"] = o.evidence_min_eigenvalue;
  }
  j["exact"] = o.exact.has_value();
  return j;
}

}  // namespace sosforge
