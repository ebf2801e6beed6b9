#include "sosforge/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace sosforge {

double inner(const BlockMatrix& a, const BlockMatrix& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
  return s;
}

BlockMatrix zeros_like(const std::vector<int>& blocks) {
  BlockMatrix out;
  for (int n : blocks) out.push_back(Eigen::MatrixXd::Zero(n, n));
  return out;
}

BlockMatrix identity_like(const std::vector<int>& blocks) {
  BlockMatrix out;
  for (int n : blocks) out.push_back(Eigen::MatrixXd::Identity(n, n));
  return out;
}

double min_eigenvalue(const BlockMatrix& m) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : m) {
    if (b.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  return lo;
}

namespace {

double norm(const BlockMatrix& m) { return std::sqrt(inner(m, m)); }

BlockMatrix axpy(const BlockMatrix& x, double alpha, const BlockMatrix& d) {
  BlockMatrix out = x;
  for (std::size_t k = 0; k < x.size(); ++k) out[k] += alpha * d[k];
  return out;
}

void symmetrize(BlockMatrix& m) {
  for (auto& b : m) b = 0.5 * (b + b.transpose()).eval();
}

// Largest step keeping x + alpha d psd, capped at 1e30.
double max_step(const BlockMatrix& x, const BlockMatrix& d) {
  double step = 1e30;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].rows() == 0) continue;
    Eigen::LLT<Eigen::MatrixXd> llt(x[k]);
    if (llt.info() != Eigen::Success) return 0;
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd li = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(l.rows(), l.cols()));
    Eigen::MatrixXd s = li * d[k] * li.transpose();
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    if (lo < 0) step = std::min(step, -1.0 / lo);
  }
  return step;
}

struct Operator {
  const SdpProblem& p;
  std::vector<std::vector<bool>> nonzero;

  explicit Operator(const SdpProblem& prob) : p(prob) {
    for (const auto& ai : p.a) {
      std::vector<bool> nz;
      for (const auto& blk : ai) nz.push_back(blk.size() > 0 && blk.cwiseAbs().maxCoeff() > 0);
      nonzero.push_back(std::move(nz));
    }
  }

  Eigen::VectorXd apply(const BlockMatrix& x) const {
    Eigen::VectorXd out(p.a.size());
    for (std::size_t i = 0; i < p.a.size(); ++i) {
      double s = 0;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (nonzero[i][k]) s += (p.a[i][k].array() * x[k].array()).sum();
      out[i] = s;
    }
    return out;
  }

  BlockMatrix adjoint(const Eigen::VectorXd& y) const {
    BlockMatrix out = zeros_like(p.blocks);
    for (std::size_t i = 0; i < p.a.size(); ++i)
      for (std::size_t k = 0; k < out.size(); ++k)
        if (nonzero[i][k]) out[k] += y[i] * p.a[i][k];
    return out;
  }
};

}  // namespace

SdpResult solve_sdp(const SdpProblem& p, double tol, int max_iters) {
  const std::size_t m = p.a.size();
  int n = 0;
  for (int b : p.blocks) n += b;
  Operator op(p);
  SdpResult r;

  double bnorm = p.b.size() ? p.b.norm() : 0.0;
  double cnorm = norm(p.c);
  double amax = 0, ratio = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double an = norm(p.a[i]);
    amax = std::max(amax, an);
    ratio = std::max(ratio, (1 + std::abs(p.b[i])) / (1 + an));
  }
  const double xi = std::max({10.0, std::sqrt(static_cast<double>(n)), n * ratio});
  const double eta = std::max({10.0, std::sqrt(static_cast<double>(n)), amax, cnorm});
  BlockMatrix x = identity_like(p.blocks), z = identity_like(p.blocks);
  for (auto& b : x) b *= xi;
  for (auto& b : z) b *= eta;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  for (r.iterations = 0; r.iterations <= max_iters; ++r.iterations) {
    Eigen::VectorXd rp = p.b - op.apply(x);
    BlockMatrix rd = p.c;
    BlockMatrix aty = op.adjoint(y);
    for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= z[k] + aty[k];
    const double mu = n ? inner(x, z) / n : 0.0;
    r.primal_objective = inner(p.c, x);
    r.dual_objective = m ? p.b.dot(y) : 0.0;
    r.primal_residual = (m ? rp.norm() : 0.0) / (1 + bnorm);
    r.dual_residual = norm(rd) / (1 + cnorm);
    r.gap = std::abs(r.primal_objective - r.dual_objective) /
            (1 + std::abs(r.primal_objective) + std::abs(r.dual_objective));
    if (r.primal_residual <= tol && r.dual_residual <= tol && r.gap <= tol) {
      r.converged = true;
      break;
    }
    if (r.iterations == max_iters || !std::isfinite(mu) || norm(x) > 1e14 || norm(z) > 1e14) break;

    BlockMatrix zinv;
    for (const auto& b : z) {
      Eigen::LLT<Eigen::MatrixXd> llt(b);
      if (llt.info() != Eigen::Success) return r;
      zinv.push_back(llt.solve(Eigen::MatrixXd::Identity(b.rows(), b.cols())));
    }

    Eigen::MatrixXd schur(m, m);
    for (std::size_t j = 0; j < m; ++j) {
      BlockMatrix t(x.size());
      for (std::size_t k = 0; k < x.size(); ++k)
        if (op.nonzero[j][k]) t[k] = x[k] * p.a[j][k] * zinv[k];
      for (std::size_t i = 0; i <= j; ++i) {
        double s = 0;
        for (std::size_t k = 0; k < x.size(); ++k)
          if (op.nonzero[j][k] && op.nonzero[i][k]) s += (p.a[i][k].array() * t[k].array()).sum();
        schur(i, j) = schur(j, i) = s;
      }
    }
    Eigen::LDLT<Eigen::MatrixXd> fact(schur);
    if (fact.info() != Eigen::Success) return r;

    BlockMatrix xrdz(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) xrdz[k] = x[k] * rd[k] * zinv[k];
    const Eigen::VectorXd base = rp + op.apply(x) + op.apply(xrdz);
    const Eigen::VectorXd azinv = op.apply(zinv);

    auto direction = [&](double sigma, BlockMatrix& dx, Eigen::VectorXd& dy, BlockMatrix& dz) {
      dy = fact.solve(base - sigma * mu * azinv);
      BlockMatrix ady = op.adjoint(dy);
      dz = rd;
      for (std::size_t k = 0; k < dz.size(); ++k) dz[k] -= ady[k];
      dx.assign(x.size(), Eigen::MatrixXd());
      for (std::size_t k = 0; k < x.size(); ++k)
        dx[k] = sigma * mu * zinv[k] - x[k] - x[k] * dz[k] * zinv[k];
      symmetrize(dx);
    };

    BlockMatrix dx, dz;
    Eigen::VectorXd dy;
    direction(0.0, dx, dy, dz);
    double ap = std::min(1.0, max_step(x, dx)), ad = std::min(1.0, max_step(z, dz));
    double mu_aff = n ? inner(axpy(x, ap, dx), axpy(z, ad, dz)) / n : 0.0;
    double sigma = mu > 0 ? std::clamp(std::pow(mu_aff / mu, 3), 0.0, 1.0) : 0.0;
    direction(sigma, dx, dy, dz);
    ap = std::min(1.0, 0.95 * max_step(x, dx));
    ad = std::min(1.0, 0.95 * max_step(z, dz));
    if (!std::isfinite(ap) || !std::isfinite(ad) || (ap < 1e-12 && ad < 1e-12)) break;
    x = axpy(x, ap, dx);
    z = axpy(z, ad, dz);
    symmetrize(x);
    symmetrize(z);
    y += ad * dy;
  }
  r.x = x;
  r.y = y;
  r.z = z;
  return r;
}

}  // namespace sosforge
