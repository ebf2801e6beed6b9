#pragma once

#include <Eigen/Dense>
#include <vector>

namespace sosforge {

using BlockMatrix = std::vector<Eigen::MatrixXd>;

/// min <C, X> s.t. <A_i, X> = b_i, X psd, X block diagonal with the given
/// block sizes. All A_i and C are symmetric.
struct SdpProblem {
  std::vector<int> blocks;
  BlockMatrix c;
  std::vector<BlockMatrix> a;
  Eigen::VectorXd b;
};

struct SdpResult {
  bool converged = false;
  int iterations = 0;
  BlockMatrix x;
  Eigen::VectorXd y;
  BlockMatrix z;
  double primal_objective = 0;
  double dual_objective = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double gap = 0;
};

double inner(const BlockMatrix& a, const BlockMatrix& b);
BlockMatrix zeros_like(const std::vector<int>& blocks);
BlockMatrix identity_like(const std::vector<int>& blocks);
double min_eigenvalue(const BlockMatrix& m);

/// Infeasible-start primal-dual interior point method with the HKM direction
/// and a Mehrotra-style centering parameter.
SdpResult solve_sdp(const SdpProblem& p, double tol, int max_iters);

}  // namespace sosforge
