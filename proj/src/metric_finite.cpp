#include "lmg/metric_finite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lmg/dense.hpp"
#include "lmg/numerics.hpp"
#include "lmg/thermal.hpp"

namespace lmg {

MetricTensor2 metric_fluctuations(const ModelParams& params) {
  ThermalMoments m = moments(params);
  MetricTensor2 g;
  g.g_bb = 0.25 * m.var_energy;
  g.g_hh = params.beta * params.beta * m.var_sz;
  g.g_bh = -0.5 * params.beta * m.cov_energy_sz;
  return g;
}

FdMetric metric_fd_free_energy(const ModelParams& params, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("metric_fd_free_energy: step must be > 0");
  if (!(params.beta - 2.0 * step > 0.0)) {
    throw std::invalid_argument("metric_fd_free_energy: beta - 2 step must stay positive");
  }

  const int n = params.n;
  const double beta = params.beta;
  const double h = params.h;
  DiffSpec second{step, 1, DiffMode::Second};
  DiffSpec mixed{step, 1, DiffMode::Mixed};

  auto beta_f = [&](double b) { return b * free_energy_per_spin_finite({n, b, h}); };
  auto f_of_h = [&](double hh) { return free_energy_per_spin_finite({n, beta, hh}); };
  auto f_of_bh = [&](double b, double hh) { return free_energy_per_spin_finite({n, b, hh}); };

  DiffResult d_bb = central_diff_full(beta_f, beta, second);
  DiffResult d_hh = central_diff_full(f_of_h, h, second);
  DiffResult d_bh = mixed_partial_full(f_of_bh, beta, h, mixed);

  FdMetric out;
  out.tensor.g_bb = -0.25 * n * d_bb.value;
  out.tensor.g_hh = -0.25 * n * beta * d_hh.value;
  out.tensor.g_bh = -0.25 * n * beta * d_bh.value;

  auto rel = [](const DiffResult& d) { return d.error_estimate / std::max(std::abs(d.value), 1.0); };
  out.richardson_disagreement = std::max({rel(d_bb), rel(d_hh), rel(d_bh)});
  return out;
}

FdMetric metric_fd_free_energy(const ModelParams& params) {
  return metric_fd_free_energy(params, 1e-3 * std::max(1.0, params.beta));
}

// ---------------------------------------------------------------------------
// Dense Bures oracle
// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd gibbs_state(int n, double beta, double h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian(n, h));
  const Eigen::VectorXd& energies = es.eigenvalues();
  double e0 = energies.minCoeff();
  Eigen::VectorXd w = (-(beta) * (energies.array() - e0)).exp();
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

// Two Richardson levels on the matrix-valued central difference; the
// h-direction truncation must stay below the 1e-8 split tolerance even at
// beta * M ~ 25.
Eigen::MatrixXd drho_richardson2(const std::function<Eigen::MatrixXd(double)>& rho, double x,
                                 double step) {
  auto d0 = [&](double s) -> Eigen::MatrixXd { return (rho(x + s) - rho(x - s)) / (2.0 * s); };
  Eigen::MatrixXd t00 = d0(step);
  Eigen::MatrixXd t10 = d0(step / 2.0);
  Eigen::MatrixXd t20 = d0(step / 4.0);
  Eigen::MatrixXd t11 = (4.0 * t10 - t00) / 3.0;
  Eigen::MatrixXd t21 = (4.0 * t20 - t10) / 3.0;
  return (16.0 * t21 - t11) / 15.0;
}

}  // namespace

MetricSplit bures_dense(int n, double beta, double h, double step) {
  if (n < 2 || n % 2 != 0 || n > kBuresDenseMaxSpins) {
    throw std::invalid_argument("bures_dense: n must be even and <= 8");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("bures_dense: beta must be > 0");
  if (!(step > 0.0) || !(beta - step > 0.0)) {
    throw std::invalid_argument("bures_dense: step must satisfy 0 < step < beta");
  }

  Eigen::MatrixXd drho_b =
      drho_richardson2([&](double b) { return gibbs_state(n, b, h); }, beta, step);
  Eigen::MatrixXd drho_h =
      drho_richardson2([&](double hh) { return gibbs_state(n, beta, hh); }, h, step);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gibbs_state(n, beta, h));
  Eigen::VectorXd p = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd vecs = es.eigenvectors();
  const int dim = static_cast<int>(p.size());

  // Within each near-degenerate cluster of rho the solver basis is arbitrary;
  // rediagonalizing the drho_h block there recovers the basis in which the
  // commuting family is diagonal, which is what the classical/non-classical
  // split is defined against. The gap test is relative: an absolute test
  // would chain the whole exponential tail of tiny weights into one cluster
  // and mix states of very different p.
  constexpr double kClusterGap = 1e-9;
  int start = 0;
  while (start < dim) {
    int end = start + 1;
    while (end < dim && p(end) - p(end - 1) < kClusterGap * std::max(p(end), 1e-300)) ++end;
    int len = end - start;
    if (len > 1) {
      Eigen::MatrixXd block =
          vecs.middleCols(start, len).transpose() * drho_h * vecs.middleCols(start, len);
      block = 0.5 * (block + block.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bs(block);
      vecs.middleCols(start, len) = (vecs.middleCols(start, len) * bs.eigenvectors()).eval();
    }
    start = end;
  }

  Eigen::MatrixXd a = vecs.transpose() * drho_b * vecs;  // <n|drho_beta|m>
  Eigen::MatrixXd b = vecs.transpose() * drho_h * vecs;  // <n|drho_h|m>

  MetricSplit out;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double denom = p(i) + p(j);
      if (denom < 1e-300) continue;  // null subspaces do not contribute
      double w = 0.5 / denom;
      MetricTensor2& part = (i == j) ? out.classical : out.nonclassical;
      part.g_bb += w * a(i, j) * a(j, i);
      part.g_bh += w * a(i, j) * b(j, i);
      part.g_hh += w * b(i, j) * b(j, i);
    }
  }
  return out;
}

}  // namespace lmg
