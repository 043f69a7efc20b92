#pragma once

// Finite-N fidelity metric on the (beta, h) thermal manifold by three
// independent routes: equilibrium fluctuations, finite differences of the
// free energy, and a dense Hubner-formula oracle with its classical /
// non-classical split.

#include "lmg/metric_tensor.hpp"
#include "lmg/model.hpp"

namespace lmg {

// g_bb = var(H)/4, g_hh = beta^2 var(S_z), g_bh = -(beta/2) cov(H, S_z).
MetricTensor2 metric_fluctuations(const ModelParams& params);

struct FdMetric {
  MetricTensor2 tensor;
  // max over components of the relative Richardson disagreement; values above
  // ~1e-4 flag a step too large for the local curvature scale
  double richardson_disagreement;
};

// g_bb = -(N/4) d^2/dbeta^2 (beta f_N), g_hh = -(N beta/4) d^2/dh^2 f_N,
// g_bh = -(N beta/4) d^2/dh dbeta f_N, central differences with one
// Richardson level on exact f_N evaluations. Requires beta - 2 step > 0.
FdMetric metric_fd_free_energy(const ModelParams& params, double step);
FdMetric metric_fd_free_energy(const ModelParams& params);  // step = 1e-3 max(1, beta)

struct MetricSplit {
  MetricTensor2 classical;     // diagonal (Fisher-Rao) part
  MetricTensor2 nonclassical;  // eigenbasis-rotation part
  MetricTensor2 total() const { return classical + nonclassical; }
};

inline constexpr int kBuresDenseMaxSpins = 8;

// Dense oracle: builds rho(beta, h) from the 2^N Hamiltonian, forms drho by
// central differences (two Richardson levels), evaluates the Bures sum
// (1/2) sum_{nm} <n|drho|m><m|drho|n> / (p_n + p_m) in the eigenbasis of rho,
// and splits it into diagonal (classical) and off-diagonal (non-classical)
// parts. Degenerate eigenvalue clusters are rediagonalized against drho_h so
// the split is basis-independent. Resolution envelope: weights below the fd
// rounding floor amplify as (eps/step)^2 / 4p, so keep
// beta * (spectral spread) <~ 35 for split tolerances of 1e-8.
MetricSplit bures_dense(int n, double beta, double h, double step = 1e-3);

}  // namespace lmg
