#pragma once

// Finite-N canonical ensemble in the sector basis: log-domain partition
// function, normalized Gibbs log-weights, and the first/second moments of H
// and S_z that feed the fidelity metric.

#include <vector>

#include "lmg/model.hpp"

namespace lmg {

struct ThermalMoments {
  double mean_energy;
  double var_energy;    // >= 0
  double mean_sz;
  double var_sz;        // >= 0
  double cov_energy_sz;
};

struct SectorLogWeights {
  int s;
  std::vector<double> log_weights;  // index m + s; ln d_S - beta E_SM - ln Z
};

// Immutable once built; safe to share across threads.
class ThermalEnsemble {
 public:
  explicit ThermalEnsemble(const ModelParams& params);

  const ModelParams& params() const { return params_; }
  double log_z() const { return log_z_; }
  const std::vector<SectorLogWeights>& sectors() const { return sectors_; }

  // Weight-space accumulation in a frame shifted to the dominant level, so
  // the variances survive the low-temperature cancellation.
  ThermalMoments moments() const;

 private:
  ModelParams params_;
  double log_z_;
  int s_ref_;  // sector and M of the maximum log-weight
  int m_ref_;
  std::vector<SectorLogWeights> sectors_;
};

// ln Z_N = logsumexp over (S, M) of [ln d_S - beta E_SM], one global
// max-shift, no per-sector storage.
double log_partition(const ModelParams& params);

ThermalMoments moments(const ModelParams& params);

// f_N = -ln Z_N / (N beta).
double free_energy_per_spin_finite(const ModelParams& params);

}  // namespace lmg
