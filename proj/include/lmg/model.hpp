#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmg {

// One thermal state of the isotropic infinite-range spin model: N spins at
// inverse temperature beta in a transverse field h (k_B = 1, dimensionless).
struct ModelParams {
  int n;
  double beta;
  double h;

  ModelParams(int n_, double beta_, double h_) : n(n_), beta(beta_), h(h_) {
    if (n < 2 || n % 2 != 0) {
      throw std::invalid_argument("ModelParams: n must be a positive even integer, got " +
                                  std::to_string(n));
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw std::invalid_argument("ModelParams: beta must be finite and > 0");
    }
    if (!std::isfinite(h)) {
      throw std::invalid_argument("ModelParams: h must be finite");
    }
  }
};

}  // namespace lmg
