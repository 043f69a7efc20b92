#include "lmg/dense.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace lmg {

namespace {

void validate_dense_n(int n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("dense operators need a positive even n, got " +
                                std::to_string(n));
  }
  if (n > kDenseMaxSpins) {
    throw std::invalid_argument("dense operators limited to n <= " +
                                std::to_string(kDenseMaxSpins) + " (2^n matrix), got " +
                                std::to_string(n));
  }
}

}  // namespace

Eigen::MatrixXd dense_hamiltonian(int n, double h) {
  validate_dense_n(n);
  const int dim = 1 << n;
  Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(dim, dim);

  // bit = 1 means sz = +1; sx_i sx_j + sy_i sy_j swaps anti-aligned pairs
  // with amplitude 2 and annihilates aligned ones
  for (int b = 0; b < dim; ++b) {
    int up = std::popcount(static_cast<unsigned>(b));
    ham(b, b) = -h * (2 * up - n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        bool bi = (b >> i) & 1;
        bool bj = (b >> j) & 1;
        if (bi != bj) {
          int flipped = b ^ (1 << i) ^ (1 << j);
          ham(b, flipped) -= 2.0 / n;
        }
      }
    }
  }
  return ham;
}

Eigen::VectorXd dense_sz_diagonal(int n) {
  validate_dense_n(n);
  const int dim = 1 << n;
  Eigen::VectorXd sz(dim);
  for (int b = 0; b < dim; ++b) {
    int up = std::popcount(static_cast<unsigned>(b));
    sz(b) = 0.5 * (2 * up - n);
  }
  return sz;
}

}  // namespace lmg
