#pragma once

// Dense product-basis operators for tiny N. These back the brute-force
// oracles; everything else works sector-wise and never touches 2^N matrices.

#include <Eigen/Dense>

namespace lmg {

inline constexpr int kDenseMaxSpins = 12;

// H = -(1/N) sum_{i<j} (sx_i sx_j + sy_i sy_j) - h sum_i sz_i as a real
// symmetric 2^N x 2^N matrix. Throws std::invalid_argument for odd N or
// N > kDenseMaxSpins.
Eigen::MatrixXd dense_hamiltonian(int n, double h);

// Diagonal of S_z = (1/2) sum_i sz_i in the same product basis.
Eigen::VectorXd dense_sz_diagonal(int n);

}  // namespace lmg
