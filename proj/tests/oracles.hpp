#pragma once

// Test-only brute-force oracles, built independently of the library paths
// they check. Everything here works in the 2^n product basis with bit = 1
// meaning sz = +1.

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <vector>

namespace oracles {

// Total-spin Casimir S^2 = Sx^2 + Sy^2 + Sz^2.
inline Eigen::MatrixXd total_spin_squared(int n) {
  const int dim = 1 << n;
  Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    int up = std::popcount(static_cast<unsigned>(b));
    double sz_sum = 2.0 * up - n;
    s2(b, b) = 0.25 * (2.0 * n + sz_sum * sz_sum);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (((b >> i) & 1) != ((b >> j) & 1)) {
          s2(b, b ^ (1 << i) ^ (1 << j)) += 1.0;
        }
      }
    }
  }
  return s2;
}

// Count spin-S multiplets by diagonalizing S^2 and binning eigenvalues at
// S(S+1); returns d_S for S = 0..n/2.
inline std::vector<long> multiplet_counts(int n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(total_spin_squared(n));
  std::vector<long> counts(n / 2 + 1, 0);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double val = es.eigenvalues()(i);
    for (int s = 0; s <= n / 2; ++s) {
      if (std::abs(val - s * (s + 1.0)) < 1e-6) {
        ++counts[s];
        break;
      }
    }
  }
  std::vector<long> d(n / 2 + 1, 0);
  for (int s = 0; s <= n / 2; ++s) d[s] = counts[s] / (2 * s + 1);
  return d;
}

// Independent rebuild of the isotropic Hamiltonian for use as a thermal
// oracle: -(1/n) sum_{i<j} (sx sx + sy sy) - h sum sz.
inline Eigen::MatrixXd hamiltonian(int n, double h) {
  const int dim = 1 << n;
  Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    int up = std::popcount(static_cast<unsigned>(b));
    ham(b, b) = -h * (2.0 * up - n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (((b >> i) & 1) != ((b >> j) & 1)) {
          ham(b, b ^ (1 << i) ^ (1 << j)) -= 2.0 / n;
        }
      }
    }
  }
  return ham;
}

inline Eigen::VectorXd sz_diagonal(int n) {
  const int dim = 1 << n;
  Eigen::VectorXd sz(dim);
  for (int b = 0; b < dim; ++b) {
    sz(b) = 0.5 * (2.0 * std::popcount(static_cast<unsigned>(b)) - n);
  }
  return sz;
}

struct TraceMoments {
  double mean_h;
  double var_h;
  double mean_sz;
  double var_sz;
  double cov;
};

// Gibbs-state expectation values by dense traces, energies shifted to the
// ground state for stability.
inline TraceMoments trace_moments(int n, double beta, double h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian(n, h));
  const Eigen::VectorXd& e = es.eigenvalues();
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::VectorXd szd = sz_diagonal(n);

  double e0 = e.minCoeff();
  Eigen::VectorXd w = (-(beta) * (e.array() - e0)).exp();
  w /= w.sum();

  // <i|Sz|i> and <i|Sz^2|i>; valid under degeneracy because weights are
  // constant on any subspace the solver may have mixed
  const int dim = static_cast<int>(e.size());
  double m_de = 0, m_de2 = 0, m_sz = 0, m_sz2 = 0, m_desz = 0;
  for (int i = 0; i < dim; ++i) {
    double de = e(i) - e0;
    double sz_i = 0.0, sz2_i = 0.0;
    for (int b = 0; b < dim; ++b) {
      double amp2 = v(b, i) * v(b, i);
      sz_i += amp2 * szd(b);
      sz2_i += amp2 * szd(b) * szd(b);
    }
    m_de += w(i) * de;
    m_de2 += w(i) * de * de;
    m_sz += w(i) * sz_i;
    m_sz2 += w(i) * sz2_i;
    m_desz += w(i) * de * sz_i;
  }
  TraceMoments out;
  out.mean_h = e0 + m_de;
  out.var_h = m_de2 - m_de * m_de;
  out.mean_sz = m_sz;
  out.var_sz = m_sz2 - m_sz * m_sz;
  out.cov = m_desz - m_de * m_sz;
  return out;
}

}  // namespace oracles
