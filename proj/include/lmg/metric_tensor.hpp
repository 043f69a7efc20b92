#pragma once

namespace lmg {

// Symmetric 2x2 metric tensor in the (beta, h) coordinate chart.
// g_bh is the coefficient of the symmetric dbeta (x) dh part.
struct MetricTensor2 {
  double g_bb = 0.0;
  double g_bh = 0.0;
  double g_hh = 0.0;

  double det() const { return g_bb * g_hh - g_bh * g_bh; }
};

inline MetricTensor2 operator+(const MetricTensor2& a, const MetricTensor2& b) {
  return {a.g_bb + b.g_bb, a.g_bh + b.g_bh, a.g_hh + b.g_hh};
}

inline MetricTensor2 operator-(const MetricTensor2& a, const MetricTensor2& b) {
  return {a.g_bb - b.g_bb, a.g_bh - b.g_bh, a.g_hh - b.g_hh};
}

}  // namespace lmg
