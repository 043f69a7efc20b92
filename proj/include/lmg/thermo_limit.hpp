#pragma once

// Thermodynamic-limit quantities: order-parameter solver, phase
// classification, free energy per spin, the per-spin metric for both phases,
// the reduced 1D paramagnetic metric, and the Ricci scalar of the ordered
// phase. Closed forms whose published version conflicts with independent
// numerics are kept in two variants; `Corrected` is the default and the
// audit routes adjudicate.

#include <optional>

#include "lmg/metric_tensor.hpp"
#include "lmg/numerics.hpp"

namespace lmg {

enum class Phase { Ordered, Paramagnetic, Boundary };

struct PhasePoint {
  double beta;
  double h;
  Phase phase;
  double mu_xy;  // in-plane order parameter, >= 0
  double r;      // sqrt(mu_xy^2 + h^2); solves r = tanh(beta r) when ordered
};

// Unique positive root of r = tanh(beta r); nullopt for beta <= 1, where only
// the trivial root exists. Residual |r - tanh(beta r)| < 1e-14.
std::optional<double> solve_r(double beta);

// Ordered iff the root exceeds |h|; Boundary iff |h| = tanh(beta |h|) within
// 1e-12 (at h = 0 the residual degenerates and |beta - 1| < 1e-12 is used).
PhasePoint classify(double beta, double h);

// arctanh(|h|)/|h| for 0 < |h| < 1; +inf at |h| = 1 (T_c -> 0); 1 at h = 0
// (continuous limit). std::domain_error for |h| > 1.
double critical_beta(double h);

// f = mu_xy^2/2 - ln(2 cosh(beta r)) / beta with mu_xy from classify.
double free_energy_limit(double beta, double h);

// mu_z = -df/dh: h in the ordered phase, tanh(beta h) in the paramagnetic.
double magnetization_z(double beta, double h);

enum class MetricVariant { Corrected, AsPrinted };

struct LimitMetric {
  MetricTensor2 tensor;  // per-spin, lim g/N
  Phase branch;          // Ordered or Paramagnetic
  bool degenerate;       // paramagnetic branch is rank one

  // The degenerate branch is rank one by construction; its determinant is an
  // exact zero rather than the rounding residue of the component products.
  double det() const { return degenerate ? 0.0 : tensor.det(); }
};

// Paramagnetic branch (both variants): (1/4) sech^2(beta h) [[h^2, h beta],
// [h beta, beta^2]]. Ordered branch: g_hh = beta/4, g_bh = 0, and
//   Corrected:  g_bb = r dr/dbeta / 4 = r^2 sech^2(beta r) / (4 D)
//   AsPrinted:  g_bb = r^2 (1 + r^2) / (4 D)
// with D = 1 - beta sech^2(beta r). Throws std::domain_error on the boundary.
LimitMetric metric_limit(double beta, double h, MetricVariant variant = MetricVariant::Corrected);

// Variant-free route: all three components from Richardson central
// differences of free_energy_limit along the self-consistent solution. The
// stencil must not cross the phase boundary. spec.step <= 0 selects
// 1e-3 max(1, beta).
MetricTensor2 metric_limit_numeric(double beta, double h,
                                   const DiffSpec& spec = {0.0, 1, DiffMode::Second});

struct ReducedMetric1D {
  double hbar;         // reduced field beta h
  double coefficient;  // multiplies dhbar (x) dhbar
};

// Corrected: (1/4) sech^2(hbar); AsPrinted: 1/(4 cosh(hbar)).
ReducedMetric1D reduced_metric(double hbar, MetricVariant variant = MetricVariant::Corrected);

// Audit routes for the reduced coefficient. The pullback contracts the 2D
// paramagnetic tensor with dhbar = h dbeta + beta dh; the Fisher-Rao route
// evaluates (1/4) sum_i (dp_i/dhbar)^2 / p_i for the two-outcome distribution
// p_± = (1 ± tanh hbar)/2. Both are variant-free.
double reduced_metric_pullback(double hbar);
double reduced_metric_fisher_rao(double hbar);

enum class RicciMethod { ChristoffelFD, OrthogonalClosedForm, AsPrinted };

// Ricci scalar of the ordered-phase metric (Corrected tensor).
//   ChristoffelFD:        generic 2D curvature by nested central differences.
//   OrthogonalClosedForm: Gaussian-curvature formula for the diagonal metric
//                         diag(Q^2, P^2), analytic derivatives, R = 2K.
//   AsPrinted:            the published formula evaluated verbatim, including
//                         its d/dh derivatives of Q (audit only).
// Throws std::domain_error outside the strictly ordered phase or when the
// ChristoffelFD stencil would cross the boundary.
double ricci_limit(double beta, double h, RicciMethod method = RicciMethod::ChristoffelFD);

}  // namespace lmg
