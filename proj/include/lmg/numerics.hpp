#pragma once

// Shared numerical kernels: stable log-sum-exp, bracketed root finding, and
// Richardson-extrapolated central differences. All routines are deterministic.

#include <functional>
#include <span>

#include "lmg/metric_tensor.hpp"

namespace lmg {

// Stable log(sum(exp(log_terms))). Entries may be -inf; the list must be
// nonempty. Exact for a single term.
double logsumexp(std::span<const double> log_terms);

// Root of f in [a, b] with f(a) f(b) < 0: bisection, then Newton polish with
// bisection fallback. Stops once |f(root)| < tol. The overload without an
// analytic derivative uses a symmetric-difference slope for the polish.
double find_root(const std::function<double(double)>& f, double a, double b, double tol);
double find_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                 double a, double b, double tol);

enum class DiffMode { First, Second, Mixed };

struct DiffSpec {
  double step = 1e-3;
  int richardson_levels = 1;  // 0..3
  DiffMode mode = DiffMode::First;
};

struct DiffResult {
  double value;
  double error_estimate;  // |last Richardson diagonal step|; +inf when levels == 0
};

// First or second derivative of f at x (spec.mode selects which).
double central_diff(const std::function<double(double)>& f, double x, const DiffSpec& spec);
DiffResult central_diff_full(const std::function<double(double)>& f, double x,
                             const DiffSpec& spec);

// Mixed partial d^2 f / dx dy on the 4-point cross stencil.
double mixed_partial(const std::function<double(double, double)>& f, double x, double y,
                     const DiffSpec& spec);
DiffResult mixed_partial_full(const std::function<double(double, double)>& f, double x, double y,
                              const DiffSpec& spec);

// Ricci scalar of a 2D metric field at (x, y): Christoffel symbols from
// central differences of the metric, then their derivatives by nested central
// differences. The field must be smooth and nondegenerate on the stencil.
using MetricField2 = std::function<MetricTensor2(double, double)>;
double ricci_scalar_2d(const MetricField2& g, double x, double y, const DiffSpec& spec);

// ln(2 cosh x) and sech^2(x) without overflow for large |x|.
double log_2cosh(double x);
double sech_squared(double x);

}  // namespace lmg
