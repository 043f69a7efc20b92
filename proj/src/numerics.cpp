#include "lmg/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lmg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_spec(const DiffSpec& spec) {
  if (!(spec.step > 0.0) || !std::isfinite(spec.step)) {
    throw std::invalid_argument("DiffSpec: step must be finite and > 0");
  }
  if (spec.richardson_levels < 0 || spec.richardson_levels > 3) {
    throw std::invalid_argument("DiffSpec: richardson_levels must be in [0, 3]");
  }
}

// Richardson table over step halvings for a stencil whose error is a series
// in step^2. Returns the last diagonal entry and the size of the final
// correction.
template <typename Stencil>
DiffResult richardson(const Stencil& d0, double step, int levels) {
  std::array<std::array<double, 4>, 4> t{};
  for (int k = 0; k <= levels; ++k) {
    t[k][0] = d0(step / static_cast<double>(1 << k));
    double pow4 = 4.0;
    for (int j = 1; j <= k; ++j) {
      t[k][j] = (pow4 * t[k][j - 1] - t[k - 1][j - 1]) / (pow4 - 1.0);
      pow4 *= 4.0;
    }
  }
  double value = t[levels][levels];
  double est = levels > 0 ? std::abs(value - t[levels - 1][levels - 1]) : kInf;
  return {value, est};
}

}  // namespace

double logsumexp(std::span<const double> log_terms) {
  if (log_terms.empty()) {
    throw std::invalid_argument("logsumexp: empty list");
  }
  double m = -kInf;
  for (double v : log_terms) m = std::max(m, v);
  if (m == -kInf) return -kInf;  // all terms are exp(-inf) = 0
  long double acc = 0.0L;
  for (double v : log_terms) acc += std::exp(static_cast<long double>(v - m));
  return m + static_cast<double>(std::log(acc));
}

namespace {

double find_root_impl(const std::function<double(double)>& f,
                      const std::function<double(double)>* df, double a, double b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be > 0");
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb)) {
    throw std::invalid_argument("find_root: f(a) and f(b) have the same sign");
  }

  // bisection down to an absolute interval of 1e-10
  while (b - a > 1e-10) {
    double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // interval at rounding resolution
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }

  // Newton polish, falling back to bisection whenever a step leaves [a, b]
  double x = 0.5 * (a + b);
  double fx = f(x);
  for (int it = 0; it < 60 && std::abs(fx) >= tol; ++it) {
    double slope;
    if (df != nullptr) {
      slope = (*df)(x);
    } else {
      double d = 1e-7 * std::max(1.0, std::abs(x));
      slope = (f(x + d) - f(x - d)) / (2.0 * d);
    }
    double xn = slope != 0.0 ? x - fx / slope : x;
    if (!(xn > a) || !(xn < b) || !std::isfinite(xn)) {
      xn = 0.5 * (a + b);  // bisect instead
    }
    if (xn == x) break;
    double fn = f(xn);
    if (std::signbit(fn) == std::signbit(fa)) {
      a = xn;
      fa = fn;
    } else {
      b = xn;
      fb = fn;
    }
    x = xn;
    fx = fn;
    if (b - a <= std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b))) {
      break;
    }
  }
  return x;
}

}  // namespace

double find_root(const std::function<double(double)>& f, double a, double b, double tol) {
  return find_root_impl(f, nullptr, a, b, tol);
}

double find_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                 double a, double b, double tol) {
  return find_root_impl(f, &df, a, b, tol);
}

DiffResult central_diff_full(const std::function<double(double)>& f, double x,
                             const DiffSpec& spec) {
  validate_spec(spec);
  switch (spec.mode) {
    case DiffMode::First:
      return richardson([&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); }, spec.step,
                        spec.richardson_levels);
    case DiffMode::Second: {
      double f0 = f(x);
      return richardson([&](double s) { return (f(x + s) - 2.0 * f0 + f(x - s)) / (s * s); },
                        spec.step, spec.richardson_levels);
    }
    case DiffMode::Mixed:
      throw std::invalid_argument("central_diff: Mixed mode needs mixed_partial");
  }
  throw std::logic_error("central_diff: unreachable");
}

double central_diff(const std::function<double(double)>& f, double x, const DiffSpec& spec) {
  return central_diff_full(f, x, spec).value;
}

DiffResult mixed_partial_full(const std::function<double(double, double)>& f, double x, double y,
                              const DiffSpec& spec) {
  validate_spec(spec);
  auto d0 = [&](double s) {
    return (f(x + s, y + s) - f(x + s, y - s) - f(x - s, y + s) + f(x - s, y - s)) /
           (4.0 * s * s);
  };
  return richardson(d0, spec.step, spec.richardson_levels);
}

double mixed_partial(const std::function<double(double, double)>& f, double x, double y,
                     const DiffSpec& spec) {
  return mixed_partial_full(f, x, y, spec).value;
}

// ---------------------------------------------------------------------------
// 2D Ricci scalar from a metric field
// ---------------------------------------------------------------------------

namespace {

struct Christoffel {
  // gamma[k][i][j] = Gamma^k_ij, symmetric in (i, j)
  double gamma[2][2][2];
};

double component(const MetricTensor2& t, int i, int j) {
  if (i == 0 && j == 0) return t.g_bb;
  if (i == 1 && j == 1) return t.g_hh;
  return t.g_bh;
}

Christoffel christoffel_at(const MetricField2& g, double x, double y, const DiffSpec& spec) {
  DiffSpec first = spec;
  first.mode = DiffMode::First;

  // dg[d][i][j] = partial_d g_ij
  double dg[2][2][2];
  for (int d = 0; d < 2; ++d) {
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        auto f = [&](double t) {
          return d == 0 ? component(g(t, y), i, j) : component(g(x, t), i, j);
        };
        double v = central_diff(f, d == 0 ? x : y, first);
        dg[d][i][j] = v;
        dg[d][j][i] = v;
      }
    }
  }

  MetricTensor2 gc = g(x, y);
  double det = gc.det();
  if (det == 0.0 || !std::isfinite(det)) {
    throw std::domain_error("ricci_scalar_2d: degenerate metric");
  }
  double inv[2][2] = {{gc.g_hh / det, -gc.g_bh / det}, {-gc.g_bh / det, gc.g_bb / det}};

  Christoffel c{};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double sum = 0.0;
        for (int l = 0; l < 2; ++l) {
          sum += inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        }
        c.gamma[k][i][j] = 0.5 * sum;
      }
    }
  }
  return c;
}

}  // namespace

double ricci_scalar_2d(const MetricField2& g, double x, double y, const DiffSpec& spec) {
  validate_spec(spec);

  // dgamma[d][k][i][j] = partial_d Gamma^k_ij by the same Richardson scheme,
  // evaluating the whole symbol array per stencil point
  int levels = spec.richardson_levels;
  double dgamma[2][2][2][2];
  for (int d = 0; d < 2; ++d) {
    auto at = [&](double s) {
      return d == 0 ? christoffel_at(g, x + s, y, spec) : christoffel_at(g, x, y + s, spec);
    };
    std::array<std::array<Christoffel, 4>, 4> t{};
    for (int k = 0; k <= levels; ++k) {
      double s = spec.step / static_cast<double>(1 << k);
      Christoffel plus = at(s);
      Christoffel minus = at(-s);
      for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            t[k][0].gamma[a][i][j] = (plus.gamma[a][i][j] - minus.gamma[a][i][j]) / (2.0 * s);
      double pow4 = 4.0;
      for (int jlev = 1; jlev <= k; ++jlev) {
        for (int a = 0; a < 2; ++a)
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              t[k][jlev].gamma[a][i][j] = (pow4 * t[k][jlev - 1].gamma[a][i][j] -
                                           t[k - 1][jlev - 1].gamma[a][i][j]) /
                                          (pow4 - 1.0);
        pow4 *= 4.0;
      }
    }
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) dgamma[d][a][i][j] = t[levels][levels].gamma[a][i][j];
  }

  Christoffel c = christoffel_at(g, x, y, spec);
  MetricTensor2 gc = g(x, y);
  double det = gc.det();
  double inv[2][2] = {{gc.g_hh / det, -gc.g_bh / det}, {-gc.g_bh / det, gc.g_bb / det}};

  // R_ij = d_k Gamma^k_ij - d_i Gamma^k_kj + Gamma^k_kl Gamma^l_ij
  //        - Gamma^k_il Gamma^l_kj
  double ricci[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double r = 0.0;
      for (int k = 0; k < 2; ++k) {
        r += dgamma[k][k][i][j];
        r -= dgamma[i][k][k][j];
        for (int l = 0; l < 2; ++l) {
          r += c.gamma[k][k][l] * c.gamma[l][i][j];
          r -= c.gamma[k][i][l] * c.gamma[l][k][j];
        }
      }
      ricci[i][j] = r;
    }
  }

  double scalar = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) scalar += inv[i][j] * ricci[i][j];
  return scalar;
}

double log_2cosh(double x) {
  double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

double sech_squared(double x) {
  double u = std::exp(-std::abs(x));  // sech x = 2u / (1 + u^2)
  double s = 2.0 * u / (1.0 + u * u);
  return s * s;
}

}  // namespace lmg
