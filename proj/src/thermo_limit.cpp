#include "lmg/thermo_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lmg {

namespace {

constexpr double kBoundaryTol = 1e-12;

void validate_point(double beta, double h) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite and > 0");
  }
  if (!std::isfinite(h)) {
    throw std::invalid_argument("h must be finite");
  }
}

}  // namespace

std::optional<double> solve_r(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("solve_r: beta must be finite and > 0");
  }
  if (beta <= 1.0) return std::nullopt;  // only the trivial root
  auto f = [beta](double r) { return std::tanh(beta * r) - r; };
  auto df = [beta](double r) { return beta * sech_squared(beta * r) - 1.0; };
  // f > 0 just right of zero; the bracket closes at 1.0 because tanh
  // saturates there in double precision for beta >~ 19
  return find_root(f, df, 1e-9, 1.0, 1e-15);
}

PhasePoint classify(double beta, double h) {
  validate_point(beta, h);
  double ah = std::abs(h);

  bool boundary = false;
  if (ah > 0.0 && ah < 1.0) {
    boundary = std::abs(ah - std::tanh(beta * ah)) < kBoundaryTol;
  } else if (ah == 0.0) {
    // the residual criterion degenerates at h = 0; the boundary point is beta = 1
    boundary = std::abs(beta - 1.0) < kBoundaryTol;
  }
  if (boundary) return {beta, h, Phase::Boundary, 0.0, ah};

  if (auto root = solve_r(beta); root && *root > ah) {
    double mu = std::sqrt(std::max(0.0, *root * *root - ah * ah));
    return {beta, h, Phase::Ordered, mu, *root};
  }
  return {beta, h, Phase::Paramagnetic, 0.0, ah};
}

double critical_beta(double h) {
  double ah = std::abs(h);
  if (!std::isfinite(ah)) throw std::invalid_argument("critical_beta: h must be finite");
  if (ah > 1.0) {
    throw std::domain_error("critical_beta: no transition for |h| > 1");
  }
  if (ah == 1.0) return std::numeric_limits<double>::infinity();
  if (ah == 0.0) return 1.0;  // continuous limit of arctanh(h)/h
  return std::atanh(ah) / ah;
}

double free_energy_limit(double beta, double h) {
  PhasePoint pp = classify(beta, h);
  if (pp.phase == Phase::Ordered) {
    double mu2 = std::max(0.0, pp.r * pp.r - h * h);
    return 0.5 * mu2 - log_2cosh(beta * pp.r) / beta;
  }
  return -log_2cosh(beta * h) / beta;
}

double magnetization_z(double beta, double h) {
  PhasePoint pp = classify(beta, h);
  return pp.phase == Phase::Ordered ? h : std::tanh(beta * h);
}

// ---------------------------------------------------------------------------
// Limit metric
// ---------------------------------------------------------------------------

namespace {

struct OrderedQuantities {
  double r;
  double s2;     // sech^2(beta r) = 1 - r^2 at the root, full relative precision
  double denom;  // 1 - beta sech^2(beta r), positive at the stable root
  double rp;     // dr/dbeta
  double rpp;    // d^2 r/dbeta^2
};

OrderedQuantities ordered_quantities(double beta, double r) {
  OrderedQuantities q;
  q.r = r;
  q.s2 = sech_squared(beta * r);
  q.denom = 1.0 - beta * q.s2;
  q.rp = r * q.s2 / q.denom;
  double s2p = -2.0 * q.s2 * r * (r + beta * q.rp);  // uses tanh(beta r) = r
  double denomp = -q.s2 - beta * s2p;
  q.rpp = (q.rp * q.s2 + r * s2p) / q.denom - r * q.s2 * denomp / (q.denom * q.denom);
  return q;
}

}  // namespace

LimitMetric metric_limit(double beta, double h, MetricVariant variant) {
  PhasePoint pp = classify(beta, h);
  if (pp.phase == Phase::Boundary) {
    throw std::domain_error("metric_limit: tensor is discontinuous on the phase boundary");
  }

  LimitMetric out;
  out.branch = pp.phase;
  if (pp.phase == Phase::Paramagnetic) {
    double q = 0.25 * sech_squared(beta * h);
    out.tensor.g_bb = h * h * q;
    out.tensor.g_bh = h * beta * q;
    out.tensor.g_hh = beta * beta * q;
    out.degenerate = true;
    return out;
  }

  OrderedQuantities q = ordered_quantities(beta, pp.r);
  out.tensor.g_hh = 0.25 * beta;
  out.tensor.g_bh = 0.0;
  out.tensor.g_bb = variant == MetricVariant::Corrected
                        ? q.r * q.r * q.s2 / (4.0 * q.denom)           // = r dr/dbeta / 4
                        : q.r * q.r * (1.0 + q.r * q.r) / (4.0 * q.denom);
  out.degenerate = false;
  return out;
}

MetricTensor2 metric_limit_numeric(double beta, double h, const DiffSpec& spec_in) {
  DiffSpec spec = spec_in;
  if (spec.step <= 0.0) spec.step = 1e-3 * std::max(1.0, beta);

  PhasePoint center = classify(beta, h);
  if (center.phase == Phase::Boundary) {
    throw std::domain_error("metric_limit_numeric: on the phase boundary");
  }
  if (!(beta - 2.0 * spec.step > 0.0)) {
    throw std::invalid_argument("metric_limit_numeric: step too large for beta");
  }
  const double g = spec.step;
  const double probes[8][2] = {{beta + g, h}, {beta - g, h}, {beta, h + g},     {beta, h - g},
                               {beta + g, h + g}, {beta + g, h - g}, {beta - g, h + g},
                               {beta - g, h - g}};
  for (const auto& pr : probes) {
    if (classify(pr[0], pr[1]).phase != center.phase) {
      throw std::domain_error("metric_limit_numeric: stencil crosses the phase boundary");
    }
  }

  DiffSpec second = spec;
  second.mode = DiffMode::Second;
  DiffSpec mixed = spec;
  mixed.mode = DiffMode::Mixed;

  auto beta_f = [h](double b) { return b * free_energy_limit(b, h); };
  auto f_of_h = [beta](double hh) { return free_energy_limit(beta, hh); };
  auto f_of_bh = [](double b, double hh) { return free_energy_limit(b, hh); };

  MetricTensor2 out;
  out.g_bb = -0.25 * central_diff(beta_f, beta, second);
  out.g_hh = -0.25 * beta * central_diff(f_of_h, h, second);
  out.g_bh = -0.25 * beta * mixed_partial(f_of_bh, beta, h, mixed);
  return out;
}

ReducedMetric1D reduced_metric(double hbar, MetricVariant variant) {
  if (!std::isfinite(hbar)) throw std::invalid_argument("reduced_metric: hbar must be finite");
  double coeff = variant == MetricVariant::Corrected
                     ? 0.25 * sech_squared(hbar)
                     : 0.25 * std::sqrt(sech_squared(hbar));  // 1/(4 cosh hbar)
  return {hbar, coeff};
}

double reduced_metric_pullback(double hbar) {
  if (!std::isfinite(hbar)) throw std::invalid_argument("hbar must be finite");
  // contract the 2D paramagnetic tensor with dhbar = h dbeta + beta dh at a
  // representative point; beta < 1 keeps every field paramagnetic, and the
  // rank-one structure makes the point choice immaterial (tested)
  constexpr double beta = 0.5;
  LimitMetric g = metric_limit(beta, hbar / beta, MetricVariant::Corrected);
  return g.tensor.g_hh / (beta * beta);
}

double reduced_metric_fisher_rao(double hbar) {
  if (!std::isfinite(hbar)) throw std::invalid_argument("hbar must be finite");
  // two-outcome distribution p_± = (1 ± tanh hbar)/2; u = exp(-2|hbar|)
  // keeps the small weight at full relative precision
  double u = std::exp(-2.0 * std::abs(hbar));
  double p_small = u / (1.0 + u);
  double p_big = 1.0 / (1.0 + u);
  double dp = 0.5 * sech_squared(hbar);  // |dp_±/dhbar|
  double sum = 0.0;
  if (p_big > 0.0) sum += dp * dp / p_big;
  if (p_small > 0.0) sum += dp * dp / p_small;
  return 0.25 * sum;
}

// ---------------------------------------------------------------------------
// Ricci scalar
// ---------------------------------------------------------------------------

namespace {

PhasePoint require_ordered(double beta, double h, const char* who) {
  PhasePoint pp = classify(beta, h);
  if (pp.phase == Phase::Boundary) {
    throw std::domain_error(std::string(who) + ": on the phase boundary");
  }
  if (pp.phase == Phase::Paramagnetic) {
    throw std::domain_error(std::string(who) +
                            ": tensor is degenerate in the paramagnetic phase, no curvature");
  }
  return pp;
}

}  // namespace

double ricci_limit(double beta, double h, RicciMethod method) {
  PhasePoint pp = require_ordered(beta, h, "ricci_limit");

  switch (method) {
    case RicciMethod::ChristoffelFD: {
      DiffSpec spec{1e-4, 1, DiffMode::First};
      // nested differences reach 2 * step; keep the whole stencil ordered
      double g = 2.5 * spec.step;
      const double probes[8][2] = {{beta + g, h}, {beta - g, h}, {beta, h + g},     {beta, h - g},
                                   {beta + g, h + g}, {beta + g, h - g}, {beta - g, h + g},
                                   {beta - g, h - g}};
      for (const auto& pr : probes) {
        if (classify(pr[0], pr[1]).phase != Phase::Ordered) {
          throw std::domain_error("ricci_limit: stencil too close to the phase boundary");
        }
      }
      MetricField2 field = [](double b, double hh) {
        return metric_limit(b, hh, MetricVariant::Corrected).tensor;
      };
      return ricci_scalar_2d(field, beta, h, spec);
    }

    case RicciMethod::OrthogonalClosedForm: {
      // ds^2 = E dbeta^2 + G dh^2 with E = r r'/4, G = beta/4, both
      // h-independent along the self-consistent solution:
      // K = G'(E'G + EG') / (4 (EG)^2), R = 2K
      OrderedQuantities q = ordered_quantities(beta, pp.r);
      double e = q.r * q.rp / 4.0;
      double ep = (q.rp * q.rp + q.r * q.rpp) / 4.0;
      double gg = 0.25 * beta;
      double gp = 0.25;
      return gp * (ep * gg + e * gp) / (2.0 * (e * gg) * (e * gg));
    }

    case RicciMethod::AsPrinted: {
      // published formula taken verbatim: R = (2/PQ) [ (d_b P)(d_h Q)/Q^2
      // - d_b^2 P / Q - d_h^2 Q / P ], P = sqrt(beta)/2,
      // Q = sqrt(mu_xy d_b mu_xy)/2; all derivatives by central differences
      auto p_of = [](double b) { return 0.5 * std::sqrt(b); };
      auto q_of = [](double b, double hh) {
        PhasePoint local = require_ordered(b, hh, "ricci_limit(AsPrinted)");
        OrderedQuantities oq = ordered_quantities(b, local.r);
        return 0.5 * std::sqrt(oq.r * oq.rp);  // mu d_b mu = r r' off the h-axis too
      };
      DiffSpec first{1e-4, 1, DiffMode::First};
      DiffSpec second{1e-4, 1, DiffMode::Second};
      double pv = p_of(beta);
      double qv = q_of(beta, h);
      double p_b = central_diff(p_of, beta, first);
      double p_bb = central_diff(p_of, beta, second);
      auto q_h = [&](double hh) { return q_of(beta, hh); };
      double q_h1 = central_diff(q_h, h, first);
      double q_h2 = central_diff(q_h, h, second);
      return (2.0 / (pv * qv)) * (p_b * q_h1 / (qv * qv) - p_bb / qv - q_h2 / pv);
    }
  }
  throw std::logic_error("ricci_limit: unreachable");
}

}  // namespace lmg
