#include "lmg/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lmg/spectrum.hpp"

namespace lmg {

namespace {

// One pass over all (S, M) log-terms ln d_S - beta E_SM.
template <typename Visit>
void for_each_log_term(const ModelParams& p, const Visit& visit) {
  int half = p.n / 2;
  for (int s = 0; s <= half; ++s) {
    double logd = multiplicity(p.n, s).log_value;
    for (int m = -s; m <= s; ++m) {
      double e = energy_level(p.n, s, m, p.h);
      visit(s, m, e, logd - p.beta * e);
    }
  }
}

}  // namespace

double log_partition(const ModelParams& params) {
  double max_term = -std::numeric_limits<double>::infinity();
  for_each_log_term(params, [&](int, int, double, double t) { max_term = std::max(max_term, t); });
  long double acc = 0.0L;
  for_each_log_term(params,
                    [&](int, int, double, double t) { acc += std::exp(static_cast<long double>(t - max_term)); });
  return max_term + static_cast<double>(std::log(acc));
}

ThermalEnsemble::ThermalEnsemble(const ModelParams& params) : params_(params) {
  double max_term = -std::numeric_limits<double>::infinity();
  s_ref_ = params.n / 2;
  m_ref_ = 0;
  for_each_log_term(params, [&](int s, int m, double, double t) {
    if (t > max_term) {
      max_term = t;
      s_ref_ = s;
      m_ref_ = m;
    }
  });
  long double acc = 0.0L;
  for_each_log_term(params,
                    [&](int, int, double, double t) { acc += std::exp(static_cast<long double>(t - max_term)); });
  log_z_ = max_term + static_cast<double>(std::log(acc));

  sectors_.reserve(static_cast<std::size_t>(params.n / 2) + 1);
  int current = -1;
  for_each_log_term(params, [&](int s, int m, double, double t) {
    if (s != current) {
      sectors_.push_back({s, {}});
      sectors_.back().log_weights.reserve(static_cast<std::size_t>(2 * s) + 1);
      current = s;
    }
    (void)m;
    sectors_.back().log_weights.push_back(t - log_z_);
  });
}

ThermalMoments ThermalEnsemble::moments() const {
  double e_ref = energy_level(params_.n, s_ref_, m_ref_, params_.h);
  double m_ref = m_ref_;

  long double s_de = 0.0L, s_de2 = 0.0L, s_dm = 0.0L, s_dm2 = 0.0L, s_dedm = 0.0L;
  for (const auto& sector : sectors_) {
    for (int m = -sector.s; m <= sector.s; ++m) {
      double lw = sector.log_weights[static_cast<std::size_t>(m + sector.s)];
      long double w = std::exp(static_cast<long double>(lw));
      double de = energy_level(params_.n, sector.s, m, params_.h) - e_ref;
      double dm = m - m_ref;
      s_de += w * de;
      s_de2 += w * de * de;
      s_dm += w * dm;
      s_dm2 += w * dm * dm;
      s_dedm += w * de * dm;
    }
  }

  ThermalMoments out;
  out.mean_energy = e_ref + static_cast<double>(s_de);
  out.var_energy = std::max(0.0, static_cast<double>(s_de2 - s_de * s_de));
  out.mean_sz = m_ref + static_cast<double>(s_dm);
  out.var_sz = std::max(0.0, static_cast<double>(s_dm2 - s_dm * s_dm));
  out.cov_energy_sz = static_cast<double>(s_dedm - s_de * s_dm);
  return out;
}

ThermalMoments moments(const ModelParams& params) { return ThermalEnsemble(params).moments(); }

double free_energy_per_spin_finite(const ModelParams& params) {
  return -log_partition(params) / (params.n * params.beta);
}

}  // namespace lmg
