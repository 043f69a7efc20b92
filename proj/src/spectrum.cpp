#include "lmg/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmg {

namespace {

void validate_even_n(int n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("n must be a positive even integer, got " + std::to_string(n));
  }
}

void validate_sector(int n, int s) {
  validate_even_n(n);
  if (s < 0 || s > n / 2) {
    throw std::domain_error("sector S out of range [0, N/2]: S = " + std::to_string(s) +
                            ", N = " + std::to_string(n));
  }
}

// Row n of Pascal's triangle in 64-bit integers; entries stay below
// C(64,32) ~ 1.8e18, so additions never overflow for n <= 64.
std::vector<std::uint64_t> binomial_row(int n) {
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j > 0; --j) row[j] += row[j - 1];
  }
  return row;
}

}  // namespace

Multiplicity multiplicity(int n, int s) {
  validate_sector(n, s);
  int half = n / 2;
  // d_S = C(N, N/2-S) (2S+1) / (N/2+S+1), the difference of binomials in a
  // subtraction-free form
  double log_value = std::lgamma(n + 1.0) - std::lgamma(half - s + 1.0) -
                     std::lgamma(half + s + 2.0) + std::log(2.0 * s + 1.0);
  std::optional<std::uint64_t> exact;
  if (n <= 64) {
    auto row = binomial_row(n);
    std::uint64_t d = row[half - s] - (s == half ? 0 : row[half - s - 1]);
    exact = d;
  }
  return {log_value, exact};
}

double energy_level(int n, int s, int m, double h) {
  validate_sector(n, s);
  if (m < -s || m > s) {
    throw std::domain_error("magnetic quantum number out of range |M| <= S");
  }
  double casimir = static_cast<double>(s) * (s + 1.0);
  return -(2.0 / n) * (casimir - static_cast<double>(m) * m - n / 2.0) - 2.0 * h * m;
}

SectorSpectrum sector_spectrum(int n, int s, double h) {
  validate_sector(n, s);
  Multiplicity d = multiplicity(n, s);
  SectorSpectrum out{s, d.log_value, d.exact, {}};
  out.levels.reserve(static_cast<std::size_t>(2 * s) + 1);
  for (int m = -s; m <= s; ++m) {
    out.levels.emplace_back(m, energy_level(n, s, m, h));
  }
  return out;
}

std::vector<SectorSpectrum> full_spectrum(int n, double h) {
  validate_even_n(n);
  std::vector<SectorSpectrum> out;
  out.reserve(static_cast<std::size_t>(n / 2) + 1);
  for (int s = 0; s <= n / 2; ++s) out.push_back(sector_spectrum(n, s, h));
  return out;
}

GroundState ground_state(int n, double h) {
  validate_even_n(n);
  if (!std::isfinite(h)) throw std::invalid_argument("ground_state: h must be finite");

  double ah = std::abs(h);
  int half = n / 2;
  int m0;
  bool degenerate = false;
  if (ah >= 1.0) {
    m0 = half;
  } else {
    // minimum of the parabola E(M) sits at M = hN/2; round half up
    double x = ah * half;
    double fl = std::floor(x);
    double delta = x - fl;
    m0 = static_cast<int>(fl) + (delta >= 0.5 ? 1 : 0);
    degenerate = (delta == 0.5);
  }
  if (h < 0.0) m0 = -m0;
  return {half, m0, energy_level(n, half, m0, h), degenerate};
}

std::vector<double> level_crossing_fields(int n) {
  validate_even_n(n);
  std::vector<double> fields;
  fields.reserve(static_cast<std::size_t>(n / 2));
  for (int m = 0; m < n / 2; ++m) {
    fields.push_back((2.0 * m + 1.0) / n);
  }
  return fields;
}

}  // namespace lmg
