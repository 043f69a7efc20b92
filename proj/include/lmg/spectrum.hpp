#pragma once

// Exact spectral data of the isotropic LMG Hamiltonian through the total-spin
// sector decomposition: multiplicities d_S, levels E_SM, ground-state
// selection, and the ground-state level-crossing fields.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace lmg {

struct Multiplicity {
  double log_value;                   // ln d_S, stable to n >= 1e4
  std::optional<std::uint64_t> exact; // materialized for n <= 64
};

// Number of spin-S multiplets in the N-spin product space,
// d_S = C(N, N/2-S) - C(N, N/2-S-1). Throws std::domain_error unless
// 0 <= s <= n/2.
Multiplicity multiplicity(int n, int s);

// E_SM = -(2/N)(S(S+1) - M^2 - N/2) - 2 h M, |M| <= S <= N/2.
double energy_level(int n, int s, int m, double h);

struct SectorSpectrum {
  int s;
  double log_multiplicity;
  std::optional<std::uint64_t> multiplicity_exact;
  std::vector<std::pair<int, double>> levels;  // (M, E_SM), M = -S..S
};

SectorSpectrum sector_spectrum(int n, int s, double h);
std::vector<SectorSpectrum> full_spectrum(int n, double h);

struct GroundState {
  int s0;          // always N/2
  int m0;          // magnetic quantum number of the minimum level
  double energy;
  bool degenerate; // h sits exactly on a level crossing
};

// Minimum of E_SM over all sectors. Negative h is mapped through the
// h -> -h, M -> -M spectral symmetry.
GroundState ground_state(int n, double h);

// All h >= 0 where the ground state switches M: h = (2M+1)/N, M = 0..N/2-1.
std::vector<double> level_crossing_fields(int n);

}  // namespace lmg
