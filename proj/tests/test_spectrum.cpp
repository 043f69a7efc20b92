#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lmg/dense.hpp"
#include "lmg/numerics.hpp"
#include "lmg/spectrum.hpp"
#include "oracles.hpp"

using namespace lmg;

namespace {

// every (S, M) level with exact multiplicity, sorted
std::vector<double> enumerated_eigenvalues(int n, double h) {
  std::vector<double> evs;
  for (const auto& sec : full_spectrum(n, h)) {
    REQUIRE(sec.multiplicity_exact.has_value());
    for (auto [m, e] : sec.levels) {
      for (std::uint64_t c = 0; c < *sec.multiplicity_exact; ++c) evs.push_back(e);
    }
  }
  std::sort(evs.begin(), evs.end());
  return evs;
}

}  // namespace

TEST_CASE("multiplicity examples and brute-force oracle") {
  CHECK(*multiplicity(4, 1).exact == 3);
  CHECK(*multiplicity(4, 2).exact == 1);
  CHECK(*multiplicity(2, 0).exact == 1);

  for (int n : {2, 4, 6}) {
    auto counts = oracles::multiplet_counts(n);
    for (int s = 0; s <= n / 2; ++s) {
      CHECK(*multiplicity(n, s).exact == static_cast<std::uint64_t>(counts[s]));
    }
  }

  CHECK_THROWS_AS(multiplicity(4, 3), std::domain_error);
  CHECK_THROWS_AS(multiplicity(4, -1), std::domain_error);
  CHECK_THROWS_AS(multiplicity(3, 1), std::invalid_argument);
}

TEST_CASE("multiplicity log form matches exact integers up to n = 64") {
  for (int n : {2, 8, 24, 64}) {
    for (int s = 0; s <= n / 2; ++s) {
      Multiplicity d = multiplicity(n, s);
      REQUIRE(d.exact.has_value());
      CHECK(d.log_value ==
            doctest::Approx(std::log(static_cast<double>(*d.exact))).epsilon(1e-12));
    }
  }
  CHECK_FALSE(multiplicity(66, 1).exact.has_value());
}

TEST_CASE("dimension sum identity") {
  // exact: sum_S d_S (2S+1) = 2^n
  for (int n : {2, 8, 16, 40, 62}) {
    std::uint64_t total = 0;
    for (int s = 0; s <= n / 2; ++s) {
      total += *multiplicity(n, s).exact * static_cast<std::uint64_t>(2 * s + 1);
    }
    CHECK(total == (std::uint64_t{1} << n));
  }
  // log domain up to n = 2000
  for (int n : {2, 10, 100, 500, 1000, 2000}) {
    std::vector<double> terms;
    for (int s = 0; s <= n / 2; ++s) {
      terms.push_back(multiplicity(n, s).log_value + std::log(2.0 * s + 1.0));
    }
    double total = logsumexp(terms);
    double expect = n * std::log(2.0);
    CHECK(std::abs(total - expect) <= 1e-10 * expect);
  }
}

TEST_CASE("energy_level examples") {
  CHECK(energy_level(2, 1, 0, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(energy_level(10, 5, 3, 0.6) == doctest::Approx(-6.8).epsilon(1e-14));
  CHECK_THROWS_AS(energy_level(4, 1, 2, 0.0), std::domain_error);
  CHECK_THROWS_AS(energy_level(4, 3, 0, 0.0), std::domain_error);
}

TEST_CASE("Kramers symmetry: E(S, M, h) = E(S, -M, -h) exactly") {
  for (double h : {0.0, 0.3, 0.77, 1.5}) {
    for (int s = 0; s <= 5; ++s) {
      for (int m = -s; m <= s; ++m) {
        CHECK(energy_level(10, s, m, h) == energy_level(10, s, -m, -h));
      }
    }
  }
}

TEST_CASE("ground_state examples") {
  GroundState g1 = ground_state(10, 0.6);
  CHECK(g1.s0 == 5);
  CHECK(g1.m0 == 3);
  CHECK(g1.energy == doctest::Approx(-6.8).epsilon(1e-14));
  CHECK_FALSE(g1.degenerate);

  GroundState g2 = ground_state(10, 0.5);
  CHECK(g2.m0 == 3);
  CHECK(g2.degenerate);
  // at the crossing both M levels coincide
  CHECK(energy_level(10, 5, 2, 0.5) == doctest::Approx(energy_level(10, 5, 3, 0.5)).epsilon(1e-14));

  for (int n : {2, 4, 10, 20}) {
    CHECK(ground_state(n, 1.5).m0 == n / 2);
    CHECK(ground_state(n, 1.0).m0 == n / 2);
  }

  GroundState gn = ground_state(10, -0.6);
  CHECK(gn.m0 == -3);
  CHECK(gn.energy == doctest::Approx(-6.8).epsilon(1e-14));
}

TEST_CASE("ground_state equals argmin of the enumerated spectrum") {
  for (int n : {2, 4, 8, 12}) {
    for (int k = 0; k <= 20; ++k) {
      double h = 0.1 * k;  // [0, 2], includes crossings for n = 4, 10
      GroundState gs = ground_state(n, h);
      double min_e = std::numeric_limits<double>::infinity();
      for (const auto& sec : full_spectrum(n, h)) {
        for (auto [m, e] : sec.levels) min_e = std::min(min_e, e);
      }
      CHECK(gs.energy == doctest::Approx(min_e).epsilon(1e-12));
      CHECK(gs.energy <= min_e + 1e-12);
    }
  }
}

TEST_CASE("level crossing fields") {
  std::vector<double> c10 = level_crossing_fields(10);
  REQUIRE(c10.size() == 5);
  double expect10[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (int i = 0; i < 5; ++i) CHECK(c10[i] == doctest::Approx(expect10[i]).epsilon(1e-15));

  std::vector<double> c2 = level_crossing_fields(2);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0] == 0.5);

  for (int n : {2, 6, 14, 40}) {
    auto c = level_crossing_fields(n);
    CHECK(static_cast<int>(c.size()) == n / 2);
    CHECK(std::is_sorted(c.begin(), c.end()));
    CHECK(c.back() < 1.0);
    // the ground state switches across each crossing
    for (double hc : c) {
      CHECK(ground_state(n, hc + 1e-9).m0 == ground_state(n, hc - 1e-9).m0 + 1);
    }
  }
  // exact degeneracy detection where (2M+1)/N and its product with N/2 are
  // dyadic, so h N/2 lands on the half-integer exactly
  for (int n : {2, 4, 8, 16, 32}) {
    for (double hc : level_crossing_fields(n)) {
      CHECK(ground_state(n, hc).degenerate);
    }
  }
}

TEST_CASE("dense hamiltonian: n = 2 closed form") {
  double h = 0.7;
  Eigen::MatrixXd ham = dense_hamiltonian(2, h);
  CHECK((ham - ham.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ham);
  std::vector<double> expect{-2.0 * h, -1.0, 1.0, 2.0 * h};
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 4; ++i) {
    CHECK(es.eigenvalues()(i) == doctest::Approx(expect[i]).epsilon(1e-12));
  }
}

TEST_CASE("dense hamiltonian equals independent rebuild") {
  for (int n : {2, 4, 6}) {
    for (double h : {0.0, 0.4}) {
      CHECK((dense_hamiltonian(n, h) - oracles::hamiltonian(n, h)).norm() == 0.0);
    }
  }
}

TEST_CASE("dense eigenvalues equal sector enumeration") {
  for (int n : {2, 4, 6, 8}) {
    for (double h : {0.0, 0.25, 0.3, 1.2}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian(n, h));
      std::vector<double> sector = enumerated_eigenvalues(n, h);
      REQUIRE(static_cast<int>(sector.size()) == es.eigenvalues().size());
      for (std::size_t i = 0; i < sector.size(); ++i) {
        CHECK(std::abs(es.eigenvalues()(static_cast<int>(i)) - sector[i]) < 1e-10);
      }
    }
  }
}

TEST_CASE("dense resource limits") {
  CHECK_THROWS_AS(dense_hamiltonian(14, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dense_hamiltonian(5, 0.0), std::invalid_argument);
  CHECK_NOTHROW(dense_hamiltonian(12, 0.1));
}
