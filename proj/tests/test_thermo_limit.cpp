#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lmg/thermo_limit.hpp"

using namespace lmg;

TEST_CASE("solve_r") {
  auto r2 = solve_r(2.0);
  REQUIRE(r2.has_value());
  CHECK(*r2 == doctest::Approx(0.9575040240772687).epsilon(1e-12));

  CHECK_FALSE(solve_r(1.0).has_value());
  CHECK_FALSE(solve_r(0.5).has_value());
  CHECK_THROWS_AS(solve_r(0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_r(-2.0), std::invalid_argument);

  // residual at the returned root
  for (double beta : {1.01, 1.1, 1.5, 2.0, 5.0, 20.0, 50.0}) {
    auto r = solve_r(beta);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r - std::tanh(beta * *r)) < 1e-12);
    CHECK(*r > 0.0);
    CHECK(*r <= 1.0);
  }

  // tanh saturation
  CHECK(*solve_r(50.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("classify") {
  PhasePoint ordered = classify(1.5, 0.3);
  CHECK(ordered.phase == Phase::Ordered);
  CHECK(ordered.r == doctest::Approx(0.8585596366401104).epsilon(1e-12));
  CHECK(ordered.mu_xy == doctest::Approx(0.8044405818129754).epsilon(1e-12));

  PhasePoint para = classify(1.0, 2.0);
  CHECK(para.phase == Phase::Paramagnetic);
  CHECK(para.mu_xy == 0.0);
  CHECK(para.r == 2.0);

  // arctanh(0.5) = (ln 3)/2, so beta = ln 3 sits exactly on the boundary
  CHECK(classify(std::log(3.0), 0.5).phase == Phase::Boundary);
  CHECK(classify(1.0, 0.0).phase == Phase::Boundary);

  // negative h mirrors positive h
  PhasePoint neg = classify(1.5, -0.3);
  CHECK(neg.phase == Phase::Ordered);
  CHECK(neg.mu_xy == doctest::Approx(ordered.mu_xy).epsilon(1e-15));

  // cold points with |h| >= 1 stay paramagnetic despite tanh saturation
  CHECK(classify(30.0, 1.0).phase == Phase::Paramagnetic);
  CHECK(classify(30.0, 1.5).phase == Phase::Paramagnetic);
}

TEST_CASE("boundary consistency around critical_beta") {
  for (double h : {0.2, 0.5, 0.8}) {
    double bc = critical_beta(h);
    CHECK(classify(bc + 1e-9, h).phase == Phase::Ordered);
    CHECK(classify(bc - 1e-9, h).phase == Phase::Paramagnetic);
  }
}

TEST_CASE("critical_beta") {
  CHECK(std::abs(critical_beta(0.5) - std::log(3.0)) < 1e-12);
  CHECK(critical_beta(1e-8) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(critical_beta(0.0) == 1.0);
  CHECK(std::isinf(critical_beta(1.0)));
  CHECK(critical_beta(1.0 - 1e-9) > 10.0);
  CHECK(critical_beta(-0.5) == critical_beta(0.5));
  CHECK_THROWS_AS(critical_beta(1.5), std::domain_error);
}

TEST_CASE("order parameter is continuous at the boundary") {
  for (double h : {0.2, 0.6}) {
    double bc = critical_beta(h);
    double prev = 1.0;
    for (int k = 3; k <= 9; ++k) {
      double mu = classify(bc + std::pow(10.0, -k), h).mu_xy;
      CHECK(mu < prev);
      CHECK(mu > 0.0);
      prev = mu;
    }
    CHECK(prev < 1e-4);
  }
}

TEST_CASE("free energy and magnetization") {
  CHECK(free_energy_limit(1.0, 2.0) == doctest::Approx(-2.0181499279178097).epsilon(1e-14));

  // mu_z closed forms against -df/dh
  DiffSpec first{1e-5, 1, DiffMode::First};
  for (auto [beta, h] : std::vector<std::pair<double, double>>{{2.0, 0.3}, {1.0, 2.0}, {0.7, 0.4}}) {
    double fd = -central_diff([b = beta](double x) { return free_energy_limit(b, x); }, h, first);
    CHECK(magnetization_z(beta, h) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(magnetization_z(2.0, 0.3) == 0.3);                    // ordered: mu_z = h
  CHECK(magnetization_z(1.0, 2.0) == std::tanh(2.0));         // paramagnetic: tanh(beta h)

  // continuity across the boundary: h = tanh(beta_c h) makes both branches equal
  for (double h : {0.2, 0.5, 0.8}) {
    double bc = critical_beta(h);
    CHECK(std::abs(magnetization_z(bc + 1e-9, h) - magnetization_z(bc - 1e-9, h)) < 1e-8);
  }
}

TEST_CASE("limit metric: ordered branch") {
  LimitMetric g = metric_limit(2.0, 0.3, MetricVariant::Corrected);
  CHECK(g.branch == Phase::Ordered);
  CHECK_FALSE(g.degenerate);
  CHECK(g.tensor.g_hh == 0.5);  // beta/4 exactly
  CHECK(g.tensor.g_bh == 0.0);
  CHECK(g.tensor.g_bb == doctest::Approx(0.0228717527507062).epsilon(1e-12));

  // g_bb is h-independent inside the ordered phase
  CHECK(metric_limit(2.0, 0.0).tensor.g_bb ==
        doctest::Approx(g.tensor.g_bb).epsilon(1e-15));

  LimitMetric printed = metric_limit(2.0, 0.0, MetricVariant::AsPrinted);
  CHECK(printed.tensor.g_bb == doctest::Approx(0.5270222363142000).epsilon(1e-10));
  CHECK(printed.tensor.g_hh == 0.5);

  CHECK_THROWS_AS(metric_limit(std::log(3.0), 0.5), std::domain_error);
  CHECK_THROWS_AS(metric_limit(1.0, 0.0), std::domain_error);
}

TEST_CASE("limit metric: paramagnetic branch") {
  LimitMetric g = metric_limit(1.0, 2.0, MetricVariant::Corrected);
  CHECK(g.branch == Phase::Paramagnetic);
  CHECK(g.degenerate);
  CHECK(g.tensor.g_bb == doctest::Approx(0.0706508248531645).epsilon(1e-14));
  CHECK(g.tensor.g_bh == doctest::Approx(0.0353254124265822).epsilon(1e-14));
  CHECK(g.tensor.g_hh == doctest::Approx(0.0176627062132911).epsilon(1e-14));
  CHECK(g.det() == 0.0);  // rank one by construction
  CHECK(std::abs(g.tensor.det()) < 1e-18);

  // both variants coincide here
  LimitMetric printed = metric_limit(1.0, 2.0, MetricVariant::AsPrinted);
  CHECK(printed.tensor.g_bb == g.tensor.g_bb);
  CHECK(printed.tensor.g_bh == g.tensor.g_bh);
  CHECK(printed.tensor.g_hh == g.tensor.g_hh);

  // g_bh is odd in h
  CHECK(metric_limit(1.0, -2.0).tensor.g_bh == doctest::Approx(-g.tensor.g_bh).epsilon(1e-15));
}

TEST_CASE("numeric route adjudicates the ordered g_bb") {
  MetricTensor2 numeric = metric_limit_numeric(2.0, 0.3);
  CHECK(numeric.g_bb == doctest::Approx(0.0228717527507062).epsilon(1e-8));
  CHECK(numeric.g_hh == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(numeric.g_bh) < 1e-9);

  // paramagnetic side reproduces the closed form as well
  MetricTensor2 para = metric_limit_numeric(1.0, 2.0);
  LimitMetric closed = metric_limit(1.0, 2.0);
  CHECK(para.g_bb == doctest::Approx(closed.tensor.g_bb).epsilon(1e-8));
  CHECK(para.g_bh == doctest::Approx(closed.tensor.g_bh).epsilon(1e-8));
  CHECK(para.g_hh == doctest::Approx(closed.tensor.g_hh).epsilon(1e-8));

  // stencil straddling the boundary is rejected
  CHECK_THROWS_AS(metric_limit_numeric(critical_beta(0.5) + 1e-5, 0.5), std::domain_error);
}

TEST_CASE("zero-temperature limits") {
  double prev = 1.0;
  for (double t : {0.2, 0.1, 0.05, 0.02}) {
    double gbb = metric_limit(1.0 / t, 0.3, MetricVariant::Corrected).tensor.g_bb;
    CHECK(gbb < prev);
    prev = gbb;
  }
  CHECK(prev < 1e-40);

  for (double t : {0.5, 0.2, 0.1, 0.02}) {
    double ghh = metric_limit(1.0 / t, 0.3).tensor.g_hh;
    CHECK(std::abs(t * ghh - 0.25) < 1e-12);  // g_hh = beta/4, diverges as 1/T
  }
}

TEST_CASE("reduced 1D metric") {
  CHECK(reduced_metric(0.0, MetricVariant::Corrected).coefficient == 0.25);
  CHECK(reduced_metric(0.0, MetricVariant::AsPrinted).coefficient == 0.25);
  CHECK(reduced_metric(2.0, MetricVariant::Corrected).coefficient ==
        doctest::Approx(0.0176627062132911).epsilon(1e-14));
  CHECK(reduced_metric(2.0, MetricVariant::AsPrinted).coefficient ==
        doctest::Approx(0.0664505572085199).epsilon(1e-14));

  // coefficient is maximal at hbar = 0
  for (double hb : {0.1, 0.5, 3.0}) {
    CHECK(reduced_metric(hb).coefficient < 0.25);
    CHECK(reduced_metric(hb).coefficient > 0.0);
  }
}

TEST_CASE("reduced metric oracles") {
  for (double hb : {0.0, 0.3, 1.0, 2.0, 4.0}) {
    double pullback = reduced_metric_pullback(hb);
    double fisher = reduced_metric_fisher_rao(hb);
    CHECK(std::abs(pullback - fisher) < 1e-12);
    CHECK(std::abs(pullback - reduced_metric(hb, MetricVariant::Corrected).coefficient) < 1e-14);
  }
  // the printed variant does not match the oracles away from 0
  CHECK(std::abs(reduced_metric_fisher_rao(2.0) -
                 reduced_metric(2.0, MetricVariant::AsPrinted).coefficient) > 1e-2);

  // rank-one invariance: same hbar from different (beta, h) splits
  for (double hb : {0.4, 1.7}) {
    for (double beta : {0.25, 0.5, 0.9}) {
      LimitMetric g = metric_limit(beta, hb / beta);
      CHECK(g.tensor.g_hh / (beta * beta) ==
            doctest::Approx(reduced_metric(hb).coefficient).epsilon(1e-14));
    }
  }
}

TEST_CASE("Ricci scalar methods") {
  // frozen from a high-precision evaluation of the orthogonal closed form
  double r_fd = ricci_limit(2.0, 0.0, RicciMethod::ChristoffelFD);
  double r_cf = ricci_limit(2.0, 0.0, RicciMethod::OrthogonalClosedForm);
  CHECK(r_cf == doctest::Approx(-20.10334009764067).epsilon(1e-10));
  CHECK(r_fd == doctest::Approx(-20.10334009764067).epsilon(1e-4));
  CHECK(ricci_limit(1.5, 0.0, RicciMethod::OrthogonalClosedForm) ==
        doctest::Approx(-8.543340716766618).epsilon(1e-10));

  // the two independent algorithms agree, and h does not matter inside the
  // ordered phase
  for (auto [beta, h] : std::vector<std::pair<double, double>>{{1.3, 0.0}, {2.0, 0.5}, {3.0, 0.2}}) {
    double fd = ricci_limit(beta, h, RicciMethod::ChristoffelFD);
    double cf = ricci_limit(beta, h, RicciMethod::OrthogonalClosedForm);
    CHECK(std::abs(fd - cf) <= 1e-4 * std::abs(cf));
    CHECK(fd < 0.0);
  }

  // the printed formula's d/dh terms vanish along the self-consistent
  // solution, flipping its sign
  CHECK(ricci_limit(2.0, 0.0, RicciMethod::AsPrinted) > 0.0);

  CHECK_THROWS_AS(ricci_limit(1.0, 2.0), std::domain_error);             // paramagnetic
  CHECK_THROWS_AS(ricci_limit(std::log(3.0), 0.5), std::domain_error);   // boundary
  CHECK_THROWS_AS(ricci_limit(critical_beta(0.3) + 1e-6, 0.3), std::domain_error);  // stencil
}
