#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsness/observables.hpp"
#include "lsness/oracle.hpp"

using namespace lsness;

TEST_CASE("smallest partition functions") {
  for (double eps : {0.3, 1.0, 4.0}) {
    CHECK(partition_function(1, eps, 0.0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(partition_function(2, eps, 0.0) ==
          doctest::Approx(9.0 + 6.0 * eps * eps).epsilon(1e-13));
  }
  // formal polynomial agrees after evaluation
  const auto z2 = partition_function_exact(2);
  CHECK(z2.eval(1.5, -0.7).real() ==
        doctest::Approx(partition_function(2, 1.5, -0.7)).epsilon(1e-12));
  CHECK(std::abs(z2.eval(1.5, -0.7).imag()) < 1e-14);
}

TEST_CASE("partition function equals the state trace") {
  const int n = 3;
  const double eps = 1.2, mu = 0.9;
  const auto rho = grand_canonical_density(n, eps, mu);
  CHECK(partition_function(n, eps, mu) ==
        doctest::Approx(rho.trace().real()).epsilon(1e-12));
}

TEST_CASE("sector traces resum to the weighted partition function") {
  const int n = 3;
  const double eps = 0.8;
  const auto c = sector_traces(n, eps);
  for (double mu : {-2.0, 0.0, 1.5}) {
    double z = 0.0;
    for (int nu = 0; nu <= n; ++nu) z += std::exp(mu * nu) * c[nu];
    CHECK(partition_function(n, eps, mu) == doctest::Approx(z).epsilon(1e-12));
  }
  // exact variant carries one fugacity power per hole pair
  const auto ce = sector_traces_exact(2);
  ExactScalar acc;
  for (int nu = 0; nu <= 2; ++nu)
    acc += ce[nu] * ExactScalar::monomial(0, 2 * nu, GaussInt(1));
  CHECK(acc == partition_function_exact(2));
}

TEST_CASE("identity observable telescopes to one") {
  for (int x = 1; x <= 3; ++x) {
    const auto v =
        local_expectation(4, 1.1, -0.4, x, identity_op<NumericScalar>(2));
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-12);
  }
  CHECK_THROWS(local_expectation(3, 1.0, 0.0, 3, identity_op<NumericScalar>(2)));
  CHECK_THROWS(local_expectation(3, 1.0, 0.0, 0, identity_op<NumericScalar>(1)));
}

TEST_CASE("local expectations match the dense state") {
  const int n = 4;
  const double eps = 0.7, mu = 0.5;
  const auto rho = to_dense(grand_canonical_density(n, eps, mu));
  const double z = rho.trace().real();
  for (int x = 1; x <= n; ++x) {
    const auto s3 = site_operator<NumericScalar>(1, 1, s3_matrix<NumericScalar>());
    const auto via_aux = local_expectation(n, eps, mu, x, s3);
    const auto dense_op = to_dense(site_operator<NumericScalar>(n, x, s3_matrix<NumericScalar>()));
    const double via_dense = (dense_op * rho).trace().real() / z;
    CHECK(via_aux.real() == doctest::Approx(via_dense).epsilon(1e-11));
    CHECK(std::abs(via_aux.imag()) < 1e-12);
  }
}

TEST_CASE("hole density equals the doping") {
  const int n = 4;
  const double eps = 1.3, mu = -0.6;
  double holes = 0.0;
  for (int x = 1; x <= n; ++x)
    holes += local_expectation(n, eps, mu, x,
                               site_operator<NumericScalar>(1, 1, weyl_unit<NumericScalar>(2, 2)))
                 .real();
  const auto d = doping(n, eps, mu);
  CHECK(holes / n == doctest::Approx(d.sector_sum).epsilon(1e-11));
  CHECK(d.central_diff == doctest::Approx(d.sector_sum).epsilon(1e-7));
  CHECK(doping_exact(n, eps, mu) == doctest::Approx(d.sector_sum).epsilon(1e-11));
}

TEST_CASE("doping saturates and grows with the potential") {
  const int n = 3;
  const double eps = 1.0;
  CHECK(doping(n, eps, -40.0).sector_sum <= 1e-10);
  CHECK(doping(n, eps, 40.0).sector_sum >= 1.0 - 1e-10);
  double prev = -1.0;
  for (double mu = -4.0; mu <= 4.0; mu += 1.0) {
    const double r = doping(n, eps, mu).sector_sum;
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("current recurrence and species balance") {
  for (int n : {2, 3, 4}) {
    for (double eps : {0.5, 2.0}) {
      const double mu = 0.4;
      const double zr = partition_function(n - 1, eps, mu) /
                        partition_function(n, eps, mu);
      const auto j1 = total_current_expectation(n, eps, mu, 1, 1);
      const auto j2 = total_current_expectation(n, eps, mu, 2, 1);
      const auto j3 = total_current_expectation(n, eps, mu, 3, 1);
      CHECK(j1.real() == doctest::Approx(2.0 * eps * zr).epsilon(1e-11));
      CHECK(std::abs(j2.real()) < 1e-12);
      CHECK(j3.real() == doctest::Approx(-j1.real()).epsilon(1e-11));
      CHECK(std::abs(j1.imag()) < 1e-12);
    }
  }
  // the diagonal current vanishes identically
  CHECK(current_op<NumericScalar>(2, 1, 1, 1, NumericScalar{0.0, 1.0}).is_zero());
}

TEST_CASE("species currents do not depend on the bond") {
  const int n = 5;
  const double eps = 1.0, mu = -0.3;
  for (int i = 1; i <= 3; ++i) {
    double lo = 1e300, hi = -1e300;
    for (int x = 1; x < n; ++x) {
      const double v = total_current_expectation(n, eps, mu, i, x).real();
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo < 1e-12);
  }
}

TEST_CASE("partial currents redistribute on the central bond") {
  // Continuity pins only the species sums: on the middle bond of the n = 6
  // chain the state trades J^{12} weight for J^{13} weight while J^1 stays
  // put. The two deviations cancel exactly.
  const int n = 6;
  const double eps = 1.0, mu = 0.5;
  const double a12 = current_expectation(n, eps, mu, 1, 2, 1).real();
  const double m12 = current_expectation(n, eps, mu, 1, 2, 3).real();
  const double a13 = current_expectation(n, eps, mu, 1, 3, 1).real();
  const double m13 = current_expectation(n, eps, mu, 1, 3, 3).real();
  CHECK(std::abs(m12 - a12) > 1e-6);
  CHECK(std::abs((m12 + m13) - (a12 + a13)) < 1e-12);
}

TEST_CASE("auxiliary U(1) structure") {
  const auto r = check_aux_symmetries(2, 3);
  for (const auto& c : r.results) {
    INFO(c.name, " ", c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("scaling fit bookkeeping") {
  CHECK_THROWS(scaling_fit(1.0, 0.0, {4, 5, 6}));
  const auto fit = scaling_fit(1.0, -40.0, {5, 6, 7, 8, 9});
  CHECK(fit.residuals.size() == 5);
  // recurrence holds across the fitted window
  for (int n = 6; n <= 9; ++n) {
    const double zr = partition_function(n - 1, 1.0, -40.0) /
                      partition_function(n, 1.0, -40.0);
    const auto j1 = total_current_expectation(n, 1.0, -40.0, 1, 1);
    CHECK(j1.real() / zr == doctest::Approx(2.0).epsilon(1e-10));
  }
}
