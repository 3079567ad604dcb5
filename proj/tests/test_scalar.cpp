#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsness/scalar.hpp"

using namespace lsness;

TEST_CASE("Gaussian integer ring") {
  GaussInt a(BigInt(3), BigInt(-2)), b(BigInt(-1), BigInt(5));
  CHECK(a * b == GaussInt(BigInt(7), BigInt(17)));
  CHECK(a + b == GaussInt(BigInt(2), BigInt(3)));
  CHECK(a.conj() == GaussInt(BigInt(3), BigInt(2)));
  CHECK((a - a).is_zero());
  // i^2 = -1
  GaussInt i(BigInt(0), BigInt(1));
  CHECK(i * i == GaussInt(-1));
  CHECK(a.to_complex() == NumericScalar(3.0, -2.0));
}

TEST_CASE("big coefficients survive") {
  GaussInt big(BigInt("123456789012345678901234567890"), BigInt(0));
  CHECK((big * big).re == BigInt("123456789012345678901234567890") *
                              BigInt("123456789012345678901234567890"));
}

TEST_CASE("polynomial ring in eps and fugacity") {
  const auto eta = ExactScalar::eta();
  const auto eps = ExactScalar::eps();
  CHECK(eta * eta == -(eps * eps));
  CHECK(ExactScalar::imag_unit() * eps == eta);
  CHECK((eta - eta).is_zero());
  CHECK(eta.eps_degree() == 1);
  CHECK((eta * eta * eta).eps_degree() == 3);

  const auto z = ExactScalar::fugacity();
  auto p = ExactScalar(2) + eta * z + eps * eps * ExactScalar(3);
  CHECK(p.fugacity_degree() == 1);
  CHECK(p.eps_degree() == 2);
}

TEST_CASE("conjugation flips eta, keeps eps and z") {
  const auto eta = ExactScalar::eta();
  CHECK(eta.conj() == -eta);
  CHECK(ExactScalar::eps().conj() == ExactScalar::eps());
  CHECK(ExactScalar::fugacity().conj() == ExactScalar::fugacity());
  auto p = ExactScalar(2) + eta + ExactScalar::fugacity() * eta * eta;
  CHECK(p.conj().conj() == p);
}

TEST_CASE("numeric evaluation") {
  const auto eta = ExactScalar::eta();
  const auto z = ExactScalar::fugacity();
  auto p = ExactScalar(1) + eta * ExactScalar(2) + z * z;
  const double eps = 0.75, mu = -0.4;
  const auto v = p.eval(eps, mu);
  CHECK(v.real() == doctest::Approx(1.0 + std::exp(mu)).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(2.0 * eps).epsilon(1e-14));
}

TEST_CASE("denominator-cleared evaluation at rational eps") {
  // p = 1 + eta^2 = 1 - eps^2; at eps = 1/2, scale 2: 4 - 1 = 3
  auto p = ExactScalar(1) + ExactScalar::eta() * ExactScalar::eta();
  CHECK(p.eval_scaled(1, 2, 2) == GaussInt(3));
  CHECK(p.eval_scaled(2, 1, 2) == GaussInt(-3));
  CHECK_THROWS(p.eval_scaled(1, 2, 1));
}

TEST_CASE("formal mu derivative") {
  const auto z = ExactScalar::fugacity();
  // d/dmu z^4 = 2 z^4; helper returns twice that termwise
  auto p = ExactScalar(7) + z * z * z * z;
  auto d = p.mu_derivative_times_two();
  CHECK(d == ExactScalar::monomial(0, 4, GaussInt(4)));
  const double mu = 0.3;
  CHECK((d.eval(0.0, mu) / 2.0).real() ==
        doctest::Approx(2.0 * std::exp(2.0 * mu)).epsilon(1e-13));
}
