#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lsness/mpo.hpp"
#include "lsness/oracle.hpp"

using namespace lsness;

static Eigen::MatrixXcd random_state(long dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(dim, dim);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) m(r, c) = NumericScalar{g(gen), g(gen)};
  m = 0.5 * (m + Eigen::MatrixXcd(m.adjoint()));
  return m / m.norm();
}

TEST_CASE("permutation and spin-matrix Hamiltonians coincide") {
  for (int n = 2; n <= 3; ++n)
    CHECK((hamiltonian_dense(n) - hamiltonian_spin_form(n)).norm() < 1e-12);
}

TEST_CASE("Hamiltonian acts by neighbor exchange") {
  const auto H = hamiltonian_dense(2);
  // |1,2> (index 0*3+1) -> |2,1> (index 1*3+0)
  CHECK(std::abs(H(3, 1) - 1.0) < 1e-15);
  // aligned pairs are fixed points of the swap
  for (int i = 0; i < 3; ++i) CHECK(std::abs(H(4 * i, 4 * i) - 1.0) < 1e-15);
}

TEST_CASE("dissipator polarizes the left edge and is traceless") {
  const int n = 2;
  const auto m = make_model(n, 1.0);
  // rho = |3><3| at site 1 (x) |2><2| at site 2
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(9, 9);
  rho(7, 7) = 1.0;  // |3,2>
  const Eigen::MatrixXcd& A = m.jumps[0];
  const Eigen::MatrixXcd AdA = A.adjoint() * A;
  const Eigen::MatrixXcd d = 2.0 * A * rho * A.adjoint() - AdA * rho - rho * AdA;
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(9, 9);
  want(1, 1) = 2.0;   // |1,2>
  want(7, 7) = -2.0;
  CHECK((d - want).norm() < 1e-14);
  CHECK(std::abs(d.trace()) < 1e-14);
}

TEST_CASE("generator preserves trace, hermiticity, and hole sectors") {
  const auto m = make_model(3, 0.9);
  const auto rho = random_state(pow3(3), 42);
  const auto L = apply_liouvillian(m, rho);
  CHECK(std::abs(L.trace()) < 1e-12);
  CHECK((L - L.adjoint()).norm() < 1e-12);
  // sector-supported input stays sector-supported
  for (int nu = 0; nu <= 3; ++nu) {
    const auto basis = sector_basis(3, nu);
    const auto rs = embed_from(restrict_to(rho, basis), basis, pow3(3));
    const auto Ls = apply_liouvillian(m, rs);
    double outside = 0.0;
    for (long r = 0; r < pow3(3); ++r)
      for (long c = 0; c < pow3(3); ++c)
        if (hole_count(r, 3) != nu || hole_count(c, 3) != nu)
          outside = std::max(outside, std::abs(Ls(r, c)));
    CHECK(outside < 1e-13);
  }
}

TEST_CASE("magnetization is a weak symmetry of the flow") {
  const auto m = make_model(2, 1.4);
  const auto M = to_dense(magnetization_op<NumericScalar>(2));
  const auto rho = random_state(9, 7);
  const Eigen::MatrixXcd Lr = apply_liouvillian(m, rho);
  const Eigen::MatrixXcd lhs = M * Lr - Lr * M;
  const Eigen::MatrixXcd rhs = apply_liouvillian(m, M * rho - rho * M);
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("residual metric: stationary and non-stationary inputs") {
  const auto m = make_model(2, 1.0);
  // the pure all-holes state is annihilated by both parts separately
  Eigen::MatrixXcd dark = Eigen::MatrixXcd::Zero(9, 9);
  dark(4, 4) = 1.0;  // |2,2>
  CHECK(liouvillian_residual(m, dark) < 1e-15);
  CHECK((NumericScalar{0.0, -1.0} * (m.H * dark - dark * m.H)).norm() < 1e-15);
  // the identity is not stationary: edge dissipators see it
  CHECK(liouvillian_residual(m, Eigen::MatrixXcd::Identity(9, 9)) > 0.1);
  CHECK_THROWS(liouvillian_residual(m, Eigen::MatrixXcd::Zero(9, 9)));
}

TEST_CASE("kernel structure over hole sectors") {
  for (int n = 2; n <= 3; ++n) {
    const auto m = make_model(n, 1.0);
    CHECK(diagonal_kernel_dimension(m) == n + 1);
    const auto ss = steady_states(m);
    CHECK(int(ss.size()) == n + 1);
    for (const auto& s : ss) CHECK(liouvillian_residual(m, s.rho) < 1e-10);
    // top sector kernel is the dark state
    const long mid = (pow3(n) - 1) / 2;
    CHECK(std::abs(std::abs(ss.back().rho(mid, mid)) - 1.0) < 1e-10);
  }
  CHECK_THROWS(steady_states(make_model(2, 0.0)));
}

TEST_CASE("sector kernels match the constructed state") {
  const int n = 3;
  const double eps = 1.0;
  const auto sn = evaluated(contract_cholesky(n, exact_lax()), eps);
  const auto ss = steady_states(make_model(n, eps));
  for (const auto& s : ss) {
    const auto proj = to_dense(project_sector(sn, s.nu));
    const Eigen::MatrixXcd rho = proj * proj.adjoint();
    CHECK(state_overlap(rho, s.rho) > 1.0 - 1e-10);
  }
}

TEST_CASE("spin-1/2 chain oracle") {
  const int n = 3;
  const double eps = 0.8;
  const auto ks = xxx_steady_state(n, eps);
  std::vector<Eigen::MatrixXcd> jumps{xxx_jump(n, 1, true), xxx_jump(n, n, false)};
  CHECK(apply_liouvillian(xxx_hamiltonian(n), jumps, eps, ks.rho).norm() < 1e-10);
  // embedding into the no-hole sector reproduces the nu = 0 kernel
  const auto ss = steady_states(make_model(n, eps));
  CHECK(state_overlap(embed_xxx(ks.rho, n), ss.front().rho) > 1.0 - 1e-10);
}
