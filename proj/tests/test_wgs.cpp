#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsness/mpo.hpp"
#include "lsness/wgs.hpp"

using namespace lsness;

TEST_CASE("walk sum equals the monodromy contraction") {
  for (int n = 1; n <= 4; ++n) {
    const auto walks = wgs_contract(n);
    const auto lax = contract_cholesky(n, exact_lax());
    CHECK(walks.nnz() == lax.nnz());
    CHECK((walks - lax).is_zero());
  }
}

TEST_CASE("degenerate labels add coherently") {
  // the two-step round trips via (1,1,0) and (0,0,1) both carry label
  // e^{13} x e^{31}; their amplitudes eta^2 and eta(2-eta) sum to 2 eta
  const auto s2 = wgs_contract(2);
  auto idx = [](int a, int b) { return long((a - 1) * 3 + (b - 1)); };
  CHECK(s2.get(idx(1, 3), idx(3, 1)) == ExactScalar(2) * ExactScalar::eta());
}

TEST_CASE("walks must close") {
  CHECK(wgs_contract(1).nnz() == 3);  // only the self-loops at the origin
  CHECK_THROWS(wgs_contract(0));
}
