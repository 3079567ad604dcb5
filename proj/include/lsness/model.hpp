// Chain-model operators shared by the MPO construction and the brute-force
// oracle: permutation Hamiltonian, boundary jump operators, particle
// currents, hole number, magnetization, and the Z2 parity maps.

#pragma once

#include <array>

#include "lsness/physical_op.hpp"

namespace lsness {

// Swap local states of sites x and x+1 inside a basis index.
inline long swap_sites(long idx, int x, int n) {
  const long right = pow3(n - x - 1);
  const long block = idx / (right * 9);
  const long rest = idx % right;
  const int a = int((idx / (right * 3)) % 3);
  const int b = int((idx / right) % 3);
  return ((block * 3 + b) * 3 + a) * right + rest;
}

// H = sum_x P_{x,x+1}, the two-site permutation.
template <class S>
PhysicalOperator<S> hamiltonian_op(int n) {
  PhysicalOperator<S> h(n);
  for (long idx = 0; idx < h.dim(); ++idx)
    for (int x = 1; x < n; ++x)
      h.add(swap_sites(idx, x, n), idx, ScalarTraits<S>::one());
  return h;
}

// e^{ij} at site x as a 3x3 table.
template <class S>
std::array<std::array<S, 3>, 3> weyl_unit(int i, int j) {
  std::array<std::array<S, 3>, 3> m{};
  for (auto& row : m) row.fill(ScalarTraits<S>::zero());
  m[i - 1][j - 1] = ScalarTraits<S>::one();
  return m;
}

template <class S>
std::array<std::array<S, 3>, 3> s3_matrix() {
  auto m = weyl_unit<S>(1, 1);
  m[2][2] = ScalarTraits<S>::from_int(-1);
  return m;
}

// Jump operators: A1 = e^{13} at site 1, A2 = e^{31} at site n.
template <class S>
PhysicalOperator<S> jump_left(int n) {
  return site_operator<S>(n, 1, weyl_unit<S>(1, 3));
}
template <class S>
PhysicalOperator<S> jump_right(int n) {
  return site_operator<S>(n, n, weyl_unit<S>(3, 1));
}

// Two-site current density J^{ij} = i (e^{ij} (x) e^{ji} - e^{ji} (x) e^{ij})
// placed at bond (x, x+1). The scalar i comes from the ring's imaginary unit.
template <class S>
PhysicalOperator<S> current_op(int n, int i, int j, int x, const S& imag_unit) {
  PhysicalOperator<S> a =
      site_operator<S>(n, x, weyl_unit<S>(i, j)) *
      site_operator<S>(n, x + 1, weyl_unit<S>(j, i));
  PhysicalOperator<S> b =
      site_operator<S>(n, x, weyl_unit<S>(j, i)) *
      site_operator<S>(n, x + 1, weyl_unit<S>(i, j));
  return (a - b).scaled(imag_unit);
}

// Total species current J^i at bond x.
template <class S>
PhysicalOperator<S> total_current_op(int n, int i, int x, const S& imag_unit) {
  PhysicalOperator<S> r(n);
  for (int j = 1; j <= 3; ++j)
    if (j != i) r += current_op<S>(n, i, j, x, imag_unit);
  return r;
}

// Diagonal hole-number operator N0.
template <class S>
PhysicalOperator<S> hole_number_op(int n) {
  PhysicalOperator<S> r(n);
  for (long idx = 0; idx < r.dim(); ++idx)
    r.set(idx, idx, ScalarTraits<S>::from_int(hole_count(idx, n)));
  return r;
}

// Diagonal magnetization M = sum_x s^3_x.
template <class S>
PhysicalOperator<S> magnetization_op(int n) {
  PhysicalOperator<S> r(n);
  for (long idx = 0; idx < r.dim(); ++idx)
    r.set(idx, idx, ScalarTraits<S>::from_int(magnetization(idx, n)));
  return r;
}

// --- Z2 parity maps on operators -------------------------------------------

inline long reverse_sites_index(long idx, int n) {
  long out = 0;
  for (int i = 0; i < n; ++i) {
    out = out * 3 + idx % 3;
    idx /= 3;
  }
  return out;
}

inline long spin_flip_index(long idx, int n) {
  long out = 0, mult = 1;
  for (int i = 0; i < n; ++i) {
    out += (2 - idx % 3) * mult;
    mult *= 3;
    idx /= 3;
  }
  return out;
}

// Lattice reversal R.
template <class S>
PhysicalOperator<S> lattice_reversal(const PhysicalOperator<S>& op) {
  const int n = op.sites();
  return op.permuted([n](long idx) { return reverse_sites_index(idx, n); });
}

// Spin-flip (up <-> down) S.
template <class S>
PhysicalOperator<S> spin_flip(const PhysicalOperator<S>& op) {
  const int n = op.sites();
  return op.permuted([n](long idx) { return spin_flip_index(idx, n); });
}

// Transposition map T: e^{ij} -> e^{ji} on every site = full transpose.
template <class S>
PhysicalOperator<S> transposition_map(const PhysicalOperator<S>& op) {
  return op.transpose();
}

}  // namespace lsness
