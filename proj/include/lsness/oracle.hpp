// Brute-force ground truth on the dense physical space: Hamiltonian (built
// two independent ways), boundary dissipators, the Liouvillian superoperator
// restricted to hole-number sectors, and its null space via SVD. Also the
// boundary-driven spin-1/2 XXX chain on the no-hole subspace.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <stdexcept>
#include <vector>

#include "lsness/model.hpp"
#include "lsness/physical_op.hpp"

namespace lsness {

struct LindbladModel {
  int n = 0;
  double eps = 0.0;
  Eigen::MatrixXcd H;
  std::vector<Eigen::MatrixXcd> jumps;
};

// H = sum_x P_{x,x+1} directly from the permutation action.
inline Eigen::MatrixXcd hamiltonian_dense(int n) {
  return to_dense(hamiltonian_op<NumericScalar>(n));
}

// Independent route: two-site interaction from spin-1 matrices,
// h = s.s + (s.s)^2 - 1 on each bond.
inline Eigen::MatrixXcd hamiltonian_spin_form(int n) {
  using M = Eigen::MatrixXcd;
  const double r2 = std::sqrt(2.0);
  M sp = M::Zero(3, 3), sz = M::Zero(3, 3);
  sp(0, 1) = sp(1, 2) = r2;
  sz(0, 0) = 1.0;
  sz(2, 2) = -1.0;
  const M sm = sp.adjoint();
  const M sx = 0.5 * (sp + sm);
  const M sy = NumericScalar{0.0, -0.5} * (sp - sm);

  const long d9 = 9;
  M ss = M::Zero(d9, d9);
  auto kr = [](const M& a, const M& b) {
    M r(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
      for (long j = 0; j < a.cols(); ++j)
        r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
  };
  ss = kr(sx, sx) + kr(sy, sy) + kr(sz, sz);
  const M h = ss + ss * ss - M::Identity(d9, d9);

  const long dim = pow3(n);
  M H = M::Zero(dim, dim);
  for (int x = 1; x < n; ++x) {
    const long left = pow3(x - 1);
    const long right = pow3(n - x - 1);
    M hb = kr(M::Identity(left, left), kr(h, M::Identity(right, right)));
    H += hb;
  }
  return H;
}

inline LindbladModel make_model(int n, double eps) {
  if (n < 2) throw std::invalid_argument("model needs n >= 2");
  LindbladModel m;
  m.n = n;
  m.eps = eps;
  m.H = hamiltonian_dense(n);
  m.jumps.push_back(to_dense(jump_left<NumericScalar>(n)));
  m.jumps.push_back(to_dense(jump_right<NumericScalar>(n)));
  return m;
}

// Generic dense Lindblad generator: rho -> -i[H,rho] + eps sum_A D_A(rho),
// D_A(rho) = 2 A rho A^dag - {A^dag A, rho}.
inline Eigen::MatrixXcd apply_liouvillian(const Eigen::MatrixXcd& H,
                                          const std::vector<Eigen::MatrixXcd>& jumps,
                                          double eps,
                                          const Eigen::MatrixXcd& rho) {
  const NumericScalar i1{0.0, 1.0};
  Eigen::MatrixXcd out = -i1 * (H * rho - rho * H);
  for (const auto& A : jumps) {
    const Eigen::MatrixXcd AdA = A.adjoint() * A;
    out += eps * (2.0 * A * rho * A.adjoint() - AdA * rho - rho * AdA);
  }
  return out;
}

inline Eigen::MatrixXcd apply_liouvillian(const LindbladModel& m,
                                          const Eigen::MatrixXcd& rho) {
  return apply_liouvillian(m.H, m.jumps, m.eps, rho);
}

inline double liouvillian_residual(const LindbladModel& m,
                                   const Eigen::MatrixXcd& rho) {
  const double nrm = rho.norm();
  if (nrm == 0.0) throw std::invalid_argument("zero state");
  return apply_liouvillian(m, rho).norm() / nrm;
}

// Basis indices of the nu-hole subspace.
inline std::vector<long> sector_basis(int n, int nu) {
  std::vector<long> b;
  for (long idx = 0; idx < pow3(n); ++idx)
    if (hole_count(idx, n) == nu) b.push_back(idx);
  return b;
}

inline Eigen::MatrixXcd restrict_to(const Eigen::MatrixXcd& op,
                                    const std::vector<long>& basis) {
  const long d = long(basis.size());
  Eigen::MatrixXcd r(d, d);
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) r(a, b) = op(basis[a], basis[b]);
  return r;
}

inline Eigen::MatrixXcd embed_from(const Eigen::MatrixXcd& op,
                                   const std::vector<long>& basis, long dim) {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(dim, dim);
  const long d = long(basis.size());
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) r(basis[a], basis[b]) = op(a, b);
  return r;
}

// Row-major vectorization: vec(rho)_{r d + c} = rho_{rc}, so the
// superoperator of X rho Y is kron(X, Y^T).
inline Eigen::MatrixXcd superop_sandwich(const Eigen::MatrixXcd& X,
                                         const Eigen::MatrixXcd& Y) {
  const long d = X.rows();
  Eigen::MatrixXcd r(d * d, d * d);
  const Eigen::MatrixXcd Yt = Y.transpose();
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j)
      r.block(i * d, j * d, d, d) = X(i, j) * Yt;
  return r;
}

// Dense Liouvillian matrix for (H, jumps, eps) already restricted to a block.
inline Eigen::MatrixXcd liouvillian_matrix(const Eigen::MatrixXcd& H,
                                           const std::vector<Eigen::MatrixXcd>& jumps,
                                           double eps) {
  const long d = H.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const NumericScalar i1{0.0, 1.0};
  Eigen::MatrixXcd L =
      -i1 * (superop_sandwich(H, id) - superop_sandwich(id, H));
  for (const auto& A : jumps) {
    const Eigen::MatrixXcd AdA = A.adjoint() * A;
    L += eps * (2.0 * superop_sandwich(A, A.adjoint()) -
                superop_sandwich(AdA, id) - superop_sandwich(id, AdA));
  }
  return L;
}

struct KernelState {
  Eigen::MatrixXcd rho;       // Frobenius-normalized, trace rotated positive
  double smallest_sv = 0.0;   // numeric kernel certificate
  double gap = 0.0;           // second smallest singular value
};

// Null vector of a dense superoperator via full SVD; throws if the kernel is
// not one-dimensional at the given relative tolerance.
inline KernelState kernel_state(const Eigen::MatrixXcd& superop,
                                double tol = 1e-8) {
  const long d2 = superop.rows();
  const long d = long(std::llround(std::sqrt(double(d2))));
  if (d * d != d2) throw std::invalid_argument("superoperator is not d^2 x d^2");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(superop, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(sv(0), 1.0);
  KernelState out;
  out.smallest_sv = sv(d2 - 1);
  out.gap = d2 >= 2 ? sv(d2 - 2) : 0.0;
  if (out.smallest_sv > tol * scale)
    throw std::runtime_error("superoperator has no numeric null vector");
  if (d2 >= 2 && out.gap <= tol * scale)
    throw std::runtime_error("degenerate steady state in a single sector");
  Eigen::VectorXcd v = svd.matrixV().col(d2 - 1);
  Eigen::MatrixXcd rho(d, d);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) rho(r, c) = v(r * d + c);
  const NumericScalar tr = rho.trace();
  if (std::abs(tr) > 1e-12) rho *= std::abs(tr) / tr;  // fix the phase
  rho /= rho.norm();
  out.rho = rho;
  return out;
}

struct SectorSteadyState {
  int nu = 0;
  Eigen::MatrixXcd rho;  // embedded in the full 3^n space, Frobenius norm 1
  double smallest_sv = 0.0;
  double gap = 0.0;
};

// One steady state per hole sector; refuses eps = 0 where the kernel is
// infinitely degenerate.
inline std::vector<SectorSteadyState> steady_states(const LindbladModel& m,
                                                    double tol = 1e-8) {
  if (m.eps == 0.0)
    throw std::invalid_argument("eps = 0: steady state is not unique");
  std::vector<SectorSteadyState> out;
  const long dim = pow3(m.n);
  for (int nu = 0; nu <= m.n; ++nu) {
    const auto basis = sector_basis(m.n, nu);
    const Eigen::MatrixXcd Hs = restrict_to(m.H, basis);
    std::vector<Eigen::MatrixXcd> As;
    for (const auto& A : m.jumps) As.push_back(restrict_to(A, basis));
    const auto ks = kernel_state(liouvillian_matrix(Hs, As, m.eps), tol);
    out.push_back({nu, embed_from(ks.rho, basis, dim), ks.smallest_sv, ks.gap});
  }
  return out;
}

// Total kernel dimension over the diagonal hole-sector blocks.
inline int diagonal_kernel_dimension(const LindbladModel& m, double tol = 1e-8) {
  int count = 0;
  for (int nu = 0; nu <= m.n; ++nu) {
    const auto basis = sector_basis(m.n, nu);
    const Eigen::MatrixXcd Hs = restrict_to(m.H, basis);
    std::vector<Eigen::MatrixXcd> As;
    for (const auto& A : m.jumps) As.push_back(restrict_to(A, basis));
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(liouvillian_matrix(Hs, As, m.eps));
    const auto& sv = svd.singularValues();
    const double scale = std::max(sv(0), 1.0);
    for (long i = 0; i < sv.size(); ++i) count += (sv(i) <= tol * scale);
  }
  return count;
}

// Normalized Hilbert-Schmidt overlap |<A,B>| / (|A| |B|), phase-blind.
inline double state_overlap(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("zero state");
  return std::abs((a.adjoint() * b).trace()) / (na * nb);
}

// --- boundary-driven spin-1/2 XXX chain --------------------------------------

// SWAP Hamiltonian on 2^n, jumps sigma+ at site 1 and sigma- at site n:
// the image of the no-hole sector under |up> = |1>, |down> = |3>.
inline Eigen::MatrixXcd xxx_hamiltonian(int n) {
  const long dim = 1L << n;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (long idx = 0; idx < dim; ++idx)
    for (int x = 0; x < n - 1; ++x) {
      const int a = int((idx >> (n - 1 - x)) & 1);
      const int b = int((idx >> (n - 2 - x)) & 1);
      long t = idx;
      t &= ~((1L << (n - 1 - x)) | (1L << (n - 2 - x)));
      t |= long(b) << (n - 1 - x);
      t |= long(a) << (n - 2 - x);
      H(t, idx) += 1.0;
    }
  return H;
}

inline Eigen::MatrixXcd xxx_jump(int n, int site, bool raise) {
  // bit 0 = up, 1 = down; site 1-based, site 1 in the highest bit
  const long dim = 1L << n;
  const long mask = 1L << (n - site);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
  for (long idx = 0; idx < dim; ++idx) {
    const bool down = idx & mask;
    if (raise && down) A(idx & ~mask, idx) = 1.0;   // |up><down|
    if (!raise && !down) A(idx | mask, idx) = 1.0;  // |down><up|
  }
  return A;
}

inline KernelState xxx_steady_state(int n, double eps, double tol = 1e-8) {
  if (eps == 0.0) throw std::invalid_argument("eps = 0: not unique");
  std::vector<Eigen::MatrixXcd> jumps{xxx_jump(n, 1, true), xxx_jump(n, n, false)};
  return kernel_state(liouvillian_matrix(xxx_hamiltonian(n), jumps, eps), tol);
}

// Embed a 2^n spin-1/2 operator into the no-hole sector of the 3^n space.
inline Eigen::MatrixXcd embed_xxx(const Eigen::MatrixXcd& op, int n) {
  const long dim2 = 1L << n;
  std::vector<long> map(dim2);
  for (long idx = 0; idx < dim2; ++idx) {
    long t = 0;
    for (int x = 0; x < n; ++x)
      t = t * 3 + (((idx >> (n - 1 - x)) & 1) ? 2 : 0);
    map[idx] = t;
  }
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(pow3(n), pow3(n));
  for (long a = 0; a < dim2; ++a)
    for (long b = 0; b < dim2; ++b) r(map[a], map[b]) = op(a, b);
  return r;
}

}  // namespace lsness
