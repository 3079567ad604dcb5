// Walking-graph-state evaluation of the Cholesky factor: a depth-first sum
// over length-n closed walks on the auxiliary lattice. The edge table
// (moves, index labels, amplitudes) is written out independently of the
// Lax-component machinery so the two contraction strategies can serve as
// each other's oracle.

#pragma once

#include "lsness/physical_op.hpp"

namespace lsness {

namespace detail {

struct WalkEdge {
  int i, j;       // index function value e^{ij}
  AuxState to;    // q(g)
  ExactScalar amp;  // <p| L^{ij} |q>
};

// Outgoing edges from vertex p = (j,k,l), monomial basis. The e^{13}/e^{31}
// labels are degenerate: each maps to both a (±1,±1,0) and a (0,0,±1) move.
inline void walk_edges(const AuxState& p, std::vector<WalkEdge>& out) {
  out.clear();
  const ExactScalar eta = ExactScalar::eta();
  const int j = p.j, k = p.k, l = p.l;

  // triple-degenerate self-loops e^{ii}
  out.push_back({1, 1, p, ExactScalar(1) + eta * ExactScalar(j + l)});
  out.push_back({2, 2, p, ExactScalar(1)});
  out.push_back({3, 3, p, ExactScalar(1) + eta * ExactScalar(k + l)});
  // e^{12}: (j,k,l) -> (j+1,k,l), amplitude <p|b_up|q> = j+1
  out.push_back({1, 2, {j + 1, k, l}, ExactScalar(j + 1)});
  // e^{21}: (j,k,l) -> (j-1,k,l), amplitude eta
  if (j > 0) out.push_back({2, 1, {j - 1, k, l}, eta});
  // e^{23}: (j,k,l) -> (j,k+1,l), amplitude eta (k+1)
  out.push_back({2, 3, {j, k + 1, l}, eta * ExactScalar(k + 1)});
  // e^{32}: (j,k,l) -> (j,k-1,l), amplitude 1
  if (k > 0) out.push_back({3, 2, {j, k - 1, l}, ExactScalar(1)});
  // e^{13}, boson branch: -> (j+1,k+1,l), amplitude eta (j+1)(k+1)
  out.push_back({1, 3, {j + 1, k + 1, l}, eta * ExactScalar(long(j + 1) * (k + 1))});
  // e^{13}, spin branch: -> (j,k,l+1), amplitude eta (l+1)
  out.push_back({1, 3, {j, k, l + 1}, eta * ExactScalar(l + 1)});
  // e^{31}, boson branch: -> (j-1,k-1,l), amplitude eta
  if (j > 0 && k > 0) out.push_back({3, 1, {j - 1, k - 1, l}, eta});
  // e^{31}, spin branch: -> (j,k,l-1), amplitude 2 - eta + eta (l-1)
  if (l > 0)
    out.push_back({3, 1, {j, k, l - 1}, ExactScalar(2) - eta + eta * ExactScalar(l - 1)});
}

inline void wgs_rec(int step, int n, const AuxState& p, long row, long col,
                    const ExactScalar& amp, PhysicalOperator<ExactScalar>& out) {
  if (step == n) {
    if (p == kVacuum) out.add(row, col, amp);
    return;
  }
  const int remaining = n - step;
  // cannot return to the origin: j and k drop together at best, l alone
  if (std::max(p.j, p.k) + p.l > remaining) return;
  std::vector<WalkEdge> edges;
  walk_edges(p, edges);
  for (const auto& e : edges) {
    if (std::max(e.to.j, e.to.k) + e.to.l > remaining - 1) continue;
    wgs_rec(step + 1, n, e.to, row * 3 + (e.i - 1), col * 3 + (e.j - 1),
            amp * e.amp, out);
  }
}

}  // namespace detail

// S_n as a sum over closed walks; coherent contributions of degenerate
// walks to the same index string add up.
inline PhysicalOperator<ExactScalar> wgs_contract(int n) {
  if (n < 1) throw std::invalid_argument("chain length must be >= 1");
  PhysicalOperator<ExactScalar> out(n);
  detail::wgs_rec(0, n, kVacuum, 0, 0, ExactScalar(1), out);
  return out;
}

}  // namespace lsness
