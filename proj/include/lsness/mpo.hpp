// Contraction of the vacuum monodromy expectation into the Cholesky factor
// S_n and the steady-state density operator, hole-sector projections,
// grand-canonical mixtures, and the construction-level identity checks
// (local operator divergence, defining relation, boundary system,
// transfer-matrix commutation).

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "lsness/lax.hpp"
#include "lsness/model.hpp"
#include "lsness/physical_op.hpp"
#include "lsness/report.hpp"
#include "lsness/vertex.hpp"

namespace lsness {

namespace detail {

// Lower bound on the number of Lax applications needed to bring a state
// back to the vacuum: v-moves lower j and k together, l only by itself.
inline int return_distance(const AuxState& s) {
  return std::max(s.j, s.k) + s.l;
}

template <class S>
struct CholeskySweep {
  const LaxComponents<S>& L;
  int n;
  PhysicalOperator<S>& out;

  void run() {
    rec(1, 0, 0, unit_frontier<S>(kVacuum));
  }

  void rec(int site, long row, long col, const AuxFrontier<S>& f) {
    if (site > n) {
      auto it = f.find(kVacuum.key());
      if (it != f.end()) out.set(row, col, it->second);
      return;
    }
    const int remaining = n - site;
    std::vector<typename LaxComponents<S>::Entry> e;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        AuxFrontier<S> nf;
        for (const auto& [k, v] : f) {
          e.clear();
          L.apply_transpose(i, j, AuxState::from_key(k), v, e);
          for (const auto& [s, c] : e)
            if (return_distance(s) <= remaining) frontier_add(nf, s.key(), c);
        }
        if (!nf.empty()) rec(site + 1, row * 3 + (i - 1), col * 3 + (j - 1), nf);
      }
  }
};

template <class S>
struct DensitySweep {
  const TwoLegLax<S>& tl;
  int n;
  PhysicalOperator<S>& out;

  void run() { rec(1, 0, 0, doubled_vacuum_frontier<S>()); }

  void rec(int site, long row, long col, const DoubledFrontier<S>& f) {
    if (site > n) {
      auto it = f.find(kDoubledVacuum.key());
      if (it != f.end()) out.set(row, col, it->second);
      return;
    }
    const int remaining = n - site;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        DoubledFrontier<S> raw;
        for (const auto& [k, v] : f)
          tl.apply_bra(i, j, DoubledState::from_key(k), v, raw);
        DoubledFrontier<S> nf;
        for (const auto& [k, v] : raw) {
          const DoubledState s = DoubledState::from_key(k);
          if (return_distance(s.a) <= remaining &&
              return_distance(s.b) <= remaining)
            frontier_add(nf, k, v);
        }
        if (!nf.empty()) rec(site + 1, row * 3 + (i - 1), col * 3 + (j - 1), nf);
      }
  }
};

}  // namespace detail

inline int cholesky_cutoff_threshold(int n) { return (n + 1) / 2; }

// S_n(eps[, mu]) = <vac| L^{i1 j1} ... L^{in jn} |vac>, frontier sweep over
// the auxiliary lattice grouped by shared physical-index prefix.
template <class S>
PhysicalOperator<S> contract_cholesky(int n, const LaxComponents<S>& L) {
  if (n < 1) throw std::invalid_argument("chain length must be >= 1");
  if (L.cutoff >= 0 && L.cutoff < cholesky_cutoff_threshold(n))
    throw std::invalid_argument(
        "cutoff below exactness threshold; contraction would silently truncate");
  PhysicalOperator<S> out(n);
  detail::CholeskySweep<S>{L, n, out}.run();
  return out;
}

// rho = <<vac| LL^{i1 j1} ... LL^{in jn} |vac>>, the two-leg route.
template <class S>
PhysicalOperator<S> contract_density_two_leg(int n, const TwoLegLax<S>& tl) {
  if (n < 1) throw std::invalid_argument("chain length must be >= 1");
  if (tl.leg.cutoff >= 0 && tl.leg.cutoff < cholesky_cutoff_threshold(n))
    throw std::invalid_argument("cutoff below exactness threshold");
  PhysicalOperator<S> out(n);
  detail::DensitySweep<S>{tl, n, out}.run();
  return out;
}

// rho = S_n S_n^dag, the Cholesky route.
template <class S>
PhysicalOperator<S> density_from_cholesky(const PhysicalOperator<S>& s) {
  return s * s.adjoint();
}

enum class DensityMethod { cholesky, two_leg };

template <class S>
PhysicalOperator<S> build_density(int n, const LaxComponents<S>& L,
                                  DensityMethod method) {
  if (method == DensityMethod::cholesky)
    return density_from_cholesky(contract_cholesky(n, L));
  return contract_density_two_leg(n, build_two_leg(L));
}

// Zeroes every matrix element whose row hole count differs from nu. The
// operator must be block diagonal in the hole number.
template <class S>
PhysicalOperator<S> project_sector(const PhysicalOperator<S>& op, int nu) {
  const int n = op.sites();
  PhysicalOperator<S> r(n);
  for (const auto& [k, v] : op.entries()) {
    const long row = PhysicalOperator<S>::row_of(k);
    const long col = PhysicalOperator<S>::col_of(k);
    if (hole_count(row, n) != hole_count(col, n))
      throw std::invalid_argument("operator is not hole-number block diagonal");
    if (hole_count(row, n) == nu) r.add(row, col, v);
  }
  return r;
}

// Grand-canonical mixture, numeric mode: both the mu-weighted two-leg
// contraction and the explicit sector sum with weights exp(mu nu); the two
// routes must agree.
inline PhysicalOperator<NumericScalar> grand_canonical_density(
    int n, double eps, double mu, double tol = 1e-9) {
  const auto weighted = apply_chemical_weight(numeric_lax(eps), mu);
  auto rho = contract_density_two_leg(n, build_two_leg(weighted));

  const auto universal = build_density(n, numeric_lax(eps), DensityMethod::cholesky);
  PhysicalOperator<NumericScalar> sum(n);
  for (int nu = 0; nu <= n; ++nu)
    sum += project_sector(universal, nu).scaled(NumericScalar{std::exp(mu * nu), 0.0});

  double worst = 0.0, scale = 0.0;
  for (const auto& [k, v] : rho.entries()) scale = std::max(scale, std::abs(v));
  auto diff = rho - sum;
  for (const auto& [k, v] : diff.entries()) worst = std::max(worst, std::abs(v));
  if (worst > tol * std::max(scale, 1.0))
    throw std::runtime_error("grand-canonical routes disagree");
  return rho;
}

// Exact-mode variant: z^(2 nu) weights against the formal-fugacity two-leg
// contraction, compared entry-wise exactly.
inline PhysicalOperator<ExactScalar> grand_canonical_density_exact(int n) {
  const auto weighted = apply_chemical_weight(exact_lax());
  auto rho = contract_density_two_leg(n, build_two_leg(weighted));

  const auto universal = build_density(n, exact_lax(), DensityMethod::cholesky);
  PhysicalOperator<ExactScalar> sum(n);
  for (int nu = 0; nu <= n; ++nu)
    sum += project_sector(universal, nu)
               .scaled(ExactScalar::monomial(0, 2 * nu, GaussInt(1)));
  if (!(rho - sum).is_zero())
    throw std::runtime_error("grand-canonical routes disagree in exact mode");
  return rho;
}

// ---------------------------------------------------------------------------
// Identity checks

// Local operator divergence: [h, L_x L_{x+1}] = B_x L_{x+1} - L_x B_{x+1}
// as an identity on (C3 (x) C3) (x) H_a, entry-wise on every source state
// with coordinates <= max_coord.
template <class S>
CheckReport check_sutherland(const LaxComponents<S>& L, int max_coord) {
  using T = ScalarTraits<S>;
  CheckReport report;
  const S eta = L.eta;

  bool ok = true;
  std::string fail;
  std::vector<typename LaxComponents<S>::Entry> e1, e2;
  for (int sj = 0; sj <= max_coord && ok; ++sj)
    for (int sk = 0; sk <= max_coord && ok; ++sk)
      for (int sl = 0; sl <= max_coord && ok; ++sl) {
        const AuxState src{sj, sk, sl};
        // residual[phys slot (a,b),(c,d)] as aux frontier
        std::map<std::array<int, 4>, AuxFrontier<S>> res;
        auto acc = [&](int a, int b, int c, int d, const AuxFrontier<S>& f,
                       bool negate) {
          auto& slot = res[{a, b, c, d}];
          for (const auto& [k, v] : f) frontier_add(slot, k, negate ? -v : v);
        };
        // LHS: sum_{ijkl} (e^{kj} (x) e^{il} - e^{il} (x) e^{kj}) (x) L^{ij}L^{kl}
        for (int i = 1; i <= 3; ++i)
          for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
              for (int l = 1; l <= 3; ++l) {
                // L^{ij} L^{kl} |src>
                e1.clear();
                L.apply(k, l, src, T::one(), e1);
                AuxFrontier<S> f;
                for (const auto& [t, c] : e1) {
                  e2.clear();
                  L.apply(i, j, t, c, e2);
                  for (const auto& [t2, c2] : e2) frontier_add(f, t2.key(), c2);
                }
                if (f.empty()) continue;
                acc(k, j, i, l, f, false);
                acc(i, l, k, j, f, true);
              }
        // RHS: B_1 L_2 - L_1 B_2 with b = eta (e^{33} - e^{11})
        for (int k = 1; k <= 3; ++k)
          for (int l = 1; l <= 3; ++l) {
            e1.clear();
            L.apply(k, l, src, eta, e1);
            AuxFrontier<S> f;
            for (const auto& [t, c] : e1) frontier_add(f, t.key(), c);
            if (f.empty()) continue;
            acc(3, 3, k, l, f, true);  // subtract RHS from LHS residual
            acc(1, 1, k, l, f, false);
            acc(k, l, 3, 3, f, false);
            acc(k, l, 1, 1, f, true);
          }
        for (auto& [slot, f] : res) {
          if (!f.empty()) {
            ok = false;
            std::ostringstream os;
            os << "slot e^{" << slot[0] << slot[1] << "} x e^{" << slot[2]
               << slot[3] << "} at source (" << sj << "," << sk << "," << sl << ")";
            fail = os.str();
            break;
          }
        }
      }
  report.add("local operator divergence", ok, 0.0, fail);
  return report;
}

// Global almost-conservation: [H, S_n] = -i eps (s3 (x) S_{n-1} - S_{n-1} (x) s3).
// The right-hand scalar is -eta = -i eps in the exact ring.
template <class S>
CheckReport check_defining_relation(int n, const LaxComponents<S>& L) {
  if (n < 2) throw std::invalid_argument("defining relation needs n >= 2");
  CheckReport report;
  const auto sn = contract_cholesky(n, L);
  const auto sn1 = contract_cholesky(n - 1, L);
  const auto h = hamiltonian_op<S>(n);

  PhysicalOperator<S> s3(1);
  s3.set(0, 0, ScalarTraits<S>::one());
  s3.set(2, 2, ScalarTraits<S>::from_int(-1));

  const auto lhs = commutator(h, sn);
  const auto rhs = (kron(s3, sn1) - kron(sn1, s3)).scaled(-L.eta);
  report.add("defining relation", (lhs - rhs).is_zero());

  // projected variant: both sides restricted to the nu-hole rows
  bool ok = true;
  for (int nu = 0; nu <= n && ok; ++nu) {
    const auto lhs_nu = commutator(h, project_sector(sn, nu));
    PhysicalOperator<S> rhs_nu(n);
    for (const auto& [k, v] : rhs.entries()) {
      const long row = PhysicalOperator<S>::row_of(k);
      if (hole_count(row, n) == nu)
        rhs_nu.add(row, PhysicalOperator<S>::col_of(k), v);
    }
    ok = (lhs_nu - rhs_nu).is_zero();
  }
  report.add("projected defining relation", ok);
  return report;
}

// Boundary system: <<vac| (eps D_{A1}(LL_1) - i (B1 - B2)) = 0 and
// (eps D_{A2}(LL_n) + i (B1 - B2)) |vac>> = 0, with b = eta (e^{33} - e^{11})
// and conj(b) = -b; the dissipator inherits the overall coupling eps from
// the fixed-point equation.
template <class S>
CheckReport check_boundary_system(const TwoLegLax<S>& tl) {
  using T = ScalarTraits<S>;
  CheckReport report;
  const S eta = tl.leg.eta;
  const S i_unit = T::imag_unit();
  const S epsv = T::zero() - i_unit * eta;  // eps = -i eta
  const S two_eps = T::mul_int(epsv, 2);

  // slot accumulators: phys (a,b) -> doubled frontier
  using Slots = std::array<std::array<DoubledFrontier<S>, 3>, 3>;

  // bra application of LL^{ij} starting from <<vac|, weighted
  auto bra_LL = [&](int i, int j, const S& w, Slots& slots, int a, int b) {
    DoubledFrontier<S> f;
    tl.apply_bra(i, j, kDoubledVacuum, w, f);
    for (const auto& [k, v] : f) frontier_add(slots[a - 1][b - 1], k, v);
  };
  // bra of (1_a (x) Lb^{ij}): conjugate leg only
  auto bra_conj_only = [&](int i, int j, const S& w, Slots& slots, int a, int b) {
    std::vector<typename LaxComponents<S>::Entry> e;
    tl.conj_leg.apply_transpose(i, j, kVacuum, w, e);
    for (const auto& [s, c] : e)
      frontier_add(slots[a - 1][b - 1], DoubledState{kVacuum, s}.key(), c);
  };
  auto bra_plain_only = [&](int i, int j, const S& w, Slots& slots, int a, int b) {
    std::vector<typename LaxComponents<S>::Entry> e;
    tl.leg.apply_transpose(i, j, kVacuum, w, e);
    for (const auto& [s, c] : e)
      frontier_add(slots[a - 1][b - 1], DoubledState{s, kVacuum}.key(), c);
  };

  // Left equation, A1 = e^{13}: D(LL) = 2 e^{11} (x) LL^{33}
  //   - sum_j e^{3j} (x) LL^{3j} - sum_i e^{i3} (x) LL^{i3}
  {
    Slots slots{};
    bra_LL(3, 3, two_eps, slots, 1, 1);
    for (int j = 1; j <= 3; ++j) bra_LL(3, j, T::zero() - epsv, slots, 3, j);
    for (int i = 1; i <= 3; ++i) bra_LL(i, 3, T::zero() - epsv, slots, i, 3);
    // -i B1: B1 slots (3,j): +eta 1 (x) Lb^{j3}; (1,j): -eta 1 (x) Lb^{j1}
    for (int j = 1; j <= 3; ++j) {
      bra_conj_only(j, 3, -i_unit * eta, slots, 3, j);
      bra_conj_only(j, 1, i_unit * eta, slots, 1, j);
    }
    // +i B2: B2 slots (i,3): -eta L^{i3} (x) 1; (i,1): +eta L^{i1} (x) 1
    for (int i = 1; i <= 3; ++i) {
      bra_plain_only(i, 3, -i_unit * eta, slots, i, 3);
      bra_plain_only(i, 1, i_unit * eta, slots, i, 1);
    }
    bool ok = true;
    std::string fail;
    for (int a = 1; a <= 3 && ok; ++a)
      for (int b = 1; b <= 3 && ok; ++b)
        if (!slots[a - 1][b - 1].empty()) {
          ok = false;
          std::ostringstream os;
          os << "left equation, slot e^{" << a << b << "}";
          fail = os.str();
        }
    report.add("boundary equation (left)", ok, 0.0, fail);
  }

  // Right equation, A2 = e^{31}: D(LL) = 2 e^{33} (x) LL^{11}
  //   - sum_j e^{1j} (x) LL^{1j} - sum_i e^{i1} (x) LL^{i1}, plus +i (B1 - B2),
  // applied to |vac>>.
  {
    Slots slots{};
    auto ket_LL = [&](int i, int j, const S& w, Slots& s, int a, int b) {
      DoubledFrontier<S> f;
      tl.apply_ket(i, j, kDoubledVacuum, w, f);
      for (const auto& [k, v] : f) frontier_add(s[a - 1][b - 1], k, v);
    };
    auto ket_conj_only = [&](int i, int j, const S& w, Slots& s, int a, int b) {
      std::vector<typename LaxComponents<S>::Entry> e;
      tl.conj_leg.apply(i, j, kVacuum, w, e);
      for (const auto& [st, c] : e)
        frontier_add(s[a - 1][b - 1], DoubledState{kVacuum, st}.key(), c);
    };
    auto ket_plain_only = [&](int i, int j, const S& w, Slots& s, int a, int b) {
      std::vector<typename LaxComponents<S>::Entry> e;
      tl.leg.apply(i, j, kVacuum, w, e);
      for (const auto& [st, c] : e)
        frontier_add(s[a - 1][b - 1], DoubledState{st, kVacuum}.key(), c);
    };

    ket_LL(1, 1, two_eps, slots, 3, 3);
    for (int j = 1; j <= 3; ++j) ket_LL(1, j, T::zero() - epsv, slots, 1, j);
    for (int i = 1; i <= 3; ++i) ket_LL(i, 1, T::zero() - epsv, slots, i, 1);
    // +i B1
    for (int j = 1; j <= 3; ++j) {
      ket_conj_only(j, 3, i_unit * eta, slots, 3, j);
      ket_conj_only(j, 1, -i_unit * eta, slots, 1, j);
    }
    // -i B2
    for (int i = 1; i <= 3; ++i) {
      ket_plain_only(i, 3, i_unit * eta, slots, i, 3);
      ket_plain_only(i, 1, -i_unit * eta, slots, i, 1);
    }
    bool ok = true;
    std::string fail;
    for (int a = 1; a <= 3 && ok; ++a)
      for (int b = 1; b <= 3 && ok; ++b)
        if (!slots[a - 1][b - 1].empty()) {
          ok = false;
          std::ostringstream os;
          os << "right equation, slot e^{" << a << b << "}";
          fail = os.str();
        }
    report.add("boundary equation (right)", ok, 0.0, fail);
  }
  return report;
}

// Transfer-matrix commutation [S_n(eps), S_n(eps')] = 0, exactly at rational
// couplings num/den: both factors are cleared of denominators (amplitudes
// are polynomials of degree <= n in eps), so the check runs over Gaussian
// integers.
inline bool check_transfer_commutation_exact(int n, long num1, long den1,
                                             long num2, long den2) {
  const auto sn = contract_cholesky(n, exact_lax());
  const auto a = evaluated_scaled(sn, num1, den1, n);
  const auto b = evaluated_scaled(sn, num2, den2, n);
  return commutator(a, b).is_zero();
}

}  // namespace lsness
