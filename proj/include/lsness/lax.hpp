// Truncated auxiliary-space representation: two bosonic modes plus a
// highest-weight sl2 module over the lattice {|j,k,l>}, assembled into the
// nine Lax components L^{ij}. The spin parameter is eliminated up front, so
// in the monomial basis every matrix element is an integer polynomial in
// eta = i*eps (and the fugacity z on the middle row when mu-weighted).

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lsness/scalar.hpp"

namespace lsness {

struct AuxState {
  int j = 0, k = 0, l = 0;

  friend bool operator==(const AuxState& a, const AuxState& b) {
    return a.j == b.j && a.k == b.k && a.l == b.l;
  }
  friend bool operator<(const AuxState& a, const AuxState& b) {
    if (a.j != b.j) return a.j < b.j;
    if (a.k != b.k) return a.k < b.k;
    return a.l < b.l;
  }

  std::uint32_t key() const {
    return std::uint32_t(j) | (std::uint32_t(k) << 8) | (std::uint32_t(l) << 16);
  }
  static AuxState from_key(std::uint32_t key) {
    return {int(key & 0xff), int((key >> 8) & 0xff), int((key >> 16) & 0xff)};
  }
};

inline constexpr AuxState kVacuum{0, 0, 0};

enum class Basis { monomial, orthonormal };

// Names per the L-matrix layout: l_up=L11, t+=L12, v+=L13, t-=L21, l0=L22,
// u+=L23, v-=L31, u-=L32, l_down=L33. Components are addressed by (i,j).
template <class S>
struct LaxComponents {
  using T = ScalarTraits<S>;

  Basis basis = Basis::monomial;
  int cutoff = -1;  // -1: unbounded (entry formulas are exact for all j,k,l)
  bool conjugated = false;
  bool weighted = false;
  bool wrong_p = false;  // negative control: conjugate spin parameter on this leg

  S eta;  // i*eps, already conjugated on a conjugate leg
  S z;    // fugacity weight on row 2; one() when unweighted

  using Entry = std::pair<AuxState, S>;

  bool in_box(const AuxState& s) const {
    return cutoff < 0 || (s.j <= cutoff && s.k <= cutoff && s.l <= cutoff);
  }

  // Accumulates amp * L^{ij}|s> into out as (target, coefficient) pairs.
  void apply(int i, int j, const AuxState& s, const S& amp,
             std::vector<Entry>& out) const {
    const bool ortho = basis == Basis::orthonormal;
    auto push = [&](AuxState t, S c) {
      if (!in_box(t) || T::is_zero(c)) return;
      out.emplace_back(t, c * amp);
    };
    switch ((i - 1) * 3 + (j - 1)) {
      case 0:  // l_up: diagonal 1 + eta (j + l)
        push(s, diag_const() + T::mul_int(eta, s.j + s.l));
        break;
      case 1:  // t+ = b_up
        if (s.j > 0)
          push({s.j - 1, s.k, s.l},
               ortho ? T::mul_int(T::one(), 1) * sqrt_factor(s.j)
                     : T::from_int(s.j));
        break;
      case 2:  // v+ = eta (b_up b_down + s+)
        if (s.j > 0 && s.k > 0)
          push({s.j - 1, s.k - 1, s.l},
               ortho ? eta * sqrt_factor(s.j) * sqrt_factor(s.k)
                     : T::mul_int(eta, long(s.j) * s.k));
        if (s.l > 0) push({s.j, s.k, s.l - 1}, T::mul_int(eta, s.l));
        break;
      case 3:  // t- = eta b_up^dag   (row 2: carries z)
        push({s.j + 1, s.k, s.l},
             ortho ? z * eta * sqrt_factor(s.j + 1) : z * eta);
        break;
      case 4:  // l0 = identity       (row 2: carries z)
        push(s, z);
        break;
      case 5:  // u+ = eta b_down     (row 2: carries z)
        if (s.k > 0)
          push({s.j, s.k - 1, s.l},
               ortho ? z * eta * sqrt_factor(s.k) : z * T::mul_int(eta, s.k));
        break;
      case 6:  // v- = eta (b_up^dag b_down^dag - s-); eta(2p-l) = eta-2-eta*l
        push({s.j + 1, s.k + 1, s.l},
             ortho ? eta * sqrt_factor(s.j + 1) * sqrt_factor(s.k + 1) : eta);
        push({s.j, s.k, s.l + 1}, verma_lower(s.l));
        break;
      case 7:  // u- = b_down^dag
        push({s.j, s.k + 1, s.l},
             ortho ? sqrt_factor(s.k + 1) * T::one() : T::one());
        break;
      case 8:  // l_down: diagonal 1 + eta (k + l)
        push(s, diag_const() + T::mul_int(eta, s.k + s.l));
        break;
      default:
        throw std::out_of_range("Lax component index");
    }
  }

  // Accumulates amp * <t| L^{ij} into out as (source, coefficient) pairs,
  // i.e. coefficient = <t|L^{ij}|source>.
  void apply_transpose(int i, int j, const AuxState& t, const S& amp,
                       std::vector<Entry>& out) const {
    const bool ortho = basis == Basis::orthonormal;
    auto push = [&](AuxState src, S c) {
      if (!in_box(src) || T::is_zero(c)) return;
      out.emplace_back(src, c * amp);
    };
    switch ((i - 1) * 3 + (j - 1)) {
      case 0:
        push(t, diag_const() + T::mul_int(eta, t.j + t.l));
        break;
      case 1:  // t+: <j,k,l| t+ |j+1,k,l>
        push({t.j + 1, t.k, t.l},
             ortho ? sqrt_factor(t.j + 1) * T::one() : T::from_int(t.j + 1));
        break;
      case 2:  // v+
        push({t.j + 1, t.k + 1, t.l},
             ortho ? eta * sqrt_factor(t.j + 1) * sqrt_factor(t.k + 1)
                   : T::mul_int(eta, long(t.j + 1) * (t.k + 1)));
        push({t.j, t.k, t.l + 1}, T::mul_int(eta, t.l + 1));
        break;
      case 3:  // t-
        if (t.j > 0)
          push({t.j - 1, t.k, t.l},
               ortho ? z * eta * sqrt_factor(t.j) : z * eta);
        break;
      case 4:
        push(t, z);
        break;
      case 5:  // u+
        push({t.j, t.k + 1, t.l},
             ortho ? z * eta * sqrt_factor(t.k + 1)
                   : z * T::mul_int(eta, t.k + 1));
        break;
      case 6:  // v-
        if (t.j > 0 && t.k > 0)
          push({t.j - 1, t.k - 1, t.l},
               ortho ? eta * sqrt_factor(t.j) * sqrt_factor(t.k) : eta);
        if (t.l > 0) push({t.j, t.k, t.l - 1}, verma_lower(t.l - 1));
        break;
      case 7:  // u-
        if (t.k > 0)
          push({t.j, t.k - 1, t.l},
               ortho ? sqrt_factor(t.k) * T::one() : T::one());
        break;
      case 8:
        push(t, diag_const() + T::mul_int(eta, t.k + t.l));
        break;
      default:
        throw std::out_of_range("Lax component index");
    }
  }

 private:
  // -eta (2p - l) with eta p = eta/2 - 1 fixed: 2 - eta + eta l.
  // Negative control uses the conjugate parameter: -2 - eta + eta l.
  S verma_lower(int l) const {
    S v = T::mul_int(eta, l) - eta;
    return wrong_p ? v + T::from_int(-2) : v + T::from_int(2);
  }

  // eta (1/2 - p): 1 at the fixed parameter, -1 at the conjugate one.
  S diag_const() const { return T::from_int(wrong_p ? -1 : 1); }

  S sqrt_factor(int m) const;
};

template <>
inline NumericScalar LaxComponents<NumericScalar>::sqrt_factor(int m) const {
  return {std::sqrt(double(m)), 0.0};
}
template <>
inline ExactScalar LaxComponents<ExactScalar>::sqrt_factor(int) const {
  throw std::logic_error("orthonormal basis requires numeric mode");
}
template <>
inline GaussInt LaxComponents<GaussInt>::sqrt_factor(int) const {
  throw std::logic_error("orthonormal basis requires numeric mode");
}

// --- builders ---------------------------------------------------------------

inline LaxComponents<ExactScalar> exact_lax(int cutoff = -1,
                                            bool wrong_p = false) {
  LaxComponents<ExactScalar> L;
  L.cutoff = cutoff;
  L.eta = ExactScalar::eta();
  L.z = ExactScalar(1);
  L.wrong_p = wrong_p;
  return L;
}

inline LaxComponents<NumericScalar> numeric_lax(double eps, int cutoff = -1,
                                                Basis basis = Basis::monomial,
                                                bool wrong_p = false) {
  LaxComponents<NumericScalar> L;
  L.basis = basis;
  L.cutoff = cutoff;
  L.eta = NumericScalar{0.0, eps};
  L.z = {1.0, 0.0};
  L.wrong_p = wrong_p;
  return L;
}

// Entry-wise conjugation; equals the eta -> -eta, p -> conj(p) representation.
template <class S>
LaxComponents<S> build_conjugate(LaxComponents<S> L) {
  if (L.conjugated) throw std::invalid_argument("Lax leg already conjugated");
  L.conjugated = true;
  L.eta = ScalarTraits<S>::conj(L.eta);
  L.z = ScalarTraits<S>::conj(L.z);
  return L;
}

// Grand-canonical weight: row-2 components (t-, l0, u+) pick up z = exp(mu/2).
inline LaxComponents<NumericScalar> apply_chemical_weight(
    LaxComponents<NumericScalar> L, double mu) {
  if (L.weighted) throw std::invalid_argument("Lax leg already mu-weighted");
  L.weighted = true;
  L.z = {std::exp(mu / 2.0), 0.0};
  return L;
}

// Exact mode keeps z formal.
inline LaxComponents<ExactScalar> apply_chemical_weight(
    LaxComponents<ExactScalar> L) {
  if (L.weighted) throw std::invalid_argument("Lax leg already mu-weighted");
  L.weighted = true;
  L.z = ExactScalar::fugacity();
  return L;
}

// --- single-leg frontiers ----------------------------------------------------

template <class S>
using AuxFrontier = std::unordered_map<std::uint32_t, S>;

template <class S>
void frontier_add(AuxFrontier<S>& f, std::uint32_t key, const S& v) {
  if (ScalarTraits<S>::is_zero(v)) return;
  auto [it, inserted] = f.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (ScalarTraits<S>::is_zero(it->second)) f.erase(it);
  }
}

// amp * L^{ij} |frontier>
template <class S>
AuxFrontier<S> apply_ket(const LaxComponents<S>& L, int i, int j,
                         const AuxFrontier<S>& f) {
  AuxFrontier<S> out;
  std::vector<typename LaxComponents<S>::Entry> e;
  for (const auto& [k, v] : f) {
    e.clear();
    L.apply(i, j, AuxState::from_key(k), v, e);
    for (const auto& [t, c] : e) frontier_add(out, t.key(), c);
  }
  return out;
}

// <frontier| L^{ij}
template <class S>
AuxFrontier<S> apply_bra(const LaxComponents<S>& L, int i, int j,
                         const AuxFrontier<S>& f) {
  AuxFrontier<S> out;
  std::vector<typename LaxComponents<S>::Entry> e;
  for (const auto& [k, v] : f) {
    e.clear();
    L.apply_transpose(i, j, AuxState::from_key(k), v, e);
    for (const auto& [s, c] : e) frontier_add(out, s.key(), c);
  }
  return out;
}

template <class S>
AuxFrontier<S> unit_frontier(const AuxState& s) {
  AuxFrontier<S> f;
  f[s.key()] = ScalarTraits<S>::one();
  return f;
}

}  // namespace lsness
