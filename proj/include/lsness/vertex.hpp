// Two-leg Lax matrices and vertex operators on the doubled auxiliary space
// H_a (x) conj(H_a): the building blocks of the density-operator MPO, the
// transfer vertex operator, and the observable vertex maps.

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lsness/lax.hpp"

namespace lsness {

struct DoubledState {
  AuxState a, b;

  std::uint64_t key() const {
    return std::uint64_t(a.key()) | (std::uint64_t(b.key()) << 24);
  }
  static DoubledState from_key(std::uint64_t k) {
    return {AuxState::from_key(std::uint32_t(k & 0xffffff)),
            AuxState::from_key(std::uint32_t(k >> 24))};
  }

  // Charges conserved between the two legs under the transfer vertex
  // operator (eigenvalue differences of K^- and K^+).
  int charge_minus() const { return (a.j - a.k) - (b.j - b.k); }
  int charge_plus() const {
    return (a.j + a.k + 2 * a.l) - (b.j + b.k + 2 * b.l);
  }
  bool constrained() const { return charge_minus() == 0 && charge_plus() == 0; }
};

inline constexpr DoubledState kDoubledVacuum{{0, 0, 0}, {0, 0, 0}};

template <class S>
using DoubledFrontier = std::unordered_map<std::uint64_t, S>;

template <class S>
void frontier_add(DoubledFrontier<S>& f, std::uint64_t key, const S& v) {
  if (ScalarTraits<S>::is_zero(v)) return;
  auto [it, inserted] = f.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (ScalarTraits<S>::is_zero(it->second)) f.erase(it);
  }
}

// Pair of legs: L plain, Lb entry-wise conjugated (same cutoff).
template <class S>
struct TwoLegLax {
  LaxComponents<S> leg;
  LaxComponents<S> conj_leg;
  bool constrain = false;  // keep only states satisfying the K charge filter

  TwoLegLax() = default;
  TwoLegLax(LaxComponents<S> L, LaxComponents<S> Lbar)
      : leg(std::move(L)), conj_leg(std::move(Lbar)) {
    if (leg.cutoff != conj_leg.cutoff)
      throw std::invalid_argument("two-leg cutoff mismatch");
    if (!conj_leg.conjugated)
      throw std::invalid_argument("second leg must be conjugated");
  }

  // LL^{ij} |s,sb> = sum_k (L^{ik}|s>) (x) (Lb^{jk}|sb>), accumulated into f.
  void apply_ket(int i, int j, const DoubledState& s, const S& amp,
                 DoubledFrontier<S>& f) const {
    std::vector<typename LaxComponents<S>::Entry> e1, e2;
    for (int k = 1; k <= 3; ++k) {
      e1.clear();
      leg.apply(i, k, s.a, amp, e1);
      if (e1.empty()) continue;
      e2.clear();
      conj_leg.apply(j, k, s.b, ScalarTraits<S>::one(), e2);
      for (const auto& [t1, c1] : e1)
        for (const auto& [t2, c2] : e2) {
          DoubledState t{t1, t2};
          if (constrain && !t.constrained()) continue;
          frontier_add(f, t.key(), c1 * c2);
        }
    }
  }

  // <s,sb| LL^{ij}, accumulated into f keyed by source states.
  void apply_bra(int i, int j, const DoubledState& t, const S& amp,
                 DoubledFrontier<S>& f) const {
    std::vector<typename LaxComponents<S>::Entry> e1, e2;
    for (int k = 1; k <= 3; ++k) {
      e1.clear();
      leg.apply_transpose(i, k, t.a, amp, e1);
      if (e1.empty()) continue;
      e2.clear();
      conj_leg.apply_transpose(j, k, t.b, ScalarTraits<S>::one(), e2);
      for (const auto& [s1, c1] : e1)
        for (const auto& [s2, c2] : e2) {
          DoubledState src{s1, s2};
          if (constrain && !src.constrained()) continue;
          frontier_add(f, src.key(), c1 * c2);
        }
    }
  }
};

template <class S>
TwoLegLax<S> build_two_leg(const LaxComponents<S>& L) {
  return TwoLegLax<S>(L, build_conjugate(L));
}

template <class S>
DoubledFrontier<S> apply_two_leg_ket(const TwoLegLax<S>& tl, int i, int j,
                                     const DoubledFrontier<S>& f) {
  DoubledFrontier<S> out;
  for (const auto& [k, v] : f)
    tl.apply_ket(i, j, DoubledState::from_key(k), v, out);
  return out;
}

template <class S>
DoubledFrontier<S> apply_two_leg_bra(const TwoLegLax<S>& tl, int i, int j,
                                     const DoubledFrontier<S>& f) {
  DoubledFrontier<S> out;
  for (const auto& [k, v] : f)
    tl.apply_bra(i, j, DoubledState::from_key(k), v, out);
  return out;
}

// Transfer vertex operator TT = sum_i LL^{ii} applied to a ket frontier.
template <class S>
DoubledFrontier<S> apply_transfer_ket(const TwoLegLax<S>& tl,
                                      const DoubledFrontier<S>& f) {
  DoubledFrontier<S> out;
  for (const auto& [k, v] : f) {
    const DoubledState s = DoubledState::from_key(k);
    for (int i = 1; i <= 3; ++i) tl.apply_ket(i, i, s, v, out);
  }
  return out;
}

template <class S>
DoubledFrontier<S> apply_transfer_bra(const TwoLegLax<S>& tl,
                                      const DoubledFrontier<S>& f) {
  DoubledFrontier<S> out;
  for (const auto& [k, v] : f) {
    const DoubledState t = DoubledState::from_key(k);
    for (int i = 1; i <= 3; ++i) tl.apply_bra(i, i, t, v, out);
  }
  return out;
}

// Transfer application tracking the number of hole indices (i = 2) picked up
// along the diagonal, for per-sector traces.
template <class S>
std::unordered_map<int, DoubledFrontier<S>> apply_transfer_ket_marked(
    const TwoLegLax<S>& tl, const std::unordered_map<int, DoubledFrontier<S>>& f) {
  std::unordered_map<int, DoubledFrontier<S>> out;
  for (const auto& [holes, front] : f)
    for (const auto& [k, v] : front) {
      const DoubledState s = DoubledState::from_key(k);
      for (int i = 1; i <= 3; ++i)
        tl.apply_ket(i, i, s, v, out[holes + (i == 2)]);
    }
  return out;
}

template <class S>
DoubledFrontier<S> doubled_vacuum_frontier() {
  DoubledFrontier<S> f;
  f[kDoubledVacuum.key()] = ScalarTraits<S>::one();
  return f;
}

template <class S>
S vacuum_component(const DoubledFrontier<S>& f) {
  auto it = f.find(kDoubledVacuum.key());
  return it == f.end() ? ScalarTraits<S>::zero() : it->second;
}

}  // namespace lsness
