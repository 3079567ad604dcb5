// Sparse operators on the 3^n-dimensional chain space, templated on the
// scalar ring. Basis order: |i_1,...,i_n> with local states i in {1,2,3}
// mapped to digits {0,1,2}, site 1 most significant.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lsness/scalar.hpp"

namespace lsness {

inline long pow3(int n) {
  long d = 1;
  for (int i = 0; i < n; ++i) d *= 3;
  return d;
}

// Local state (1-based) of site x (1-based) within a basis index.
inline int local_state(long idx, int x, int n) {
  for (int i = n; i > x; --i) idx /= 3;
  return int(idx % 3) + 1;
}

inline int hole_count(long idx, int n) {
  int c = 0;
  for (int i = 0; i < n; ++i, idx /= 3) c += (idx % 3 == 1);
  return c;
}

// Total magnetization sum_x s^3: +1 for |1>, 0 for |2>, -1 for |3>.
inline int magnetization(long idx, int n) {
  int m = 0;
  for (int i = 0; i < n; ++i, idx /= 3) m += (idx % 3 == 0) - (idx % 3 == 2);
  return m;
}

template <class S>
class PhysicalOperator {
 public:
  using T = ScalarTraits<S>;
  using EntryMap = std::unordered_map<std::uint64_t, S>;

  PhysicalOperator() = default;
  explicit PhysicalOperator(int n) : n_(n), dim_(pow3(n)) {}

  int sites() const { return n_; }
  long dim() const { return dim_; }
  const EntryMap& entries() const { return map_; }
  std::size_t nnz() const { return map_.size(); }

  static std::uint64_t key(long row, long col) {
    return (std::uint64_t(row) << 32) | std::uint64_t(col);
  }
  static long row_of(std::uint64_t k) { return long(k >> 32); }
  static long col_of(std::uint64_t k) { return long(k & 0xffffffffu); }

  void add(long row, long col, const S& v) {
    if (T::is_zero(v)) return;
    auto [it, inserted] = map_.try_emplace(key(row, col), v);
    if (!inserted) {
      it->second += v;
      if (T::is_zero(it->second)) map_.erase(it);
    }
  }
  void set(long row, long col, const S& v) {
    if (T::is_zero(v))
      map_.erase(key(row, col));
    else
      map_[key(row, col)] = v;
  }
  S get(long row, long col) const {
    auto it = map_.find(key(row, col));
    return it == map_.end() ? T::zero() : it->second;
  }

  bool is_zero() const { return map_.empty(); }

  PhysicalOperator& operator+=(const PhysicalOperator& b) {
    check_shape(b);
    for (const auto& [k, v] : b.map_) add(row_of(k), col_of(k), v);
    return *this;
  }
  PhysicalOperator& operator-=(const PhysicalOperator& b) {
    check_shape(b);
    for (const auto& [k, v] : b.map_) add(row_of(k), col_of(k), -v);
    return *this;
  }
  friend PhysicalOperator operator+(PhysicalOperator a, const PhysicalOperator& b) {
    return a += b;
  }
  friend PhysicalOperator operator-(PhysicalOperator a, const PhysicalOperator& b) {
    return a -= b;
  }

  PhysicalOperator scaled(const S& c) const {
    PhysicalOperator r(n_);
    if (T::is_zero(c)) return r;
    for (const auto& [k, v] : map_) r.add(row_of(k), col_of(k), v * c);
    return r;
  }

  friend PhysicalOperator operator*(const PhysicalOperator& a,
                                    const PhysicalOperator& b) {
    a.check_shape(b);
    // group b by row
    std::unordered_map<long, std::vector<std::pair<long, S>>> brows;
    for (const auto& [k, v] : b.map_) brows[row_of(k)].emplace_back(col_of(k), v);
    PhysicalOperator r(a.n_);
    for (const auto& [k, va] : a.map_) {
      auto it = brows.find(col_of(k));
      if (it == brows.end()) continue;
      const long row = row_of(k);
      for (const auto& [c, vb] : it->second) r.add(row, c, va * vb);
    }
    return r;
  }

  PhysicalOperator adjoint() const {
    PhysicalOperator r(n_);
    for (const auto& [k, v] : map_) r.set(col_of(k), row_of(k), T::conj(v));
    return r;
  }

  PhysicalOperator transpose() const {
    PhysicalOperator r(n_);
    for (const auto& [k, v] : map_) r.set(col_of(k), row_of(k), v);
    return r;
  }

  PhysicalOperator conjugate() const {
    PhysicalOperator r(n_);
    for (const auto& [k, v] : map_) r.set(row_of(k), col_of(k), T::conj(v));
    return r;
  }

  S trace() const {
    S acc = T::zero();
    for (const auto& [k, v] : map_)
      if (row_of(k) == col_of(k)) acc += v;
    return acc;
  }

  // Basis relabeling rho -> P rho P^T for a permutation perm: idx -> perm(idx).
  template <class Perm>
  PhysicalOperator permuted(Perm&& perm) const {
    PhysicalOperator r(n_);
    for (const auto& [k, v] : map_) r.set(perm(row_of(k)), perm(col_of(k)), v);
    return r;
  }

 private:
  void check_shape(const PhysicalOperator& b) const {
    if (n_ != b.n_) throw std::invalid_argument("operator site count mismatch");
  }

  int n_ = 0;
  long dim_ = 1;
  EntryMap map_;
};

template <class S>
PhysicalOperator<S> commutator(const PhysicalOperator<S>& a,
                               const PhysicalOperator<S>& b) {
  return a * b - b * a;
}

template <class S>
PhysicalOperator<S> identity_op(int n) {
  PhysicalOperator<S> r(n);
  for (long i = 0; i < r.dim(); ++i) r.set(i, i, ScalarTraits<S>::one());
  return r;
}

template <class S>
PhysicalOperator<S> kron(const PhysicalOperator<S>& a,
                         const PhysicalOperator<S>& b) {
  PhysicalOperator<S> r(a.sites() + b.sites());
  const long db = b.dim();
  for (const auto& [ka, va] : a.entries())
    for (const auto& [kb, vb] : b.entries())
      r.add(PhysicalOperator<S>::row_of(ka) * db + PhysicalOperator<S>::row_of(kb),
            PhysicalOperator<S>::col_of(ka) * db + PhysicalOperator<S>::col_of(kb),
            va * vb);
  return r;
}

// Embeds a single-site operator given by 3x3 entries op[i][j] at site x.
template <class S>
PhysicalOperator<S> site_operator(int n, int x, const std::array<std::array<S, 3>, 3>& op) {
  PhysicalOperator<S> r(n);
  const long left = pow3(x - 1);
  const long right = pow3(n - x);
  for (long a = 0; a < left; ++a)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (ScalarTraits<S>::is_zero(op[i][j])) continue;
        for (long b = 0; b < right; ++b)
          r.add((a * 3 + i) * right + b, (a * 3 + j) * right + b, op[i][j]);
      }
  return r;
}

inline Eigen::MatrixXcd to_dense(const PhysicalOperator<NumericScalar>& op) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(op.dim(), op.dim());
  for (const auto& [k, v] : op.entries())
    m(PhysicalOperator<NumericScalar>::row_of(k),
      PhysicalOperator<NumericScalar>::col_of(k)) = v;
  return m;
}

inline PhysicalOperator<NumericScalar> evaluated(
    const PhysicalOperator<ExactScalar>& op, double eps, double mu = 0.0) {
  PhysicalOperator<NumericScalar> r(op.sites());
  for (const auto& [k, v] : op.entries())
    r.add(PhysicalOperator<ExactScalar>::row_of(k),
          PhysicalOperator<ExactScalar>::col_of(k), v.eval(eps, mu));
  return r;
}

inline PhysicalOperator<GaussInt> evaluated_scaled(
    const PhysicalOperator<ExactScalar>& op, long num, long den, int scale) {
  PhysicalOperator<GaussInt> r(op.sites());
  for (const auto& [k, v] : op.entries())
    r.add(PhysicalOperator<ExactScalar>::row_of(k),
          PhysicalOperator<ExactScalar>::col_of(k),
          v.eval_scaled(num, den, scale));
  return r;
}

}  // namespace lsness
