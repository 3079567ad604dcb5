// Observables evaluated purely in the doubled auxiliary space: partition
// function as a vacuum moment of the transfer vertex operator, per-sector
// traces, local expectations through observable vertex maps, particle
// currents, hole doping, the auxiliary U(1) symmetries, and a descriptive
// finite-size scaling fit of log Z_n.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "lsness/mpo.hpp"
#include "lsness/report.hpp"
#include "lsness/vertex.hpp"

namespace lsness {

template <class S>
DoubledFrontier<S> transfer_power_ket(const TwoLegLax<S>& tl, int steps,
                                      DoubledFrontier<S> f) {
  for (int s = 0; s < steps; ++s) f = apply_transfer_ket(tl, f);
  return f;
}

// Z_n = <<vac| T^n |vac>> as a ring element.
template <class S>
S transfer_moment(const TwoLegLax<S>& tl, int n) {
  return vacuum_component(
      transfer_power_ket(tl, n, doubled_vacuum_frontier<S>()));
}

inline double partition_function(int n, double eps, double mu,
                                 bool constrain = true) {
  auto tl = build_two_leg(apply_chemical_weight(numeric_lax(eps), mu));
  tl.constrain = constrain;
  const NumericScalar z = transfer_moment(tl, n);
  if (!(z.real() > 0.0) || std::abs(z.imag()) > 1e-9 * z.real())
    throw std::runtime_error("partition function is not positive");
  return z.real();
}

// Polynomial in eps and the formal fugacity z = exp(mu/2).
inline ExactScalar partition_function_exact(int n, bool constrain = true) {
  auto tl = build_two_leg(apply_chemical_weight(exact_lax()));
  tl.constrain = constrain;
  return transfer_moment(tl, n);
}

// Sector traces c_nu = tr rho^(nu)(eps) from one hole-marked transfer sweep.
inline std::vector<double> sector_traces(int n, double eps) {
  auto tl = build_two_leg(numeric_lax(eps));
  tl.constrain = true;
  std::unordered_map<int, DoubledFrontier<NumericScalar>> f;
  f[0] = doubled_vacuum_frontier<NumericScalar>();
  for (int s = 0; s < n; ++s) f = apply_transfer_ket_marked(tl, f);
  std::vector<double> c(n + 1, 0.0);
  for (const auto& [holes, front] : f)
    if (holes >= 0 && holes <= n)
      c[holes] = vacuum_component(front).real();
  for (double v : c)
    if (!(v > 0.0)) throw std::runtime_error("sector trace is not positive");
  return c;
}

inline std::vector<ExactScalar> sector_traces_exact(int n) {
  auto tl = build_two_leg(exact_lax());
  tl.constrain = true;
  std::unordered_map<int, DoubledFrontier<ExactScalar>> f;
  f[0] = doubled_vacuum_frontier<ExactScalar>();
  for (int s = 0; s < n; ++s) f = apply_transfer_ket_marked(tl, f);
  std::vector<ExactScalar> c(n + 1);
  for (const auto& [holes, front] : f)
    if (holes >= 0 && holes <= n) c[holes] = vacuum_component(front);
  return c;
}

// log Z and the hole filling from sector traces, overflow-safe in mu.
inline double log_partition_from_traces(const std::vector<double>& c, double mu) {
  double m = -1e300;
  for (std::size_t nu = 0; nu < c.size(); ++nu)
    m = std::max(m, mu * double(nu) + std::log(c[nu]));
  double acc = 0.0;
  for (std::size_t nu = 0; nu < c.size(); ++nu)
    acc += std::exp(mu * double(nu) + std::log(c[nu]) - m);
  return m + std::log(acc);
}

// Applies the observable vertex map of X (an operator on ell sites) to a
// ket frontier: sum over entries X[(j-string),(i-string)] of the product
// LL^{i1 j1} ... LL^{i_ell j_ell}, rightmost factor first.
template <class S>
DoubledFrontier<S> apply_observable_vertex(const TwoLegLax<S>& tl,
                                           const PhysicalOperator<S>& X,
                                           const DoubledFrontier<S>& f) {
  const int ell = X.sites();
  DoubledFrontier<S> out;
  for (const auto& [key, val] : X.entries()) {
    long r = PhysicalOperator<S>::row_of(key);  // j-string
    long c = PhysicalOperator<S>::col_of(key);  // i-string
    std::vector<int> is(ell), js(ell);
    for (int s = ell - 1; s >= 0; --s, r /= 3, c /= 3) {
      js[s] = int(r % 3) + 1;
      is[s] = int(c % 3) + 1;
    }
    DoubledFrontier<S> g;
    for (const auto& [k, v] : f) g[k] = v * val;
    for (int s = ell - 1; s >= 0; --s)
      g = apply_two_leg_ket(tl, is[s], js[s], g);
    for (const auto& [k, v] : g) frontier_add(out, k, v);
  }
  return out;
}

// <X_[x, x+ell-1]> = Z^-1 <<vac| T^(x-1) XX T^(n-y) |vac>>. The transfer
// steps run with the charge filter (off-charge states can never reach the
// vacuum), the observable block runs unfiltered.
inline NumericScalar local_expectation(int n, double eps, double mu, int x,
                                       const PhysicalOperator<NumericScalar>& X) {
  const int ell = X.sites();
  const int y = x + ell - 1;
  if (x < 1 || y > n) throw std::invalid_argument("observable support out of range");
  auto tl = build_two_leg(apply_chemical_weight(numeric_lax(eps), mu));
  auto tl_free = tl;
  tl.constrain = true;
  auto f = transfer_power_ket(tl, n - y, doubled_vacuum_frontier<NumericScalar>());
  f = apply_observable_vertex(tl_free, X, f);
  f = transfer_power_ket(tl, x - 1, f);
  const double z = partition_function(n, eps, mu);
  return vacuum_component(f) / z;
}

inline NumericScalar current_expectation(int n, double eps, double mu, int i,
                                         int j, int x) {
  if (x < 1 || x + 1 > n) throw std::invalid_argument("bond out of range");
  const auto J = current_op<NumericScalar>(2, i, j, 1, NumericScalar{0.0, 1.0});
  return local_expectation(n, eps, mu, x, J);
}

inline NumericScalar total_current_expectation(int n, double eps, double mu,
                                               int i, int x) {
  NumericScalar acc{0.0, 0.0};
  for (int j = 1; j <= 3; ++j)
    if (j != i) acc += current_expectation(n, eps, mu, i, j, x);
  return acc;
}

/// Mean hole filling r = n^-1 d(log Z)/dmu, two independent routes: the
// weighted sector sum and a central difference of log Z.
struct DopingResult {
  double sector_sum = 0.0;
  double central_diff = 0.0;
};

inline DopingResult doping(int n, double eps, double mu, double h = 1e-5) {
  const auto c = sector_traces(n, eps);
  double m = -1e300;
  for (int nu = 0; nu <= n; ++nu)
    m = std::max(m, mu * nu + std::log(c[nu]));
  double zs = 0.0, num = 0.0;
  for (int nu = 0; nu <= n; ++nu) {
    const double w = std::exp(mu * nu + std::log(c[nu]) - m);
    zs += w;
    num += nu * w;
  }
  DopingResult r;
  r.sector_sum = num / (n * zs);
  r.central_diff = (log_partition_from_traces(c, mu + h) -
                    log_partition_from_traces(c, mu - h)) /
                   (2.0 * h * n);
  return r;
}

// Exact route: analytic z-derivative of the partition polynomial.
inline double doping_exact(int n, double eps, double mu) {
  const ExactScalar z = partition_function_exact(n);
  const NumericScalar num = z.mu_derivative_times_two().eval(eps, mu);
  const NumericScalar den = z.eval(eps, mu);
  return (num / (2.0 * den)).real() / n;
}

// --- auxiliary-space symmetries ----------------------------------------------

namespace detail {
inline int s3_weight(int i) { return i == 1 ? 1 : (i == 3 ? -1 : 0); }
inline int grade_plus(const AuxState& s) { return s.j + s.k + 2 * s.l; }
inline int grade_minus(const AuxState& s) { return s.j - s.k; }
}  // namespace detail

// (a) single-leg U(1): L^{ij} shifts the boson/spin grade j+k+2l by exactly
//     s3_j - s3_i, the component form of [L, i eps s3 x 1 + 1 x l+] = 0;
// (b) the doubled analogue for LL^{ij} on the charge difference;
// (c) [T, K+-] = 0: the transfer vertex operator conserves both charges;
// (d) every state reachable from the doubled vacuum satisfies both charge
//     constraints, so the constrained contraction drops nothing;
// (e) Z_n with and without the charge filter agree exactly.
inline CheckReport check_aux_symmetries(int max_coord, int n_reach = 4) {
  CheckReport report;
  const auto L = exact_lax();
  auto tl = build_two_leg(L);

  {  // (a)
    bool ok = true;
    std::string fail;
    std::vector<LaxComponents<ExactScalar>::Entry> e;
    for (int sj = 0; sj <= max_coord && ok; ++sj)
      for (int sk = 0; sk <= max_coord && ok; ++sk)
        for (int sl = 0; sl <= max_coord && ok; ++sl)
          for (int i = 1; i <= 3 && ok; ++i)
            for (int j = 1; j <= 3 && ok; ++j) {
              const AuxState s{sj, sk, sl};
              e.clear();
              L.apply(i, j, s, ExactScalar(1), e);
              for (const auto& [t, c] : e)
                if (detail::grade_plus(t) - detail::grade_plus(s) !=
                    detail::s3_weight(j) - detail::s3_weight(i)) {
                  ok = false;
                  std::ostringstream os;
                  os << "L^{" << i << j << "} at (" << sj << "," << sk << ","
                     << sl << ")";
                  fail = os.str();
                }
            }
    report.add("single-leg U(1) grading", ok, 0.0, fail);
  }

  {  // (b) + (c)
    bool grading_ok = true, transfer_ok = true;
    std::string fail_g, fail_t;
    for (int aj = 0; aj <= max_coord; ++aj)
      for (int ak = 0; ak <= max_coord; ++ak)
        for (int al = 0; al <= max_coord; ++al)
          for (int bj = 0; bj <= max_coord; ++bj)
            for (int bk = 0; bk <= max_coord; ++bk)
              for (int bl = 0; bl <= max_coord; ++bl) {
                const DoubledState s{{aj, ak, al}, {bj, bk, bl}};
                const int gp = s.charge_plus(), gm = s.charge_minus();
                for (int i = 1; i <= 3; ++i)
                  for (int j = 1; j <= 3; ++j) {
                    DoubledFrontier<ExactScalar> f;
                    tl.apply_ket(i, j, s, ExactScalar(1), f);
                    for (const auto& [k, v] : f) {
                      const DoubledState t = DoubledState::from_key(k);
                      if (t.charge_plus() - gp !=
                              detail::s3_weight(j) - detail::s3_weight(i) &&
                          grading_ok) {
                        grading_ok = false;
                        std::ostringstream os;
                        os << "LL^{" << i << j << "}";
                        fail_g = os.str();
                      }
                      if (i == j &&
                          (t.charge_plus() != gp || t.charge_minus() != gm) &&
                          transfer_ok) {
                        transfer_ok = false;
                        std::ostringstream os;
                        os << "LL^{" << i << i << "}";
                        fail_t = os.str();
                      }
                    }
                  }
              }
    report.add("two-leg U(1) grading", grading_ok, 0.0, fail_g);
    report.add("transfer conserves both charges", transfer_ok, 0.0, fail_t);
  }

  {  // (d)
    bool ok = true;
    std::string fail;
    auto f = doubled_vacuum_frontier<ExactScalar>();
    for (int s = 0; s < n_reach && ok; ++s) {
      f = apply_transfer_ket(tl, f);
      for (const auto& [k, v] : f)
        if (!DoubledState::from_key(k).constrained()) {
          ok = false;
          std::ostringstream os;
          os << "unconstrained state after " << (s + 1) << " transfer steps";
          fail = os.str();
          break;
        }
    }
    report.add("reachable set satisfies charge constraints", ok, 0.0, fail);
  }

  {  // (e)
    bool ok = true;
    for (int n = 1; n <= n_reach && ok; ++n)
      ok = (partition_function_exact(n, true) ==
            partition_function_exact(n, false));
    report.add("charge filter changes no partition function", ok);
  }
  return report;
}

// --- finite-size scaling -----------------------------------------------------

// Least-squares fit log Z_n ~ c0 + alpha n + beta1 n log n. Descriptive only.
struct ScalingFit {
  double c0 = 0.0;
  double alpha = 0.0;
  double beta1 = 0.0;
  std::vector<int> ns;
  std::vector<double> log_z;
  std::vector<double> residuals;
};

inline ScalingFit scaling_fit(double eps, double mu, const std::vector<int>& ns) {
  if (ns.size() < 4)
    throw std::invalid_argument("scaling fit needs at least 4 points");
  ScalingFit fit;
  fit.ns = ns;
  const long m = long(ns.size());
  Eigen::MatrixXd A(m, 3);
  Eigen::VectorXd b(m);
  for (long i = 0; i < m; ++i) {
    const double n = ns[i];
    A(i, 0) = 1.0;
    A(i, 1) = n;
    A(i, 2) = n * std::log(n);
    b(i) = std::log(partition_function(ns[i], eps, mu));
    fit.log_z.push_back(b(i));
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  fit.c0 = x(0);
  fit.alpha = x(1);
  fit.beta1 = x(2);
  const Eigen::VectorXd r = A * x - b;
  for (long i = 0; i < m; ++i) fit.residuals.push_back(r(i));
  return fit;
}

}  // namespace lsness
