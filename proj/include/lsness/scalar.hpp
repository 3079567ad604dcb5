// Dual-mode scalar arithmetic: exact bivariate polynomials in the coupling
// eps and the fugacity z = exp(mu/2), with Gaussian-integer coefficients,
// next to plain complex doubles for the numeric backend.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace lsness {

using BigInt = boost::multiprecision::cpp_int;
using NumericScalar = std::complex<double>;

// ---------------------------------------------------------------------------
// Gaussian integers

struct GaussInt {
  BigInt re{0};
  BigInt im{0};

  GaussInt() = default;
  GaussInt(long r) : re(r) {}
  GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }

  GaussInt conj() const { return {re, -im}; }

  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussInt& operator+=(const GaussInt& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  GaussInt& operator-=(const GaussInt& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  friend bool operator==(const GaussInt& a, const GaussInt& b) {
    return a.re == b.re && a.im == b.im;
  }

  NumericScalar to_complex() const {
    double r = re.convert_to<double>();
    double i = im.convert_to<double>();
    if (!std::isfinite(r) || !std::isfinite(i))
      throw std::overflow_error("GaussInt does not fit in double");
    return {r, i};
  }

  std::string str() const {
    std::ostringstream os;
    os << "(" << re << (im < 0 ? "" : "+") << im << "i)";
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Exact polynomial scalar: sum of terms c * eps^a * z^b, c Gaussian integer.

class ExactScalar {
 public:
  // key = (power of eps, power of z)
  using Key = std::pair<int, int>;
  using TermMap = std::map<Key, GaussInt>;

  ExactScalar() = default;
  ExactScalar(long v) {
    if (v != 0) terms_[{0, 0}] = GaussInt(v);
  }

  static ExactScalar gauss(GaussInt c) {
    ExactScalar s;
    if (!c.is_zero()) s.terms_[{0, 0}] = std::move(c);
    return s;
  }
  static ExactScalar imag_unit() { return gauss(GaussInt(BigInt(0), BigInt(1))); }
  // eta = i*eps
  static ExactScalar eta() {
    ExactScalar s;
    s.terms_[{1, 0}] = GaussInt(BigInt(0), BigInt(1));
    return s;
  }
  static ExactScalar eps() {
    ExactScalar s;
    s.terms_[{1, 0}] = GaussInt(1);
    return s;
  }
  static ExactScalar fugacity() {
    ExactScalar s;
    s.terms_[{0, 1}] = GaussInt(1);
    return s;
  }
  static ExactScalar monomial(int a, int b, GaussInt c) {
    ExactScalar s;
    if (!c.is_zero()) s.terms_[{a, b}] = std::move(c);
    return s;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ExactScalar& operator+=(const ExactScalar& b) {
    for (const auto& [k, c] : b.terms_) add_term(k, c);
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& b) {
    for (const auto& [k, c] : b.terms_) add_term(k, -c);
    return *this;
  }
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator-(const ExactScalar& a) {
    ExactScalar r;
    for (const auto& [k, c] : a.terms_) r.terms_[k] = -c;
    return r;
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
  }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.terms_ == b.terms_;
  }

  // eps -> eps, z -> z, coefficients -> Gaussian conjugate (valid for real
  // eps and mu; eta = i*eps flips sign through the explicit i factor).
  ExactScalar conj() const {
    ExactScalar r;
    for (const auto& [k, c] : terms_) r.terms_[k] = c.conj();
    return r;
  }

  int eps_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
  }
  int fugacity_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
  }

  NumericScalar eval(double eps, double mu = 0.0) const {
    const double z = std::exp(mu / 2.0);
    NumericScalar acc{0.0, 0.0};
    for (const auto& [k, c] : terms_)
      acc += c.to_complex() * std::pow(eps, k.first) * std::pow(z, k.second);
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
      throw std::overflow_error("ExactScalar evaluation overflowed");
    return acc;
  }

  // Exact evaluation at rational eps = num/den, cleared of denominators:
  // returns sum_a c_a * num^a * den^(scale - a). Requires all eps powers
  // <= scale and no fugacity dependence (z is evaluated at 1).
  GaussInt eval_scaled(long num, long den, int scale) const {
    GaussInt acc;
    for (const auto& [k, c] : terms_) {
      if (k.first > scale)
        throw std::invalid_argument("eval_scaled: eps degree exceeds scale");
      BigInt f = 1;
      for (int i = 0; i < k.first; ++i) f *= num;
      for (int i = k.first; i < scale; ++i) f *= den;
      acc += c * GaussInt(f, 0);
    }
    return acc;
  }

  // Derivative with respect to mu, using z = exp(mu/2): d/dmu z^b = (b/2) z^b.
  // Returns the pair (2 * d/dmu applied termwise) so coefficients stay integer:
  // caller divides by 2 after numeric evaluation.
  ExactScalar mu_derivative_times_two() const {
    ExactScalar r;
    for (const auto& [k, c] : terms_)
      if (k.second != 0) r.add_term(k, c * GaussInt(k.second));
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.str();
      if (k.first > 0) os << "*eps^" << k.first;
      if (k.second > 0) os << "*z^" << k.second;
    }
    return os.str();
  }

 private:
  void add_term(const Key& k, const GaussInt& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TermMap terms_;  // canonical: no zero coefficients stored
};

// ---------------------------------------------------------------------------
// Uniform scalar interface for templated operator code.

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactScalar> {
  static ExactScalar zero() { return {}; }
  static ExactScalar one() { return ExactScalar(1); }
  static ExactScalar from_int(long v) { return ExactScalar(v); }
  static ExactScalar conj(const ExactScalar& a) { return a.conj(); }
  static bool is_zero(const ExactScalar& a) { return a.is_zero(); }
  static ExactScalar mul_int(const ExactScalar& a, long v) {
    return a * ExactScalar(v);
  }
  static ExactScalar imag_unit() { return ExactScalar::imag_unit(); }
};

template <>
struct ScalarTraits<NumericScalar> {
  static NumericScalar zero() { return {0.0, 0.0}; }
  static NumericScalar one() { return {1.0, 0.0}; }
  static NumericScalar from_int(long v) { return {double(v), 0.0}; }
  static NumericScalar conj(const NumericScalar& a) { return std::conj(a); }
  static bool is_zero(const NumericScalar& a) {
    return a.real() == 0.0 && a.imag() == 0.0;
  }
  static NumericScalar mul_int(const NumericScalar& a, long v) {
    return a * double(v);
  }
  static NumericScalar imag_unit() { return {0.0, 1.0}; }
};

template <>
struct ScalarTraits<GaussInt> {
  static GaussInt zero() { return {}; }
  static GaussInt one() { return GaussInt(1); }
  static GaussInt from_int(long v) { return GaussInt(v); }
  static GaussInt conj(const GaussInt& a) { return a.conj(); }
  static bool is_zero(const GaussInt& a) { return a.is_zero(); }
  static GaussInt mul_int(const GaussInt& a, long v) { return a * GaussInt(v); }
  static GaussInt imag_unit() { return GaussInt(BigInt(0), BigInt(1)); }
};

}  // namespace lsness
