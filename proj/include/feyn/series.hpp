#pragma once
// Exact truncated power series over arbitrary-precision rationals, and the
// generating functions built on them: the melonic two-point series T, the
// ladder generating functions, per-scheme generating functions and the
// genus-by-genus sums.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace feyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class PowerSeries {
 public:
  // Coefficients c[0..order] of the formal variable; fixed truncation order.
  explicit PowerSeries(int order) : coeffs_(order + 1, Rational(0)) {}
  static PowerSeries constant(int order, const Rational& c) {
    PowerSeries p(order);
    p.coeffs_[0] = c;
    return p;
  }
  static PowerSeries monomial(int order, int power, const Rational& c = 1) {
    PowerSeries p(order);
    if (power <= order) p.coeffs_[power] = c;
    return p;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int i) const { return coeffs_.at(i); }
  Rational& at(int i) { return coeffs_.at(i); }

  int valuation() const {
    for (int i = 0; i <= order(); ++i)
      if (coeffs_[i] != 0) return i;
    return order() + 1;
  }

  PowerSeries& operator+=(const PowerSeries& o) {
    check_order(o);
    for (int i = 0; i <= order(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  PowerSeries& operator-=(const PowerSeries& o) {
    check_order(o);
    for (int i = 0; i <= order(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) {
    return a += b;
  }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) {
    return a -= b;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    a.check_order(b);
    PowerSeries out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; i + j <= a.order(); ++j) {
        if (b.coeffs_[j] == 0) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }
  PowerSeries& operator*=(const PowerSeries& o) { return *this = *this * o; }
  friend PowerSeries operator*(PowerSeries a, const Rational& c) {
    for (auto& x : a.coeffs_) x *= c;
    return a;
  }

  // Division by a series with nonzero constant term.
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
    a.check_order(b);
    if (b.coeffs_[0] == 0)
      throw std::runtime_error("series division requires a unit denominator");
    PowerSeries out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
      Rational acc = a.coeffs_[i];
      for (int j = 1; j <= i; ++j) acc -= b.coeffs_[j] * out.coeffs_[i - j];
      out.coeffs_[i] = acc / b.coeffs_[0];
    }
    return out;
  }

  // Composition this(inner); requires inner valuation >= 1.  Horner scheme.
  PowerSeries compose(const PowerSeries& inner) const {
    check_order(inner);
    if (inner.valuation() < 1)
      throw std::runtime_error("composition requires positive valuation");
    PowerSeries acc = PowerSeries::constant(order(), coeffs_[order()]);
    for (int i = order() - 1; i >= 0; --i) {
      acc = acc * inner;
      acc.coeffs_[0] += coeffs_[i];
    }
    return acc;
  }

  PowerSeries pow(int k) const {
    PowerSeries acc = PowerSeries::constant(order(), 1);
    for (int i = 0; i < k; ++i) acc = acc * *this;
    return acc;
  }

  // Keep only coefficients up to `order`, re-truncating.
  PowerSeries truncated(int new_order) const {
    PowerSeries out(new_order);
    for (int i = 0; i <= std::min(order(), new_order); ++i)
      out.coeffs_[i] = coeffs_[i];
    return out;
  }

  double eval_double(double x) const {
    double acc = 0;
    for (int i = order(); i >= 0; --i)
      acc = acc * x + coeffs_[i].convert_to<double>();
    return acc;
  }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  void check_order(const PowerSeries& o) const {
    if (o.order() != order())
      throw std::runtime_error("series order mismatch");
  }
  std::vector<Rational> coeffs_;
};

// ---------------------------------------------------------------------------
// Melonic two-point function T as a series in x = lambda^2 (coefficient n
// carries 2n vertices), defined by the fixed point T = 1 + x T^4.

inline PowerSeries melonic_T(int order) {
  PowerSeries t = PowerSeries::constant(order, 1);
  PowerSeries x = PowerSeries::monomial(order, 1);
  for (int it = 0; it <= order; ++it) {
    PowerSeries nxt = PowerSeries::constant(order, 1) + x * t.pow(4);
    if (nxt == t) break;
    t = nxt;
  }
  return t;
}

// Closed form for the same coefficients: (1/(3n+1)) * C(4n, n).
inline Rational fuss_catalan_4(int n) {
  BigInt num = 1, den = 1;
  for (int i = 1; i <= n; ++i) {
    num *= BigInt(3 * n + i);
    den *= BigInt(i);
  }
  return Rational(num, den * BigInt(3 * n + 1));
}

// Numeric evaluation of T at a given lambda^2 by iterating the defining fixed
// point t <- 1 + lsq * t^4 in exact rational arithmetic.  At the critical
// coupling lsq = 27/256 the iteration converges (slowly) to 4/3; `iters`
// controls the accuracy.
inline double melonic_T_at(const Rational& lsq, int iters) {
  // Work in double after an exact warm start: full rational iteration blows up
  // denominator sizes exponentially.
  double x = lsq.convert_to<double>();
  double t = 1.0;
  for (int i = 0; i < iters; ++i) t = 1.0 + x * t * t * t * t;
  return t;
}

// Accelerated limit for the parabolic fixed point at the critical coupling:
// t_k ~ t* - c/k, so Richardson extrapolation t*_k = 2 t_{2k} - t_k converges
// much faster.
inline double melonic_T_at_accelerated(const Rational& lsq, int iters) {
  double x = lsq.convert_to<double>();
  auto iterate = [&](int n) {
    double t = 1.0;
    for (int i = 0; i < n; ++i) t = 1.0 + x * t * t * t * t;
    return t;
  };
  double t1 = iterate(iters), t2 = iterate(2 * iters), t4 = iterate(4 * iters);
  // two Richardson stages for the 1/k + O(1/k^2) error model
  double r1 = 2 * t2 - t1, r2 = 2 * t4 - t2;
  return 2 * r2 - r1;
}

// ---------------------------------------------------------------------------
// Ladder generating functions in the half-vertex variable u (coefficient k
// carries a k-rung ladder, i.e. 2k vertices).

enum class LadderKind { Ne, No, L, R, B };

inline PowerSeries ladder_gf(LadderKind k, int order) {
  PowerSeries u = PowerSeries::monomial(order, 1);
  PowerSeries one = PowerSeries::constant(order, 1);
  PowerSeries u2 = u * u;
  switch (k) {
    case LadderKind::Ne: return u2 / (one - u2);
    case LadderKind::No: return (u2 * u) / (one - u2);
    case LadderKind::L:
    case LadderKind::R: return u2 / (one - u);
    case LadderKind::B:
      return (u2 * Rational(6)) / ((one - u * Rational(3)) * (one - u));
  }
  throw std::runtime_error("unreachable");
}

// Per-scheme generating function u^p * C_Ne^{n_e} C_No^{n_o} C_L^{l+r} C_B^b,
// where 2p = number of non-root standard vertices of the scheme.
struct SchemeSignature {
  int standard_vertices = 0;  // non-root standard vertices (even)
  int n_e = 0, n_o = 0, l = 0, r = 0, b = 0;
};

inline PowerSeries scheme_gf(const SchemeSignature& sig, int order) {
  if (sig.standard_vertices % 2 != 0)
    throw std::runtime_error("scheme must have an even standard-vertex count");
  PowerSeries acc =
      PowerSeries::monomial(order, sig.standard_vertices / 2);
  for (int i = 0; i < sig.n_e; ++i) acc *= ladder_gf(LadderKind::Ne, order);
  for (int i = 0; i < sig.n_o; ++i) acc *= ladder_gf(LadderKind::No, order);
  for (int i = 0; i < sig.l + sig.r; ++i) acc *= ladder_gf(LadderKind::L, order);
  for (int i = 0; i < sig.b; ++i) acc *= ladder_gf(LadderKind::B, order);
  return acc;
}

// Genus-g generating function in lambda (odd coefficients vanish; we return a
// series in lambda itself): G_g = T(lambda) * sum_S GF_S(T - 1), using that
// lambda^2 T^4 = T - 1.  Input/output truncation order is in lambda^2.
inline PowerSeries genus_gf(const std::vector<SchemeSignature>& schemes,
                            int order_half) {
  PowerSeries t = melonic_T(order_half);
  PowerSeries u = t - PowerSeries::constant(order_half, 1);
  PowerSeries acc(order_half);
  for (const auto& sig : schemes) acc += scheme_gf(sig, order_half).compose(u);
  return t * acc;
}

// 2PI variant: propagators carry weight 1, u is substituted by lambda^2
// directly, and no overall factor of T appears.
inline PowerSeries genus_gf_2pi(const std::vector<SchemeSignature>& schemes,
                                int order_half) {
  PowerSeries acc(order_half);
  for (const auto& sig : schemes) acc += scheme_gf(sig, order_half);
  return acc;
}

}  // namespace feyn
