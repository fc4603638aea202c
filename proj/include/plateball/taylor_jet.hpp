#pragma once
// Truncated power series a0 + a1 e + ... + aN e^N with the arithmetic needed to
// expand removable singularities in a small parameter e.

#include <array>
#include <cstddef>

#include "plateball/scalar_math.hpp"

namespace plateball {

template <typename Scalar, int Order>
struct TaylorJet {
  static constexpr int order = Order;
  std::array<Scalar, Order + 1> c{};

  static TaylorJet constant(Scalar v) {
    TaylorJet j;
    j.c[0] = v;
    return j;
  }
  // v + e
  static TaylorJet variable(Scalar v) {
    TaylorJet j;
    j.c[0] = v;
    if constexpr (Order >= 1) j.c[1] = Scalar(1);
    return j;
  }

  Scalar operator()(Scalar e) const {
    Scalar acc = c[Order];
    for (int k = Order - 1; k >= 0; --k) acc = acc * e + c[k];
    return acc;
  }

  // (J - J(0)) / e, one order shorter.
  TaylorJet<Scalar, Order - 1> divided_by_variable() const {
    TaylorJet<Scalar, Order - 1> r;
    for (int k = 0; k < Order; ++k) r.c[k] = c[k + 1];
    return r;
  }

  TaylorJet& operator+=(const TaylorJet& o) {
    for (int k = 0; k <= Order; ++k) c[k] += o.c[k];
    return *this;
  }
  TaylorJet& operator-=(const TaylorJet& o) {
    for (int k = 0; k <= Order; ++k) c[k] -= o.c[k];
    return *this;
  }
  TaylorJet& operator*=(Scalar v) {
    for (auto& x : c) x *= v;
    return *this;
  }
};

template <typename S, int N>
TaylorJet<S, N> operator+(TaylorJet<S, N> a, const TaylorJet<S, N>& b) { return a += b; }
template <typename S, int N>
TaylorJet<S, N> operator-(TaylorJet<S, N> a, const TaylorJet<S, N>& b) { return a -= b; }
template <typename S, int N>
TaylorJet<S, N> operator-(TaylorJet<S, N> a) { return a *= S(-1); }
template <typename S, int N>
TaylorJet<S, N> operator+(TaylorJet<S, N> a, S v) { a.c[0] += v; return a; }
template <typename S, int N>
TaylorJet<S, N> operator+(S v, TaylorJet<S, N> a) { a.c[0] += v; return a; }
template <typename S, int N>
TaylorJet<S, N> operator-(TaylorJet<S, N> a, S v) { a.c[0] -= v; return a; }
template <typename S, int N>
TaylorJet<S, N> operator-(S v, const TaylorJet<S, N>& a) { return TaylorJet<S, N>::constant(v) - a; }
template <typename S, int N>
TaylorJet<S, N> operator*(TaylorJet<S, N> a, S v) { return a *= v; }
template <typename S, int N>
TaylorJet<S, N> operator*(S v, TaylorJet<S, N> a) { return a *= v; }

template <typename S, int N>
TaylorJet<S, N> operator*(const TaylorJet<S, N>& a, const TaylorJet<S, N>& b) {
  TaylorJet<S, N> r;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

template <typename S, int N>
TaylorJet<S, N> operator/(const TaylorJet<S, N>& a, const TaylorJet<S, N>& b) {
  TaylorJet<S, N> q;
  for (int k = 0; k <= N; ++k) {
    S acc = a.c[k];
    for (int j = 1; j <= k; ++j) acc -= b.c[j] * q.c[k - j];
    q.c[k] = acc / b.c[0];
  }
  return q;
}
template <typename S, int N>
TaylorJet<S, N> operator/(S v, const TaylorJet<S, N>& b) { return TaylorJet<S, N>::constant(v) / b; }
template <typename S, int N>
TaylorJet<S, N> operator/(TaylorJet<S, N> a, S v) { return a *= (S(1) / v); }

namespace detail {
// sin and cos of a jet together: k*s_k = sum j*u_j*c_{k-j}, k*c_k = -sum j*u_j*s_{k-j}.
template <typename S, int N>
void sincos(const TaylorJet<S, N>& u, TaylorJet<S, N>& sn, TaylorJet<S, N>& cs) {
  sn.c[0] = math::sin(u.c[0]);
  cs.c[0] = math::cos(u.c[0]);
  for (int k = 1; k <= N; ++k) {
    S a{}, b{};
    for (int j = 1; j <= k; ++j) {
      a += S(j) * u.c[j] * cs.c[k - j];
      b += S(j) * u.c[j] * sn.c[k - j];
    }
    sn.c[k] = a / S(k);
    cs.c[k] = -b / S(k);
  }
}
}  // namespace detail

namespace math {
template <typename S, int N>
TaylorJet<S, N> sin(const TaylorJet<S, N>& u) {
  TaylorJet<S, N> sn, cs;
  detail::sincos(u, sn, cs);
  return sn;
}
template <typename S, int N>
TaylorJet<S, N> cos(const TaylorJet<S, N>& u) {
  TaylorJet<S, N> sn, cs;
  detail::sincos(u, sn, cs);
  return cs;
}
}  // namespace math

}  // namespace plateball
