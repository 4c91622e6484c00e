#pragma once

#include <Eigen/Core>
#include <cmath>

namespace nilframe {

/// First-order forward-mode scalar: a value together with its partial
/// derivatives along up to N chart axes. Arithmetic propagates the chain
/// rule, so any quantity assembled from seeded jets carries exact first
/// derivatives.
template <int N>
struct Jet {
  double a = 0.0;
  Eigen::Matrix<double, N, 1> v = Eigen::Matrix<double, N, 1>::Zero();

  Jet() = default;
  Jet(double value) : a(value) {}  // NOLINT: implicit for scalar interop
  Jet(double value, int axis) : a(value) { v[axis] = 1.0; }
  Jet(double value, const Eigen::Matrix<double, N, 1>& grad) : a(value), v(grad) {}

  Jet& operator+=(const Jet& o) {
    a += o.a;
    v += o.v;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    a -= o.a;
    v -= o.v;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    v = v * o.a + a * o.v;
    a *= o.a;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    v = (v * o.a - a * o.v) / (o.a * o.a);
    a /= o.a;
    return *this;
  }
  Jet operator-() const { return Jet(-a, Eigen::Matrix<double, N, 1>(-v)); }
};

template <int N>
inline Jet<N> operator+(Jet<N> x, const Jet<N>& y) { return x += y; }
template <int N>
inline Jet<N> operator-(Jet<N> x, const Jet<N>& y) { return x -= y; }
template <int N>
inline Jet<N> operator*(Jet<N> x, const Jet<N>& y) { return x *= y; }
template <int N>
inline Jet<N> operator/(Jet<N> x, const Jet<N>& y) { return x /= y; }

template <int N>
inline Jet<N> operator+(Jet<N> x, double s) { x.a += s; return x; }
template <int N>
inline Jet<N> operator+(double s, Jet<N> x) { x.a += s; return x; }
template <int N>
inline Jet<N> operator-(Jet<N> x, double s) { x.a -= s; return x; }
template <int N>
inline Jet<N> operator-(double s, const Jet<N>& x) { return Jet<N>(s) - x; }
template <int N>
inline Jet<N> operator*(Jet<N> x, double s) { x.a *= s; x.v *= s; return x; }
template <int N>
inline Jet<N> operator*(double s, Jet<N> x) { return x * s; }
template <int N>
inline Jet<N> operator/(Jet<N> x, double s) { x.a /= s; x.v /= s; return x; }
template <int N>
inline Jet<N> operator/(double s, const Jet<N>& x) { return Jet<N>(s) / x; }

template <int N>
inline bool operator<(const Jet<N>& x, const Jet<N>& y) { return x.a < y.a; }
template <int N>
inline bool operator>(const Jet<N>& x, const Jet<N>& y) { return x.a > y.a; }
template <int N>
inline bool operator<=(const Jet<N>& x, const Jet<N>& y) { return x.a <= y.a; }
template <int N>
inline bool operator>=(const Jet<N>& x, const Jet<N>& y) { return x.a >= y.a; }
template <int N>
inline bool operator==(const Jet<N>& x, const Jet<N>& y) { return x.a == y.a; }
template <int N>
inline bool operator!=(const Jet<N>& x, const Jet<N>& y) { return x.a != y.a; }

template <int N>
inline Jet<N> sqrt(const Jet<N>& x) {
  const double s = std::sqrt(x.a);
  return Jet<N>(s, Eigen::Matrix<double, N, 1>(x.v / (2.0 * s)));
}
template <int N>
inline Jet<N> sin(const Jet<N>& x) {
  return Jet<N>(std::sin(x.a), Eigen::Matrix<double, N, 1>(std::cos(x.a) * x.v));
}
template <int N>
inline Jet<N> cos(const Jet<N>& x) {
  return Jet<N>(std::cos(x.a), Eigen::Matrix<double, N, 1>(-std::sin(x.a) * x.v));
}
template <int N>
inline Jet<N> exp(const Jet<N>& x) {
  const double e = std::exp(x.a);
  return Jet<N>(e, Eigen::Matrix<double, N, 1>(e * x.v));
}
template <int N>
inline Jet<N> abs(const Jet<N>& x) {
  return x.a < 0.0 ? -x : x;
}

using Jet2 = Jet<2>;

template <int N>
using JetMatrix = Eigen::Matrix<Jet<N>, Eigen::Dynamic, Eigen::Dynamic>;
template <int N>
using JetVector = Eigen::Matrix<Jet<N>, Eigen::Dynamic, 1>;
using JetMat = JetMatrix<2>;
using JetVec = JetVector<2>;

/// Value part of a jet matrix.
template <int N>
inline Eigen::MatrixXd jet_value(const JetMatrix<N>& m) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).a;
  return r;
}

/// Partial derivative of a jet matrix along one seeded axis.
template <int N>
inline Eigen::MatrixXd jet_partial(const JetMatrix<N>& m, int axis) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).v[axis];
  return r;
}

template <int N>
inline JetMatrix<N> jet_constant(const Eigen::MatrixXd& m) {
  JetMatrix<N> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Jet<N>(m(i, j));
  return r;
}

}  // namespace nilframe

namespace Eigen {

template <int N>
struct NumTraits<nilframe::Jet<N>> : NumTraits<double> {
  using Real = nilframe::Jet<N>;
  using NonInteger = nilframe::Jet<N>;
  using Nested = nilframe::Jet<N>;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 9,
  };
  static inline Real epsilon() { return Real(NumTraits<double>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<double>::dummy_precision()); }
  static inline Real highest() { return Real(NumTraits<double>::highest()); }
  static inline Real lowest() { return Real(NumTraits<double>::lowest()); }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

template <int N, typename BinaryOp>
struct ScalarBinaryOpTraits<nilframe::Jet<N>, double, BinaryOp> {
  using ReturnType = nilframe::Jet<N>;
};
template <int N, typename BinaryOp>
struct ScalarBinaryOpTraits<double, nilframe::Jet<N>, BinaryOp> {
  using ReturnType = nilframe::Jet<N>;
};

}  // namespace Eigen
