#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "nilframe/algebra.hpp"

namespace nilframe {

/// Point of the simply connected group in exponential coordinates of the
/// first kind. For a two-step algebra these coordinates are global and the
/// group law is the exact truncated product.
struct GroupPoint {
  Eigen::VectorXd xi;
};

inline GroupPoint group_identity(const Algebra& alg) {
  return {Eigen::VectorXd::Zero(alg.dim())};
}

inline GroupPoint group_exp(const Eigen::VectorXd& v) { return {v}; }
inline Eigen::VectorXd group_log(const GroupPoint& p) { return p.xi; }

/// xi(pq) = xi(p) + xi(q) + [xi(p), xi(q)]/2; associative, identity 0,
/// inverse -xi.
inline GroupPoint group_mul(const Algebra& alg, const GroupPoint& p, const GroupPoint& q) {
  return {p.xi + q.xi + 0.5 * alg.bracket(p.xi, q.xi)};
}

inline GroupPoint group_inverse(const GroupPoint& p) { return {-p.xi}; }

inline double group_distance(const GroupPoint& p, const GroupPoint& q) {
  return (p.xi - q.xi).norm();
}

/// Columns are the coordinate components of the left-invariant fields E_k at
/// p: the differential of left translation applied to the basis.
inline Eigen::MatrixXd left_invariant_frame(const Algebra& alg, const GroupPoint& p) {
  const int N = alg.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(N, N);
  for (int l = 0; l < alg.n(); ++l) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
    e[l] = 1.0;
    m.col(l) += 0.5 * alg.bracket(p.xi, e);
  }
  return m;
}

/// Components of a coordinate velocity w at p against the left-invariant
/// frame; exact inverse of left_invariant_frame since nested brackets vanish.
inline Eigen::VectorXd invariant_components(const Algebra& alg, const GroupPoint& p,
                                            const Eigen::VectorXd& w) {
  return w - 0.5 * alg.bracket(p.xi, w);
}

/// Rate of change of exponential coordinates u(t) when the body velocity is
/// xi: solves d/dt exp(u) = (left-invariant field with components xi) at
/// exp(u). Exact for two-step algebras.
inline Eigen::VectorXd dexpinv(const Algebra& alg, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& xi) {
  return xi + 0.5 * alg.bracket(u, xi);
}

/// Group automorphism induced by an algebra automorphism R in exponential
/// coordinates. Caller is responsible for R preserving the bracket.
inline GroupPoint apply_automorphism(const Eigen::MatrixXd& r, const GroupPoint& p) {
  return {r * p.xi};
}

/// Max deviation of R from preserving the bracket on basis pairs.
inline double bracket_compat_residual(const Algebra& alg, const Eigen::MatrixXd& r) {
  const int N = alg.dim();
  double worst = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      Eigen::VectorXd ea = Eigen::VectorXd::Zero(N), eb = Eigen::VectorXd::Zero(N);
      ea[a] = 1.0;
      eb[b] = 1.0;
      const Eigen::VectorXd lhs = alg.bracket(r * ea, r * eb);
      const Eigen::VectorXd rhs = r * alg.bracket(ea, eb);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace nilframe
