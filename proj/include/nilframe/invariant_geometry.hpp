#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "nilframe/algebra.hpp"

namespace nilframe {

/// Constant left-invariant tables of the ambient group for a fixed algebra:
///   tau(k,l,r)        coefficients with theta^k_l = 1/2 sum_r tau(k,l,r) theta^r
///   theta_coeff       = tau / 2
///   big_theta(k,l,s,t) curvature 2-form coefficients against theta^s (x) theta^t
/// All indices 0-based here; JSON export is 1-based.
class InvariantTables {
 public:
  explicit InvariantTables(const Algebra& alg) : N_(alg.dim()) {
    tau_.assign(static_cast<size_t>(N_) * N_ * N_, 0.0);
    for (int k = 0; k < N_; ++k)
      for (int l = 0; l < N_; ++l)
        for (int r = 0; r < N_; ++r)
          tau_at(k, l, r) = alg.sigma(r + 1, l + 1, k + 1) + alg.sigma(k + 1, r + 1, l + 1) +
                            alg.sigma(k + 1, l + 1, r + 1);
    big_.assign(static_cast<size_t>(N_) * N_ * N_ * N_, 0.0);
    for (int k = 0; k < N_; ++k)
      for (int l = 0; l < N_; ++l)
        for (int s = 0; s < N_; ++s)
          for (int t = 0; t < N_; ++t) {
            double sum = 0.0;
            for (int r = 0; r < N_; ++r)
              sum += tau(k, l, r) * tau(r, s, t) + tau(k, r, s) * tau(r, l, t);
            big_at(k, l, s, t) = 0.25 * sum;
          }
  }

  int dim() const { return N_; }

  double tau(int k, int l, int r) const { return tau_[idx3(k, l, r)]; }
  double theta_coeff(int k, int l, int r) const { return 0.5 * tau(k, l, r); }
  double big_theta(int k, int l, int s, int t) const { return big_[idx4(k, l, s, t)]; }

  /// Theta^k_l evaluated on the basis pair (E_a, E_b).
  double big_theta_eval(int k, int l, int a, int b) const {
    return big_theta(k, l, a, b) - big_theta(k, l, b, a);
  }

  /// Components of the invariant covariant derivative of E_l along E_s.
  Eigen::VectorXd nabla(int s, int l) const {
    Eigen::VectorXd out(N_);
    for (int k = 0; k < N_; ++k) out[k] = theta_coeff(k, l, s);
    return out;
  }

 private:
  double& tau_at(int k, int l, int r) { return tau_[idx3(k, l, r)]; }
  double& big_at(int k, int l, int s, int t) { return big_[idx4(k, l, s, t)]; }
  size_t idx3(int k, int l, int r) const {
    return (static_cast<size_t>(k) * N_ + l) * N_ + r;
  }
  size_t idx4(int k, int l, int s, int t) const {
    return ((static_cast<size_t>(k) * N_ + l) * N_ + s) * N_ + t;
  }

  int N_;
  std::vector<double> tau_, big_;
};

/// Invariant covariant derivative of E_l along E_s from the split relations
/// (bracket on the non-central block, -J/2 on mixed pairs, zero on central
/// pairs). Independent of the tau route; used as a consistency check on it.
inline Eigen::VectorXd nabla_split(const Algebra& alg, int s, int l) {
  const int n = alg.n();
  const int N = alg.dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(N);
  auto basis = [&](int i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
    e[i] = 1.0;
    return e;
  };
  if (s < n && l < n) {
    out = 0.5 * alg.bracket(basis(s), basis(l));
  } else if (s < n && l >= n) {
    out = -0.5 * (j_operator(alg, l - n + 1).matrix * basis(s));
  } else if (s >= n && l < n) {
    out = -0.5 * (j_operator(alg, s - n + 1).matrix * basis(l));
  }
  return out;
}

/// Tables for an algebra, cross-checked against the split covariant-derivative
/// relations. A mismatch signals an implementation sign error.
inline InvariantTables invariant_tables(const Algebra& alg) {
  InvariantTables t(alg);
  for (int s = 0; s < alg.dim(); ++s)
    for (int l = 0; l < alg.dim(); ++l) {
      const double err = (t.nabla(s, l) - nabla_split(alg, s, l)).cwiseAbs().maxCoeff();
      if (err > 1e-12)
        throw std::logic_error("invariant_tables: connection table disagrees with split relations");
    }
  return t;
}

struct StructuralReport {
  double first_residual = 0.0;   // d theta^k + theta^k_l ^ theta^l
  double second_residual = 0.0;  // d theta^k_l + theta^k_r ^ theta^r_l - Theta^k_l
  double mu_asymmetry = 0.0;     // mu^k_{lr} - mu^k_{rl}
  double max() const { return std::max({first_residual, second_residual, mu_asymmetry}); }
};

/// Evaluates both structural equations exactly on left-invariant data, using
/// d alpha(E_a, E_b) = -alpha([E_a, E_b]) for invariant 1-forms.
inline StructuralReport verify_structural(const Algebra& alg) {
  const int N = alg.dim();
  InvariantTables t(alg);
  StructuralReport rep;
  for (int k = 0; k < N; ++k)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        // d theta^k (E_a,E_b) = -sigma^k_{ab}
        double lhs = -alg.sigma(a + 1, b + 1, k + 1);
        for (int l = 0; l < N; ++l)
          lhs += t.theta_coeff(k, l, a) * (l == b ? 1.0 : 0.0) -
                 t.theta_coeff(k, l, b) * (l == a ? 1.0 : 0.0);
        rep.first_residual = std::max(rep.first_residual, std::abs(lhs));
      }
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l)
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          double dth = 0.0;  // d theta^k_l = 1/2 tau^k_{lr} d theta^r
          for (int r = 0; r < N; ++r) dth += -t.theta_coeff(k, l, r) * alg.sigma(a + 1, b + 1, r + 1);
          double quad = 0.0;
          for (int r = 0; r < N; ++r)
            quad += t.theta_coeff(k, r, a) * t.theta_coeff(r, l, b) -
                    t.theta_coeff(k, r, b) * t.theta_coeff(r, l, a);
          const double res = dth + quad - t.big_theta_eval(k, l, a, b);
          rep.second_residual = std::max(rep.second_residual, std::abs(res));
        }
  for (int k = 1; k <= N; ++k)
    for (int l = 1; l <= N; ++l)
      for (int r = 1; r <= N; ++r) {
        const double mu_lr = alg.sigma(k, r, l) + alg.sigma(k, l, r);
        const double mu_rl = alg.sigma(k, l, r) + alg.sigma(k, r, l);
        rep.mu_asymmetry = std::max(rep.mu_asymmetry, std::abs(mu_lr - mu_rl));
      }
  return rep;
}

/// Cyclic sum over (l,s,t) of the antisymmetrized curvature coefficients.
inline double bianchi_residual(const Algebra& alg) {
  InvariantTables t(alg);
  const int N = alg.dim();
  double worst = 0.0;
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l)
      for (int s = 0; s < N; ++s)
        for (int u = 0; u < N; ++u) {
          const double cyc = t.big_theta_eval(k, l, s, u) + t.big_theta_eval(k, s, u, l) +
                             t.big_theta_eval(k, u, l, s);
          worst = std::max(worst, std::abs(cyc));
        }
  return worst;
}

inline nlohmann::ordered_json curvature_json(const Algebra& alg) {
  InvariantTables t(alg);
  const int N = alg.dim();
  nlohmann::ordered_json j;
  j["n"] = alg.n();
  j["n_prime"] = alg.n_prime();
  j["legend"] = {
      {"tau", "tau[k][l][r], 1-based in the exported nesting order k,l,r"},
      {"theta", "theta[k][l][r] with theta^k_l = sum_r theta[k][l][r] * theta^r"},
      {"big_theta", "big_theta[k][l][s][t] against theta^s wedge theta^t; evaluate on "
                    "(E_a,E_b) as big_theta[k][l][a][b] - big_theta[k][l][b][a]"}};
  auto tensor3 = [&](auto&& f) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (int k = 0; k < N; ++k) {
      nlohmann::ordered_json jk = nlohmann::ordered_json::array();
      for (int l = 0; l < N; ++l) {
        nlohmann::ordered_json jl = nlohmann::ordered_json::array();
        for (int r = 0; r < N; ++r) jl.push_back(f(k, l, r));
        jk.push_back(jl);
      }
      out.push_back(jk);
    }
    return out;
  };
  j["tau"] = tensor3([&](int k, int l, int r) { return t.tau(k, l, r); });
  j["theta"] = tensor3([&](int k, int l, int r) { return t.theta_coeff(k, l, r); });
  nlohmann::ordered_json big = nlohmann::ordered_json::array();
  for (int k = 0; k < N; ++k) {
    nlohmann::ordered_json jk = nlohmann::ordered_json::array();
    for (int l = 0; l < N; ++l) {
      nlohmann::ordered_json jl = nlohmann::ordered_json::array();
      for (int s = 0; s < N; ++s) {
        nlohmann::ordered_json js = nlohmann::ordered_json::array();
        for (int u = 0; u < N; ++u) js.push_back(t.big_theta(k, l, s, u));
        jl.push_back(js);
      }
      jk.push_back(jl);
    }
    big.push_back(jk);
  }
  j["big_theta"] = big;
  return j;
}

}  // namespace nilframe
