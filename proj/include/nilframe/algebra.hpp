#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace nilframe {

/// One structure constant, 1-based indices: [E_k, E_l] has component `value`
/// along E_r. Valid data has k,l <= n < r.
struct SigmaEntry {
  int k = 0, l = 0, r = 0;
  double value = 0.0;
};

struct Violation {
  std::string rule;
  int k = 0, l = 0, r = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool flat = false;  // no nonzero bracket
  bool valid() const { return violations.empty(); }
};

/// Raw, not yet validated structure-constant data as read from a file or
/// assembled by a caller.
struct AlgebraCandidate {
  int n = 0;
  int n_prime = 0;
  std::vector<SigmaEntry> sigma;
};

class Algebra;
inline double jacobi_residual(const Algebra& alg);

/// Two-step nilpotent metric Lie algebra with orthonormal adapted basis:
/// E_1..E_n span the non-central part, E_{n+1}..E_{n+n'} span the center.
/// Immutable after construction.
class Algebra {
 public:
  /// Checks every structural invariant of a candidate. All failures are
  /// report entries, never exceptions.
  static ValidationReport validate(const AlgebraCandidate& cand) {
    ValidationReport rep;
    const int N = cand.n + cand.n_prime;
    if (cand.n <= 0)
      rep.violations.push_back({"dimension", 0, 0, 0, "n must be positive"});
    if (cand.n_prime < 0)
      rep.violations.push_back({"dimension", 0, 0, 0, "n_prime must be non-negative"});
    if (!rep.violations.empty()) return rep;

    // Collect entries keyed on (min(k,l), max(k,l), r); track both orientations.
    struct Pair {
      bool has_fwd = false, has_rev = false;
      double fwd = 0.0, rev = 0.0;
    };
    std::vector<std::pair<std::array<int, 3>, Pair>> pairs;
    auto find = [&](int a, int b, int r) -> Pair& {
      for (auto& p : pairs)
        if (p.first[0] == a && p.first[1] == b && p.first[2] == r) return p.second;
      pairs.push_back({{a, b, r}, Pair{}});
      return pairs.back().second;
    };

    bool any_nonzero = false;
    for (const auto& e : cand.sigma) {
      if (e.k < 1 || e.k > N || e.l < 1 || e.l > N || e.r < 1 || e.r > N) {
        rep.violations.push_back({"index-range", e.k, e.l, e.r, "index outside 1..n+n'"});
        continue;
      }
      if (e.value != 0.0 && (e.k > cand.n || e.l > cand.n || e.r <= cand.n)) {
        rep.violations.push_back(
            {"two-step-grading", e.k, e.l, e.r,
             "nonzero entry must have k,l <= n and r > n"});
        continue;
      }
      if (e.k == e.l && e.value != 0.0) {
        rep.violations.push_back({"antisymmetry", e.k, e.l, e.r, "[X,X] must vanish"});
        continue;
      }
      if (e.value != 0.0) any_nonzero = true;
      if (e.k == e.l) continue;
      Pair& p = find(std::min(e.k, e.l), std::max(e.k, e.l), e.r);
      if (e.k < e.l) {
        if (p.has_fwd)
          rep.violations.push_back({"duplicate", e.k, e.l, e.r, "entry stored twice"});
        p.has_fwd = true;
        p.fwd = e.value;
      } else {
        if (p.has_rev)
          rep.violations.push_back({"duplicate", e.l, e.k, e.r, "entry stored twice"});
        p.has_rev = true;
        p.rev = e.value;
      }
    }
    for (const auto& [key, p] : pairs) {
      if (p.has_fwd && p.has_rev && p.fwd + p.rev != 0.0)
        rep.violations.push_back({"antisymmetry", key[0], key[1], key[2],
                                  "sigma[k][l][r] + sigma[l][k][r] != 0"});
    }
    rep.flat = !any_nonzero;
    if (rep.valid() && !rep.flat) {
      Algebra a(cand, /*already_validated=*/true);
      const double jac = jacobi_residual(a);
      if (jac > 0.0)
        rep.violations.push_back({"jacobi", 0, 0, 0, "cyclic double brackets do not vanish"});
    }
    return rep;
  }

  explicit Algebra(const AlgebraCandidate& cand) : Algebra(cand, false) {}

  int n() const { return n_; }
  int n_prime() const { return n_prime_; }
  int dim() const { return n_ + n_prime_; }
  bool is_abelian() const { return abelian_; }

  /// sigma^r_{kl}, 1-based indices, any index combination.
  double sigma(int k, int l, int r) const {
    if (k < 1 || l < 1 || r < 1 || k > dim() || l > dim() || r > dim()) return 0.0;
    if (k > n_ || l > n_ || r <= n_) return 0.0;
    return pairing_[r - n_ - 1](k - 1, l - 1);
  }

  /// Pairing matrix M_k with M_k(l,r) = sigma^{n+k}_{l+1,r+1} (0-based),
  /// i.e. <J_k E_l, E_r> restricted to the non-central block.
  const Eigen::MatrixXd& center_pairing(int k) const {  // k in 1..n'
    check_center_index(k);
    return pairing_[k - 1];
  }

  /// [X, Y] for coefficient vectors of length n+n'; lands in the center block.
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    if (x.size() != dim() || y.size() != dim())
      throw std::invalid_argument("bracket: coefficient vectors must have length n+n'");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    const auto xv = x.head(n_);
    const auto yv = y.head(n_);
    for (int k = 0; k < n_prime_; ++k) out[n_ + k] = xv.dot(pairing_[k] * yv);
    return out;
  }

  bool has_center_index(int k) const { return k >= 1 && k <= n_prime_; }

  std::vector<SigmaEntry> upper_entries() const {
    std::vector<SigmaEntry> out;
    for (int k = 1; k <= n_; ++k)
      for (int l = k + 1; l <= n_; ++l)
        for (int r = n_ + 1; r <= dim(); ++r)
          if (double v = sigma(k, l, r); v != 0.0) out.push_back({k, l, r, v});
    return out;
  }

  // --- catalog ------------------------------------------------------------

  static Algebra abelian(int d) {
    if (d <= 0) throw std::invalid_argument("abelian: dimension must be positive");
    return Algebra({d, 0, {}});
  }

  /// Heisenberg group H^{2m+1}: n = 2m, one central direction,
  /// [E_{2i-1}, E_{2i}] = E_{2m+1}.
  static Algebra heisenberg(int m) {
    if (m <= 0) throw std::invalid_argument("heisenberg: parameter must be positive");
    AlgebraCandidate c{2 * m, 1, {}};
    for (int i = 1; i <= m; ++i) c.sigma.push_back({2 * i - 1, 2 * i, 2 * m + 1, 1.0});
    return Algebra(c);
  }

  /// Builds sigma^{n+k}_{lr} = (J_k)_{lr} from supplied skew matrices.
  static Algebra h_type_from_j(const std::vector<Eigen::MatrixXd>& js) {
    if (js.empty()) throw std::invalid_argument("h_type_from_j: no matrices supplied");
    const int n = static_cast<int>(js.front().rows());
    AlgebraCandidate c{n, static_cast<int>(js.size()), {}};
    for (int k = 0; k < static_cast<int>(js.size()); ++k) {
      const auto& J = js[k];
      if (J.rows() != n || J.cols() != n)
        throw std::invalid_argument("h_type_from_j: inconsistent matrix sizes");
      if ((J + J.transpose()).cwiseAbs().maxCoeff() > 0.0)
        throw std::invalid_argument("h_type_from_j: supplied matrix is not skew");
      for (int l = 1; l <= n; ++l)
        for (int r = l + 1; r <= n; ++r)
          if (J(l - 1, r - 1) != 0.0) c.sigma.push_back({l, r, n + k + 1, J(l - 1, r - 1)});
    }
    return Algebra(c);
  }

  /// Quaternionic Heisenberg algebra: n = 4, n' = 3, J_k from the three
  /// anticommuting quaternion left multiplications.
  static Algebra quaternionic_heisenberg() {
    Eigen::MatrixXd ji(4, 4), jj(4, 4), jk(4, 4);
    ji << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
    jj << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
    jk << 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
    return h_type_from_j({ji.transpose(), jj.transpose(), jk.transpose()});
  }

  /// Random valid algebra for property tests: entries uniform in [-1,1],
  /// antisymmetrized. Deterministic for a given generator state.
  static Algebra random(int n, int n_prime, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    AlgebraCandidate c{n, n_prime, {}};
    for (int k = 1; k <= n_prime; ++k)
      for (int l = 1; l <= n; ++l)
        for (int r = l + 1; r <= n; ++r) c.sigma.push_back({l, r, n + k, dist(rng)});
    return Algebra(c);
  }

  // --- serialization --------------------------------------------------------

  static AlgebraCandidate candidate_from_json(const nlohmann::json& j) {
    AlgebraCandidate c;
    c.n = j.at("n").get<int>();
    c.n_prime = j.at("n_prime").get<int>();
    for (const auto& e : j.value("sigma", nlohmann::json::array())) {
      c.sigma.push_back({e.at("k").get<int>(), e.at("l").get<int>(), e.at("r").get<int>(),
                         e.at("value").get<double>()});
    }
    return c;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    j["n_prime"] = n_prime_;
    j["sigma"] = nlohmann::ordered_json::array();
    for (const auto& e : upper_entries())
      j["sigma"].push_back({{"k", e.k}, {"l", e.l}, {"r", e.r}, {"value", e.value}});
    return j;
  }

 private:
  Algebra(const AlgebraCandidate& cand, bool already_validated)
      : n_(cand.n), n_prime_(cand.n_prime) {
    if (!already_validated) {
      ValidationReport rep = validate(cand);
      if (!rep.valid()) {
        std::string msg = "invalid algebra:";
        for (const auto& v : rep.violations) msg += " [" + v.rule + "] " + v.detail + ";";
        throw std::invalid_argument(msg);
      }
    }
    pairing_.assign(std::max(n_prime_, 0), Eigen::MatrixXd::Zero(n_, n_));
    abelian_ = true;
    // Materialize both orientations so lookups never sign-flip at read time.
    for (const auto& e : cand.sigma) {
      if (e.value == 0.0) continue;
      abelian_ = false;
      pairing_[e.r - n_ - 1](e.k - 1, e.l - 1) = e.value;
      pairing_[e.r - n_ - 1](e.l - 1, e.k - 1) = -e.value;
    }
  }

  void check_center_index(int k) const {
    if (!has_center_index(k))
      throw std::out_of_range("center index must lie in 1..n_prime");
  }

  int n_ = 0;
  int n_prime_ = 0;
  bool abelian_ = true;
  std::vector<Eigen::MatrixXd> pairing_;
};

/// Skew operator J_k extended to the full algebra; rows/columns with index
/// beyond n vanish. Acts on coefficient vectors as matrix * vector.
struct JOperator {
  int k = 0;
  Eigen::MatrixXd matrix;
};

/// J_k with <J_k E_l, E_r> = sigma^{n+k}_{lr}; the action matrix column l
/// holds the components of J_k E_l.
inline JOperator j_operator(const Algebra& alg, int k) {
  if (!alg.has_center_index(k)) throw std::out_of_range("j_operator: k out of range");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(alg.dim(), alg.dim());
  m.topLeftCorner(alg.n(), alg.n()) = alg.center_pairing(k).transpose();
  return {k, std::move(m)};
}

/// Brute-force cyclic Jacobi sum over all basis triples; exactly zero for any
/// two-step grading.
inline double jacobi_residual(const Algebra& alg) {
  const int N = alg.dim();
  double worst = 0.0;
  auto basis = [&](int i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
    e[i] = 1.0;
    return e;
  };
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        Eigen::VectorXd s = alg.bracket(alg.bracket(basis(a), basis(b)), basis(c)) +
                            alg.bracket(alg.bracket(basis(b), basis(c)), basis(a)) +
                            alg.bracket(alg.bracket(basis(c), basis(a)), basis(b));
        worst = std::max(worst, s.cwiseAbs().maxCoeff());
      }
  return worst;
}

/// Max over central basis directions of ||J_k^2 + Id||_inf on the non-central
/// block; zero iff those directions satisfy the H-type identity. Empty for
/// algebras without center.
inline std::optional<double> h_type_residual(const Algebra& alg) {
  if (alg.n_prime() == 0) return std::nullopt;
  double worst = 0.0;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(alg.n(), alg.n());
  for (int k = 1; k <= alg.n_prime(); ++k) {
    const Eigen::MatrixXd j = j_operator(alg, k).matrix.topLeftCorner(alg.n(), alg.n());
    worst = std::max(worst, (j * j + id).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace nilframe
