#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "nilframe/chart.hpp"
#include "nilframe/jet.hpp"

namespace nilframe {

/// Matrix-valued differential form of degree 0, 1 or 2 over a chart, with
/// coefficients against the coordinate co-frame dx^i, dx^i ^ dx^j (i < j).
/// Values come from a provider: analytic callbacks (optionally with exact
/// partial-derivative callbacks) or grid samples.
class FormField {
 public:
  using ValueFn = std::function<Eigen::MatrixXd(const Vec2&, int comp)>;
  using PartialFn = std::function<Eigen::MatrixXd(const Vec2&, int comp, int axis)>;

  FormField() = default;

  static int component_count(int degree, int dim) {
    switch (degree) {
      case 0: return 1;
      case 1: return dim;
      case 2: return dim == 2 ? 1 : 0;
      default: return 0;
    }
  }

  /// Analytic provider; partials fall back to central differences at h_fd
  /// when no exact callback is supplied.
  static FormField analytic(Chart chart, int degree, int rows, int cols, ValueFn value,
                            PartialFn partial = nullptr, double h_fd = 1e-4) {
    FormField f;
    f.chart_ = chart;
    f.degree_ = degree;
    f.rows_ = rows;
    f.cols_ = cols;
    f.value_ = std::move(value);
    f.partial_ = std::move(partial);
    f.h_fd_ = h_fd;
    f.exact_partials_ = static_cast<bool>(f.partial_);
    return f;
  }

  /// Provider producing all components at once as jet matrices; the jet
  /// carries exact partials.
  static FormField from_jets(Chart chart, int degree, int rows, int cols,
                             std::function<std::vector<JetMat>(const Vec2&)> jets) {
    auto cache = std::make_shared<JetCache>();
    cache->fn = std::move(jets);
    FormField f;
    f.chart_ = chart;
    f.degree_ = degree;
    f.rows_ = rows;
    f.cols_ = cols;
    f.value_ = [cache](const Vec2& x, int comp) { return jet_value(cache->at(x)[comp]); };
    f.partial_ = [cache](const Vec2& x, int comp, int axis) {
      return jet_partial(cache->at(x)[comp], axis);
    };
    f.exact_partials_ = true;
    return f;
  }

  /// Grid-sampled provider: bilinear interpolation between nodes; partials
  /// from node-level differences (central inside, one-sided at the boundary).
  static FormField sampled(Chart chart, int degree, int rows, int cols,
                           std::vector<std::vector<Eigen::MatrixXd>> node_data) {
    const int nc = component_count(degree, chart.dim);
    if (static_cast<int>(node_data.size()) != nc)
      throw std::invalid_argument("sampled form: wrong component count");
    auto store = std::make_shared<SampleStore>();
    store->chart = chart;
    store->rows = rows;
    store->cols = cols;
    store->values = std::move(node_data);
    store->build_derivatives();
    FormField f;
    f.chart_ = chart;
    f.degree_ = degree;
    f.rows_ = rows;
    f.cols_ = cols;
    f.value_ = [store](const Vec2& x, int comp) { return store->interp(store->values[comp], x); };
    f.partial_ = [store](const Vec2& x, int comp, int axis) {
      return store->interp(store->derivs[axis][comp], x);
    };
    f.exact_partials_ = false;
    f.sampled_ = true;
    return f;
  }

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int components() const { return component_count(degree_, chart_.dim); }
  bool sampled() const { return sampled_; }
  bool has_exact_partials() const { return exact_partials_; }
  double fd_step() const { return h_fd_; }
  void set_fd_step(double h) { h_fd_ = h; }

  /// Discard exact partial callbacks; derivatives then use central
  /// differences at h_fd on the value provider.
  void force_finite_differences(double h_fd) {
    partial_ = nullptr;
    exact_partials_ = false;
    h_fd_ = h_fd;
  }

  Eigen::MatrixXd value(const Vec2& x, int comp = 0) const { return value_(x, comp); }

  Eigen::MatrixXd partial(const Vec2& x, int comp, int axis) const {
    if (partial_) return partial_(x, comp, axis);
    Vec2 p = x, m = x;
    p[axis] += h_fd_;
    m[axis] -= h_fd_;
    return (value_(p, comp) - value_(m, comp)) / (2.0 * h_fd_);
  }

 private:
  struct JetCache {
    std::function<std::vector<JetMat>(const Vec2&)> fn;
    mutable Vec2 key{std::nan(""), std::nan("")};
    mutable std::vector<JetMat> val;
    const std::vector<JetMat>& at(const Vec2& x) const {
      if (x[0] != key[0] || x[1] != key[1]) {
        val = fn(x);
        key = x;
      }
      return val;
    }
  };

  struct SampleStore {
    Chart chart;
    int rows = 0, cols = 0;
    std::vector<std::vector<Eigen::MatrixXd>> values;               // [comp][node]
    std::array<std::vector<std::vector<Eigen::MatrixXd>>, 2> derivs;  // [axis][comp][node]

    void build_derivatives() {
      for (int ax = 0; ax < chart.dim; ++ax) {
        derivs[ax].resize(values.size());
        const double h = chart.spacing(ax);
        for (size_t c = 0; c < values.size(); ++c) {
          derivs[ax][c].assign(values[c].size(), Eigen::MatrixXd::Zero(rows, cols));
          chart.for_each_node([&](int i, int j, const Vec2&) {
            const int ni = chart.nodes(0), nj = chart.nodes(1);
            auto at = [&](int ii, int jj) -> const Eigen::MatrixXd& {
              return values[c][chart.node_index(ii, jj)];
            };
            Eigen::MatrixXd d;
            const int p = ax == 0 ? i : j;
            const int cap = ax == 0 ? ni : nj;
            auto shift = [&](int dd) -> const Eigen::MatrixXd& {
              return ax == 0 ? at(i + dd, j) : at(i, j + dd);
            };
            if (p == 0)
              d = (shift(1) - shift(0)) / h;
            else if (p == cap - 1)
              d = (shift(0) - shift(-1)) / h;
            else
              d = (shift(1) - shift(-1)) / (2.0 * h);
            derivs[ax][c][chart.node_index(i, j)] = d;
          });
        }
      }
    }

    Eigen::MatrixXd interp(const std::vector<Eigen::MatrixXd>& grid, const Vec2& x) const {
      auto clamp = [](double v, double a, double b) { return v < a ? a : (v > b ? b : v); };
      const double fx =
          clamp((x[0] - chart.lo[0]) / chart.spacing(0), 0.0, double(chart.nodes(0) - 1));
      const int i0 = std::min(static_cast<int>(fx), chart.nodes(0) - 2 >= 0 ? chart.nodes(0) - 2 : 0);
      const double tx = fx - i0;
      if (chart.dim == 1) {
        if (chart.nodes(0) == 1) return grid[0];
        return (1 - tx) * grid[chart.node_index(i0, 0)] + tx * grid[chart.node_index(i0 + 1, 0)];
      }
      const double fy =
          clamp((x[1] - chart.lo[1]) / chart.spacing(1), 0.0, double(chart.nodes(1) - 1));
      const int j0 = std::min(static_cast<int>(fy), chart.nodes(1) - 2);
      const double ty = fy - j0;
      return (1 - tx) * (1 - ty) * grid[chart.node_index(i0, j0)] +
             tx * (1 - ty) * grid[chart.node_index(i0 + 1, j0)] +
             (1 - tx) * ty * grid[chart.node_index(i0, j0 + 1)] +
             tx * ty * grid[chart.node_index(i0 + 1, j0 + 1)];
    }
  };

  Chart chart_;
  int degree_ = 0, rows_ = 0, cols_ = 0;
  ValueFn value_;
  PartialFn partial_;
  double h_fd_ = 1e-4;
  bool exact_partials_ = false;
  bool sampled_ = false;
};

/// Zero form of a given degree/shape, for padding beyond the top degree.
inline FormField zero_form(Chart chart, int degree, int rows, int cols) {
  return FormField::analytic(
      chart, degree, rows, cols,
      [rows, cols](const Vec2&, int) { return Eigen::MatrixXd::Zero(rows, cols); },
      [rows, cols](const Vec2&, int, int) { return Eigen::MatrixXd::Zero(rows, cols); });
}

inline FormField exterior_derivative(const FormField& f) {
  const Chart chart = f.chart();
  if (f.degree() >= chart.dim)
    throw std::invalid_argument("exterior_derivative: degree overflow");
  if (f.degree() == 0) {
    return FormField::analytic(
        chart, 1, f.rows(), f.cols(),
        [f](const Vec2& x, int comp) { return f.partial(x, 0, comp); });
  }
  // degree 1 on a 2-chart -> single dx^0 ^ dx^1 component
  return FormField::analytic(chart, 2, f.rows(), f.cols(), [f](const Vec2& x, int) {
    return f.partial(x, 1, 0) - f.partial(x, 0, 1);
  });
}

/// Wedge of matrix-valued forms; (a ^ b)^i_j = sum_c a^i_c ^ b^c_j at the
/// scalar-form level. Degrees beyond the chart dimension are identically zero.
inline FormField wedge(const FormField& a, const FormField& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("wedge: dimension mismatch");
  const Chart chart = a.chart();
  const int deg = a.degree() + b.degree();
  if (deg > chart.dim) return zero_form(chart, 2, a.rows(), b.cols());
  if (a.degree() == 0 && b.degree() == 0) {
    return FormField::analytic(chart, 0, a.rows(), b.cols(), [a, b](const Vec2& x, int) {
      return a.value(x, 0) * b.value(x, 0);
    });
  }
  if (a.degree() == 0 || b.degree() == 0) {
    const FormField& s = a.degree() == 0 ? a : b;
    const FormField& p = a.degree() == 0 ? b : a;
    const bool scalar_left = a.degree() == 0;
    return FormField::analytic(chart, p.degree(), a.rows(), b.cols(),
                               [s, p, scalar_left](const Vec2& x, int comp) {
                                 return scalar_left ? Eigen::MatrixXd(s.value(x, 0) * p.value(x, comp))
                                                    : Eigen::MatrixXd(p.value(x, comp) * s.value(x, 0));
                               });
  }
  // 1-form ^ 1-form
  return FormField::analytic(chart, 2, a.rows(), b.cols(), [a, b](const Vec2& x, int) {
    return a.value(x, 0) * b.value(x, 1) - a.value(x, 1) * b.value(x, 0);
  });
}

struct SupNorm {
  double value = 0.0;
  Vec2 argmax = Vec2::Zero();
};

/// Max absolute coefficient over all grid nodes and components.
inline SupNorm sup_norm(const FormField& f) {
  SupNorm r;
  f.chart().for_each_node([&](int, int, const Vec2& x) {
    for (int c = 0; c < f.components(); ++c) {
      const double v = f.value(x, c).cwiseAbs().maxCoeff();
      if (v > r.value) {
        r.value = v;
        r.argmax = x;
      }
    }
  });
  if (f.components() == 0) r.value = 0.0;
  return r;
}

/// Ordered product of the four edge transports exp(-h * conn(mid)) around a
/// grid cell; identity for a flat connection up to O(h^3).
inline Eigen::MatrixXd plaquette_holonomy(const FormField& conn, int ci, int cj) {
  const Chart& chart = conn.chart();
  if (conn.rows() != conn.cols())
    throw std::invalid_argument("plaquette_holonomy: connection must be square");
  const double hx = chart.spacing(0), hy = chart.spacing(1);
  const Vec2 p00 = chart.node(ci, cj);
  auto edge = [&](const Vec2& from, int axis, double step) {
    Vec2 mid = from;
    mid[axis] += 0.5 * step;
    const Eigen::MatrixXd w = conn.value(mid, axis) * step;
    return Eigen::MatrixXd((-w).exp());
  };
  Vec2 p01 = p00, p11 = p00, p10 = p00;
  p01[1] += hy;
  p11[0] += hx;
  p11[1] += hy;
  p10[0] += hx;
  const Eigen::MatrixXd t1 = edge(p00, 1, hy);    // up the left edge
  const Eigen::MatrixXd t2 = edge(p01, 0, hx);    // across the top
  const Eigen::MatrixXd t3 = edge(p11, 1, -hy);   // down the right edge
  const Eigen::MatrixXd t4 = edge(p10, 0, -hx);   // back along the bottom
  return t4 * t3 * t2 * t1;
}

/// Max plaquette deviation from the identity over all cells; zero when the
/// chart has no 2-cells.
inline SupNorm flatness_holonomy(const FormField& conn) {
  SupNorm r;
  const Chart& chart = conn.chart();
  if (chart.dim < 2) return r;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(conn.rows(), conn.cols());
  for (int j = 0; j < chart.cells(1); ++j)
    for (int i = 0; i < chart.cells(0); ++i) {
      const double dev = (plaquette_holonomy(conn, i, j) - id).cwiseAbs().maxCoeff();
      if (dev > r.value) {
        r.value = dev;
        Vec2 c = chart.node(i, j);
        c[0] += 0.5 * chart.spacing(0);
        c[1] += 0.5 * chart.spacing(1);
        r.argmax = c;
      }
    }
  return r;
}

/// Grid samples of a field, serialized with a shape header.
inline nlohmann::ordered_json sampled_to_json(const FormField& f) {
  nlohmann::ordered_json j;
  j["degree"] = f.degree();
  j["rows"] = f.rows();
  j["cols"] = f.cols();
  j["grid"] = {f.chart().nodes(0), f.chart().nodes(1)};
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (int c = 0; c < f.components(); ++c) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    f.chart().for_each_node([&](int, int, const Vec2& x) {
      const Eigen::MatrixXd m = f.value(x, c);
      nlohmann::ordered_json flat = nlohmann::ordered_json::array();
      for (int r = 0; r < m.rows(); ++r)
        for (int q = 0; q < m.cols(); ++q) flat.push_back(m(r, q));
      nodes.push_back(flat);
    });
    comps.push_back(nodes);
  }
  j["data"] = comps;
  return j;
}

}  // namespace nilframe
