#pragma once

#include <Eigen/Core>
#include <array>
#include <stdexcept>

namespace nilframe {

using Vec2 = Eigen::Vector2d;

/// Rectangular parameter domain, dimension 1 or 2, with a uniform node grid.
/// Rectangular charts are simply connected by construction.
struct Chart {
  int dim = 2;
  std::array<double, 2> lo{-1.0, -1.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::array<int, 2> res{2, 2};  // nodes per axis, >= 2 on active axes

  static Chart line(double a, double b, int nodes) {
    Chart c;
    c.dim = 1;
    c.lo = {a, 0.0};
    c.hi = {b, 0.0};
    c.res = {nodes, 1};
    c.check();
    return c;
  }

  static Chart rect(Vec2 a, Vec2 b, int nx, int ny) {
    Chart c;
    c.dim = 2;
    c.lo = {a[0], a[1]};
    c.hi = {b[0], b[1]};
    c.res = {nx, ny};
    c.check();
    return c;
  }

  void check() const {
    if (dim < 1 || dim > 2) throw std::invalid_argument("chart: dim must be 1 or 2");
    for (int ax = 0; ax < dim; ++ax) {
      if (res[ax] < 2) throw std::invalid_argument("chart: resolution must be >= 2 per axis");
      if (!(hi[ax] > lo[ax])) throw std::invalid_argument("chart: empty axis range");
    }
  }

  double spacing(int axis) const {
    if (axis >= dim) return 0.0;
    return (hi[axis] - lo[axis]) / (res[axis] - 1);
  }

  int nodes(int axis) const { return axis < dim ? res[axis] : 1; }
  int cells(int axis) const { return axis < dim ? res[axis] - 1 : 0; }

  Vec2 node(int i, int j) const {
    Vec2 x;
    x[0] = lo[0] + i * spacing(0);
    x[1] = dim > 1 ? lo[1] + j * spacing(1) : 0.0;
    return x;
  }

  bool contains(const Vec2& x) const {
    for (int ax = 0; ax < dim; ++ax)
      if (x[ax] < lo[ax] - 1e-12 || x[ax] > hi[ax] + 1e-12) return false;
    return true;
  }

  template <typename F>
  void for_each_node(F&& f) const {
    for (int j = 0; j < nodes(1); ++j)
      for (int i = 0; i < nodes(0); ++i) f(i, j, node(i, j));
  }

  int node_count() const { return nodes(0) * nodes(1); }
  int node_index(int i, int j) const { return j * nodes(0) + i; }
};

}  // namespace nilframe
