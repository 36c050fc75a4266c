#include "funcerr/quadrature.hpp"

#include <numbers>
#include <string>

#include "funcerr/error.hpp"

namespace funcerr {

double compensated_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1 || n > 256) throw ContractError("gauss_legendre: order must be in [1, 256]");
  GaussLegendre rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, refined by Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule::QuadratureRule(int space_order, int time_order, int space_cells, int time_cells)
    : QuadratureRule({space_order, space_order, space_order}, time_order,
                     {space_cells, space_cells, space_cells}, time_cells) {}

QuadratureRule::QuadratureRule(std::array<int, kMaxDim> space_order, int time_order,
                               std::array<int, kMaxDim> space_cells, int time_cells)
    : space_order_(space_order),
      space_cells_(space_cells),
      time_order_(time_order),
      time_cells_(time_cells) {
  for (int i = 0; i < kMaxDim; ++i) {
    if (space_cells_[i] < 1) throw ContractError("quadrature: cell count must be positive");
    space_reference_[i] = gauss_legendre(space_order_[i]);
  }
  if (time_cells_ < 1) throw ContractError("quadrature: cell count must be positive");
  time_reference_ = gauss_legendre(time_order_);
}

namespace {

void map_rule(const GaussLegendre& ref, int cells, double lo, double hi, std::vector<double>& nodes,
              std::vector<double>& weights) {
  const std::size_t n = ref.nodes.size();
  nodes.resize(n * cells);
  weights.resize(n * cells);
  const double h = (hi - lo) / cells;
  for (int c = 0; c < cells; ++c) {
    const double a = lo + c * h;
    for (std::size_t i = 0; i < n; ++i) {
      nodes[c * n + i] = a + 0.5 * h * (ref.nodes[i] + 1.0);
      weights[c * n + i] = 0.5 * h * ref.weights[i];
    }
  }
}

struct SpatialGrid {
  int dim = 0;
  std::array<std::vector<double>, kMaxDim> nodes;
  std::array<std::vector<double>, kMaxDim> weights;
};

SpatialGrid spatial_grid(const BoxDomain& dom, const QuadratureRule& q) {
  SpatialGrid g;
  g.dim = dom.dim();
  for (int i = 0; i < g.dim; ++i) q.axis_rule(i, dom.lower(i), dom.upper(i), g.nodes[i], g.weights[i]);
  return g;
}

// Visits the spatial tensor points in a fixed (last axis fastest) order.
template <typename Visit>
void for_each_spatial(const SpatialGrid& g, double t, Visit&& visit) {
  const std::size_t n0 = g.nodes[0].size();
  const std::size_t n1 = g.dim > 1 ? g.nodes[1].size() : 1;
  const std::size_t n2 = g.dim > 2 ? g.nodes[2].size() : 1;
  Point p;
  p.t = t;
  for (std::size_t i = 0; i < n0; ++i) {
    p.x[0] = g.nodes[0][i];
    const double w0 = g.weights[0][i];
    for (std::size_t j = 0; j < n1; ++j) {
      double w1 = w0;
      if (g.dim > 1) {
        p.x[1] = g.nodes[1][j];
        w1 *= g.weights[1][j];
      }
      for (std::size_t k = 0; k < n2; ++k) {
        double w = w1;
        if (g.dim > 2) {
          p.x[2] = g.nodes[2][k];
          w *= g.weights[2][k];
        }
        visit(p, w);
      }
    }
  }
}

}  // namespace

void QuadratureRule::axis_rule(int axis, double lo, double hi, std::vector<double>& nodes,
                               std::vector<double>& weights) const {
  map_rule(space_reference_.at(axis), space_cells_.at(axis), lo, hi, nodes, weights);
}

void QuadratureRule::time_rule(double horizon, std::vector<double>& nodes,
                               std::vector<double>& weights) const {
  map_rule(time_reference_, time_cells_, 0.0, horizon, nodes, weights);
}

double integrate(const BoxDomain& dom, const QuadratureRule& q, const Integrand& f) {
  const auto values = integrate_many(dom, q, 1, [&f](const Point& p, std::span<double> out) { out[0] = f(p); });
  return values[0];
}

std::vector<double> integrate_many(const BoxDomain& dom, const QuadratureRule& q, int count,
                                   const MultiIntegrand& f) {
  if (count < 0) throw ContractError("integrate_many: negative count");
  const SpatialGrid grid = spatial_grid(dom, q);
  std::vector<CompensatedSum> sums(count);
  std::vector<double> local(count);
  auto visit = [&](const Point& p, double w) {
    f(p, local);
    for (int c = 0; c < count; ++c) sums[c].add(w * local[c]);
  };
  if (dom.is_parabolic()) {
    std::vector<double> tn, tw;
    q.time_rule(dom.time_horizon(), tn, tw);
    for (std::size_t it = 0; it < tn.size(); ++it) {
      const double wt = tw[it];
      for_each_spatial(grid, tn[it], [&](const Point& p, double w) { visit(p, wt * w); });
    }
  } else {
    for_each_spatial(grid, 0.0, visit);
  }
  std::vector<double> out(count);
  for (int c = 0; c < count; ++c) out[c] = sums[c].value();
  return out;
}

double integrate_slice(const BoxDomain& dom, const QuadratureRule& q, double t, const Integrand& f) {
  const auto values =
      integrate_slice_many(dom, q, t, 1, [&f](const Point& p, std::span<double> out) { out[0] = f(p); });
  return values[0];
}

std::vector<double> integrate_slice_many(const BoxDomain& dom, const QuadratureRule& q, double t,
                                         int count, const MultiIntegrand& f) {
  const SpatialGrid grid = spatial_grid(dom, q);
  std::vector<CompensatedSum> sums(count);
  std::vector<double> local(count);
  for_each_spatial(grid, t, [&](const Point& p, double w) {
    f(p, local);
    for (int c = 0; c < count; ++c) sums[c].add(w * local[c]);
  });
  std::vector<double> out(count);
  for (int c = 0; c < count; ++c) out[c] = sums[c].value();
  return out;
}

}  // namespace funcerr
