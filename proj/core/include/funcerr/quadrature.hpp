#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "funcerr/domain.hpp"

namespace funcerr {

/// Neumaier's variant of Kahan summation. Order of add() calls is the
/// caller's responsibility; identical order gives identical results.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      compensation_ += (sum_ - t) + v;
    else
      compensation_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Compensated sum of a range, left to right.
double compensated_sum(std::span<const double> values);

/// n-point Gauss–Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Tensor Gauss–Legendre rule. Each axis (and the time interval) may be split
/// into equal cells, each carrying a full rule of the given order.
class QuadratureRule {
 public:
  static constexpr int kDefaultOrder = 12;

  QuadratureRule() : QuadratureRule(kDefaultOrder, kDefaultOrder) {}
  QuadratureRule(int space_order, int time_order, int space_cells = 1, int time_cells = 1);
  QuadratureRule(std::array<int, kMaxDim> space_order, int time_order,
                 std::array<int, kMaxDim> space_cells = {1, 1, 1}, int time_cells = 1);

  int space_order(int axis) const { return space_order_.at(axis); }
  int time_order() const { return time_order_; }
  int space_cells(int axis) const { return space_cells_.at(axis); }
  int time_cells() const { return time_cells_; }

  /// Nodes and weights of axis `axis` mapped onto [lo, hi].
  void axis_rule(int axis, double lo, double hi, std::vector<double>& nodes,
                 std::vector<double>& weights) const;
  void time_rule(double horizon, std::vector<double>& nodes, std::vector<double>& weights) const;

 private:
  std::array<int, kMaxDim> space_order_{};
  std::array<int, kMaxDim> space_cells_{};
  int time_order_ = kDefaultOrder;
  int time_cells_ = 1;
  std::array<GaussLegendre, kMaxDim> space_reference_;
  GaussLegendre time_reference_;
};

using Integrand = std::function<double(const Point&)>;
/// Writes several integrand values at a point; see integrate_many().
using MultiIntegrand = std::function<void(const Point&, std::span<double>)>;

/// ∫ over Ω (elliptic domain) or over Ξ = (0,T) × Ω (parabolic domain).
double integrate(const BoxDomain& dom, const QuadratureRule& q, const Integrand& f);

/// Integrates `count` quantities in a single traversal; the callback fills
/// one value per quantity. Each quantity uses its own compensated sum.
std::vector<double> integrate_many(const BoxDomain& dom, const QuadratureRule& q, int count,
                                   const MultiIntegrand& f);

/// ∫ over Ω at fixed time t (spatial rule only).
double integrate_slice(const BoxDomain& dom, const QuadratureRule& q, double t, const Integrand& f);
std::vector<double> integrate_slice_many(const BoxDomain& dom, const QuadratureRule& q, double t,
                                         int count, const MultiIntegrand& f);

}  // namespace funcerr
