#pragma once

// Contract checks shared by the estimator translation units.

#include <algorithm>
#include <cmath>
#include <string>

#include "funcerr/error.hpp"
#include "funcerr/field.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/norms.hpp"

namespace funcerr::detail {

struct ScalarNeeds {
  bool vanishes = false;
  bool grad = false;
  bool laplacian = false;
  bool dt = false;
};

inline void require_scalar(const ScalarField& w, const BoxDomain& dom, ScalarNeeds needs, const std::string& name) {
  if (w.dim() != dom.dim()) throw ContractError(name + ": dimension does not match the domain");
  const auto& c = w.conformity();
  if (needs.grad && !c.has_grad) throw CapabilityError(name + " requires a gradient");
  if (needs.laplacian && !c.has_laplacian) throw CapabilityError(name + " requires a laplacian");
  if (needs.dt && !c.has_dt) throw CapabilityError(name + " requires a time derivative");
  if (needs.vanishes) {
    if (!c.vanishes_on_boundary) throw ContractError(name + " is not declared boundary-vanishing");
    require_vanishing_on_boundary(w, dom, name.c_str());
  }
}

inline void require_vector(const VectorField& w, const BoxDomain& dom, bool div, const std::string& name) {
  if (w.dim() != dom.dim()) throw ContractError(name + ": dimension does not match the domain");
  if (div && !w.conformity().has_div) throw CapabilityError(name + " requires a divergence");
}

inline void require_kind(const mms::ProblemCase& c, mms::ProblemKind kind, const char* op) {
  if (c.kind != kind)
    throw ContractError(std::string(op) + " expects a '" + mms::to_string(kind) + "' case, got '" +
                        mms::to_string(c.kind) + "'");
}

inline void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ContractError("gamma must be positive");
}

}  // namespace funcerr::detail

#include <array>
#include <span>

#include "funcerr/quadrature.hpp"

namespace funcerr::detail {

/// One quadrature traversal producing N integrals.
template <int N, class F>
std::array<double, N> integrals(const BoxDomain& dom, const QuadratureRule& q, F&& fill) {
  const auto v = integrate_many(dom, q, N, [&](const Point& p, std::span<double> out) { fill(p, out); });
  std::array<double, N> a{};
  for (int i = 0; i < N; ++i) a[i] = v[i];
  return a;
}

template <int N, class F>
std::array<double, N> slice_integrals(const BoxDomain& dom, const QuadratureRule& q, double t, F&& fill) {
  const auto v = integrate_slice_many(dom, q, t, N, [&](const Point& p, std::span<double> out) { fill(p, out); });
  std::array<double, N> a{};
  for (int i = 0; i < N; ++i) a[i] = v[i];
  return a;
}

inline double sq(double v) { return v * v; }
inline double sq(const Vec& v) { return norm_sq(v); }

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-14});
}

}  // namespace funcerr::detail
