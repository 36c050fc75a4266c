#include "funcerr/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "funcerr/error.hpp"

namespace funcerr {

namespace {

void check_dims(int field_dim, const BoxDomain& dom) {
  if (field_dim != dom.dim())
    throw ContractError("field dimension " + std::to_string(field_dim) + " does not match domain dimension " +
                        std::to_string(dom.dim()));
}

void check_time(bool time_dependent, const BoxDomain& dom) {
  if (time_dependent && !dom.is_parabolic())
    throw DomainError("space-time integrand on a domain without time horizon");
}

void check_field(const ScalarField& w, const BoxDomain& dom) {
  check_dims(w.dim(), dom);
  check_time(w.time_dependent(), dom);
}

void check_field(const VectorField& w, const BoxDomain& dom) {
  check_dims(w.dim(), dom);
  check_time(w.time_dependent(), dom);
}

void require(bool present, const char* what, NormKind kind) {
  if (!present)
    throw CapabilityError(std::string("norm ") + to_string(kind) + " requires " + what);
}

void require_parabolic(const BoxDomain& dom, const char* what) {
  if (!dom.is_parabolic()) throw DomainError(std::string(what) + " requires a parabolic domain");
}

double slice_time(const BoxDomain& dom, TimeSlice at) {
  require_parabolic(dom, "trace");
  return at == TimeSlice::Initial ? 0.0 : dom.time_horizon();
}

}  // namespace

const char* to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L2: return "L2";
    case NormKind::H1: return "H1";
    case NormKind::Hdiv: return "Hdiv";
    case NormKind::V: return "V";
    case NormKind::H11: return "H11";
    case NormKind::WStar: return "WStar";
    case NormKind::Triple: return "Triple";
  }
  return "?";
}

IdentityResidual make_identity_residual(double left, double right) {
  IdentityResidual r;
  r.left = left;
  r.right = right;
  r.absolute = std::abs(left - right);
  r.relative = r.absolute / std::max({std::abs(left), std::abs(right), kResidualFloor});
  return r;
}

double l2_inner(const ScalarField& a, const ScalarField& b, const BoxDomain& dom, const QuadratureRule& q) {
  check_field(a, dom);
  check_field(b, dom);
  return integrate(dom, q, [&](const Point& p) { return a(p) * b(p); });
}

double l2_inner(const VectorField& a, const VectorField& b, const BoxDomain& dom, const QuadratureRule& q) {
  check_field(a, dom);
  check_field(b, dom);
  return integrate(dom, q, [&](const Point& p) { return dot(a(p), b(p)); });
}

double l2_inner(const AnyField& a, const AnyField& b, const BoxDomain& dom, const QuadratureRule& q) {
  if (a.index() != b.index()) throw ContractError("l2_inner: rank mismatch between scalar and vector field");
  if (const auto* sa = std::get_if<ScalarField>(&a)) return l2_inner(*sa, std::get<ScalarField>(b), dom, q);
  return l2_inner(std::get<VectorField>(a), std::get<VectorField>(b), dom, q);
}

double norm_sq(NormKind kind, const ScalarField& w, const BoxDomain& dom, const QuadratureRule& q) {
  check_field(w, dom);
  const Conformity& c = w.conformity();
  switch (kind) {
    case NormKind::L2:
      return integrate(dom, q, [&](const Point& p) { return w(p) * w(p); });
    case NormKind::H1:
      require(c.has_grad, "a gradient", kind);
      return norm_sq(NormKind::L2, w, dom, q) + norm_sq(NormKind::L2, gradient_of(w), dom, q);
    case NormKind::V:
      require(c.has_grad && c.has_laplacian, "a gradient and a laplacian", kind);
      return norm_sq(NormKind::L2, w, dom, q) + 2.0 * norm_sq(NormKind::L2, gradient_of(w), dom, q) +
             norm_sq(NormKind::L2, laplacian_of(w), dom, q);
    case NormKind::H11:
      require_parabolic(dom, "H11 norm");
      require(c.has_grad && c.has_dt, "a gradient and a time derivative", kind);
      return norm_sq(NormKind::H1, w, dom, q) + norm_sq(NormKind::L2, time_derivative_of(w), dom, q);
    case NormKind::WStar:
      require_parabolic(dom, "W* norm");
      require(c.has_grad && c.has_dt && c.has_laplacian, "gradient, laplacian and time derivative", kind);
      return norm_sq(NormKind::H11, w, dom, q) + norm_sq(NormKind::Hdiv, gradient_of(w), dom, q) +
             trace_norm_sq(w, TimeSlice::Terminal, TraceVariant::H1, dom, q);
    case NormKind::Triple:
      require_parabolic(dom, "triple norm");
      require(c.has_grad && c.has_dt && c.has_laplacian, "gradient, laplacian and time derivative", kind);
      return norm_sq(NormKind::L2, time_derivative_of(w), dom, q) +
             norm_sq(NormKind::L2, laplacian_of(w), dom, q) +
             trace_norm_sq(w, TimeSlice::Terminal, TraceVariant::Gradient, dom, q);
    case NormKind::Hdiv:
      break;
  }
  throw ContractError(std::string("norm ") + to_string(kind) + " does not apply to scalar fields");
}

double norm_sq(NormKind kind, const VectorField& w, const BoxDomain& dom, const QuadratureRule& q) {
  check_field(w, dom);
  switch (kind) {
    case NormKind::L2:
      return integrate(dom, q, [&](const Point& p) { return funcerr::norm_sq(w(p)); });
    case NormKind::Hdiv:
      require(w.conformity().has_div, "a divergence", kind);
      return norm_sq(NormKind::L2, w, dom, q) + norm_sq(NormKind::L2, divergence_of(w), dom, q);
    default:
      break;
  }
  throw ContractError(std::string("norm ") + to_string(kind) + " does not apply to vector fields");
}

double trace_norm_sq(const ScalarField& w, TimeSlice at, TraceVariant variant, const BoxDomain& dom,
                     const QuadratureRule& q) {
  check_dims(w.dim(), dom);
  const double t = slice_time(dom, at);
  if (variant != TraceVariant::Value && !w.conformity().has_grad)
    throw CapabilityError("gradient trace requires a gradient");
  switch (variant) {
    case TraceVariant::Value:
      return integrate_slice(dom, q, t, [&](const Point& p) { return w(p) * w(p); });
    case TraceVariant::Gradient:
      return integrate_slice(dom, q, t, [&](const Point& p) { return funcerr::norm_sq(w.grad(p)); });
    case TraceVariant::H1:
      return trace_norm_sq(w, at, TraceVariant::Value, dom, q) + trace_norm_sq(w, at, TraceVariant::Gradient, dom, q);
  }
  return 0.0;
}

double trace_norm_sq(const VectorField& w, TimeSlice at, const BoxDomain& dom, const QuadratureRule& q) {
  check_dims(w.dim(), dom);
  const double t = slice_time(dom, at);
  return integrate_slice(dom, q, t, [&](const Point& p) { return funcerr::norm_sq(w(p)); });
}

IdentityResidual timecross_check(const ScalarField& w, const BoxDomain& dom, const QuadratureRule& q) {
  require_parabolic(dom, "timecross_check");
  check_field(w, dom);
  if (!w.conformity().has_dt) throw CapabilityError("timecross_check requires a time derivative");
  const double left = 2.0 * integrate(dom, q, [&](const Point& p) { return w.dt(p) * w(p); });
  const double right = trace_norm_sq(w, TimeSlice::Terminal, TraceVariant::Value, dom, q) -
                       trace_norm_sq(w, TimeSlice::Initial, TraceVariant::Value, dom, q);
  return make_identity_residual(left, right);
}

IdentityResidual timecross_check(const VectorField& w, const BoxDomain& dom, const QuadratureRule& q) {
  require_parabolic(dom, "timecross_check");
  check_field(w, dom);
  if (!w.conformity().has_dt) throw CapabilityError("timecross_check requires a time derivative");
  const double left = 2.0 * integrate(dom, q, [&](const Point& p) { return dot(w.dt(p), w(p)); });
  const double right = trace_norm_sq(w, TimeSlice::Terminal, dom, q) - trace_norm_sq(w, TimeSlice::Initial, dom, q);
  return make_identity_residual(left, right);
}

IdentityResidual partint_residual(const ScalarField& u, const VectorField& psi, const BoxDomain& dom,
                                  const QuadratureRule& q) {
  check_field(u, dom);
  check_field(psi, dom);
  if (!u.conformity().vanishes_on_boundary)
    throw ContractError("partint_residual: u must vanish on the boundary");
  if (!u.conformity().has_grad) throw CapabilityError("partint_residual: u requires a gradient");
  if (!psi.conformity().has_div) throw CapabilityError("partint_residual: psi requires a divergence");
  const auto v = integrate_many(dom, q, 2, [&](const Point& p, std::span<double> out) {
    out[0] = dot(u.grad(p), psi(p));
    out[1] = u(p) * psi.div(p);
  });
  return make_identity_residual(v[0], -v[1]);
}

double friedrichs_margin(const ScalarField& w, double friedrichs_constant, const BoxDomain& dom,
                         const QuadratureRule& q) {
  return friedrichs_constant * std::sqrt(norm_sq(NormKind::L2, gradient_of(w), dom, q)) -
         std::sqrt(norm_sq(NormKind::L2, w, dom, q));
}

double boundary_sup(const ScalarField& w, const BoxDomain& dom, int samples_per_axis) {
  check_dims(w.dim(), dom);
  const int n = std::max(samples_per_axis, 2);
  const int d = dom.dim();
  const int nt = dom.is_parabolic() ? n : 1;
  double sup = 0.0;
  Point p;
  for (int it = 0; it < nt; ++it) {
    p.t = dom.is_parabolic() ? dom.time_horizon() * it / (nt - 1) : 0.0;
    for (int face_axis = 0; face_axis < d; ++face_axis) {
      for (int side = 0; side < 2; ++side) {
        // Remaining axes sweep an n^(d-1) grid including the face corners.
        int total = 1;
        for (int i = 0; i < d - 1; ++i) total *= n;
        for (int idx = 0; idx < total; ++idx) {
          int rest = idx;
          for (int a = 0; a < d; ++a) {
            if (a == face_axis) {
              p.x[a] = side == 0 ? dom.lower(a) : dom.upper(a);
            } else {
              const int k = rest % n;
              rest /= n;
              p.x[a] = dom.lower(a) + dom.length(a) * k / (n - 1);
            }
          }
          sup = std::max(sup, std::abs(w(p)));
        }
      }
    }
  }
  return sup;
}

void require_vanishing_on_boundary(const ScalarField& w, const BoxDomain& dom, const char* what) {
  // Relative to an interior scale so that large fields get proportionate slack.
  double scale = 1.0;
  Point c;
  c.t = dom.is_parabolic() ? 0.5 * dom.time_horizon() : 0.0;
  for (int a = 0; a < dom.dim(); ++a) c.x[a] = dom.lower(a) + 0.37 * dom.length(a);
  scale = std::max(scale, std::abs(w(c)));
  const double sup = boundary_sup(w, dom);
  if (!(sup <= 1e-10 * scale))
    throw ContractError(std::string(what) + " does not vanish on the boundary (max |value| = " +
                        std::to_string(sup) + ")");
}

}  // namespace funcerr
