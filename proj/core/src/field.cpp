#include "funcerr/field.hpp"

#include <string>
#include <utility>

#include "funcerr/error.hpp"

namespace funcerr {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw DomainError("field dimension must be 1, 2 or 3");
}

void check_same_dim(int a, int b) {
  if (a != b)
    throw ContractError("field dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

[[noreturn]] void missing(const char* what) {
  throw CapabilityError(std::string("field does not provide ") + what);
}

}  // namespace

// ---------------------------------------------------------------------------
// ScalarField

struct ScalarField::Impl {
  int dim;
  Parts parts;
  Conformity conformity;
  bool time_dependent;
};

ScalarField::ScalarField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

ScalarField::ScalarField(int dim, Parts parts, bool vanishes_on_boundary, bool time_dependent) {
  check_dim(dim);
  if (!parts.value) throw ContractError("scalar field requires a value evaluator");
  Conformity c;
  c.vanishes_on_boundary = vanishes_on_boundary;
  c.has_grad = static_cast<bool>(parts.grad);
  c.has_laplacian = static_cast<bool>(parts.laplacian);
  c.has_dt = static_cast<bool>(parts.dt);
  impl_ = std::make_shared<const Impl>(Impl{dim, std::move(parts), c, time_dependent});
}

ScalarField ScalarField::zero(int dim) { return constant(dim, 0.0).with_boundary_claim(true); }

ScalarField ScalarField::constant(int dim, double value) {
  Parts parts;
  parts.value = [value](const Point&) { return value; };
  parts.grad = [](const Point&) { return Vec{}; };
  parts.laplacian = [](const Point&) { return 0.0; };
  parts.dt = [](const Point&) { return 0.0; };
  return ScalarField(dim, std::move(parts), value == 0.0, false);
}

int ScalarField::dim() const { return impl_->dim; }
bool ScalarField::time_dependent() const { return impl_->time_dependent; }
const Conformity& ScalarField::conformity() const { return impl_->conformity; }

double ScalarField::operator()(const Point& p) const { return impl_->parts.value(p); }

Vec ScalarField::grad(const Point& p) const {
  if (!impl_->parts.grad) missing("a gradient");
  return impl_->parts.grad(p);
}

double ScalarField::laplacian(const Point& p) const {
  if (!impl_->parts.laplacian) missing("a laplacian");
  return impl_->parts.laplacian(p);
}

double ScalarField::dt(const Point& p) const {
  if (!impl_->parts.dt) missing("a time derivative");
  return impl_->parts.dt(p);
}

ScalarField ScalarField::restricted(const Conformity& keep) const {
  Parts parts = impl_->parts;
  if (!keep.has_grad) parts.grad = nullptr;
  if (!keep.has_laplacian) parts.laplacian = nullptr;
  if (!keep.has_dt) parts.dt = nullptr;
  return ScalarField(impl_->dim, std::move(parts),
                     keep.vanishes_on_boundary && impl_->conformity.vanishes_on_boundary,
                     impl_->time_dependent);
}

ScalarField ScalarField::with_boundary_claim(bool vanishes) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->conformity.vanishes_on_boundary = vanishes;
  return ScalarField(std::shared_ptr<const Impl>(std::move(impl)));
}

namespace {

// Linear combination alpha·a + beta·b; capabilities are intersected.
ScalarField combine(const ScalarField& a, double alpha, const ScalarField& b, double beta) {
  check_same_dim(a.dim(), b.dim());
  const Conformity& ca = a.conformity();
  const Conformity& cb = b.conformity();
  ScalarField::Parts parts;
  parts.value = [a, b, alpha, beta](const Point& p) { return alpha * a(p) + beta * b(p); };
  if (ca.has_grad && cb.has_grad)
    parts.grad = [a, b, alpha, beta](const Point& p) { return alpha * a.grad(p) + beta * b.grad(p); };
  if (ca.has_laplacian && cb.has_laplacian)
    parts.laplacian = [a, b, alpha, beta](const Point& p) {
      return alpha * a.laplacian(p) + beta * b.laplacian(p);
    };
  if (ca.has_dt && cb.has_dt)
    parts.dt = [a, b, alpha, beta](const Point& p) { return alpha * a.dt(p) + beta * b.dt(p); };
  return ScalarField(a.dim(), std::move(parts), ca.vanishes_on_boundary && cb.vanishes_on_boundary,
                     a.time_dependent() || b.time_dependent());
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) { return combine(a, 1.0, b, 1.0); }
ScalarField operator-(const ScalarField& a, const ScalarField& b) { return combine(a, 1.0, b, -1.0); }

ScalarField operator*(double s, const ScalarField& a) {
  const Conformity& c = a.conformity();
  ScalarField::Parts parts;
  parts.value = [a, s](const Point& p) { return s * a(p); };
  if (c.has_grad) parts.grad = [a, s](const Point& p) { return s * a.grad(p); };
  if (c.has_laplacian) parts.laplacian = [a, s](const Point& p) { return s * a.laplacian(p); };
  if (c.has_dt) parts.dt = [a, s](const Point& p) { return s * a.dt(p); };
  return ScalarField(a.dim(), std::move(parts), c.vanishes_on_boundary, a.time_dependent());
}

// ---------------------------------------------------------------------------
// VectorField

struct VectorField::Impl {
  int dim;
  Parts parts;
  VectorConformity conformity;
  bool time_dependent;
};

VectorField::VectorField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

VectorField::VectorField(int dim, Parts parts, bool time_dependent) {
  check_dim(dim);
  if (!parts.value) throw ContractError("vector field requires a value evaluator");
  VectorConformity c;
  c.has_div = static_cast<bool>(parts.div);
  c.has_dt = static_cast<bool>(parts.dt);
  impl_ = std::make_shared<const Impl>(Impl{dim, std::move(parts), c, time_dependent});
}

VectorField VectorField::zero(int dim) { return constant(dim, Vec{}); }

VectorField VectorField::constant(int dim, const Vec& value) {
  check_dim(dim);
  Vec v{};
  for (int i = 0; i < dim; ++i) v[i] = value[i];
  Parts parts;
  parts.value = [v](const Point&) { return v; };
  parts.div = [](const Point&) { return 0.0; };
  parts.dt = [](const Point&) { return Vec{}; };
  return VectorField(dim, std::move(parts), false);
}

int VectorField::dim() const { return impl_->dim; }
bool VectorField::time_dependent() const { return impl_->time_dependent; }
const VectorConformity& VectorField::conformity() const { return impl_->conformity; }

Vec VectorField::operator()(const Point& p) const { return impl_->parts.value(p); }

double VectorField::div(const Point& p) const {
  if (!impl_->parts.div) missing("a divergence");
  return impl_->parts.div(p);
}

Vec VectorField::dt(const Point& p) const {
  if (!impl_->parts.dt) missing("a time derivative");
  return impl_->parts.dt(p);
}

VectorField VectorField::restricted(const VectorConformity& keep) const {
  Parts parts = impl_->parts;
  if (!keep.has_div) parts.div = nullptr;
  if (!keep.has_dt) parts.dt = nullptr;
  return VectorField(impl_->dim, std::move(parts), impl_->time_dependent);
}

namespace {

VectorField combine(const VectorField& a, double alpha, const VectorField& b, double beta) {
  check_same_dim(a.dim(), b.dim());
  const VectorConformity& ca = a.conformity();
  const VectorConformity& cb = b.conformity();
  VectorField::Parts parts;
  parts.value = [a, b, alpha, beta](const Point& p) { return alpha * a(p) + beta * b(p); };
  if (ca.has_div && cb.has_div)
    parts.div = [a, b, alpha, beta](const Point& p) { return alpha * a.div(p) + beta * b.div(p); };
  if (ca.has_dt && cb.has_dt)
    parts.dt = [a, b, alpha, beta](const Point& p) { return alpha * a.dt(p) + beta * b.dt(p); };
  return VectorField(a.dim(), std::move(parts), a.time_dependent() || b.time_dependent());
}

}  // namespace

VectorField operator+(const VectorField& a, const VectorField& b) { return combine(a, 1.0, b, 1.0); }
VectorField operator-(const VectorField& a, const VectorField& b) { return combine(a, 1.0, b, -1.0); }

VectorField operator*(double s, const VectorField& a) {
  const VectorConformity& c = a.conformity();
  VectorField::Parts parts;
  parts.value = [a, s](const Point& p) { return s * a(p); };
  if (c.has_div) parts.div = [a, s](const Point& p) { return s * a.div(p); };
  if (c.has_dt) parts.dt = [a, s](const Point& p) { return s * a.dt(p); };
  return VectorField(a.dim(), std::move(parts), a.time_dependent());
}

// ---------------------------------------------------------------------------
// Derived fields

VectorField gradient_of(const ScalarField& w) {
  if (!w.conformity().has_grad) missing("a gradient");
  VectorField::Parts parts;
  parts.value = [w](const Point& p) { return w.grad(p); };
  if (w.conformity().has_laplacian) parts.div = [w](const Point& p) { return w.laplacian(p); };
  return VectorField(w.dim(), std::move(parts), w.time_dependent());
}

ScalarField divergence_of(const VectorField& psi) {
  if (!psi.conformity().has_div) missing("a divergence");
  ScalarField::Parts parts;
  parts.value = [psi](const Point& p) { return psi.div(p); };
  return ScalarField(psi.dim(), std::move(parts), false, psi.time_dependent());
}

ScalarField laplacian_of(const ScalarField& w) {
  if (!w.conformity().has_laplacian) missing("a laplacian");
  ScalarField::Parts parts;
  parts.value = [w](const Point& p) { return w.laplacian(p); };
  return ScalarField(w.dim(), std::move(parts), false, w.time_dependent());
}

ScalarField time_derivative_of(const ScalarField& w) {
  if (!w.conformity().has_dt) missing("a time derivative");
  ScalarField::Parts parts;
  parts.value = [w](const Point& p) { return w.dt(p); };
  return ScalarField(w.dim(), std::move(parts), false, w.time_dependent());
}

VectorField time_derivative_of(const VectorField& psi) {
  if (!psi.conformity().has_dt) missing("a time derivative");
  VectorField::Parts parts;
  parts.value = [psi](const Point& p) { return psi.dt(p); };
  return VectorField(psi.dim(), std::move(parts), psi.time_dependent());
}

}  // namespace funcerr
