#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "funcerr/domain.hpp"

namespace funcerr {

/// Capabilities and conformity advertised by a scalar field.
struct Conformity {
  bool vanishes_on_boundary = false;
  bool has_grad = false;
  bool has_laplacian = false;
  bool has_dt = false;
};

/// Capabilities advertised by a vector field.
struct VectorConformity {
  bool has_div = false;
  bool has_dt = false;
};

/// Immutable analytic scalar field with caller-supplied derivatives.
///
/// Copies share the underlying evaluators. A derivative that was not
/// supplied is reported as absent in conformity() and throws
/// CapabilityError when called.
class ScalarField {
 public:
  using ValueFn = std::function<double(const Point&)>;
  using VectorFn = std::function<Vec(const Point&)>;

  struct Parts {
    ValueFn value;
    VectorFn grad;
    ValueFn laplacian;
    ValueFn dt;
  };

  /// `vanishes_on_boundary` is a claim; estimators spot-check it on their domain.
  ScalarField(int dim, Parts parts, bool vanishes_on_boundary = false, bool time_dependent = false);

  /// The zero field with every capability.
  static ScalarField zero(int dim);
  static ScalarField constant(int dim, double value);

  int dim() const;
  bool time_dependent() const;
  const Conformity& conformity() const;

  double operator()(const Point& p) const;
  Vec grad(const Point& p) const;
  double laplacian(const Point& p) const;
  double dt(const Point& p) const;

  /// Drops every capability not set in `keep`. The boundary flag is kept
  /// only if both this field and `keep` carry it.
  ScalarField restricted(const Conformity& keep) const;

  /// Same evaluators, boundary claim replaced.
  ScalarField with_boundary_claim(bool vanishes) const;

 private:
  struct Impl;
  explicit ScalarField(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;

  friend ScalarField operator+(const ScalarField&, const ScalarField&);
  friend ScalarField operator-(const ScalarField&, const ScalarField&);
  friend ScalarField operator*(double, const ScalarField&);
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
inline ScalarField operator-(const ScalarField& a) { return -1.0 * a; }

/// Immutable analytic vector field; see ScalarField.
class VectorField {
 public:
  using ValueFn = std::function<double(const Point&)>;
  using VectorFn = std::function<Vec(const Point&)>;

  struct Parts {
    VectorFn value;
    ValueFn div;
    VectorFn dt;
  };

  VectorField(int dim, Parts parts, bool time_dependent = false);

  static VectorField zero(int dim);
  /// Constant field c·e_axis.
  static VectorField constant(int dim, const Vec& value);

  int dim() const;
  bool time_dependent() const;
  const VectorConformity& conformity() const;

  Vec operator()(const Point& p) const;
  double div(const Point& p) const;
  Vec dt(const Point& p) const;

  VectorField restricted(const VectorConformity& keep) const;

 private:
  struct Impl;
  explicit VectorField(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;

  friend VectorField operator+(const VectorField&, const VectorField&);
  friend VectorField operator-(const VectorField&, const VectorField&);
  friend VectorField operator*(double, const VectorField&);
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);
inline VectorField operator-(const VectorField& a) { return -1.0 * a; }

/// ∇w as a vector field; its divergence is Δw when w has a laplacian.
VectorField gradient_of(const ScalarField& w);
/// div ψ as a value-only scalar field.
ScalarField divergence_of(const VectorField& psi);
/// Δw as a value-only scalar field.
ScalarField laplacian_of(const ScalarField& w);
/// ∂t w as a value-only scalar field.
ScalarField time_derivative_of(const ScalarField& w);
/// ∂t ψ as a value-only vector field.
VectorField time_derivative_of(const VectorField& psi);

/// Either rank, for rank-generic entry points.
using AnyField = std::variant<ScalarField, VectorField>;

}  // namespace funcerr
