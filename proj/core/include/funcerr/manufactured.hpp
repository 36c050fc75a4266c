#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "funcerr/domain.hpp"
#include "funcerr/field.hpp"

namespace funcerr::mms {

/// One-dimensional factor in the reference coordinate x̂ = (x − lower)/length.
struct AxisFactor {
  enum class Kind { Sin, Cos, Bubble, Monomial, One };
  Kind kind = Kind::One;
  int mode = 1;   ///< k in sin(kπx̂) / cos(kπx̂)
  int power = 1;  ///< m in x̂^m(1 − x̂)^m / x̂^m

  static AxisFactor sin(int k) { return {Kind::Sin, k, 1}; }
  static AxisFactor cos(int k) { return {Kind::Cos, k, 1}; }
  static AxisFactor bubble(int m) { return {Kind::Bubble, 1, m}; }
  static AxisFactor monomial(int m) { return {Kind::Monomial, 1, m}; }
  static AxisFactor one() { return {}; }

  /// True when the factor is zero at both ends of its axis.
  bool vanishes_at_both_ends() const;
};

const char* to_string(AxisFactor::Kind kind);
AxisFactor::Kind axis_kind_from_string(const std::string& name);

/// t^power · exp(rate·t).
struct TimeFactor {
  int power = 0;
  double rate = 0.0;
  bool trivial() const { return power == 0 && rate == 0.0; }
};

struct SeparableTerm {
  double coeff = 1.0;
  TimeFactor time;
  std::vector<AxisFactor> factors;  ///< one per spatial axis
};

/// Finite sum of separable terms c·T(t)·Π X_i(x̂_i) on a fixed box.
///
/// Every derivative is exact, so estimator residuals are pure quadrature
/// error.
class SeparableSum {
 public:
  explicit SeparableSum(BoxDomain dom, std::vector<SeparableTerm> terms = {});

  const BoxDomain& domain() const { return dom_; }
  const std::vector<SeparableTerm>& terms() const { return terms_; }
  bool time_dependent() const;
  /// Every term carries a factor vanishing at both ends of some axis.
  bool vanishes_on_boundary() const;

  double value(const Point& p) const;
  Vec grad(const Point& p) const;
  double laplacian(const Point& p) const;
  double dt(const Point& p) const;
  Vec grad_dt(const Point& p) const;

  SeparableSum scaled(double s) const;
  SeparableSum operator+(const SeparableSum& other) const;

  /// Scalar field with gradient, laplacian and (if time dependent) dt.
  ScalarField field() const;
  /// ∇ of this sum; div = Δ, dt = ∇∂t.
  VectorField gradient_field() const;
  /// (−∂₂h, ∂₁h, 0) with zero divergence; requires dim ≥ 2.
  VectorField rotated_gradient_field() const;

 private:
  BoxDomain dom_;
  std::vector<SeparableTerm> terms_;
};

SeparableSum sine_mode(const BoxDomain& dom, const std::vector<int>& modes, double coeff = 1.0,
                       TimeFactor time = {});
SeparableSum cosine_mode(const BoxDomain& dom, const std::vector<int>& modes, double coeff = 1.0,
                         TimeFactor time = {});

/// Vector field whose i-th component is components[i]; div = Σ ∂ᵢ(component i).
VectorField vector_field(const std::vector<SeparableSum>& components);

/// Positive multi-indices in `dim` variables ordered by total degree, then
/// lexicographically; the first `count` of them.
std::vector<std::vector<int>> multi_indices(int dim, int count);

enum class ProblemKind { ReactionDiffusion, Poisson, TimeReactionDiffusion, Heat };

const char* to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);
bool is_parabolic(ProblemKind kind);

struct ProblemCase {
  ProblemKind kind;
  BoxDomain domain;
  ScalarField source;                  ///< f
  std::optional<ScalarField> initial;  ///< u0 (parabolic kinds)
  ScalarField exact_u;
  VectorField exact_p;                 ///< ∇u
  std::string label;
};

/// Applies the kind's operator to u. Requires a boundary-vanishing u with a
/// laplacian (and dt for parabolic kinds).
ProblemCase make_case(ProblemKind kind, const BoxDomain& dom, const ScalarField& u, std::string label = {});
ProblemCase make_case(ProblemKind kind, const SeparableSum& u, std::string label = {});

/// Same case with f replaced by factor·f (defect injection).
ProblemCase corrupt_source(const ProblemCase& c, double factor);

struct CaseResidual {
  double flux = 0.0;     ///< max |p − ∇u|
  double source = 0.0;   ///< max |f − L u| / max(1, |f|)
  double initial = 0.0;  ///< max |u0 − u(0,·)|
};

/// Pointwise check of the case invariants at random interior points.
CaseResidual validate_case(const ProblemCase& c, int samples = 1000, std::uint64_t seed = 1);

enum class ConformityLevel {
  VeryConforming,
  ConformingMixed,
  SemiConformingPrimal,
  SemiConformingDual,
  NonConforming,
};

const char* to_string(ConformityLevel level);
ConformityLevel conformity_level_from_string(const std::string& name);

struct ApproxPair {
  ScalarField u_tilde;
  VectorField p_tilde;
  ConformityLevel level;
};

/// Seeded analytic perturbation (u, p) + ε(δu, δp) honouring `level`.
///
/// δu is a unit-L² combination of sin modes {1,2} per axis (times 1 + bt on
/// parabolic cases); non-conforming levels add a cos(πx̂₁) component. δp is
/// ∇h plus, for d ≥ 2, a rotated gradient. Capabilities the level does not
/// grant are stripped.
ApproxPair perturb(const ProblemCase& c, ConformityLevel level, double epsilon, std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine draw.
double unit_uniform(std::uint64_t bits);

struct FreeFieldStrategy {
  enum class Kind { Exact, Coarse, Basis, Zero };
  Kind kind = Kind::Exact;
  int index = 0;    ///< basis member for Kind::Basis
  double scale = 0.9;  ///< multiplier for Kind::Coarse

  static FreeFieldStrategy exact() { return {Kind::Exact, 0, 1.0}; }
  static FreeFieldStrategy coarse(double s = 0.9) { return {Kind::Coarse, 0, s}; }
  static FreeFieldStrategy basis(int k) { return {Kind::Basis, k, 1.0}; }
  static FreeFieldStrategy zero() { return {Kind::Zero, 0, 0.0}; }
};

struct FreeFields {
  ScalarField phi;     ///< boundary-vanishing potential
  VectorField flux;    ///< div-conforming flux
};

FreeFields free_fields(const ProblemCase& c, const FreeFieldStrategy& strategy);

/// Component i of member (k, i): cos(kᵢπx̂ᵢ)·Π_{j≠i} sin(kⱼπx̂ⱼ) eᵢ. Members
/// run over multi_indices() with the component index fastest.
class TrigFluxFamily {
 public:
  explicit TrigFluxFamily(BoxDomain dom) : dom_(std::move(dom)) {}
  VectorField member(int index) const;
  std::vector<VectorField> first(int count) const;

 private:
  BoxDomain dom_;
};

}  // namespace funcerr::mms
