#include "funcerr/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "funcerr/error.hpp"
#include "funcerr/norms.hpp"

namespace funcerr::mms {

namespace {

constexpr double kPi = std::numbers::pi;

struct AxisEval {
  double v, d1, d2;
};

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Value and first two physical derivatives of one factor.
AxisEval eval_axis(const AxisFactor& f, double x, double lo, double len) {
  const double xh = (x - lo) / len;
  switch (f.kind) {
    case AxisFactor::Kind::Sin: {
      const double s = f.mode * kPi / len;
      const double sn = std::sin(f.mode * kPi * xh), cs = std::cos(f.mode * kPi * xh);
      return {sn, s * cs, -s * s * sn};
    }
    case AxisFactor::Kind::Cos: {
      const double s = f.mode * kPi / len;
      const double sn = std::sin(f.mode * kPi * xh), cs = std::cos(f.mode * kPi * xh);
      return {cs, -s * sn, -s * s * cs};
    }
    case AxisFactor::Kind::Bubble: {
      const int m = f.power;
      const double a = xh, b = 1.0 - xh;
      const double v = ipow(a, m) * ipow(b, m);
      const double d1 = m * (ipow(a, m - 1) * ipow(b, m) - ipow(a, m) * ipow(b, m - 1));
      double d2 = -2.0 * m * m * ipow(a, m - 1) * ipow(b, m - 1);
      if (m >= 2) d2 += m * (m - 1) * (ipow(a, m - 2) * ipow(b, m) + ipow(a, m) * ipow(b, m - 2));
      return {v, d1 / len, d2 / (len * len)};
    }
    case AxisFactor::Kind::Monomial: {
      const int m = f.power;
      const double d1 = m >= 1 ? m * ipow(xh, m - 1) : 0.0;
      const double d2 = m >= 2 ? m * (m - 1) * ipow(xh, m - 2) : 0.0;
      return {ipow(xh, m), d1 / len, d2 / (len * len)};
    }
    case AxisFactor::Kind::One:
      break;
  }
  return {1.0, 0.0, 0.0};
}

std::pair<double, double> eval_time(const TimeFactor& tf, double t) {
  const double e = tf.rate == 0.0 ? 1.0 : std::exp(tf.rate * t);
  const double tp = ipow(t, tf.power);
  double d = tf.rate * tp * e;
  if (tf.power >= 1) d += tf.power * ipow(t, tf.power - 1) * e;
  return {tp * e, d};
}

// Per-term spatial data at a point: Π v, ∇(Π v), Δ(Π v).
struct SpatialEval {
  double value = 1.0;
  Vec grad{};
  double lap = 0.0;
};

SpatialEval eval_spatial(const SeparableTerm& term, const BoxDomain& dom, const Vec& x) {
  const int d = dom.dim();
  std::array<AxisEval, kMaxDim> ax{};
  for (int i = 0; i < d; ++i) ax[i] = eval_axis(term.factors[i], x[i], dom.lower(i), dom.length(i));
  SpatialEval s;
  for (int i = 0; i < d; ++i) s.value *= ax[i].v;
  for (int i = 0; i < d; ++i) {
    double others = 1.0;
    for (int j = 0; j < d; ++j)
      if (j != i) others *= ax[j].v;
    s.grad[i] = ax[i].d1 * others;
    s.lap += ax[i].d2 * others;
  }
  return s;
}

void check_terms(const BoxDomain& dom, const std::vector<SeparableTerm>& terms) {
  for (const auto& t : terms) {
    if (static_cast<int>(t.factors.size()) != dom.dim())
      throw ContractError("separable term needs one factor per spatial axis");
    if (!dom.is_parabolic() && !t.time.trivial())
      throw DomainError("time-dependent term on a domain without time horizon");
    if (t.time.power < 0) throw ContractError("time power must be non-negative");
    for (const auto& f : t.factors) {
      if ((f.kind == AxisFactor::Kind::Sin || f.kind == AxisFactor::Kind::Cos) && f.mode < 0)
        throw ContractError("trigonometric mode must be non-negative");
      if ((f.kind == AxisFactor::Kind::Bubble && f.power < 1) ||
          (f.kind == AxisFactor::Kind::Monomial && f.power < 0))
        throw ContractError("invalid polynomial power");
    }
  }
}

}  // namespace

bool AxisFactor::vanishes_at_both_ends() const {
  return (kind == Kind::Sin && mode >= 1) || kind == Kind::Bubble;
}

const char* to_string(AxisFactor::Kind kind) {
  switch (kind) {
    case AxisFactor::Kind::Sin: return "sin";
    case AxisFactor::Kind::Cos: return "cos";
    case AxisFactor::Kind::Bubble: return "bubble";
    case AxisFactor::Kind::Monomial: return "monomial";
    case AxisFactor::Kind::One: return "one";
  }
  return "?";
}

AxisFactor::Kind axis_kind_from_string(const std::string& name) {
  for (auto k : {AxisFactor::Kind::Sin, AxisFactor::Kind::Cos, AxisFactor::Kind::Bubble, AxisFactor::Kind::Monomial,
                 AxisFactor::Kind::One})
    if (name == to_string(k)) return k;
  throw ContractError("unknown factor type '" + name + "'");
}

// ---------------------------------------------------------------------------
// SeparableSum

SeparableSum::SeparableSum(BoxDomain dom, std::vector<SeparableTerm> terms)
    : dom_(std::move(dom)), terms_(std::move(terms)) {
  check_terms(dom_, terms_);
}

bool SeparableSum::time_dependent() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const SeparableTerm& t) { return !t.time.trivial(); });
}

bool SeparableSum::vanishes_on_boundary() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const SeparableTerm& t) {
    return t.coeff == 0.0 || std::any_of(t.factors.begin(), t.factors.end(),
                                         [](const AxisFactor& f) { return f.vanishes_at_both_ends(); });
  });
}

double SeparableSum::value(const Point& p) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    const auto s = eval_spatial(term, dom_, p.x);
    sum += term.coeff * eval_time(term.time, p.t).first * s.value;
  }
  return sum;
}

Vec SeparableSum::grad(const Point& p) const {
  Vec g{};
  for (const auto& term : terms_) {
    const auto s = eval_spatial(term, dom_, p.x);
    g = g + (term.coeff * eval_time(term.time, p.t).first) * s.grad;
  }
  return g;
}

double SeparableSum::laplacian(const Point& p) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    const auto s = eval_spatial(term, dom_, p.x);
    sum += term.coeff * eval_time(term.time, p.t).first * s.lap;
  }
  return sum;
}

double SeparableSum::dt(const Point& p) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    if (term.time.trivial()) continue;
    const auto s = eval_spatial(term, dom_, p.x);
    sum += term.coeff * eval_time(term.time, p.t).second * s.value;
  }
  return sum;
}

Vec SeparableSum::grad_dt(const Point& p) const {
  Vec g{};
  for (const auto& term : terms_) {
    if (term.time.trivial()) continue;
    const auto s = eval_spatial(term, dom_, p.x);
    g = g + (term.coeff * eval_time(term.time, p.t).second) * s.grad;
  }
  return g;
}

SeparableSum SeparableSum::scaled(double s) const {
  auto terms = terms_;
  for (auto& t : terms) t.coeff *= s;
  return SeparableSum(dom_, std::move(terms));
}

SeparableSum SeparableSum::operator+(const SeparableSum& other) const {
  if (other.dom_.dim() != dom_.dim()) throw ContractError("separable sums live on different domains");
  auto terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return SeparableSum(dom_, std::move(terms));
}

ScalarField SeparableSum::field() const {
  auto self = std::make_shared<const SeparableSum>(*this);
  ScalarField::Parts parts;
  parts.value = [self](const Point& p) { return self->value(p); };
  parts.grad = [self](const Point& p) { return self->grad(p); };
  parts.laplacian = [self](const Point& p) { return self->laplacian(p); };
  const bool td = time_dependent();
  if (dom_.is_parabolic() || td) parts.dt = [self](const Point& p) { return self->dt(p); };
  return ScalarField(dom_.dim(), std::move(parts), vanishes_on_boundary(), td);
}

VectorField SeparableSum::gradient_field() const {
  auto self = std::make_shared<const SeparableSum>(*this);
  VectorField::Parts parts;
  parts.value = [self](const Point& p) { return self->grad(p); };
  parts.div = [self](const Point& p) { return self->laplacian(p); };
  const bool td = time_dependent();
  if (dom_.is_parabolic() || td) parts.dt = [self](const Point& p) { return self->grad_dt(p); };
  return VectorField(dom_.dim(), std::move(parts), td);
}

VectorField SeparableSum::rotated_gradient_field() const {
  if (dom_.dim() < 2) throw DomainError("rotated gradient requires dimension ≥ 2");
  auto self = std::make_shared<const SeparableSum>(*this);
  auto rot = [](const Vec& g) { return Vec{-g[1], g[0], 0.0}; };
  VectorField::Parts parts;
  parts.value = [self, rot](const Point& p) { return rot(self->grad(p)); };
  parts.div = [](const Point&) { return 0.0; };
  const bool td = time_dependent();
  if (dom_.is_parabolic() || td) parts.dt = [self, rot](const Point& p) { return rot(self->grad_dt(p)); };
  return VectorField(dom_.dim(), std::move(parts), td);
}

SeparableSum sine_mode(const BoxDomain& dom, const std::vector<int>& modes, double coeff, TimeFactor time) {
  SeparableTerm t{coeff, time, {}};
  for (int k : modes) t.factors.push_back(AxisFactor::sin(k));
  return SeparableSum(dom, {t});
}

SeparableSum cosine_mode(const BoxDomain& dom, const std::vector<int>& modes, double coeff, TimeFactor time) {
  SeparableTerm t{coeff, time, {}};
  for (int k : modes) t.factors.push_back(AxisFactor::cos(k));
  return SeparableSum(dom, {t});
}

VectorField vector_field(const std::vector<SeparableSum>& components) {
  if (components.empty()) throw ContractError("vector_field needs at least one component");
  const int d = components.front().domain().dim();
  if (static_cast<int>(components.size()) != d) throw ContractError("vector_field needs one component per axis");
  auto comps = std::make_shared<const std::vector<SeparableSum>>(components);
  bool td = false, parabolic = components.front().domain().is_parabolic();
  for (const auto& c : components) td = td || c.time_dependent();
  VectorField::Parts parts;
  parts.value = [comps, d](const Point& p) {
    Vec v{};
    for (int i = 0; i < d; ++i) v[i] = (*comps)[i].value(p);
    return v;
  };
  parts.div = [comps, d](const Point& p) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += (*comps)[i].grad(p)[i];
    return s;
  };
  if (parabolic || td)
    parts.dt = [comps, d](const Point& p) {
      Vec v{};
      for (int i = 0; i < d; ++i) v[i] = (*comps)[i].dt(p);
      return v;
    };
  return VectorField(d, std::move(parts), td);
}

std::vector<std::vector<int>> multi_indices(int dim, int count) {
  std::vector<std::vector<int>> out;
  if (dim < 1 || count <= 0) return out;
  // Enumerate by total degree; within a degree, lexicographic order.
  for (int total = dim; static_cast<int>(out.size()) < count; ++total) {
    std::vector<int> k(dim, 1);
    k[dim - 1] = total - (dim - 1);
    // Generate all compositions of `total` into `dim` positive parts, lex ascending.
    std::vector<std::vector<int>> level;
    std::function<void(int, int)> rec = [&](int axis, int remaining) {
      if (axis == dim - 1) {
        k[axis] = remaining;
        level.push_back(k);
        return;
      }
      for (int v = 1; v <= remaining - (dim - 1 - axis); ++v) {
        k[axis] = v;
        rec(axis + 1, remaining - v);
      }
    };
    rec(0, total);
    for (auto& m : level) {
      if (static_cast<int>(out.size()) == count) break;
      out.push_back(std::move(m));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Problem cases

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::ReactionDiffusion: return "rd";
    case ProblemKind::Poisson: return "poisson";
    case ProblemKind::TimeReactionDiffusion: return "trd";
    case ProblemKind::Heat: return "heat";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& name) {
  for (auto k : {ProblemKind::ReactionDiffusion, ProblemKind::Poisson, ProblemKind::TimeReactionDiffusion,
                 ProblemKind::Heat})
    if (name == to_string(k)) return k;
  throw ContractError("unknown problem kind '" + name + "'");
}

bool is_parabolic(ProblemKind kind) {
  return kind == ProblemKind::TimeReactionDiffusion || kind == ProblemKind::Heat;
}

namespace {

double apply_operator(ProblemKind kind, const ScalarField& u, const Point& p) {
  switch (kind) {
    case ProblemKind::ReactionDiffusion: return -u.laplacian(p) + u(p);
    case ProblemKind::Poisson: return -u.laplacian(p);
    case ProblemKind::TimeReactionDiffusion: return u.dt(p) - u.laplacian(p) + u(p);
    case ProblemKind::Heat: return u.dt(p) - u.laplacian(p);
  }
  return 0.0;
}

ProblemCase assemble(ProblemKind kind, const BoxDomain& dom, const ScalarField& u, VectorField p, std::string label) {
  if (is_parabolic(kind) != dom.is_parabolic())
    throw DomainError(std::string("problem kind '") + to_string(kind) +
                      (is_parabolic(kind) ? "' requires a time horizon" : "' must not have a time horizon"));
  if (u.dim() != dom.dim()) throw ContractError("solution dimension does not match the domain");
  const auto& c = u.conformity();
  if (!c.has_grad) throw CapabilityError("manufactured solution lacks a gradient");
  if (!c.has_laplacian) throw CapabilityError("manufactured solution lacks a laplacian");
  if (is_parabolic(kind) && !c.has_dt) throw CapabilityError("manufactured solution lacks a time derivative");
  require_vanishing_on_boundary(u, dom, "manufactured solution");
  const ScalarField exact = u.with_boundary_claim(true);

  ScalarField::Parts fp;
  fp.value = [kind, exact](const Point& pt) { return apply_operator(kind, exact, pt); };
  ScalarField f(dom.dim(), std::move(fp), false, exact.time_dependent());

  std::optional<ScalarField> u0;
  if (is_parabolic(kind)) {
    ScalarField::Parts ip;
    ip.value = [exact](const Point& pt) { return exact(Point{0.0, pt.x}); };
    ip.grad = [exact](const Point& pt) { return exact.grad(Point{0.0, pt.x}); };
    ip.laplacian = [exact](const Point& pt) { return exact.laplacian(Point{0.0, pt.x}); };
    u0 = ScalarField(dom.dim(), std::move(ip), true, false);
  }
  return ProblemCase{kind, dom, std::move(f), std::move(u0), exact, std::move(p), std::move(label)};
}

}  // namespace

ProblemCase make_case(ProblemKind kind, const BoxDomain& dom, const ScalarField& u, std::string label) {
  if (!u.conformity().has_grad) throw CapabilityError("manufactured solution lacks a gradient");
  return assemble(kind, dom, u, gradient_of(u), std::move(label));
}

ProblemCase make_case(ProblemKind kind, const SeparableSum& u, std::string label) {
  return assemble(kind, u.domain(), u.field(), u.gradient_field(), std::move(label));
}

ProblemCase corrupt_source(const ProblemCase& c, double factor) {
  ProblemCase out = c;
  out.source = factor * c.source;
  return out;
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

Point random_point(std::mt19937_64& rng, const BoxDomain& dom) {
  Point p;
  if (dom.is_parabolic()) p.t = dom.time_horizon() * unit_uniform(rng());
  for (int i = 0; i < dom.dim(); ++i) p.x[i] = dom.lower(i) + dom.length(i) * unit_uniform(rng());
  return p;
}

}  // namespace

CaseResidual validate_case(const ProblemCase& c, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CaseResidual r;
  for (int s = 0; s < samples; ++s) {
    const Point p = random_point(rng, c.domain);
    const Vec g = c.exact_u.grad(p), q = c.exact_p(p);
    for (int i = 0; i < kMaxDim; ++i) r.flux = std::max(r.flux, std::abs(g[i] - q[i]));
    const double f = c.source(p);
    const double lu = apply_operator(c.kind, c.exact_u, p);
    r.source = std::max(r.source, std::abs(f - lu) / std::max(1.0, std::abs(f)));
    if (c.initial) {
      const Point p0{0.0, p.x};
      r.initial = std::max(r.initial, std::abs((*c.initial)(p) - c.exact_u(p0)));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Perturbations

const char* to_string(ConformityLevel level) {
  switch (level) {
    case ConformityLevel::VeryConforming: return "very_conforming";
    case ConformityLevel::ConformingMixed: return "conforming_mixed";
    case ConformityLevel::SemiConformingPrimal: return "semi_conforming_primal";
    case ConformityLevel::SemiConformingDual: return "semi_conforming_dual";
    case ConformityLevel::NonConforming: return "non_conforming";
  }
  return "?";
}

ConformityLevel conformity_level_from_string(const std::string& name) {
  for (auto l : {ConformityLevel::VeryConforming, ConformityLevel::ConformingMixed,
                 ConformityLevel::SemiConformingPrimal, ConformityLevel::SemiConformingDual,
                 ConformityLevel::NonConforming})
    if (name == to_string(l)) return l;
  throw ContractError("unknown conformity level '" + name + "'");
}

namespace {

double draw(std::mt19937_64& rng) { return 2.0 * unit_uniform(rng()) - 1.0; }

// Unit-L²(Ω) combination of sin modes {1,2}^d with random coefficients,
// optionally multiplied by (1 + b t).
SeparableSum random_sine_sum(const BoxDomain& dom, std::mt19937_64& rng) {
  const int d = dom.dim();
  double mode_norm_sq = 1.0;  // ‖Π sin(kᵢπx̂ᵢ)‖² = Π Lᵢ/2
  for (int i = 0; i < d; ++i) mode_norm_sq *= 0.5 * dom.length(i);
  int count = 1;
  for (int i = 0; i < d; ++i) count *= 2;
  std::vector<SeparableTerm> terms;
  double sum_sq = 0.0;
  for (int idx = 0; idx < count; ++idx) {
    SeparableTerm t;
    t.coeff = draw(rng);
    sum_sq += t.coeff * t.coeff;
    for (int i = 0; i < d; ++i) t.factors.push_back(AxisFactor::sin(1 + ((idx >> i) & 1)));
    terms.push_back(std::move(t));
  }
  const double scale = 1.0 / std::sqrt(std::max(sum_sq, 1e-300) * mode_norm_sq);
  for (auto& t : terms) t.coeff *= scale;
  if (dom.is_parabolic()) {
    const double b = draw(rng);
    const std::size_t n = terms.size();
    for (std::size_t k = 0; k < n; ++k) {
      SeparableTerm lin = terms[k];
      lin.coeff *= b;
      lin.time = TimeFactor{1, 0.0};
      terms.push_back(std::move(lin));
    }
  }
  return SeparableSum(dom, std::move(terms));
}

// Component leaving H¹₀: cos(πx̂₁)·Π_{j>1} sin(πx̂ⱼ).
SeparableSum boundary_breaking_term(const BoxDomain& dom, std::mt19937_64& rng) {
  SeparableTerm t;
  double norm_sq = 1.0;
  for (int i = 0; i < dom.dim(); ++i) norm_sq *= 0.5 * dom.length(i);
  t.coeff = (0.5 + 0.5 * unit_uniform(rng())) / std::sqrt(norm_sq);
  t.factors.push_back(AxisFactor::cos(1));
  for (int i = 1; i < dom.dim(); ++i) t.factors.push_back(AxisFactor::sin(1));
  return SeparableSum(dom, {t});
}

Conformity scalar_keep(ConformityLevel level, bool parabolic) {
  switch (level) {
    case ConformityLevel::VeryConforming: return {true, true, true, parabolic};
    case ConformityLevel::ConformingMixed:
    case ConformityLevel::SemiConformingPrimal: return {true, true, false, parabolic};
    case ConformityLevel::SemiConformingDual:
    case ConformityLevel::NonConforming: return {};
  }
  throw ContractError("unknown conformity level");
}

VectorConformity vector_keep(ConformityLevel level, bool parabolic) {
  switch (level) {
    case ConformityLevel::VeryConforming:
    case ConformityLevel::ConformingMixed:
    case ConformityLevel::SemiConformingDual: return {true, parabolic};
    case ConformityLevel::SemiConformingPrimal:
    case ConformityLevel::NonConforming: return {};
  }
  throw ContractError("unknown conformity level");
}

}  // namespace

ApproxPair perturb(const ProblemCase& c, ConformityLevel level, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ContractError("perturbation scale must be ≥ 0");
  const bool parabolic = c.domain.is_parabolic();
  const Conformity sk = scalar_keep(level, parabolic);
  const VectorConformity vk = vector_keep(level, parabolic);
  if (epsilon == 0.0) return {c.exact_u.restricted(sk), c.exact_p.restricted(vk), level};

  std::mt19937_64 rng(seed);
  SeparableSum du = random_sine_sum(c.domain, rng);
  const bool breaks_boundary =
      level == ConformityLevel::SemiConformingDual || level == ConformityLevel::NonConforming;
  if (breaks_boundary) du = du + boundary_breaking_term(c.domain, rng);
  VectorField dp = random_sine_sum(c.domain, rng).gradient_field();
  if (c.domain.dim() >= 2) dp = dp + random_sine_sum(c.domain, rng).rotated_gradient_field();

  const ScalarField ut = c.exact_u + epsilon * du.field();
  const VectorField pt = c.exact_p + epsilon * dp;
  return {ut.restricted(sk), pt.restricted(vk), level};
}

// ---------------------------------------------------------------------------
// Free fields

FreeFields free_fields(const ProblemCase& c, const FreeFieldStrategy& s) {
  const int d = c.domain.dim();
  switch (s.kind) {
    case FreeFieldStrategy::Kind::Exact: return {c.exact_u, c.exact_p};
    case FreeFieldStrategy::Kind::Coarse: return {s.scale * c.exact_u, s.scale * c.exact_p};
    case FreeFieldStrategy::Kind::Zero: return {ScalarField::zero(d), VectorField::zero(d)};
    case FreeFieldStrategy::Kind::Basis: {
      if (s.index < 0) throw ContractError("basis index must be non-negative");
      const auto modes = multi_indices(d, s.index + 1).back();
      ScalarField phi = sine_mode(c.domain, modes).field();
      require_vanishing_on_boundary(phi, c.domain, "basis potential");
      return {phi, TrigFluxFamily(c.domain).member(s.index)};
    }
  }
  throw ContractError("unknown free-field strategy");
}

VectorField TrigFluxFamily::member(int index) const {
  if (index < 0) throw ContractError("basis index must be non-negative");
  const int d = dom_.dim();
  const int which = index / d, component = index % d;
  const auto modes = multi_indices(d, which + 1).back();
  std::vector<SeparableSum> comps;
  for (int i = 0; i < d; ++i) {
    SeparableTerm t{i == component ? 1.0 : 0.0, {}, {}};
    for (int j = 0; j < d; ++j)
      t.factors.push_back(j == component ? AxisFactor::cos(modes[j]) : AxisFactor::sin(modes[j]));
    comps.emplace_back(dom_, std::vector<SeparableTerm>{t});
  }
  return vector_field(comps);
}

std::vector<VectorField> TrigFluxFamily::first(int count) const {
  std::vector<VectorField> out;
  for (int i = 0; i < count; ++i) out.push_back(member(i));
  return out;
}

}  // namespace funcerr::mms
