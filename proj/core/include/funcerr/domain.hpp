#pragma once

#include <array>
#include <optional>
#include <span>

namespace funcerr {

inline constexpr int kMaxDim = 3;

/// Spatial vector; components beyond the domain dimension are zero.
using Vec = std::array<double, kMaxDim>;

/// Evaluation point (t, x). Elliptic problems ignore t.
struct Point {
  double t = 0.0;
  Vec x{};
};

inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec operator*(double s, const Vec& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double norm_sq(const Vec& a) { return dot(a, a); }

/// Axis-aligned box Ω ⊂ R^d, optionally extended to the cylinder (0,T) × Ω.
class BoxDomain {
 public:
  BoxDomain(std::span<const double> lower, std::span<const double> upper,
            std::optional<double> time_horizon = std::nullopt);

  /// (0,1)^d, optionally with horizon T.
  static BoxDomain unit(int dim, std::optional<double> time_horizon = std::nullopt);

  int dim() const { return dim_; }
  double lower(int axis) const { return lower_.at(axis); }
  double upper(int axis) const { return upper_.at(axis); }
  double length(int axis) const { return upper_.at(axis) - lower_.at(axis); }

  bool is_parabolic() const { return time_horizon_.has_value(); }
  /// Throws DomainError on an elliptic domain.
  double time_horizon() const;
  std::optional<double> maybe_time_horizon() const { return time_horizon_; }

  BoxDomain spatial() const;
  BoxDomain with_time_horizon(double horizon) const;

  double volume() const;

 private:
  int dim_ = 0;
  Vec lower_{};
  Vec upper_{};
  std::optional<double> time_horizon_;
};

}  // namespace funcerr
