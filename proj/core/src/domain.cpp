#include "funcerr/domain.hpp"

#include <cmath>
#include <string>

#include "funcerr/error.hpp"

namespace funcerr {

BoxDomain::BoxDomain(std::span<const double> lower, std::span<const double> upper,
                     std::optional<double> time_horizon)
    : time_horizon_(time_horizon) {
  if (lower.size() != upper.size()) throw DomainError("box: lower/upper dimension mismatch");
  if (lower.empty() || lower.size() > kMaxDim)
    throw DomainError("box: dimension must be 1, 2 or 3, got " + std::to_string(lower.size()));
  dim_ = static_cast<int>(lower.size());
  for (int i = 0; i < dim_; ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw DomainError("box: non-finite extent on axis " + std::to_string(i));
    if (!(upper[i] > lower[i]))
      throw DomainError("box: degenerate axis " + std::to_string(i) + " (upper must exceed lower)");
    lower_[i] = lower[i];
    upper_[i] = upper[i];
  }
  if (time_horizon_ && !(*time_horizon_ > 0.0 && std::isfinite(*time_horizon_)))
    throw DomainError("box: time horizon must be positive and finite");
}

BoxDomain BoxDomain::unit(int dim, std::optional<double> time_horizon) {
  if (dim < 1 || dim > kMaxDim) throw DomainError("box: dimension must be 1, 2 or 3");
  const Vec lo{0.0, 0.0, 0.0};
  const Vec hi{1.0, 1.0, 1.0};
  return BoxDomain(std::span<const double>(lo.data(), dim), std::span<const double>(hi.data(), dim),
                   time_horizon);
}

double BoxDomain::time_horizon() const {
  if (!time_horizon_) throw DomainError("domain is elliptic: no time horizon");
  return *time_horizon_;
}

BoxDomain BoxDomain::spatial() const {
  return BoxDomain(std::span<const double>(lower_.data(), dim_),
                   std::span<const double>(upper_.data(), dim_));
}

BoxDomain BoxDomain::with_time_horizon(double horizon) const {
  return BoxDomain(std::span<const double>(lower_.data(), dim_),
                   std::span<const double>(upper_.data(), dim_), horizon);
}

double BoxDomain::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim_; ++i) v *= length(i);
  return v;
}

}  // namespace funcerr
