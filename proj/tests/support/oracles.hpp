#pragma once

// Independent reference computations used only by tests.

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <vector>

namespace funcerr::oracle {

/// Smallest eigenvalue of the 5-point (3-point in 1D) Dirichlet Laplacian on
/// a box with n interior nodes per axis, by inverse iteration.
inline double fd_dirichlet_eigenvalue(const std::vector<double>& lengths, int n) {
  const int d = static_cast<int>(lengths.size());
  int total = 1;
  for (int i = 0; i < d; ++i) total *= n;
  std::vector<double> h(d);
  for (int i = 0; i < d; ++i) h[i] = lengths[i] / (n + 1);

  std::vector<Eigen::Triplet<double>> trip;
  for (int idx = 0; idx < total; ++idx) {
    int rest = idx, stride = 1;
    double diag = 0.0;
    for (int a = 0; a < d; ++a) {
      const int k = rest % n;
      rest /= n;
      const double w = 1.0 / (h[a] * h[a]);
      diag += 2.0 * w;
      if (k > 0) trip.emplace_back(idx, idx - stride, -w);
      if (k < n - 1) trip.emplace_back(idx, idx + stride, -w);
      stride *= n;
    }
    trip.emplace_back(idx, idx, diag);
  }
  Eigen::SparseMatrix<double> A(total, total);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);

  Eigen::VectorXd x = Eigen::VectorXd::Ones(total);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd y = solver.solve(x);
    const double next = x.dot(x) / x.dot(y);
    x = y / y.norm();
    if (std::abs(next - lambda) <= 1e-14 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return lambda;
}

/// min over a log-spaced grid of (1+1/γ)A + (1+γ)B on [lo, hi].
inline double young_grid_min(double A, double B, double lo, double hi, int points) {
  double best = INFINITY;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) {
    const double g = std::exp(a + (b - a) * i / (points - 1));
    best = std::min(best, (1.0 + 1.0 / g) * A + (1.0 + g) * B);
  }
  return best;
}

}  // namespace funcerr::oracle
