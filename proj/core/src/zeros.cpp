#include "bergman/zeros.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "minor_recurrence.hpp"

namespace bergman {

namespace {

void canonical_sort(std::vector<Complex>& zs) {
  std::sort(zs.begin(), zs.end(), [](const Complex& x, const Complex& y) {
    const double mx = std::abs(x), my = std::abs(y);
    if (mx != my) return mx < my;
    return std::arg(x) < std::arg(y);
  });
}

double zero_set_residual(const HessenbergTruncation& trunc, Eigen::Index n,
                         const std::vector<Complex>& zs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    detail::MinorRecurrence rec(trunc, zs[i]);
    rec.advance_to(n);
    const double log_p = rec.log_abs(n);
    // |P_n'(z_i)| = prod_{j != i} |z_i - z_j| for the monic polynomial.
    double log_dp = 0.0;
    for (std::size_t j = 0; j < zs.size(); ++j) {
      if (j == i) continue;
      log_dp += std::log(std::abs(zs[i] - zs[j]));
    }
    const double log_res = log_p - std::max(0.0, log_dp);
    worst = std::max(worst, std::exp(log_res));
  }
  return worst;
}

}  // namespace

ZeroSet zeros(const HessenbergTruncation& trunc, Eigen::Index n) {
  if (n < 1 || n > trunc.size()) throw BoundsError("zeros need 1 <= n <= N");

  std::vector<Complex> zs;
  zs.reserve(static_cast<std::size_t>(n));

  if (trunc.is_tridiagonal()) {
    Eigen::VectorXd diag(n), subdiag(n > 1 ? n - 1 : 0);
    for (Eigen::Index i = 1; i <= n; ++i) diag(i - 1) = trunc.entry(i, i).real();
    for (Eigen::Index i = 1; i < n; ++i) subdiag(i - 1) = trunc.subdiagonal(i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw EigensolverError("tridiagonal eigensolver failed at n = " +
                             std::to_string(n));
    for (Eigen::Index i = 0; i < n; ++i)
      zs.emplace_back(solver.eigenvalues()(i), 0.0);
  } else {
    const Eigen::MatrixXcd corner = trunc.corner(n);
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur;
    // The corner is already Hessenberg, so skip the reduction step.
    schur.computeFromHessenberg(corner, Eigen::MatrixXcd::Identity(n, n), false);
    if (schur.info() != Eigen::Success)
      throw EigensolverError("hessenberg QR iteration failed to converge at n = " +
                             std::to_string(n));
    for (Eigen::Index i = 0; i < n; ++i) zs.push_back(schur.matrixT()(i, i));
  }

  canonical_sort(zs);
  const double residual = zero_set_residual(trunc, n, zs);
  return ZeroSet{n, std::move(zs), residual};
}

Complex zero_moments(const ZeroSet& zs, Eigen::Index j) {
  if (j < 0) throw InvalidParameterError("moment order must be >= 0");
  Complex acc(0.0, 0.0);
  for (const Complex& z : zs.zeros) acc += std::pow(z, static_cast<double>(j));
  return acc / static_cast<double>(zs.degree);
}

}  // namespace bergman
