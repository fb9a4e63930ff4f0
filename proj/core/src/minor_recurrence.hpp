#ifndef BERGMAN_SRC_MINOR_RECURRENCE_HPP
#define BERGMAN_SRC_MINOR_RECURRENCE_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "bergman/hessenberg.hpp"

namespace bergman::detail {

inline constexpr double kRescaleThreshold = 1e100;

/// Principal minors D_k = det(z I_k - H_k) of the shifted truncation,
/// streamed with a collective scale factor: the stored values are
/// D_k / exp(log_scale). Expansion along the last column gives
///   D_k = (z - H_{kk}) D_{k-1} - sum_{j<k} H_{jk} (prod_{i=j}^{k-1} H_{i+1,i}) D_{j-1}.
class MinorRecurrence {
 public:
  MinorRecurrence(const HessenbergTruncation& trunc, Complex z)
      : trunc_(&trunc), z_(z) {
    scaled_.reserve(16);
    scaled_.push_back(Complex(1.0, 0.0));  // D_0 = 1
  }

  Eigen::Index degree() const {
    return static_cast<Eigen::Index>(scaled_.size()) - 1;
  }

  void advance() {
    const Eigen::Index k = degree() + 1;
    if (k > trunc_->size()) throw BoundsError("minor recurrence beyond truncation");
    Complex acc = (z_ - trunc_->entry(k, k)) * scaled_[k - 1];
    if (k >= 2) {
      const Eigen::Index lowest = trunc_->is_tridiagonal() ? k - 1 : 1;
      double prod = 1.0;  // subdiagonal products are positive reals
      for (Eigen::Index j = k - 1; j >= lowest; --j) {
        prod *= trunc_->subdiagonal(j);
        if (prod == 0.0) break;  // all remaining terms vanish exactly
        const Complex hjk = trunc_->entry(j, k);
        if (hjk != Complex(0.0, 0.0)) acc -= hjk * prod * scaled_[j - 1];
      }
    }
    scaled_.push_back(acc);
    const double mag = std::abs(acc);
    if (mag > kRescaleThreshold) {
      for (Complex& v : scaled_) v /= mag;
      log_scale_ += std::log(mag);
    }
  }

  void advance_to(Eigen::Index n) {
    while (degree() < n) advance();
  }

  Complex scaled_minor(Eigen::Index j) const { return scaled_[j]; }
  double log_scale() const { return log_scale_; }

  /// log |D_j| in true scale; -inf for exact zero.
  double log_abs(Eigen::Index j) const {
    const double m = std::abs(scaled_[j]);
    return m == 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::log(m) + log_scale_;
  }

 private:
  const HessenbergTruncation* trunc_;
  Complex z_;
  std::vector<Complex> scaled_;
  double log_scale_ = 0.0;
};

}  // namespace bergman::detail

#endif  // BERGMAN_SRC_MINOR_RECURRENCE_HPP
