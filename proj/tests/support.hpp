#ifndef BERGMAN_TESTS_SUPPORT_HPP
#define BERGMAN_TESTS_SUPPORT_HPP

#include <complex>
#include <vector>

#include "bergman/coefficients.hpp"
#include "bergman/hessenberg.hpp"

namespace bergman::testing {

inline VerblunskySequence random_verblunsky(double max_modulus, std::size_t n,
                                            std::uint64_t seed) {
  return sample_iid(DistributionSpec::uniform_disk(max_modulus), n, seed);
}

inline JacobiSequence random_jacobi(std::size_t n, std::uint64_t seed) {
  return sample_iid(DistributionSpec::uniform_interval(0.2, 2.0),
                    DistributionSpec::uniform_interval(-1.0, 1.0), n, seed);
}

inline HessenbergTruncation random_ggt(double max_modulus, Eigen::Index size,
                                       std::uint64_t seed) {
  return ggt_truncation(
      random_verblunsky(max_modulus, static_cast<std::size_t>(size), seed), size);
}

inline HessenbergTruncation random_jacobi_truncation(Eigen::Index size,
                                                     std::uint64_t seed) {
  return jacobi_truncation(random_jacobi(static_cast<std::size_t>(size), seed),
                           size);
}

inline DiscretePlanarMeasure random_disk_measure(std::size_t count,
                                                 double radius,
                                                 std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Complex> points(count);
  std::vector<double> weights(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double r = radius * std::sqrt(rng.uniform(3, k, 0));
    const double t = 2.0 * M_PI * rng.uniform(3, k, 1);
    points[k] = Complex(r * std::cos(t), r * std::sin(t));
    weights[k] = 0.5 + rng.uniform(4, k, 0);
  }
  return DiscretePlanarMeasure::normalized(std::move(points), std::move(weights));
}

inline double cdist(Complex a, Complex b) { return std::abs(a - b); }

}  // namespace bergman::testing

#endif  // BERGMAN_TESTS_SUPPORT_HPP
