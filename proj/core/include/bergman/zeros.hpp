#ifndef BERGMAN_ZEROS_HPP
#define BERGMAN_ZEROS_HPP

#include <complex>
#include <vector>

#include "bergman/hessenberg.hpp"

namespace bergman {

/// Zeros of P_n with multiplicity (eigenvalues of the n x n corner), sorted
/// canonically by modulus, ties broken by argument. The residual is
/// max_i |P_n(z_i)| / max(1, |P_n'(z_i)|), evaluated through the determinant
/// recurrence in log scale.
struct ZeroSet {
  Eigen::Index degree;
  std::vector<Complex> zeros;
  double residual;
};

/// Eigenvalues of the upper-left n x n corner: a symmetric tridiagonal
/// eigensolver for jacobi sources, complex Hessenberg QR otherwise.
ZeroSet zeros(const HessenbergTruncation& trunc, Eigen::Index n);

/// (1/n) sum_i z_i^j: the j-th moment of the zero-counting measure.
Complex zero_moments(const ZeroSet& zs, Eigen::Index j);

}  // namespace bergman

#endif  // BERGMAN_ZEROS_HPP
