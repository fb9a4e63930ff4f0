#ifndef BERGMAN_POLYNOMIALS_HPP
#define BERGMAN_POLYNOMIALS_HPP

#include <complex>
#include <memory>
#include <vector>

#include "bergman/hessenberg.hpp"

namespace bergman {

/// Joint evaluation record for degree n at a point z.
struct PolynomialEvaluation {
  Eigen::Index degree;
  Complex z;
  Complex monic;        // P_n(z)
  Complex orthonormal;  // p_n(z) = kappa_n P_n(z)
  double kappa;         // kappa_n > 0
};

/// P_n(z) = det(z - pi_n M pi_n), computed by the Hessenberg determinant
/// recurrence: expanding along the last column relates each principal minor
/// to the earlier ones, so no dense determinant is ever formed. Values beyond
/// double range come back as inf.
Complex eval_monic(const HessenbergTruncation& trunc, Eigen::Index n, Complex z);

/// Coefficients of P_n in ascending degree order (size n+1, leading 1),
/// obtained by running the same recurrence over coefficient vectors.
/// Guarded to n <= 64; meant for cross-checks at small degree.
std::vector<Complex> monic_coefficients(const HessenbergTruncation& trunc,
                                        Eigen::Index n);

/// log kappa_n; kappa_n = 1 / prod_{k=2}^{n+1} (M)_{k,k-1} with kappa_0 = 1.
/// Needs n + 1 <= N.
double log_kappa(const HessenbergTruncation& trunc, Eigen::Index n);

/// kappa_n as a double (inf when the product underflows).
double kappa(const HessenbergTruncation& trunc, Eigen::Index n);

/// P_{n-1}(z)/P_n(z), or p_{n-1}(z)/p_n(z) when normalized. The pair
/// recurrence rescales by the running maximum modulus, so the quotient stays
/// meaningful at degrees where the raw values overflow. Points inside the
/// estimated spectral radius only produce a warning; an actual zero of P_n
/// (|P_n| < 1e-300) raises PoleError.
Complex ratio(const HessenbergTruncation& trunc, Eigen::Index n, Complex z,
              bool normalized);

PolynomialEvaluation evaluate_polynomial(const HessenbergTruncation& trunc,
                                         Eigen::Index n, Complex z);

/// Streaming evaluator of consecutive ratios at a fixed point: yields
/// P_{n-1}/P_n (and the orthonormal version) for n = 1, 2, ... in one sweep.
///
/// Internally picks the cheapest exact recurrence the source admits: the
/// Szego recurrence for ggt truncations and the three-term recurrence for
/// Jacobi ones, both O(1) per step, which makes horizon-10^5 scans feasible;
/// dense sources fall back to the principal-minor recurrence. Agreement with
/// ratio() is pinned by tests.
class RatioStream {
 public:
  RatioStream(const HessenbergTruncation& trunc, Complex z);
  ~RatioStream();
  RatioStream(RatioStream&&) noexcept;
  RatioStream& operator=(RatioStream&&) noexcept;

  /// Step from degree n to n + 1. Valid while degree() < max_degree().
  void advance();

  /// Current degree n (0 after construction).
  Eigen::Index degree() const;
  /// Largest degree the stream can reach (the truncation size).
  Eigen::Index max_degree() const;
  /// Largest degree at which normalized_ratio() is available.
  Eigen::Index normalized_max_degree() const;

  /// P_{n-1}(z)/P_n(z); needs degree >= 1.
  Complex monic_ratio() const;
  /// p_{n-1}(z)/p_n(z) = (kappa_{n-1}/kappa_n) P_{n-1}/P_n.
  Complex normalized_ratio() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bergman

#endif  // BERGMAN_POLYNOMIALS_HPP
