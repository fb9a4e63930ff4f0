#ifndef BERGMAN_ASYMPTOTICS_HPP
#define BERGMAN_ASYMPTOTICS_HPP

#include <complex>
#include <vector>

#include "bergman/hessenberg.hpp"

namespace bergman {

/// Coefficients c_0..c_M of the resolvent expansion
///   P_{n-1}(z)/P_n(z) = sum_m c_m / z^{m+1},  c_m = ((pi_n M pi_n)^m)_{n,n}.
class LaurentCoefficients {
 public:
  LaurentCoefficients(Eigen::Index center, std::vector<Complex> coefficients);

  Eigen::Index center() const noexcept { return center_; }
  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  Eigen::Index terms() const noexcept {
    return static_cast<Eigen::Index>(coeffs_.size()) - 1;
  }

  /// sum_{m=0}^{M} c_m / z^{m+1}.
  Complex partial_sum(Complex z) const;

  /// Geometric tail bound (r_est/|z|)^{M+1} |z| / (|z| - r_est), valid for
  /// |z| > r_est.
  static double tail_bound(double r_est, double abs_z, Eigen::Index m_terms);

 private:
  Eigen::Index center_;
  std::vector<Complex> coeffs_;
};

struct MomentReport {
  enum class Kind { Weak, Cesaro };
  Kind kind;
  Eigen::Index order;  // j
  Eigen::Index index;  // n
  Complex value;
};

/// h_{j,n} = (kappa_{n-1-j}/kappa_{n-1}) (M)_{n-j,n}
///         = prod_{l=0}^{j-1} (M)_{n-l,n-l-1} * (M)_{n-j,n}.
/// Needs 0 <= j <= n-1 and n <= N.
Complex h_coeff(const HessenbergTruncation& trunc, Eigen::Index j, Eigen::Index n);

/// Diagonal entry of a matrix power by explicit enumeration of index paths
/// n = i_0 -> ... -> i_m = n, each step obeying the Hessenberg pattern
/// (i_{k+1} >= i_k - 1). Independent route against matrix_power_diagonal.
/// Refuses m > 12 (path counts grow combinatorially).
Complex path_sum_diagonal(const HessenbergTruncation& trunc, Eigen::Index m,
                          Eigen::Index n, PowerMode mode);

/// beta_{n,m} = ((pi_n M pi_n)^m)_{n,n} - h_{m-1,n}: the path sum over every
/// closed path except the single maximal-descent path
/// n -> n-1 -> ... -> n-m+1 -> n (whose weight is exactly h_{m-1,n}).
Complex beta_term(const HessenbergTruncation& trunc, Eigen::Index n,
                  Eigen::Index m);

/// c_m = ((pi_n M pi_n)^m)_{n,n} for m = 0..m_terms (m_terms <= 40).
LaurentCoefficients laurent_ratio(const HessenbergTruncation& trunc,
                                  Eigen::Index n, Eigen::Index m_terms);

/// int z^j |p_n|^2 dmu = (M^j)_{n+1,n+1}; n is the polynomial degree (>= 0).
/// Needs n + 1 + j <= N, else the entry is contaminated by the cut.
Complex weak_moment(const HessenbergTruncation& trunc, Eigen::Index j,
                    Eigen::Index n);

/// int z^j d sigma_n = (1/n) trace((pi_n M pi_n)^j): moment of the
/// zero-counting measure of P_n.
Complex cesaro_moment(const HessenbergTruncation& trunc, Eigen::Index j,
                      Eigen::Index n);

/// All Cesaro moments j = 0..j_max at once (one pass of matrix powers).
std::vector<Complex> cesaro_moments_upto(const HessenbergTruncation& trunc,
                                         Eigen::Index j_max, Eigen::Index n);

/// Difference table h_{j,n}(A) - h_{j,n-q}(B) over a grid of n, for
/// j = 0..j_max, with a per-j convergence summary (max |difference| over the
/// last quartile of the grid).
struct RelativeHProfile {
  Eigen::Index q;
  Eigen::Index j_max;
  std::vector<Eigen::Index> n_grid;
  Eigen::MatrixXcd differences;               // (j_max+1) x grid
  std::vector<double> last_quartile_max;      // per j
  double overall_last_quartile_max;
};

RelativeHProfile relative_h_profile(const HessenbergTruncation& a,
                                    const HessenbergTruncation& b,
                                    Eigen::Index q, Eigen::Index j_max,
                                    const std::vector<Eigen::Index>& n_grid);

/// weak_moment(A, j, n) - weak_moment(B, j, n - q).
Complex relative_weak_moments(const HessenbergTruncation& a,
                              const HessenbergTruncation& b, Eigen::Index q,
                              Eigen::Index j, Eigen::Index n);

/// cesaro_moment(A, j, n) - cesaro_moment(B, j, n - q). The zero-counting
/// comparison carries no shift in the source material; q is exposed anyway
/// and defaults to 0.
Complex relative_cesaro_moments(const HessenbergTruncation& a,
                                const HessenbergTruncation& b, Eigen::Index j,
                                Eigen::Index n, Eigen::Index q = 0);

/// Both sides of the averaging inequality
///   |ces_j(A,n) - ces_j(B,n) - (1/n) sum_{k<n} (weak_j(A,k) - weak_j(B,k))|
///     <= 2 j (R_A + R_B) / n,
/// with the norm bounds standing in for the support radii.
struct CesaroBoundReport {
  double lhs;
  double rhs;
  bool holds;
};

CesaroBoundReport cesaro_bound_check(const HessenbergTruncation& a,
                                     const HessenbergTruncation& b,
                                     Eigen::Index j, Eigen::Index n);

/// Single-measure version: |ces_j(A,n) - (1/n) sum_{k<n} weak_j(A,k)| against
/// 2 j R_A / n.
CesaroBoundReport cesaro_bound_check_single(const HessenbergTruncation& a,
                                            Eigen::Index j, Eigen::Index n);

}  // namespace bergman

#endif  // BERGMAN_ASYMPTOTICS_HPP
