#ifndef BERGMAN_RIGHT_LIMITS_HPP
#define BERGMAN_RIGHT_LIMITS_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "bergman/hessenberg.hpp"
#include "bergman/polynomials.hpp"

namespace bergman {

/// Strictly increasing index sequence along which windows are inspected.
struct SubsequenceSpec {
  enum class Kind { ExplicitList, Arithmetic, Detected };

  Kind kind = Kind::ExplicitList;
  std::vector<Eigen::Index> indices;

  static SubsequenceSpec explicit_list(std::vector<Eigen::Index> indices);
  static SubsequenceSpec arithmetic(Eigen::Index offset, Eigen::Index stride,
                                    Eigen::Index count);
  /// "a,b,c" or "offset:stride" (extended up to limit) or
  /// "offset:stride:count".
  static SubsequenceSpec parse(std::string_view text, Eigen::Index limit);

  /// Every index shifted by delta (may be negative); must stay >= 1.
  SubsequenceSpec shifted(Eigen::Index delta) const;

  std::size_t size() const noexcept { return indices.size(); }
};

/// Finite-n stand-in for a right limit: the window at the last subsequence
/// index plus the spread of the tail windows around it. "Converged" means the
/// tail stayed within epsilon entrywise; the genuine limit is not observable
/// at finite truncation size, so epsilon and the half-width are always
/// explicit.
struct RightLimitEstimate {
  Eigen::Index half_width;
  MatrixWindow window;   // window at the final subsequence index
  double dispersion;     // max distance of the tail-half windows to the final
  bool converged;
  SubsequenceSpec subsequence;
};

RightLimitEstimate detect_right_limit(const HessenbergTruncation& trunc,
                                      const SubsequenceSpec& sub,
                                      Eigen::Index half_width, double epsilon);

/// Entrywise window deviation along paired subsequences (n_k from A, m_k from
/// B); tail_max is over the last half of the pairs.
struct RightLimitDifference {
  std::vector<double> per_pair;
  double tail_max;
};

RightLimitDifference right_limit_difference(const HessenbergTruncation& a,
                                            const HessenbergTruncation& b,
                                            const SubsequenceSpec& sub_a,
                                            const SubsequenceSpec& sub_b,
                                            Eigen::Index half_width);

/// sup over a G-point grid on |z| = r of the normalized-ratio difference
///   p_{n_k+j-1}/p_{n_k+j}(A) - p_{m_k+j-1}/p_{m_k+j}(B)
/// for every pair index k and every offset j in [j_min, j_max].
struct NormalizedRatioProfile {
  std::vector<Eigen::Index> offsets;       // the j values
  Eigen::MatrixXd sup_difference;          // offsets x pairs
  std::vector<double> tail_max_per_offset;
  double tail_max;
  double radius;
  Eigen::Index grid_size;
};

NormalizedRatioProfile normalized_ratio_difference(
    const HessenbergTruncation& a, const HessenbergTruncation& b,
    const SubsequenceSpec& sub_a, const SubsequenceSpec& sub_b,
    Eigen::Index j_min, Eigen::Index j_max, double radius,
    Eigen::Index grid_size);

/// The matching functional of the random-coefficient construction:
///   min over m in (k, horizon] of sup_{|z|=r} |p_{m-1}/p_m(A) - p_{n-1}/p_n(B)|.
/// The sup over |z| > r is realized on the circle |z| = r and approximated by
/// the grid.
struct BestMatchResult {
  double distance;
  Eigen::Index best_m;
};

BestMatchResult best_match_distance(const HessenbergTruncation& a,
                                    const HessenbergTruncation& b,
                                    Eigen::Index n, Eigen::Index k, double radius,
                                    Eigen::Index grid_size, Eigen::Index horizon);

}  // namespace bergman

#endif  // BERGMAN_RIGHT_LIMITS_HPP
