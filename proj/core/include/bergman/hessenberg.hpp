#ifndef BERGMAN_HESSENBERG_HPP
#define BERGMAN_HESSENBERG_HPP

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bergman/coefficients.hpp"
#include "bergman/errors.hpp"

namespace bergman {

enum class MatrixSource { Ggt, Jacobi, Arnoldi };

std::string to_string(MatrixSource source);

/// (2m+1) x (2m+1) block of the shift matrix centered on a diagonal entry.
/// Offsets run over [-m, m] relative to the center.
class MatrixWindow {
 public:
  MatrixWindow(Eigen::Index center, Eigen::Index half_width,
               Eigen::MatrixXcd entries);

  Eigen::Index center() const noexcept { return center_; }
  Eigen::Index half_width() const noexcept { return half_width_; }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

  /// Entry at row offset dr, column offset dc from the center.
  Complex at(Eigen::Index dr, Eigen::Index dc) const;

  /// max_{r,c} |entries - other.entries|  (centers may differ).
  double distance(const MatrixWindow& other) const;

 private:
  Eigen::Index center_, half_width_;
  Eigen::MatrixXcd entries_;
};

/// The upper-left N x N corner of the Bergman Shift matrix of a measure.
///
/// Indexing convention: the public surface uses the 1-based convention of the
/// underlying operator theory, so entry(i, j) with 1 <= i, j <= N; internal
/// storage is 0-based (index_public = index_internal + 1). Entries vanish
/// below the first subdiagonal (i > j + 1).
///
/// For ggt and jacobi sources the truncation is stored through its generating
/// coefficients and entries are computed on demand; that keeps truncations of
/// size 10^5 cheap, which the random-matching experiments need. Dense corners
/// are materialized lazily and only up to an internal dimension cap.
class HessenbergTruncation {
 public:
  Eigen::Index size() const noexcept { return size_; }
  MatrixSource source() const noexcept { return source_; }

  /// Greatest absolute row sum of the truncation; upper bound for the
  /// spectral radius, used to pick evaluation radii.
  double norm_bound() const noexcept { return norm_bound_; }

  /// Entry (i, j), 1-based. Zero below the first subdiagonal.
  Complex entry(Eigen::Index i, Eigen::Index j) const;

  /// Subdiagonal entry (j+1, j), 1 <= j <= N-1. Real and positive for every
  /// source this library constructs.
  double subdiagonal(Eigen::Index j) const;

  /// Dense n x n upper-left corner (0-based storage). Throws SizeError above
  /// the materialization cap.
  Eigen::MatrixXcd corner(Eigen::Index n) const;

  bool is_tridiagonal() const noexcept { return source_ == MatrixSource::Jacobi; }

  /// Generating Verblunsky coefficients (ggt source only, else nullptr).
  const std::vector<Complex>* verblunsky() const noexcept;
  /// Generating Jacobi parameters (jacobi source only, else nullptr);
  /// first = a (1-based a_1..a_{N-1}), second = b (b_1..b_N).
  const std::pair<std::vector<double>, std::vector<double>>* jacobi_parameters()
      const noexcept;

  /// Wrap an explicit Hessenberg matrix (validates the zero pattern).
  /// Intended for tests and for externally produced matrices.
  static HessenbergTruncation from_dense(Eigen::MatrixXcd entries,
                                         MatrixSource source);

  static constexpr Eigen::Index kDenseDimensionCap = 4096;

 private:
  friend HessenbergTruncation ggt_truncation(const VerblunskySequence&, Eigen::Index);
  friend HessenbergTruncation jacobi_truncation(const JacobiSequence&, Eigen::Index);
  friend HessenbergTruncation arnoldi_truncation(const DiscretePlanarMeasure&, Eigen::Index);

  struct GgtData {
    std::vector<Complex> alpha;      // alpha_0 .. alpha_{N-1}
    std::vector<double> rho;         // rho_k = sqrt(1 - |alpha_k|^2)
    std::vector<double> log_rho_sum; // log_rho_sum[t] = sum_{k<t} log rho_k
  };
  struct JacobiData {
    std::vector<double> a;  // a_1 .. a_{N-1}
    std::vector<double> b;  // b_1 .. b_N
    std::pair<std::vector<double>, std::vector<double>> pair_view;
  };
  struct DenseData {
    Eigen::MatrixXcd entries;
  };

  HessenbergTruncation() = default;

  MatrixSource source_ = MatrixSource::Arnoldi;
  Eigen::Index size_ = 0;
  double norm_bound_ = 0.0;
  std::variant<GgtData, JacobiData, DenseData> data_;
};

/// GGT realization for a measure on the unit circle:
///   (M)_{ij} = -alpha_{i-2} conj(alpha_{j-1}) prod_{k=i-1}^{j-2} rho_k   (i <= j)
///   (M)_{j+1,j} = rho_{j-1},   rho_k = sqrt(1 - |alpha_k|^2),  alpha_{-1} = -1.
HessenbergTruncation ggt_truncation(const VerblunskySequence& seq, Eigen::Index n);

/// Symmetric tridiagonal realization for a measure on the real line:
/// diagonal b_n, off-diagonals a_n.
HessenbergTruncation jacobi_truncation(const JacobiSequence& seq, Eigen::Index n);

/// Shift matrix of a discrete planar measure in its orthonormal polynomial
/// basis, built by Arnoldi with twice-applied Gram-Schmidt. Requires
/// n <= count - 1 so the needed orthonormal polynomials exist.
HessenbergTruncation arnoldi_truncation(const DiscretePlanarMeasure& mu,
                                        Eigen::Index n);

/// Window centered at (n, n) with half-width m; needs n-m >= 1 and n+m <= N.
MatrixWindow window(const HessenbergTruncation& trunc, Eigen::Index center,
                    Eigen::Index half_width);

/// kappa_{n-2}/kappa_{n-1} = (M)_{n,n-1}, for 2 <= n <= N.
Complex kappa_ratio(const HessenbergTruncation& trunc, Eigen::Index n);

enum class PowerMode {
  /// ((pi_n M pi_n)^m)_{n,n}: power of the n x n sub-truncation.
  SubTruncation,
  /// (M^m)_{n,n}: power of the full matrix. Requires n + m <= N, otherwise
  /// the entry depends on indices beyond the truncation.
  FullMatrix,
};

/// Diagonal entry of a matrix power, by repeated matrix-vector application
/// to the n-th coordinate vector. m >= 0, 1 <= n <= N.
Complex matrix_power_diagonal(const HessenbergTruncation& trunc, Eigen::Index m,
                              Eigen::Index n, PowerMode mode);

}  // namespace bergman

#endif  // BERGMAN_HESSENBERG_HPP
