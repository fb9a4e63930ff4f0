#ifndef BERGMAN_COEFFICIENTS_HPP
#define BERGMAN_COEFFICIENTS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/rng.hpp"

namespace bergman {

using Complex = std::complex<double>;

/// Verblunsky coefficients of a measure on the unit circle: a sequence
/// alpha_0, alpha_1, ... with every value strictly inside the unit disk.
///
/// Sequences are generator-backed and memoize materialized values, so
/// reading an index twice yields bit-identical results and concurrent
/// readers agree. Copies share the memoization cache.
class VerblunskySequence {
 public:
  using Generator = std::function<Complex(std::size_t)>;

  explicit VerblunskySequence(Generator gen,
                              std::optional<std::size_t> length = std::nullopt);

  static VerblunskySequence constant(Complex value);
  static VerblunskySequence from_values(std::vector<Complex> values);
  /// alpha_n = 1/(n+2), the slowly decaying model used throughout the tests.
  static VerblunskySequence harmonic_decay();
  static VerblunskySequence zero();

  /// alpha_n; throws InvalidCoefficientError if the generated value has
  /// modulus >= 1, naming the index.
  Complex value(std::size_t n) const;

  /// Materialize values [0, count).
  std::vector<Complex> prefix(std::size_t count) const;

  std::optional<std::size_t> length() const noexcept { return length_; }

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<Complex> values;
  };
  Generator gen_;
  std::optional<std::size_t> length_;
  std::shared_ptr<Cache> cache_;
};

/// Jacobi parameters of a compactly supported measure on the real line:
/// off-diagonal a_n > 0 and diagonal b_n (both 1-based, n >= 1), bounded
/// by a declared bound so the support is compact.
class JacobiSequence {
 public:
  using RealGenerator = std::function<double(std::size_t)>;

  JacobiSequence(RealGenerator a, RealGenerator b, double bound,
                 std::optional<std::size_t> length = std::nullopt);

  static JacobiSequence constant(double a, double b);
  static JacobiSequence from_values(std::vector<double> a, std::vector<double> b);
  /// Period extension of the given patterns.
  static JacobiSequence periodic(std::vector<double> a, std::vector<double> b);

  /// a_n (n >= 1); throws InvalidCoefficientError if a_n <= 0 or |a_n| > bound.
  double a(std::size_t n) const;
  /// b_n (n >= 1); throws InvalidCoefficientError if |b_n| > bound.
  double b(std::size_t n) const;

  double bound() const noexcept { return bound_; }
  std::optional<std::size_t> length() const noexcept { return length_; }

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<double> a, b;
  };
  RealGenerator a_gen_, b_gen_;
  double bound_;
  std::optional<std::size_t> length_;
  std::shared_ptr<Cache> cache_;
};

/// Finitely supported probability measure in the plane. Points are pairwise
/// distinct, weights positive and summing to one (within 1e-14). Support is
/// canonically sorted by (Re, Im) so downstream output is deterministic.
class DiscretePlanarMeasure {
 public:
  DiscretePlanarMeasure(std::vector<Complex> points, std::vector<double> weights);

  /// Rescales the weights to total mass one, then validates.
  static DiscretePlanarMeasure normalized(std::vector<Complex> points,
                                          std::vector<double> weights);
  static DiscretePlanarMeasure uniform_roots_of_unity(std::size_t count);

  std::size_t count() const noexcept { return points_.size(); }
  const std::vector<Complex>& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Quadrature moment  sum_k w_k z_k^j.
  Complex moment(std::size_t j) const;

 private:
  std::vector<Complex> points_;
  std::vector<double> weights_;
};

/// Sampling distribution for i.i.d. coefficient streams.
class DistributionSpec {
 public:
  enum class Kind { FiniteAtomic, UniformDiskRadius, UniformInterval };

  static DistributionSpec atomic(std::vector<Complex> atoms,
                                 std::vector<double> probabilities);
  static DistributionSpec uniform_disk(double radius);
  static DistributionSpec uniform_interval(double lo, double hi);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Complex>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }
  double radius() const noexcept { return radius_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  /// Largest modulus the distribution can produce.
  double max_modulus() const;
  /// Entire support strictly inside the unit disk?
  bool inside_unit_disk() const;
  /// Entire support real?
  bool real_valued() const;
  /// Entire support strictly positive real?
  bool positive_real() const;

  Complex draw(const CounterRng& rng, std::uint64_t stream,
               std::uint64_t index) const;

 private:
  DistributionSpec() = default;
  Kind kind_ = Kind::FiniteAtomic;
  std::vector<Complex> atoms_;
  std::vector<double> probs_;
  double radius_ = 0.0;
  double lo_ = 0.0, hi_ = 0.0;
};

// -- Sequence transforms -----------------------------------------------------

/// Twist alpha_n -> lambda * alpha_n for unimodular lambda (|lambda| = 1
/// within 1e-12).
VerblunskySequence alexandrov(const VerblunskySequence& seq, Complex lambda);

/// Drop the first k coefficients: result[n] = seq[n + k].
VerblunskySequence strip(const VerblunskySequence& seq, std::size_t k);

// -- Universal sequences -----------------------------------------------------

/// The sequence that realizes every bi-infinite word over the base points as
/// a right limit: stage k emits all permutations of the first k base elements
/// in lexicographic index order, concatenated stage after stage. When k
/// exceeds the base size, indices clamp to the last base element.
VerblunskySequence universal_circle_sequence(const std::vector<Complex>& base,
                                             std::size_t length);

/// Paired Jacobi analogue. At stage n the a-stream emits each permutation of
/// the first n base values repeated n! times consecutively, while the
/// b-stream emits the full lexicographic list of all n! permutations, that
/// list repeated n! times. Both stage blocks have length n! * n! * n, so the
/// streams stay aligned positionally and every (sigma, tau) permutation pair
/// occurs at matching positions within its stage.
JacobiSequence universal_jacobi_pair(const std::vector<double>& base_a,
                                     const std::vector<double>& base_b,
                                     std::size_t length);

// -- Random sampling ---------------------------------------------------------

/// n i.i.d. Verblunsky draws. Identical (dist, n, seed) reproduce the stream
/// bit-exactly. The distribution's support must stay strictly inside the
/// unit disk.
VerblunskySequence sample_iid(const DistributionSpec& dist, std::size_t n,
                              std::uint64_t seed);

/// n i.i.d. Jacobi draws; the a- and b-streams use independent sub-streams
/// derived from the seed. a_dist must have strictly positive real support,
/// b_dist real support.
JacobiSequence sample_iid(const DistributionSpec& a_dist,
                          const DistributionSpec& b_dist, std::size_t n,
                          std::uint64_t seed);

// -- Named example -----------------------------------------------------------

/// The degenerate pair: alpha_n(mu) = 1 - 1/(n+2) and
/// alpha_n(nu) = (1 - 1/(n+2)) e^{in}. Both lose the kappa-ratio lower bound,
/// which is what makes the pair a counterexample.
std::pair<VerblunskySequence, VerblunskySequence> degenerate_pair(
    std::size_t length);

}  // namespace bergman

#endif  // BERGMAN_COEFFICIENTS_HPP
