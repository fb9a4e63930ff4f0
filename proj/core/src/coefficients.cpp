#include "bergman/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bergman {

namespace {

constexpr double kUnitTol = 1e-12;

std::vector<std::size_t> identity_permutation(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

}  // namespace

// -- VerblunskySequence -------------------------------------------------------

VerblunskySequence::VerblunskySequence(Generator gen,
                                       std::optional<std::size_t> length)
    : gen_(std::move(gen)), length_(length), cache_(std::make_shared<Cache>()) {
  if (!gen_) throw InvalidParameterError("verblunsky generator is empty");
  if (length_ && *length_ == 0)
    throw InvalidParameterError("verblunsky sequence must not be empty");
}

VerblunskySequence VerblunskySequence::constant(Complex value) {
  return VerblunskySequence([value](std::size_t) { return value; });
}

VerblunskySequence VerblunskySequence::from_values(std::vector<Complex> values) {
  auto shared = std::make_shared<std::vector<Complex>>(std::move(values));
  return VerblunskySequence(
      [shared](std::size_t n) { return (*shared)[n]; }, shared->size());
}

VerblunskySequence VerblunskySequence::harmonic_decay() {
  return VerblunskySequence(
      [](std::size_t n) { return Complex(1.0 / (static_cast<double>(n) + 2.0), 0.0); });
}

VerblunskySequence VerblunskySequence::zero() { return constant(Complex(0.0, 0.0)); }

Complex VerblunskySequence::value(std::size_t n) const {
  if (length_ && n >= *length_)
    throw BoundsError("verblunsky index " + std::to_string(n) +
                      " beyond sequence length " + std::to_string(*length_));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  while (cache_->values.size() <= n) {
    const std::size_t k = cache_->values.size();
    Complex v = gen_(k);
    if (!(std::abs(v) < 1.0))
      throw InvalidCoefficientError("verblunsky coefficient has modulus >= 1", k);
    cache_->values.push_back(v);
  }
  return cache_->values[n];
}

std::vector<Complex> VerblunskySequence::prefix(std::size_t count) const {
  std::vector<Complex> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = value(n);
  return out;
}

// -- JacobiSequence -----------------------------------------------------------

JacobiSequence::JacobiSequence(RealGenerator a, RealGenerator b, double bound,
                               std::optional<std::size_t> length)
    : a_gen_(std::move(a)),
      b_gen_(std::move(b)),
      bound_(bound),
      length_(length),
      cache_(std::make_shared<Cache>()) {
  if (!a_gen_ || !b_gen_) throw InvalidParameterError("jacobi generator is empty");
  if (!(bound_ > 0.0)) throw InvalidParameterError("jacobi bound must be positive");
  if (length_ && *length_ == 0)
    throw InvalidParameterError("jacobi sequence must not be empty");
}

JacobiSequence JacobiSequence::constant(double a, double b) {
  const double bound = std::max({std::abs(a), std::abs(b), 1.0});
  return JacobiSequence([a](std::size_t) { return a; },
                        [b](std::size_t) { return b; }, bound);
}

JacobiSequence JacobiSequence::from_values(std::vector<double> a,
                                           std::vector<double> b) {
  if (a.empty() || b.empty())
    throw InvalidParameterError("jacobi value lists must not be empty");
  double bound = 1.0;
  for (double v : a) bound = std::max(bound, std::abs(v));
  for (double v : b) bound = std::max(bound, std::abs(v));
  const std::size_t len = std::min(a.size(), b.size());
  auto sa = std::make_shared<std::vector<double>>(std::move(a));
  auto sb = std::make_shared<std::vector<double>>(std::move(b));
  return JacobiSequence([sa](std::size_t n) { return (*sa)[n - 1]; },
                        [sb](std::size_t n) { return (*sb)[n - 1]; }, bound, len);
}

JacobiSequence JacobiSequence::periodic(std::vector<double> a,
                                        std::vector<double> b) {
  if (a.empty() || b.empty())
    throw InvalidParameterError("jacobi periodic patterns must not be empty");
  double bound = 1.0;
  for (double v : a) bound = std::max(bound, std::abs(v));
  for (double v : b) bound = std::max(bound, std::abs(v));
  auto sa = std::make_shared<std::vector<double>>(std::move(a));
  auto sb = std::make_shared<std::vector<double>>(std::move(b));
  return JacobiSequence(
      [sa](std::size_t n) { return (*sa)[(n - 1) % sa->size()]; },
      [sb](std::size_t n) { return (*sb)[(n - 1) % sb->size()]; }, bound);
}

double JacobiSequence::a(std::size_t n) const {
  if (n == 0) throw BoundsError("jacobi parameters are 1-based");
  if (length_ && n > *length_)
    throw BoundsError("jacobi index " + std::to_string(n) +
                      " beyond sequence length " + std::to_string(*length_));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  while (cache_->a.size() < n) {
    const std::size_t k = cache_->a.size() + 1;
    const double v = a_gen_(k);
    if (!(v > 0.0))
      throw InvalidCoefficientError("jacobi a-coefficient is not positive", k);
    if (!(v <= bound_))
      throw InvalidCoefficientError("jacobi a-coefficient exceeds the bound", k);
    cache_->a.push_back(v);
  }
  return cache_->a[n - 1];
}

double JacobiSequence::b(std::size_t n) const {
  if (n == 0) throw BoundsError("jacobi parameters are 1-based");
  if (length_ && n > *length_)
    throw BoundsError("jacobi index " + std::to_string(n) +
                      " beyond sequence length " + std::to_string(*length_));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  while (cache_->b.size() < n) {
    const std::size_t k = cache_->b.size() + 1;
    const double v = b_gen_(k);
    if (!(std::abs(v) <= bound_))
      throw InvalidCoefficientError("jacobi b-coefficient exceeds the bound", k);
    cache_->b.push_back(v);
  }
  return cache_->b[n - 1];
}

// -- DiscretePlanarMeasure ----------------------------------------------------

DiscretePlanarMeasure::DiscretePlanarMeasure(std::vector<Complex> points,
                                             std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size())
    throw InvalidParameterError("points and weights must have equal length");
  if (points_.size() < 2)
    throw InvalidParameterError("measure needs at least 2 support points");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw InvalidParameterError("weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-14)
    throw InvalidParameterError("weights must sum to 1 within 1e-14");

  // Canonical order: by (Re, Im). Makes Arnoldi outputs deterministic.
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (points_[i].real() != points_[j].real())
      return points_[i].real() < points_[j].real();
    return points_[i].imag() < points_[j].imag();
  });
  std::vector<Complex> p(points_.size());
  std::vector<double> w(points_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    p[i] = points_[order[i]];
    w[i] = weights_[order[i]];
  }
  points_ = std::move(p);
  weights_ = std::move(w);

  for (std::size_t i = 1; i < points_.size(); ++i)
    if (points_[i] == points_[i - 1])
      throw InvalidParameterError("support points must be pairwise distinct");
}

DiscretePlanarMeasure DiscretePlanarMeasure::normalized(
    std::vector<Complex> points, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw InvalidParameterError("total weight must be positive");
  for (double& w : weights) w /= total;
  return DiscretePlanarMeasure(std::move(points), std::move(weights));
}

DiscretePlanarMeasure DiscretePlanarMeasure::uniform_roots_of_unity(
    std::size_t count) {
  if (count < 2) throw InvalidParameterError("need at least 2 roots of unity");
  std::vector<Complex> pts(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
    pts[k] = Complex(std::cos(t), std::sin(t));
  }
  std::vector<double> w(count, 1.0 / static_cast<double>(count));
  return normalized(std::move(pts), std::move(w));
}

Complex DiscretePlanarMeasure::moment(std::size_t j) const {
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < points_.size(); ++k)
    acc += weights_[k] * std::pow(points_[k], static_cast<double>(j));
  return acc;
}

// -- DistributionSpec ---------------------------------------------------------

DistributionSpec DistributionSpec::atomic(std::vector<Complex> atoms,
                                          std::vector<double> probabilities) {
  if (atoms.empty() || atoms.size() != probabilities.size())
    throw InvalidParameterError("atomic distribution needs matching atoms/probs");
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0)) throw InvalidParameterError("atom probabilities must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidParameterError("atom probabilities must sum to 1");
  DistributionSpec d;
  d.kind_ = Kind::FiniteAtomic;
  d.atoms_ = std::move(atoms);
  d.probs_ = std::move(probabilities);
  return d;
}

DistributionSpec DistributionSpec::uniform_disk(double radius) {
  if (!(radius > 0.0)) throw InvalidParameterError("disk radius must be positive");
  DistributionSpec d;
  d.kind_ = Kind::UniformDiskRadius;
  d.radius_ = radius;
  return d;
}

DistributionSpec DistributionSpec::uniform_interval(double lo, double hi) {
  if (!(lo < hi)) throw InvalidParameterError("interval needs lo < hi");
  DistributionSpec d;
  d.kind_ = Kind::UniformInterval;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

double DistributionSpec::max_modulus() const {
  switch (kind_) {
    case Kind::FiniteAtomic: {
      double m = 0.0;
      for (const Complex& a : atoms_) m = std::max(m, std::abs(a));
      return m;
    }
    case Kind::UniformDiskRadius:
      return radius_;
    case Kind::UniformInterval:
      return std::max(std::abs(lo_), std::abs(hi_));
  }
  return 0.0;
}

bool DistributionSpec::inside_unit_disk() const { return max_modulus() < 1.0; }

bool DistributionSpec::real_valued() const {
  switch (kind_) {
    case Kind::FiniteAtomic:
      return std::all_of(atoms_.begin(), atoms_.end(),
                         [](const Complex& a) { return a.imag() == 0.0; });
    case Kind::UniformDiskRadius:
      return false;
    case Kind::UniformInterval:
      return true;
  }
  return false;
}

bool DistributionSpec::positive_real() const {
  switch (kind_) {
    case Kind::FiniteAtomic:
      return std::all_of(atoms_.begin(), atoms_.end(), [](const Complex& a) {
        return a.imag() == 0.0 && a.real() > 0.0;
      });
    case Kind::UniformDiskRadius:
      return false;
    case Kind::UniformInterval:
      return lo_ > 0.0;
  }
  return false;
}

Complex DistributionSpec::draw(const CounterRng& rng, std::uint64_t stream,
                               std::uint64_t index) const {
  switch (kind_) {
    case Kind::FiniteAtomic: {
      const double u = rng.uniform(stream, index, 0);
      double acc = 0.0;
      for (std::size_t k = 0; k < atoms_.size(); ++k) {
        acc += probs_[k];
        if (u < acc) return atoms_[k];
      }
      return atoms_.back();
    }
    case Kind::UniformDiskRadius: {
      const double u1 = rng.uniform(stream, index, 0);
      const double u2 = rng.uniform(stream, index, 1);
      const double r = radius_ * std::sqrt(u1);
      const double t = 2.0 * M_PI * u2;
      return Complex(r * std::cos(t), r * std::sin(t));
    }
    case Kind::UniformInterval: {
      const double u = rng.uniform(stream, index, 0);
      return Complex(lo_ + (hi_ - lo_) * u, 0.0);
    }
  }
  return Complex(0.0, 0.0);
}

// -- Transforms ---------------------------------------------------------------

VerblunskySequence alexandrov(const VerblunskySequence& seq, Complex lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > kUnitTol)
    throw InvalidParameterError("alexandrov parameter must have unit modulus");
  return VerblunskySequence(
      [seq, lambda](std::size_t n) { return lambda * seq.value(n); },
      seq.length());
}

VerblunskySequence strip(const VerblunskySequence& seq, std::size_t k) {
  std::optional<std::size_t> len;
  if (seq.length()) {
    if (*seq.length() <= k)
      throw InvalidParameterError("stripping would leave an empty sequence");
    len = *seq.length() - k;
  }
  return VerblunskySequence(
      [seq, k](std::size_t n) { return seq.value(n + k); }, len);
}

// -- Universal sequences ------------------------------------------------------

namespace {

// Stage k emits permutations of the index word (0, 1, ..., k-1) in
// lexicographic order; indices clamp to the base size so the construction
// stays defined for short bases.
template <typename Value, typename Emit>
void emit_universal_circle(std::size_t base_size, std::size_t length, Emit emit,
                           const std::vector<Value>& base) {
  std::size_t emitted = 0;
  for (std::size_t stage = 1; emitted < length; ++stage) {
    auto perm = identity_permutation(stage);
    do {
      for (std::size_t idx : perm) {
        emit(base[std::min(idx, base_size - 1)]);
        if (++emitted == length) return;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::vector<std::vector<std::size_t>> lexicographic_permutations(std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  auto perm = identity_permutation(k);
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

VerblunskySequence universal_circle_sequence(const std::vector<Complex>& base,
                                             std::size_t length) {
  if (base.empty()) throw InvalidParameterError("universal base must not be empty");
  if (length == 0) throw InvalidParameterError("length must be positive");
  for (std::size_t i = 0; i < base.size(); ++i)
    if (!(std::abs(base[i]) < 1.0))
      throw InvalidCoefficientError("universal base element on or outside the unit circle", i);
  std::vector<Complex> values;
  values.reserve(length);
  emit_universal_circle<Complex>(
      base.size(), length, [&](Complex v) { values.push_back(v); }, base);
  return VerblunskySequence::from_values(std::move(values));
}

JacobiSequence universal_jacobi_pair(const std::vector<double>& base_a,
                                     const std::vector<double>& base_b,
                                     std::size_t length) {
  if (base_a.empty() || base_b.empty())
    throw InvalidParameterError("universal bases must not be empty");
  if (length == 0) throw InvalidParameterError("length must be positive");
  for (std::size_t i = 0; i < base_a.size(); ++i)
    if (!(base_a[i] > 0.0))
      throw InvalidCoefficientError("universal a-base element is not positive", i);

  auto pick = [](const std::vector<double>& base, std::size_t idx) {
    return base[std::min(idx, base.size() - 1)];
  };

  std::vector<double> a_values, b_values;
  a_values.reserve(length);
  b_values.reserve(length);
  auto push = [length](std::vector<double>& dst, double v) {
    if (dst.size() < length) dst.push_back(v);
  };
  for (std::size_t stage = 1;
       a_values.size() < length || b_values.size() < length; ++stage) {
    const auto perms = lexicographic_permutations(stage);
    const std::size_t reps = factorial(stage);
    // a-stream: each permutation repeated reps times consecutively.
    for (const auto& sigma : perms)
      for (std::size_t r = 0; r < reps; ++r)
        for (std::size_t idx : sigma) push(a_values, pick(base_a, idx));
    // b-stream: the full permutation list, repeated reps times.
    for (std::size_t r = 0; r < reps; ++r)
      for (const auto& tau : perms)
        for (std::size_t idx : tau) push(b_values, pick(base_b, idx));
  }
  return JacobiSequence::from_values(std::move(a_values), std::move(b_values));
}

// -- Sampling -----------------------------------------------------------------

VerblunskySequence sample_iid(const DistributionSpec& dist, std::size_t n,
                              std::uint64_t seed) {
  if (n == 0) throw InvalidParameterError("sample size must be positive");
  if (!dist.inside_unit_disk())
    throw InvalidParameterError(
        "circle-valued distribution support touches or leaves the unit disk");
  CounterRng rng(seed);
  std::vector<Complex> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = dist.draw(rng, 0, k);
  return VerblunskySequence::from_values(std::move(values));
}

JacobiSequence sample_iid(const DistributionSpec& a_dist,
                          const DistributionSpec& b_dist, std::size_t n,
                          std::uint64_t seed) {
  if (n == 0) throw InvalidParameterError("sample size must be positive");
  if (!a_dist.positive_real())
    throw InvalidParameterError("a-distribution must have strictly positive real support");
  if (!b_dist.real_valued())
    throw InvalidParameterError("b-distribution must have real support");
  CounterRng rng(seed);
  std::vector<double> a(n), b(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = a_dist.draw(rng, 1, k).real();
    b[k] = b_dist.draw(rng, 2, k).real();
  }
  return JacobiSequence::from_values(std::move(a), std::move(b));
}

// -- Degenerate pair ----------------------------------------------------------

std::pair<VerblunskySequence, VerblunskySequence> degenerate_pair(
    std::size_t length) {
  if (length == 0) throw InvalidParameterError("length must be positive");
  auto mu = VerblunskySequence(
      [](std::size_t n) {
        return Complex(1.0 - 1.0 / (static_cast<double>(n) + 2.0), 0.0);
      },
      length);
  auto nu = VerblunskySequence(
      [](std::size_t n) {
        const double r = 1.0 - 1.0 / (static_cast<double>(n) + 2.0);
        const double t = static_cast<double>(n);
        return Complex(r * std::cos(t), r * std::sin(t));
      },
      length);
  return {std::move(mu), std::move(nu)};
}

}  // namespace bergman
