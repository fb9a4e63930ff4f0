#include "bergman/polynomials.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "minor_recurrence.hpp"

namespace bergman {

namespace {

using detail::MinorRecurrence;
using detail::kRescaleThreshold;

constexpr double kLogPoleThreshold = -300.0 * 2.302585092994046;  // ln(1e-300)

void warn_inside_norm_bound(const HessenbergTruncation& trunc, Complex z) {
  if (std::abs(z) <= trunc.norm_bound())
    std::cerr << "bergman: warning: |z| = " << std::abs(z)
              << " is inside the norm bound " << trunc.norm_bound()
              << "; ratio limits are only guaranteed outside\n";
}

}  // namespace

Complex eval_monic(const HessenbergTruncation& trunc, Eigen::Index n, Complex z) {
  if (n < 0 || n > trunc.size())
    throw BoundsError("monic degree out of range");
  MinorRecurrence rec(trunc, z);
  rec.advance_to(n);
  return rec.scaled_minor(n) * std::exp(rec.log_scale());
}

std::vector<Complex> monic_coefficients(const HessenbergTruncation& trunc,
                                        Eigen::Index n) {
  if (n < 0 || n > trunc.size()) throw BoundsError("monic degree out of range");
  if (n > 64) throw SizeError("coefficient extraction is limited to n <= 64");
  // Run the recurrence over coefficient vectors (ascending degree).
  std::vector<std::vector<Complex>> minors;
  minors.push_back({Complex(1.0, 0.0)});
  for (Eigen::Index k = 1; k <= n; ++k) {
    std::vector<Complex> cur(k + 1, Complex(0.0, 0.0));
    const auto& prev = minors[k - 1];
    const Complex diag = trunc.entry(k, k);
    for (Eigen::Index t = 0; t < k; ++t) {
      cur[t + 1] += prev[t];         // z * D_{k-1}
      cur[t] -= diag * prev[t];      // -H_kk * D_{k-1}
    }
    if (k >= 2) {
      const Eigen::Index lowest = trunc.is_tridiagonal() ? k - 1 : 1;
      double prod = 1.0;
      for (Eigen::Index j = k - 1; j >= lowest; --j) {
        prod *= trunc.subdiagonal(j);
        if (prod == 0.0) break;
        const Complex c = trunc.entry(j, k) * prod;
        if (c == Complex(0.0, 0.0)) continue;
        const auto& dj = minors[j - 1];
        for (std::size_t t = 0; t < dj.size(); ++t) cur[t] -= c * dj[t];
      }
    }
    minors.push_back(std::move(cur));
  }
  return minors[n];
}

double log_kappa(const HessenbergTruncation& trunc, Eigen::Index n) {
  if (n < 0 || n + 1 > trunc.size())
    throw BoundsError("kappa_n needs n + 1 <= N");
  double acc = 0.0;
  for (Eigen::Index j = 1; j <= n; ++j) acc -= std::log(trunc.subdiagonal(j));
  return acc;
}

double kappa(const HessenbergTruncation& trunc, Eigen::Index n) {
  return std::exp(log_kappa(trunc, n));
}

Complex ratio(const HessenbergTruncation& trunc, Eigen::Index n, Complex z,
              bool normalized) {
  if (n < 1 || n > trunc.size()) throw BoundsError("ratio needs 1 <= n <= N");
  if (normalized && n + 1 > trunc.size())
    throw BoundsError("normalized ratio needs the subdiagonal entry (n+1, n)");
  warn_inside_norm_bound(trunc, z);
  MinorRecurrence rec(trunc, z);
  rec.advance_to(n);
  if (rec.log_abs(n) < kLogPoleThreshold)
    throw PoleError("evaluation point is a zero of P_n at n = " + std::to_string(n));
  Complex value = rec.scaled_minor(n - 1) / rec.scaled_minor(n);
  if (normalized) value *= trunc.subdiagonal(n);  // kappa_{n-1}/kappa_n
  return value;
}

PolynomialEvaluation evaluate_polynomial(const HessenbergTruncation& trunc,
                                         Eigen::Index n, Complex z) {
  PolynomialEvaluation out;
  out.degree = n;
  out.z = z;
  out.monic = eval_monic(trunc, n, z);
  out.kappa = kappa(trunc, n);
  out.orthonormal = out.kappa * out.monic;
  return out;
}

// -- RatioStream ----------------------------------------------------------------

struct RatioStream::Impl {
  enum class Engine { Szego, ThreeTerm, Minor };

  const HessenbergTruncation* trunc;
  Complex z;
  Engine engine;
  Eigen::Index n = 0;

  // Szego state: monic OPUC pair (Phi, Phi*) plus the previous Phi, under a
  // common rescale that cancels in ratios.
  Complex phi{1.0, 0.0}, phi_star{1.0, 0.0}, phi_prev{0.0, 0.0};
  double rho_last = 1.0;  // sqrt(1 - |alpha_{n-1}|^2)

  // Three-term state.
  Complex p_prev{0.0, 0.0}, p_cur{1.0, 0.0};

  // Dense fallback.
  std::unique_ptr<MinorRecurrence> minors;

  explicit Impl(const HessenbergTruncation& t, Complex point)
      : trunc(&t), z(point) {
    if (t.verblunsky() != nullptr) {
      engine = Engine::Szego;
    } else if (t.jacobi_parameters() != nullptr) {
      engine = Engine::ThreeTerm;
    } else {
      engine = Engine::Minor;
      minors = std::make_unique<MinorRecurrence>(t, point);
    }
  }

  void advance() {
    if (n >= trunc->size()) throw BoundsError("ratio stream beyond truncation");
    switch (engine) {
      case Engine::Szego: {
        const Complex a = (*trunc->verblunsky())[n];
        const Complex next = z * phi - std::conj(a) * phi_star;
        phi_star = phi_star - a * z * phi;
        phi_prev = phi;
        phi = next;
        rho_last = std::sqrt(1.0 - std::norm(a));
        const double mag = std::max(std::abs(phi), std::abs(phi_star));
        if (mag > kRescaleThreshold) {
          phi /= mag;
          phi_star /= mag;
          phi_prev /= mag;
        }
        break;
      }
      case Engine::ThreeTerm: {
        const auto& [a, b] = *trunc->jacobi_parameters();
        const Eigen::Index k = n + 1;  // producing P_k
        Complex next = (z - b[k - 1]) * p_cur;
        if (k >= 2) next -= a[k - 2] * a[k - 2] * p_prev;
        p_prev = p_cur;
        p_cur = next;
        const double mag = std::max(std::abs(p_prev), std::abs(p_cur));
        if (mag > kRescaleThreshold) {
          p_prev /= mag;
          p_cur /= mag;
        }
        break;
      }
      case Engine::Minor:
        minors->advance();
        break;
    }
    ++n;
  }

  Complex monic_ratio() const {
    if (n < 1) throw BoundsError("ratio stream has no ratio at degree 0");
    switch (engine) {
      case Engine::Szego:
        return phi_prev / phi;
      case Engine::ThreeTerm:
        return p_prev / p_cur;
      case Engine::Minor:
        return minors->scaled_minor(n - 1) / minors->scaled_minor(n);
    }
    return Complex(0.0, 0.0);
  }

  Eigen::Index normalized_max() const {
    // kappa_{n-1}/kappa_n needs rho_{n-1} (available through alpha_{n-1} for
    // ggt) or the (n+1, n) entry for the other sources.
    return engine == Engine::Szego ? trunc->size() : trunc->size() - 1;
  }

  Complex normalized_ratio() const {
    const Complex m = monic_ratio();
    switch (engine) {
      case Engine::Szego:
        return rho_last * m;
      case Engine::ThreeTerm: {
        const auto& [a, b] = *trunc->jacobi_parameters();
        if (n > normalized_max())
          throw BoundsError("normalized ratio needs a_n, beyond the truncation");
        return a[n - 1] * m;
      }
      case Engine::Minor:
        if (n > normalized_max())
          throw BoundsError("normalized ratio needs the (n+1, n) entry");
        return trunc->subdiagonal(n) * m;
    }
    return Complex(0.0, 0.0);
  }
};

RatioStream::RatioStream(const HessenbergTruncation& trunc, Complex z)
    : impl_(std::make_unique<Impl>(trunc, z)) {}
RatioStream::~RatioStream() = default;
RatioStream::RatioStream(RatioStream&&) noexcept = default;
RatioStream& RatioStream::operator=(RatioStream&&) noexcept = default;

void RatioStream::advance() { impl_->advance(); }
Eigen::Index RatioStream::degree() const { return impl_->n; }
Eigen::Index RatioStream::max_degree() const { return impl_->trunc->size(); }
Eigen::Index RatioStream::normalized_max_degree() const {
  return impl_->normalized_max();
}
Complex RatioStream::monic_ratio() const { return impl_->monic_ratio(); }
Complex RatioStream::normalized_ratio() const { return impl_->normalized_ratio(); }

}  // namespace bergman
