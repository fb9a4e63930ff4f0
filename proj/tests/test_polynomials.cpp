#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

#include "bergman/polynomials.hpp"
#include "support.hpp"

using namespace bergman;
using bergman::testing::cdist;

namespace {

// Independent oracle: characteristic polynomial coefficients from the
// eigenvalues of the dense corner, expanded term by term.
std::vector<Complex> char_poly_from_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  REQUIRE(solver.info() == Eigen::Success);
  std::vector<Complex> coeffs{Complex(1.0, 0.0)};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Complex root = solver.eigenvalues()(i);
    std::vector<Complex> next(coeffs.size() + 1, Complex(0.0, 0.0));
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      next[t + 1] += coeffs[t];
      next[t] -= root * coeffs[t];
    }
    coeffs = std::move(next);
  }
  return coeffs;  // ascending degree
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const Complex& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("monic evaluation basics") {
  SUBCASE("free shift gives P_n(z) = z^n") {
    auto trunc = ggt_truncation(VerblunskySequence::zero(), 10);
    const Complex z(1.3, -0.4);
    Complex zn(1.0, 0.0);
    for (Eigen::Index n = 0; n <= 10; ++n) {
      CHECK(cdist(eval_monic(trunc, n, z), zn) <= 1e-13 * std::abs(zn));
      zn *= z;
    }
  }
  SUBCASE("chebyshev-type P_2(1) = 1 - 1/4 = 3/4") {
    auto trunc = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 4);
    CHECK(cdist(eval_monic(trunc, 2, Complex(1.0, 0.0)), Complex(0.75, 0.0)) <=
          1e-15);
  }
}

TEST_CASE("determinant identity across all sources") {
  auto check_against_lu = [](const HessenbergTruncation& trunc) {
    for (Eigen::Index n : {1, 3, 7, 12}) {
      const Eigen::MatrixXcd corner = trunc.corner(n);
      for (const Complex z :
           {Complex(1.7, 0.3), Complex(-0.4, 1.2), Complex(2.5, 0.0)}) {
        const Eigen::MatrixXcd shifted =
            z * Eigen::MatrixXcd::Identity(n, n) - corner;
        const Complex lu = shifted.fullPivLu().determinant();
        const Complex rec = eval_monic(trunc, n, z);
        CHECK(cdist(rec, lu) <= 1e-9 * std::max(1.0, std::abs(lu)));
      }
    }
  };
  check_against_lu(bergman::testing::random_ggt(0.8, 12, 31));
  check_against_lu(bergman::testing::random_jacobi_truncation(12, 32));
  check_against_lu(
      arnoldi_truncation(bergman::testing::random_disk_measure(30, 0.9, 33), 12));
}

TEST_CASE("monic coefficients match the characteristic polynomial") {
  auto check = [](const HessenbergTruncation& trunc, Eigen::Index n) {
    const auto ours = monic_coefficients(trunc, n);
    const auto oracle = char_poly_from_eigenvalues(trunc.corner(n));
    REQUIRE(ours.size() == oracle.size());
    const double scale = std::max(1.0, max_abs(oracle));
    for (std::size_t t = 0; t < ours.size(); ++t)
      CHECK(cdist(ours[t], oracle[t]) <= 1e-10 * scale);
    CHECK(ours.back() == Complex(1.0, 0.0));  // monic, exactly
  };
  for (std::uint64_t seed : {41, 42, 43}) {
    check(bergman::testing::random_ggt(0.8, 12, seed), 12);
    check(bergman::testing::random_jacobi_truncation(12, seed + 10), 12);
  }
  check(arnoldi_truncation(bergman::testing::random_disk_measure(26, 0.9, 44), 10),
        10);
}

TEST_CASE("kappa") {
  SUBCASE("free case: kappa_n = 1") {
    auto trunc = ggt_truncation(VerblunskySequence::zero(), 6);
    for (Eigen::Index n = 0; n <= 5; ++n)
      CHECK(kappa(trunc, n) == doctest::Approx(1.0));
  }
  SUBCASE("alpha_0 = 0.6: kappa_1 = 1/0.8 = 1.25") {
    auto trunc =
        ggt_truncation(VerblunskySequence::constant(Complex(0.6, 0.0)), 4);
    CHECK(kappa(trunc, 1) == doctest::Approx(1.25).epsilon(1e-14));
  }
  SUBCASE("chebyshev-type: kappa_n = 2^n") {
    auto trunc = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 12);
    for (Eigen::Index n = 0; n <= 11; ++n)
      CHECK(kappa(trunc, n) == doctest::Approx(std::pow(2.0, n)).epsilon(1e-12));
  }
  SUBCASE("kappa_n times the subdiagonal product is 1") {
    auto trunc = bergman::testing::random_ggt(0.8, 20, 51);
    for (Eigen::Index n : {0, 5, 19}) {
      double prod = 1.0;
      for (Eigen::Index j = 1; j <= n; ++j) prod *= trunc.subdiagonal(j);
      CHECK(kappa(trunc, n) * prod == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("needs n + 1 <= N") {
    auto trunc = ggt_truncation(VerblunskySequence::zero(), 4);
    CHECK_THROWS_AS(kappa(trunc, 4), BoundsError);
  }
}

TEST_CASE("ratio") {
  SUBCASE("free case: exactly 1/z either way") {
    auto trunc = ggt_truncation(VerblunskySequence::zero(), 16);
    const Complex z(1.8, 0.7);
    CHECK(cdist(ratio(trunc, 7, z, false), Complex(1.0, 0.0) / z) <= 1e-14);
    CHECK(cdist(ratio(trunc, 7, z, true), Complex(1.0, 0.0) / z) <= 1e-14);
  }
  SUBCASE("chebyshev-type at z = 2, n = 200: fixed point 4 - 2 sqrt(3)") {
    auto trunc = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 201);
    const Complex v = ratio(trunc, 200, Complex(2.0, 0.0), false);
    CHECK(cdist(v, Complex(4.0 - 2.0 * std::sqrt(3.0), 0.0)) <= 1e-8);
  }
  SUBCASE("matches the resolvent entry ((z - pi_n M pi_n)^{-1})_{n,n}") {
    auto trunc = bergman::testing::random_ggt(0.8, 30, 61);
    const double r = 2.0 * trunc.norm_bound();
    for (Eigen::Index n : {5, 17, 30}) {
      const Eigen::MatrixXcd corner = trunc.corner(n);
      for (int g = 0; g < 4; ++g) {
        const Complex z = std::polar(r, 0.3 + g * 1.7);
        const Eigen::MatrixXcd shifted =
            z * Eigen::MatrixXcd::Identity(n, n) - corner;
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
        e(n - 1) = Complex(1.0, 0.0);
        const Complex resolvent = shifted.fullPivLu().solve(e)(n - 1);
        CHECK(cdist(ratio(trunc, n, z, false), resolvent) <= 1e-10);
      }
    }
  }
  SUBCASE("pole error at an exact zero") {
    auto trunc = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 4);
    // P_2(z) = z^2 - 1/4 vanishes at 0.5.
    CHECK_THROWS_AS(ratio(trunc, 2, Complex(0.5, 0.0), false), PoleError);
  }
  SUBCASE("normal-family bound on the circle r = 2 r_est") {
    auto trunc = bergman::testing::random_ggt(0.8, 40, 62);
    const double r_est = trunc.norm_bound();
    const double r = 2.0 * r_est;
    const double bound = 1.0 / (r - r_est) + 0.1;
    for (Eigen::Index n = 1; n <= 40; ++n)
      for (int g = 0; g < 64; ++g) {
        const Complex z = std::polar(r, 2.0 * M_PI * g / 64.0);
        CHECK(std::abs(ratio(trunc, n, z, false)) <= bound);
      }
  }
}

TEST_CASE("evaluate_polynomial ties monic, orthonormal, and kappa together") {
  auto trunc = bergman::testing::random_ggt(0.7, 12, 71);
  const Complex z(2.2, 0.5);
  for (Eigen::Index n : {0, 3, 9}) {
    const auto eval = evaluate_polynomial(trunc, n, z);
    CHECK(eval.kappa > 0.0);
    CHECK(cdist(eval.orthonormal, eval.kappa * eval.monic) <=
          1e-12 * std::abs(eval.orthonormal));
  }
  CHECK(evaluate_polynomial(trunc, 0, z).kappa == doctest::Approx(1.0));
}

TEST_CASE("ratio stream agrees with the minor-recurrence ratio") {
  const Complex z(2.1, -0.6);
  auto check = [&](const HessenbergTruncation& trunc, Eigen::Index up_to) {
    RatioStream stream(trunc, z);
    for (Eigen::Index n = 1; n <= up_to; ++n) {
      stream.advance();
      CHECK(cdist(stream.monic_ratio(), ratio(trunc, n, z, false)) <= 1e-11);
      if (n <= stream.normalized_max_degree() && n + 1 <= trunc.size())
        CHECK(cdist(stream.normalized_ratio(), ratio(trunc, n, z, true)) <= 1e-11);
    }
  };
  check(bergman::testing::random_ggt(0.8, 24, 81), 24);
  check(bergman::testing::random_jacobi_truncation(24, 82), 24);
  check(arnoldi_truncation(bergman::testing::random_disk_measure(30, 0.9, 83), 20),
        20);
}

TEST_CASE("ratio stream reaches degenerate-pair degrees without overflow") {
  auto [mu, nu] = degenerate_pair(520);
  auto trunc = ggt_truncation(mu, 520);
  RatioStream stream(trunc, Complex(2.0, 0.0));
  while (stream.degree() < 500) stream.advance();
  const Complex v = stream.normalized_ratio();
  CHECK(std::isfinite(v.real()));
  CHECK(std::abs(v) <= 0.05);
}
