#include "doctest.h"

#include <cmath>

#include "bergman/hessenberg.hpp"
#include "support.hpp"

using namespace bergman;
using bergman::testing::cdist;

TEST_CASE("ggt truncation entries") {
  SUBCASE("free case alpha = 0 is the pure shift") {
    auto trunc = ggt_truncation(VerblunskySequence::zero(), 6);
    for (Eigen::Index j = 1; j <= 6; ++j)
      for (Eigen::Index i = 1; i <= 6; ++i)
        CHECK(trunc.entry(i, j) == Complex(i == j + 1 ? 1.0 : 0.0, 0.0));
  }
  SUBCASE("entry (1,1) = -alpha_{-1} conj(alpha_0) = conj(alpha_0)") {
    auto trunc =
        ggt_truncation(VerblunskySequence::constant(Complex(0.5, 0.0)), 4);
    CHECK(cdist(trunc.entry(1, 1), Complex(0.5, 0.0)) == 0.0);
  }
  SUBCASE("harmonic decay: entry (2,2) = -alpha_0 conj(alpha_1) = -1/6") {
    auto trunc = ggt_truncation(VerblunskySequence::harmonic_decay(), 8);
    CHECK(cdist(trunc.entry(2, 2), Complex(-1.0 / 6.0, 0.0)) <= 1e-16);

    // Column norms are 1: multiplication by z is an isometry on the circle.
    const auto corner = trunc.corner(8);
    for (Eigen::Index j = 0; j < 7; ++j)
      CHECK(corner.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("column isometry for random streams with |alpha| <= 0.9") {
    for (std::uint64_t seed : {1, 2, 3}) {
      auto trunc = bergman::testing::random_ggt(0.9, 24, seed);
      const auto corner = trunc.corner(24);
      for (Eigen::Index j = 0; j < 23; ++j)
        CHECK(std::abs(corner.col(j).norm() - 1.0) <= 1e-12);
    }
  }
  SUBCASE("coefficient above modulus 1 is rejected with its index") {
    auto bad = VerblunskySequence(
        [](std::size_t n) { return n == 2 ? Complex(1.5, 0) : Complex(0.1, 0); });
    CHECK_THROWS_AS(ggt_truncation(bad, 5), InvalidCoefficientError);
  }
  SUBCASE("closed-form norm bound matches the dense row sums") {
    for (std::uint64_t seed : {4, 5}) {
      auto trunc = bergman::testing::random_ggt(0.8, 20, seed);
      const double dense =
          trunc.corner(20).cwiseAbs().rowwise().sum().maxCoeff();
      CHECK(trunc.norm_bound() == doctest::Approx(dense).epsilon(1e-12));
    }
  }
}

TEST_CASE("jacobi truncation entries") {
  SUBCASE("chebyshev-type: zero diagonal, 1/2 off the diagonal") {
    auto trunc = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 5);
    for (Eigen::Index i = 1; i <= 5; ++i) {
      CHECK(trunc.entry(i, i) == Complex(0.0, 0.0));
      if (i < 5) {
        CHECK(trunc.entry(i, i + 1) == Complex(0.5, 0.0));
        CHECK(trunc.entry(i + 1, i) == Complex(0.5, 0.0));
      }
    }
    CHECK(trunc.norm_bound() == doctest::Approx(1.0));
  }
  SUBCASE("direct placement: N=3, a=(1,2), b=(5,6,7)") {
    auto trunc = jacobi_truncation(
        JacobiSequence::from_values({1.0, 2.0, 99.0}, {5.0, 6.0, 7.0}), 3);
    const Eigen::MatrixXcd m = trunc.corner(3);
    Eigen::MatrixXcd expected(3, 3);
    expected << 5, 1, 0, 1, 6, 2, 0, 2, 7;
    CHECK((m - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("symmetry is exact by construction") {
    auto trunc = bergman::testing::random_jacobi_truncation(12, 17);
    const auto m = trunc.corner(12);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("nonpositive a is rejected") {
    CHECK_THROWS_AS(
        jacobi_truncation(
            JacobiSequence([](std::size_t) { return -1.0; },
                           [](std::size_t) { return 0.0; }, 2.0),
            3),
        InvalidCoefficientError);
  }
}

TEST_CASE("arnoldi truncation") {
  SUBCASE("uniform roots of unity look like the free shift") {
    auto mu = DiscretePlanarMeasure::uniform_roots_of_unity(64);
    auto trunc = arnoldi_truncation(mu, 8);
    for (Eigen::Index j = 1; j <= 8; ++j)
      for (Eigen::Index i = 1; i <= std::min<Eigen::Index>(j + 1, 8); ++i) {
        const double expected = (i == j + 1) ? 1.0 : 0.0;
        CHECK(std::abs(trunc.entry(i, j) - Complex(expected, 0.0)) <= 1e-12);
      }
  }
  SUBCASE("real support forces a real tridiagonal matrix") {
    std::vector<Complex> pts;
    std::vector<double> w;
    for (int k = 0; k < 12; ++k) {
      pts.emplace_back(-1.0 + 2.0 * k / 11.0, 0.0);
      w.push_back(1.0);
    }
    auto trunc = arnoldi_truncation(
        DiscretePlanarMeasure::normalized(std::move(pts), std::move(w)), 6);
    const auto m = trunc.corner(6);
    for (Eigen::Index i = 0; i < 6; ++i)
      for (Eigen::Index j = 0; j < 6; ++j) {
        CHECK(std::abs(m(i, j).imag()) <= 1e-12);
        if (i + 1 < j) CHECK(std::abs(m(i, j)) <= 1e-10);
      }
  }
  SUBCASE("(M^m)_{1,1} reproduces the quadrature moments") {
    auto mu = bergman::testing::random_disk_measure(24, 0.9, 11);
    auto trunc = arnoldi_truncation(mu, 10);
    for (Eigen::Index m = 0; m <= 6; ++m) {
      const Complex lhs =
          matrix_power_diagonal(trunc, m, 1, PowerMode::FullMatrix);
      CHECK(cdist(lhs, mu.moment(static_cast<std::size_t>(m))) <= 1e-10);
    }
  }
  SUBCASE("degree cap: orthonormal polynomials exist only up to count - 1") {
    auto mu = DiscretePlanarMeasure::uniform_roots_of_unity(6);
    CHECK_THROWS_AS(arnoldi_truncation(mu, 6), InvalidParameterError);
    CHECK_NOTHROW(arnoldi_truncation(mu, 5));
  }
  SUBCASE("cross-model agreement with the free ggt matrix") {
    auto roots = DiscretePlanarMeasure::uniform_roots_of_unity(4 * 8 + 3);
    auto a = arnoldi_truncation(roots, 8);
    auto g = ggt_truncation(VerblunskySequence::zero(), 8);
    CHECK((a.corner(8) - g.corner(8)).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("windows") {
  auto trunc = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 12);

  SUBCASE("m = 0 is the single diagonal entry") {
    auto w = window(trunc, 5, 0);
    CHECK(w.entries().rows() == 1);
    CHECK(w.at(0, 0) == trunc.entry(5, 5));
  }
  SUBCASE("pure shift window") {
    auto shift = ggt_truncation(VerblunskySequence::zero(), 8);
    auto w = window(shift, 4, 1);
    Eigen::MatrixXcd expected(3, 3);
    expected << 0, 0, 0, 1, 0, 0, 0, 1, 0;
    CHECK((w.entries() - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("tridiagonal window at the interior") {
    auto w = window(trunc, 5, 1);
    CHECK(w.at(-1, 0) == Complex(0.5, 0.0));
    CHECK(w.at(0, 1) == Complex(0.5, 0.0));
    CHECK(w.at(0, 0) == Complex(0.0, 0.0));
  }
  SUBCASE("range checks") {
    CHECK_THROWS_AS(window(trunc, 1, 1), BoundsError);
    CHECK_THROWS_AS(window(trunc, 12, 1), BoundsError);
    CHECK_NOTHROW(window(trunc, 11, 1));
  }
  SUBCASE("window extraction is construction-local") {
    auto small = bergman::testing::random_ggt(0.8, 30, 7);
    auto large = ggt_truncation(
        bergman::testing::random_verblunsky(0.8, 40, 7), 40);
    const auto w1 = window(small, 15, 3);
    const auto w2 = window(large, 15, 3);
    CHECK((w1.entries() - w2.entries()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("kappa ratio is the subdiagonal entry") {
  SUBCASE("free case: 1") {
    auto trunc = ggt_truncation(VerblunskySequence::zero(), 5);
    CHECK(kappa_ratio(trunc, 3) == Complex(1.0, 0.0));
  }
  SUBCASE("alpha_0 = 0.6 gives 0.8 at n = 2") {
    auto trunc =
        ggt_truncation(VerblunskySequence::constant(Complex(0.6, 0.0)), 4);
    CHECK(cdist(kappa_ratio(trunc, 2), Complex(0.8, 0.0)) <= 1e-15);
  }
  SUBCASE("chebyshev-type: 1/2") {
    auto trunc = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 4);
    CHECK(kappa_ratio(trunc, 3) == Complex(0.5, 0.0));
  }
  SUBCASE("bounds") {
    auto trunc = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 4);
    CHECK_THROWS_AS(kappa_ratio(trunc, 1), BoundsError);
    CHECK_THROWS_AS(kappa_ratio(trunc, 5), BoundsError);
  }
}

TEST_CASE("matrix power diagonal") {
  auto cheb = jacobi_truncation(JacobiSequence::constant(0.5, 0.0), 12);

  SUBCASE("m = 0 gives 1, m = 1 the diagonal entry") {
    CHECK(matrix_power_diagonal(cheb, 0, 4, PowerMode::SubTruncation) ==
          Complex(1.0, 0.0));
    CHECK(matrix_power_diagonal(cheb, 1, 4, PowerMode::FullMatrix) ==
          cheb.entry(4, 4));
  }
  SUBCASE("chebyshev-type m = 2 interior: a^2 + b^2 + a^2 = 1/2") {
    CHECK(cdist(matrix_power_diagonal(cheb, 2, 5, PowerMode::FullMatrix),
                Complex(0.5, 0.0)) <= 1e-15);
  }
  SUBCASE("sub-truncation mode at n = N matches a dense power") {
    for (std::uint64_t seed : {21, 22}) {
      auto trunc = bergman::testing::random_ggt(0.8, 16, seed);
      const Eigen::MatrixXcd corner = trunc.corner(16);
      Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(16, 16);
      for (Eigen::Index m = 1; m <= 8; ++m) {
        power = power * corner;
        CHECK(cdist(matrix_power_diagonal(trunc, m, 16, PowerMode::SubTruncation),
                    power(15, 15)) <= 1e-12);
      }
    }
  }
  SUBCASE("full-matrix values are truncation-stable when n + m <= N") {
    auto seq = bergman::testing::random_verblunsky(0.8, 40, 23);
    auto small = ggt_truncation(seq, 20);
    auto large = ggt_truncation(seq, 25);
    for (Eigen::Index m = 1; m <= 6; ++m)
      for (Eigen::Index n : {3, 8, 14}) {
        if (n + m > 20) continue;
        CHECK(cdist(matrix_power_diagonal(small, m, n, PowerMode::FullMatrix),
                    matrix_power_diagonal(large, m, n, PowerMode::FullMatrix)) <=
              1e-13);
      }
  }
  SUBCASE("contamination guard") {
    CHECK_THROWS_AS(matrix_power_diagonal(cheb, 5, 10, PowerMode::FullMatrix),
                    ContaminationError);
    CHECK_NOTHROW(matrix_power_diagonal(cheb, 2, 10, PowerMode::FullMatrix));
  }
}

TEST_CASE("from_dense validates the Hessenberg pattern") {
  Eigen::MatrixXcd good = Eigen::MatrixXcd::Zero(3, 3);
  good(1, 0) = Complex(1.0, 0.0);
  good(0, 1) = Complex(2.0, 0.0);
  CHECK_NOTHROW(HessenbergTruncation::from_dense(good, MatrixSource::Arnoldi));

  Eigen::MatrixXcd bad = good;
  bad(2, 0) = Complex(0.5, 0.0);
  CHECK_THROWS_AS(HessenbergTruncation::from_dense(bad, MatrixSource::Arnoldi),
                  InvalidParameterError);
}
