#include "bergman/asymptotics.hpp"

#include <cmath>

namespace bergman {

// -- LaurentCoefficients -------------------------------------------------------

LaurentCoefficients::LaurentCoefficients(Eigen::Index center,
                                         std::vector<Complex> coefficients)
    : center_(center), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty())
    throw InvalidParameterError("laurent expansion needs at least c_0");
}

Complex LaurentCoefficients::partial_sum(Complex z) const {
  // Horner in 1/z: sum c_m / z^{m+1}.
  const Complex w = Complex(1.0, 0.0) / z;
  Complex acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc + *it) * w;
  return acc;
}

double LaurentCoefficients::tail_bound(double r_est, double abs_z,
                                       Eigen::Index m_terms) {
  if (!(abs_z > r_est))
    throw InvalidParameterError("tail bound requires |z| > r_est");
  return std::pow(r_est / abs_z, static_cast<double>(m_terms + 1)) * abs_z /
         (abs_z - r_est);
}

// -- h coefficients -------------------------------------------------------------

Complex h_coeff(const HessenbergTruncation& trunc, Eigen::Index j,
                Eigen::Index n) {
  if (n < 1 || n > trunc.size()) throw BoundsError("h_{j,n} needs 1 <= n <= N");
  if (j < 0 || j > n - 1) throw BoundsError("h_{j,n} needs 0 <= j <= n-1");
  Complex acc(1.0, 0.0);
  for (Eigen::Index l = 0; l < j; ++l) acc *= trunc.entry(n - l, n - l - 1);
  return acc * trunc.entry(n - j, n);
}

// -- Path sums -------------------------------------------------------------------

namespace {

struct PathSumContext {
  const HessenbergTruncation* trunc;
  Eigen::Index target;      // n
  Eigen::Index cap_high;    // highest admissible index
  bool skip_max_descent = false;
  std::vector<Eigen::Index> path;
  Complex total{0.0, 0.0};

  bool path_is_max_descent() const {
    // n, n-1, ..., n-m+1, n
    const std::size_t m = path.size() - 1;
    for (std::size_t k = 0; k < m; ++k)
      if (path[k] != target - static_cast<Eigen::Index>(k)) return false;
    return path[m] == target;
  }

  void dfs(Eigen::Index at, Eigen::Index steps_left, Complex product) {
    if (steps_left == 0) {
      if (at == target) {
        if (skip_max_descent && path_is_max_descent()) return;
        total += product;
      }
      return;
    }
    const Eigen::Index lo = std::max<Eigen::Index>(1, at - 1);
    // Must still be able to descend back to the target: j <= n + steps_left - 1.
    Eigen::Index hi = std::min(cap_high, target + steps_left - 1);
    if (trunc->is_tridiagonal()) hi = std::min(hi, at + 1);
    for (Eigen::Index j = lo; j <= hi; ++j) {
      const Complex e = trunc->entry(at, j);
      if (e == Complex(0.0, 0.0)) continue;
      path.push_back(j);
      dfs(j, steps_left - 1, product * e);
      path.pop_back();
    }
  }
};

Complex path_sum_impl(const HessenbergTruncation& trunc, Eigen::Index m,
                      Eigen::Index n, PowerMode mode, bool skip_max_descent) {
  if (m < 1) throw InvalidParameterError("path sum needs m >= 1");
  if (m > 12)
    throw SizeError("path enumeration refuses m > 12 (combinatorial blow-up)");
  if (n < 1 || n > trunc.size()) throw BoundsError("path sum index out of range");
  if (mode == PowerMode::FullMatrix && n + m > trunc.size())
    throw ContaminationError(
        "full-matrix path sum at n = " + std::to_string(n) + ", m = " +
        std::to_string(m) + " depends on indices beyond the truncation");

  PathSumContext ctx;
  ctx.trunc = &trunc;
  ctx.target = n;
  ctx.cap_high = (mode == PowerMode::SubTruncation) ? n : trunc.size();
  ctx.skip_max_descent = skip_max_descent;
  ctx.path.reserve(static_cast<std::size_t>(m) + 1);
  ctx.path.push_back(n);
  ctx.dfs(n, m, Complex(1.0, 0.0));
  return ctx.total;
}

}  // namespace

Complex path_sum_diagonal(const HessenbergTruncation& trunc, Eigen::Index m,
                          Eigen::Index n, PowerMode mode) {
  return path_sum_impl(trunc, m, n, mode, false);
}

Complex beta_term(const HessenbergTruncation& trunc, Eigen::Index n,
                  Eigen::Index m) {
  if (m < 1) throw InvalidParameterError("beta_{n,m} needs m >= 1");
  if (n - (m - 1) < 1)
    throw BoundsError("beta_{n,m} needs the maximal descent to stay inside the matrix");
  return path_sum_impl(trunc, m, n, PowerMode::SubTruncation, true);
}

// -- Resolvent expansion ---------------------------------------------------------

LaurentCoefficients laurent_ratio(const HessenbergTruncation& trunc,
                                  Eigen::Index n, Eigen::Index m_terms) {
  if (n < 1 || n > trunc.size()) throw BoundsError("laurent center out of range");
  if (m_terms < 0 || m_terms > 40)
    throw SizeError("laurent expansion is limited to 40 terms");
  const Eigen::MatrixXcd a = trunc.corner(n);
  std::vector<Complex> c(static_cast<std::size_t>(m_terms) + 1);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(n - 1) = Complex(1.0, 0.0);
  c[0] = Complex(1.0, 0.0);
  for (Eigen::Index m = 1; m <= m_terms; ++m) {
    v = a * v;
    c[static_cast<std::size_t>(m)] = v(n - 1);
  }
  return LaurentCoefficients(n, std::move(c));
}

// -- Moments ----------------------------------------------------------------------

Complex weak_moment(const HessenbergTruncation& trunc, Eigen::Index j,
                    Eigen::Index n) {
  if (j < 0) throw InvalidParameterError("moment order must be >= 0");
  if (n < 0) throw BoundsError("weak moment needs n >= 0");
  return matrix_power_diagonal(trunc, j, n + 1, PowerMode::FullMatrix);
}

std::vector<Complex> cesaro_moments_upto(const HessenbergTruncation& trunc,
                                         Eigen::Index j_max, Eigen::Index n) {
  if (j_max < 0) throw InvalidParameterError("moment order must be >= 0");
  if (n < 1 || n > trunc.size()) throw BoundsError("cesaro moment needs 1 <= n <= N");
  std::vector<Complex> out(static_cast<std::size_t>(j_max) + 1);
  out[0] = Complex(1.0, 0.0);
  if (j_max == 0) return out;
  const Eigen::MatrixXcd a = trunc.corner(n);
  Eigen::MatrixXcd power = a;
  out[1] = power.trace() / static_cast<double>(n);
  for (Eigen::Index j = 2; j <= j_max; ++j) {
    power = power * a;
    out[static_cast<std::size_t>(j)] = power.trace() / static_cast<double>(n);
  }
  return out;
}

Complex cesaro_moment(const HessenbergTruncation& trunc, Eigen::Index j,
                      Eigen::Index n) {
  return cesaro_moments_upto(trunc, j, n)[static_cast<std::size_t>(j)];
}

// -- Relative comparisons ----------------------------------------------------------

RelativeHProfile relative_h_profile(const HessenbergTruncation& a,
                                    const HessenbergTruncation& b,
                                    Eigen::Index q, Eigen::Index j_max,
                                    const std::vector<Eigen::Index>& n_grid) {
  if (q < 0) throw InvalidParameterError("shift q must be >= 0");
  if (j_max < 0) throw InvalidParameterError("j_max must be >= 0");
  if (n_grid.empty()) throw InvalidParameterError("n-grid must not be empty");

  RelativeHProfile out;
  out.q = q;
  out.j_max = j_max;
  out.n_grid = n_grid;
  out.differences.resize(j_max + 1, static_cast<Eigen::Index>(n_grid.size()));
  for (std::size_t col = 0; col < n_grid.size(); ++col) {
    const Eigen::Index n = n_grid[col];
    if (n - q < j_max + 1)
      throw BoundsError("grid point n = " + std::to_string(n) +
                        " violates n - q >= j + 1");
    for (Eigen::Index j = 0; j <= j_max; ++j)
      out.differences(j, static_cast<Eigen::Index>(col)) =
          h_coeff(a, j, n) - h_coeff(b, j, n - q);
  }

  const std::size_t count = n_grid.size();
  std::size_t start = (count * 3) / 4;
  if (start >= count) start = count - 1;
  out.last_quartile_max.assign(static_cast<std::size_t>(j_max) + 1, 0.0);
  out.overall_last_quartile_max = 0.0;
  for (Eigen::Index j = 0; j <= j_max; ++j) {
    double worst = 0.0;
    for (std::size_t col = start; col < count; ++col)
      worst = std::max(worst,
                       std::abs(out.differences(j, static_cast<Eigen::Index>(col))));
    out.last_quartile_max[static_cast<std::size_t>(j)] = worst;
    out.overall_last_quartile_max = std::max(out.overall_last_quartile_max, worst);
  }
  return out;
}

Complex relative_weak_moments(const HessenbergTruncation& a,
                              const HessenbergTruncation& b, Eigen::Index q,
                              Eigen::Index j, Eigen::Index n) {
  if (n - q < 0) throw BoundsError("relative weak moment needs n - q >= 0");
  return weak_moment(a, j, n) - weak_moment(b, j, n - q);
}

Complex relative_cesaro_moments(const HessenbergTruncation& a,
                                const HessenbergTruncation& b, Eigen::Index j,
                                Eigen::Index n, Eigen::Index q) {
  if (n - q < 1) throw BoundsError("relative cesaro moment needs n - q >= 1");
  return cesaro_moment(a, j, n) - cesaro_moment(b, j, n - q);
}

namespace {

/// (1/n) sum_{k=0}^{n-1} weak_j(trunc, k) = (1/n) sum_{i=1}^{n} (M^j)_{ii},
/// computed through the (n+j)-corner so no entry is contaminated.
Complex average_weak_moment(const HessenbergTruncation& trunc, Eigen::Index j,
                            Eigen::Index n) {
  if (n < 1 || n > trunc.size()) throw BoundsError("average needs 1 <= n <= N");
  if (n + j > trunc.size())
    throw ContaminationError(
        "weak-moment average at n = " + std::to_string(n) + ", j = " +
        std::to_string(j) + " depends on indices beyond the truncation");
  if (j == 0) return Complex(1.0, 0.0);
  const Eigen::Index dim = n + j;
  const Eigen::MatrixXcd a = trunc.corner(dim);
  Eigen::MatrixXcd power = a;
  for (Eigen::Index step = 1; step < j; ++step) power = power * a;
  Complex acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) acc += power(i, i);
  return acc / static_cast<double>(n);
}

}  // namespace

CesaroBoundReport cesaro_bound_check(const HessenbergTruncation& a,
                                     const HessenbergTruncation& b,
                                     Eigen::Index j, Eigen::Index n) {
  if (j < 0) throw InvalidParameterError("moment order must be >= 0");
  const Complex lhs = cesaro_moment(a, j, n) - cesaro_moment(b, j, n) -
                      (average_weak_moment(a, j, n) - average_weak_moment(b, j, n));
  const double rhs =
      2.0 * static_cast<double>(j) * (a.norm_bound() + b.norm_bound()) /
      static_cast<double>(n);
  CesaroBoundReport out;
  out.lhs = std::abs(lhs);
  out.rhs = rhs;
  out.holds = out.lhs <= out.rhs;
  return out;
}

CesaroBoundReport cesaro_bound_check_single(const HessenbergTruncation& a,
                                            Eigen::Index j, Eigen::Index n) {
  if (j < 0) throw InvalidParameterError("moment order must be >= 0");
  const Complex lhs = cesaro_moment(a, j, n) - average_weak_moment(a, j, n);
  const double rhs = 2.0 * static_cast<double>(j) * a.norm_bound() /
                     static_cast<double>(n);
  CesaroBoundReport out;
  out.lhs = std::abs(lhs);
  out.rhs = rhs;
  out.holds = out.lhs <= out.rhs;
  return out;
}

}  // namespace bergman
