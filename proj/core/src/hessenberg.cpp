#include "bergman/hessenberg.hpp"

#include <algorithm>
#include <cmath>

namespace bergman {

std::string to_string(MatrixSource source) {
  switch (source) {
    case MatrixSource::Ggt: return "ggt";
    case MatrixSource::Jacobi: return "jacobi";
    case MatrixSource::Arnoldi: return "arnoldi";
  }
  return "unknown";
}

// -- MatrixWindow ---------------------------------------------------------

MatrixWindow::MatrixWindow(Eigen::Index center, Eigen::Index half_width,
                           Eigen::MatrixXcd entries)
    : center_(center), half_width_(half_width), entries_(std::move(entries)) {
  const Eigen::Index side = 2 * half_width_ + 1;
  if (entries_.rows() != side || entries_.cols() != side)
    throw InvalidParameterError("window entries have the wrong shape");
}

Complex MatrixWindow::at(Eigen::Index dr, Eigen::Index dc) const {
  if (std::abs(dr) > half_width_ || std::abs(dc) > half_width_)
    throw BoundsError("window offset out of range");
  return entries_(dr + half_width_, dc + half_width_);
}

double MatrixWindow::distance(const MatrixWindow& other) const {
  if (half_width_ != other.half_width_)
    throw InvalidParameterError("window half-widths differ");
  return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

// -- HessenbergTruncation ---------------------------------------------------

Complex HessenbergTruncation::entry(Eigen::Index i, Eigen::Index j) const {
  if (i < 1 || j < 1 || i > size_ || j > size_)
    throw BoundsError("matrix entry index out of range");
  if (i > j + 1) return Complex(0.0, 0.0);

  if (const auto* g = std::get_if<GgtData>(&data_)) {
    if (i == j + 1) return Complex(g->rho[j - 1], 0.0);
    // prod_{k=i-1}^{j-2} rho_k = exp(L[j-1] - L[i-1]) with L the prefix sums.
    const double log_prod = g->log_rho_sum[j - 1] - g->log_rho_sum[i - 1];
    const Complex alpha_row = (i == 1) ? Complex(-1.0, 0.0) : g->alpha[i - 2];
    return -alpha_row * std::conj(g->alpha[j - 1]) * std::exp(log_prod);
  }
  if (const auto* t = std::get_if<JacobiData>(&data_)) {
    if (i == j) return Complex(t->b[i - 1], 0.0);
    if (j == i + 1) return Complex(t->a[i - 1], 0.0);
    if (i == j + 1) return Complex(t->a[j - 1], 0.0);
    return Complex(0.0, 0.0);
  }
  return std::get<DenseData>(data_).entries(i - 1, j - 1);
}

double HessenbergTruncation::subdiagonal(Eigen::Index j) const {
  if (j < 1 || j + 1 > size_) throw BoundsError("subdiagonal index out of range");
  const Complex v = entry(j + 1, j);
  if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-14 * std::max(1.0, v.real()))
    throw InvalidParameterError(
        "subdiagonal entry is not a positive real at column " + std::to_string(j));
  return v.real();
}

Eigen::MatrixXcd HessenbergTruncation::corner(Eigen::Index n) const {
  if (n < 1 || n > size_) throw BoundsError("corner size out of range");
  if (n > kDenseDimensionCap)
    throw SizeError("dense corner of size " + std::to_string(n) +
                    " exceeds the materialization cap");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 1; j <= n; ++j) {
    const Eigen::Index top = std::min<Eigen::Index>(j + 1, n);
    for (Eigen::Index i = 1; i <= top; ++i) out(i - 1, j - 1) = entry(i, j);
  }
  return out;
}

const std::vector<Complex>* HessenbergTruncation::verblunsky() const noexcept {
  if (const auto* g = std::get_if<GgtData>(&data_)) return &g->alpha;
  return nullptr;
}

const std::pair<std::vector<double>, std::vector<double>>*
HessenbergTruncation::jacobi_parameters() const noexcept {
  if (const auto* t = std::get_if<JacobiData>(&data_)) return &t->pair_view;
  return nullptr;
}

HessenbergTruncation HessenbergTruncation::from_dense(Eigen::MatrixXcd entries,
                                                      MatrixSource source) {
  if (entries.rows() != entries.cols() || entries.rows() < 1)
    throw InvalidParameterError("dense truncation must be square and nonempty");
  for (Eigen::Index j = 0; j < entries.cols(); ++j)
    for (Eigen::Index i = j + 2; i < entries.rows(); ++i)
      if (entries(i, j) != Complex(0.0, 0.0))
        throw InvalidParameterError("matrix is not upper Hessenberg");
  HessenbergTruncation t;
  t.source_ = source;
  t.size_ = entries.rows();
  t.norm_bound_ = entries.cwiseAbs().rowwise().sum().maxCoeff();
  t.data_ = DenseData{std::move(entries)};
  return t;
}

// -- Constructors ------------------------------------------------------------

HessenbergTruncation ggt_truncation(const VerblunskySequence& seq,
                                    Eigen::Index n) {
  if (n < 1) throw InvalidParameterError("truncation size must be positive");
  HessenbergTruncation::GgtData data;
  data.alpha.resize(n);
  data.rho.resize(n);
  data.log_rho_sum.resize(n + 1);
  data.log_rho_sum[0] = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    // value() rejects |alpha| >= 1, naming the index.
    data.alpha[k] = seq.value(static_cast<std::size_t>(k));
    data.rho[k] = std::sqrt(1.0 - std::norm(data.alpha[k]));
    data.log_rho_sum[k + 1] = data.log_rho_sum[k] + std::log(data.rho[k]);
  }

  // Row sums in O(N): row i = rho_{i-2} [i>=2] + |alpha_{i-2}| * S_i with
  // S_i = sum_{j>=i} |alpha_{j-1}| prod_{k=i-1}^{j-2} rho_k, and
  // S_i = |alpha_{i-1}| + rho_{i-1} S_{i+1}.
  std::vector<double> s(n + 2, 0.0);
  for (Eigen::Index i = n; i >= 1; --i)
    s[i] = std::abs(data.alpha[i - 1]) + (i < n ? data.rho[i - 1] * s[i + 1] : 0.0);
  double bound = s[1];  // row 1: |alpha_{-1}| = 1
  for (Eigen::Index i = 2; i <= n; ++i)
    bound = std::max(bound, data.rho[i - 2] + std::abs(data.alpha[i - 2]) * s[i]);

  HessenbergTruncation t;
  t.source_ = MatrixSource::Ggt;
  t.size_ = n;
  t.norm_bound_ = bound;
  t.data_ = std::move(data);
  return t;
}

HessenbergTruncation jacobi_truncation(const JacobiSequence& seq,
                                       Eigen::Index n) {
  if (n < 1) throw InvalidParameterError("truncation size must be positive");
  HessenbergTruncation::JacobiData data;
  data.a.resize(n > 1 ? n - 1 : 0);
  data.b.resize(n);
  for (Eigen::Index k = 1; k < n; ++k)
    data.a[k - 1] = seq.a(static_cast<std::size_t>(k));
  for (Eigen::Index k = 1; k <= n; ++k)
    data.b[k - 1] = seq.b(static_cast<std::size_t>(k));

  double bound = 0.0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    double row = std::abs(data.b[i - 1]);
    if (i >= 2) row += data.a[i - 2];
    if (i < n) row += data.a[i - 1];
    bound = std::max(bound, row);
  }

  data.pair_view = {data.a, data.b};
  HessenbergTruncation t;
  t.source_ = MatrixSource::Jacobi;
  t.size_ = n;
  t.norm_bound_ = bound;
  t.data_ = std::move(data);
  return t;
}

HessenbergTruncation arnoldi_truncation(const DiscretePlanarMeasure& mu,
                                        Eigen::Index n) {
  if (n < 1) throw InvalidParameterError("truncation size must be positive");
  if (static_cast<std::size_t>(n) > mu.count() - 1)
    throw InvalidParameterError(
        "arnoldi truncation needs n <= count - 1; orthonormal polynomials "
        "exist only up to degree count - 1");

  const Eigen::Index npts = static_cast<Eigen::Index>(mu.count());
  Eigen::VectorXcd z(npts);
  Eigen::VectorXd w(npts);
  for (Eigen::Index k = 0; k < npts; ++k) {
    z(k) = mu.points()[k];
    w(k) = mu.weights()[k];
  }
  auto dot = [&](const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
    // <f, g> = sum_k w_k f_k conj(g_k)
    return (g.conjugate().cwiseProduct(f).cwiseProduct(w.cast<Complex>())).sum();
  };

  Eigen::MatrixXcd basis(npts, n);
  basis.col(0).setOnes();  // p_0 = 1 for a probability measure
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);

  for (Eigen::Index j = 1; j <= n; ++j) {
    Eigen::VectorXcd v = z.cwiseProduct(basis.col(j - 1));
    // Classical Gram-Schmidt applied twice; accumulated coefficients are the
    // column entries.
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const Complex c = dot(v, basis.col(i));
        h(i) += c;
        v -= c * basis.col(i);
      }
    }
    for (Eigen::Index i = 0; i < j; ++i) m(i, j - 1) = h(i);
    const double beta = std::sqrt(std::abs(dot(v, v)));
    if (j < n) {
      if (beta < 1e-13)
        throw DegenerateMeasureError("arnoldi breakdown: candidate polynomial has vanishing norm",
                                     static_cast<std::size_t>(j));
      m(j, j - 1) = beta;
      basis.col(j) = v / beta;
    }
  }

  // Orthonormality residual from the double orthogonalization.
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = dot(basis.col(j), basis.col(i));
  double residual = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) residual = std::max(residual, std::abs(gram(i, j)));
  if (residual > 1e-10)
    throw NumericError("arnoldi basis lost orthogonality (residual " +
                       std::to_string(residual) + ")");

  return HessenbergTruncation::from_dense(std::move(m), MatrixSource::Arnoldi);
}

// -- Accessor operations -------------------------------------------------------

MatrixWindow window(const HessenbergTruncation& trunc, Eigen::Index center,
                    Eigen::Index half_width) {
  if (half_width < 0) throw InvalidParameterError("half-width must be >= 0");
  if (center - half_width < 1 || center + half_width > trunc.size())
    throw BoundsError("window exceeds the truncation");
  const Eigen::Index side = 2 * half_width + 1;
  Eigen::MatrixXcd e(side, side);
  for (Eigen::Index r = 0; r < side; ++r)
    for (Eigen::Index c = 0; c < side; ++c)
      e(r, c) = trunc.entry(center - half_width + r, center - half_width + c);
  return MatrixWindow(center, half_width, std::move(e));
}

Complex kappa_ratio(const HessenbergTruncation& trunc, Eigen::Index n) {
  if (n < 2 || n > trunc.size()) throw BoundsError("kappa ratio needs 2 <= n <= N");
  return trunc.entry(n, n - 1);
}

Complex matrix_power_diagonal(const HessenbergTruncation& trunc, Eigen::Index m,
                              Eigen::Index n, PowerMode mode) {
  if (m < 0) throw InvalidParameterError("power must be >= 0");
  if (n < 1 || n > trunc.size()) throw BoundsError("diagonal index out of range");
  if (m == 0) return Complex(1.0, 0.0);

  Eigen::Index dim;
  if (mode == PowerMode::SubTruncation) {
    dim = n;
  } else {
    if (n + m > trunc.size())
      throw ContaminationError(
          "(M^" + std::to_string(m) + ")_{" + std::to_string(n) + "," +
          std::to_string(n) + "} depends on indices beyond the truncation size " +
          std::to_string(trunc.size()));
    dim = n + m;  // paths from n in m steps stay below n + m
  }
  const Eigen::MatrixXcd a = trunc.corner(dim);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(n - 1) = Complex(1.0, 0.0);
  for (Eigen::Index step = 0; step < m; ++step) v = a * v;
  return v(n - 1);
}

}  // namespace bergman
