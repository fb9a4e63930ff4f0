#ifndef BERGMAN_IO_HPP
#define BERGMAN_IO_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "bergman/asymptotics.hpp"
#include "bergman/coefficients.hpp"
#include "bergman/hessenberg.hpp"
#include "bergman/right_limits.hpp"
#include "bergman/zeros.hpp"

namespace bergman {

/// Shortest decimal string that round-trips the double exactly. All CSV
/// output goes through this, so identical runs produce byte-identical files.
std::string format_double(double v);
std::string format_complex(Complex v);

/// Parse "a", "a+bi", "bi", "i", or "exp:t" (meaning e^{it}).
Complex parse_complex(const std::string& text);

/// Minimal CSV emitter; cells are written verbatim.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void row(const std::vector<std::string>& cells);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Declarative description of a measure model, convertible to and from the
/// canonical JSON form {"model": ..., "kind": ..., "params": ..., "seed": ...}
/// and from the compact command-line form, e.g.
///   ggt:alpha=0.5        ggt:alpha=decay         ggt:alpha=degenerate-mu
///   ggt:alpha=list:0.1;0.2;0.3i                  ggt:random:atomic{0.3:0.5,-0.3:0.5}
///   ggt:random:disk{0.8} ggt:universal:0.1;0.5i
///   jacobi:a=0.5,b=0     jacobi:a=1;2,b=0.5;-0.5 jacobi:random:a=interval{0.5,2},b=interval{-1,1}
///   arnoldi:roots-of-unity:64                    arnoldi:random-disk:count=24,radius=0.9
class ModelSpec {
 public:
  enum class Family { Verblunsky, Jacobi, Measure };

  static ModelSpec parse_compact(const std::string& text);
  static ModelSpec parse_json_text(const std::string& text);
  std::string to_json_text() const;

  Family family() const noexcept { return family_; }
  const std::string& kind() const noexcept { return kind_; }
  bool needs_seed() const noexcept { return kind_ == "random"; }
  bool has_seed() const noexcept { return seed_.has_value(); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  /// Alexandrov twist applied after construction (verblunsky models only).
  void set_lambda(Complex lambda);
  /// Coefficient stripping applied after construction (verblunsky only).
  void set_strip(std::size_t k);

  VerblunskySequence build_verblunsky(std::size_t horizon) const;
  JacobiSequence build_jacobi(std::size_t horizon) const;
  DiscretePlanarMeasure build_measure() const;
  HessenbergTruncation build(Eigen::Index n) const;

 private:
  ModelSpec() = default;
  Family family_ = Family::Verblunsky;
  std::string kind_;
  std::vector<Complex> values_;            // constant / list / universal base
  std::vector<double> a_values_, b_values_;
  std::optional<DistributionSpec> dist_, a_dist_, b_dist_;
  std::optional<std::uint64_t> seed_;
  std::size_t count_ = 0;                  // arnoldi point count
  double radius_ = 0.0;                    // arnoldi random-disk radius
  std::optional<Complex> lambda_;
  std::size_t strip_ = 0;
};

// -- Typed emitters for the documented file formats ---------------------------

void write_verblunsky_csv(const std::string& path, const VerblunskySequence& seq,
                          std::size_t count);
void write_jacobi_csv(const std::string& path, const JacobiSequence& seq,
                      std::size_t count);

/// Nonzero entries as (i, j, re, im) plus a JSON side header carrying
/// N, source and the norm bound.
void write_truncation_csv(const std::string& csv_path,
                          const std::string& header_json_path,
                          const HessenbergTruncation& trunc);

void write_moments_csv(const std::string& path,
                       const std::vector<MomentReport>& reports);

struct ComparisonRow {
  std::string quantity;
  Eigen::Index j;
  Eigen::Index n;
  Complex value;
  double bound;  // NaN when there is no bound column
};

void write_comparison_csv(const std::string& path,
                          const std::vector<ComparisonRow>& rows);
std::string comparison_summary_json(double max_last_quartile,
                                    Eigen::Index grid_size, Eigen::Index q);

struct RightLimitRow {
  Eigen::Index k;
  Eigen::Index n_k;
  Eigen::Index m_k;
  Eigen::Index j;
  double sup_diff;
};

void write_right_limit_csv(const std::string& path,
                           const std::vector<RightLimitRow>& rows);

void write_zeros_csv(const std::string& path, const ZeroSet& zs);
std::string zeros_summary_json(const ZeroSet& zs);

/// Batch polynomial evaluation request:
///   {"n_range": [lo, hi], "z_grid": {"kind": "circle", "radius": r, "points": G}}
/// or an explicit point list {"kind": "list", "points": [[re, im], ...]}.
struct EvalRequest {
  Eigen::Index n_lo, n_hi;
  std::vector<Complex> points;
};

EvalRequest parse_eval_request(const std::string& json_text);

}  // namespace bergman

#endif  // BERGMAN_IO_HPP
