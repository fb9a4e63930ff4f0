#include "bergman/right_limits.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace bergman {

// -- SubsequenceSpec -------------------------------------------------------------

namespace {

void validate_indices(const std::vector<Eigen::Index>& indices) {
  if (indices.empty()) throw InvalidParameterError("subsequence must not be empty");
  Eigen::Index prev = 0;
  for (Eigen::Index n : indices) {
    if (n < 1) throw InvalidParameterError("subsequence indices must be >= 1");
    if (n <= prev)
      throw InvalidParameterError("subsequence indices must be strictly increasing");
    prev = n;
  }
}

}  // namespace

SubsequenceSpec SubsequenceSpec::explicit_list(std::vector<Eigen::Index> indices) {
  validate_indices(indices);
  SubsequenceSpec s;
  s.kind = Kind::ExplicitList;
  s.indices = std::move(indices);
  return s;
}

SubsequenceSpec SubsequenceSpec::arithmetic(Eigen::Index offset,
                                            Eigen::Index stride,
                                            Eigen::Index count) {
  if (offset < 1 || stride < 1 || count < 1)
    throw InvalidParameterError("arithmetic subsequence needs offset, stride, count >= 1");
  SubsequenceSpec s;
  s.kind = Kind::Arithmetic;
  s.indices.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) s.indices[i] = offset + i * stride;
  return s;
}

SubsequenceSpec SubsequenceSpec::parse(std::string_view text, Eigen::Index limit) {
  if (text.empty()) throw InvalidParameterError("empty subsequence spec");
  auto to_index = [](std::string_view piece) -> Eigen::Index {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(std::string(piece), &used);
      if (used != piece.size()) throw std::invalid_argument("trailing junk");
      return static_cast<Eigen::Index>(v);
    } catch (const std::exception&) {
      throw InvalidParameterError("cannot parse subsequence component '" +
                                  std::string(piece) + "'");
    }
  };
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = text.find(':', start);
      parts.push_back(text.substr(start, pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    if (parts.size() == 2) {
      const Eigen::Index offset = to_index(parts[0]);
      const Eigen::Index stride = to_index(parts[1]);
      if (offset < 1 || stride < 1 || offset > limit)
        throw InvalidParameterError("offset:stride subsequence out of range");
      const Eigen::Index count = (limit - offset) / stride + 1;
      return arithmetic(offset, stride, count);
    }
    if (parts.size() == 3)
      return arithmetic(to_index(parts[0]), to_index(parts[1]), to_index(parts[2]));
    throw InvalidParameterError("subsequence spec needs offset:stride[:count]");
  }
  std::vector<Eigen::Index> indices;
  std::size_t start = 0;
  const std::string s(text);
  while (start <= s.size()) {
    const std::size_t pos = s.find(',', start);
    const std::string piece = s.substr(start, pos - start);
    if (!piece.empty()) indices.push_back(to_index(piece));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return explicit_list(std::move(indices));
}

SubsequenceSpec SubsequenceSpec::shifted(Eigen::Index delta) const {
  SubsequenceSpec s;
  s.kind = kind;
  s.indices.reserve(indices.size());
  for (Eigen::Index n : indices) {
    if (n + delta < 1)
      throw InvalidParameterError("shift pushes subsequence below index 1");
    s.indices.push_back(n + delta);
  }
  return s;
}

// -- Right-limit detection ---------------------------------------------------------

RightLimitEstimate detect_right_limit(const HessenbergTruncation& trunc,
                                      const SubsequenceSpec& sub,
                                      Eigen::Index half_width, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  if (sub.size() < 4)
    throw InsufficientDataError("right-limit detection needs at least 4 indices");
  std::vector<MatrixWindow> windows;
  windows.reserve(sub.size());
  for (Eigen::Index n : sub.indices)
    windows.push_back(window(trunc, n, half_width));

  const MatrixWindow& final_window = windows.back();
  double dispersion = 0.0;
  for (std::size_t k = windows.size() / 2; k < windows.size(); ++k)
    dispersion = std::max(dispersion, windows[k].distance(final_window));

  return RightLimitEstimate{half_width, final_window, dispersion,
                            dispersion <= epsilon, sub};
}

RightLimitDifference right_limit_difference(const HessenbergTruncation& a,
                                            const HessenbergTruncation& b,
                                            const SubsequenceSpec& sub_a,
                                            const SubsequenceSpec& sub_b,
                                            Eigen::Index half_width) {
  if (sub_a.size() != sub_b.size())
    throw InvalidParameterError("paired subsequences must have equal length");
  RightLimitDifference out;
  out.per_pair.reserve(sub_a.size());
  for (std::size_t k = 0; k < sub_a.size(); ++k) {
    const MatrixWindow wa = window(a, sub_a.indices[k], half_width);
    const MatrixWindow wb = window(b, sub_b.indices[k], half_width);
    out.per_pair.push_back(wa.distance(wb));
  }
  out.tail_max = 0.0;
  for (std::size_t k = out.per_pair.size() / 2; k < out.per_pair.size(); ++k)
    out.tail_max = std::max(out.tail_max, out.per_pair[k]);
  return out;
}

// -- Normalized ratio comparisons ----------------------------------------------------

namespace {

std::vector<Complex> circle_grid(double radius, Eigen::Index grid_size) {
  if (!(radius > 0.0)) throw InvalidParameterError("grid radius must be positive");
  if (grid_size < 1) throw InvalidParameterError("grid needs at least one point");
  std::vector<Complex> pts(static_cast<std::size_t>(grid_size));
  for (Eigen::Index g = 0; g < grid_size; ++g) {
    const double t = 2.0 * M_PI * static_cast<double>(g) / static_cast<double>(grid_size);
    pts[static_cast<std::size_t>(g)] = radius * Complex(std::cos(t), std::sin(t));
  }
  return pts;
}

void warn_radius(const HessenbergTruncation& a, const HessenbergTruncation& b,
                 double radius) {
  const double bound = std::max(a.norm_bound(), b.norm_bound());
  if (radius <= bound)
    std::cerr << "bergman: warning: comparison radius " << radius
              << " lies inside the norm bound " << bound << "\n";
}

/// Normalized ratios of `trunc` at all requested centers for one grid point.
std::map<Eigen::Index, Complex> stream_normalized(const HessenbergTruncation& trunc,
                                                  Complex z,
                                                  const std::set<Eigen::Index>& centers) {
  std::map<Eigen::Index, Complex> out;
  if (centers.empty()) return out;
  RatioStream stream(trunc, z);
  const Eigen::Index last = *centers.rbegin();
  while (stream.degree() < last) {
    stream.advance();
    if (centers.count(stream.degree())) {
      const Complex v = stream.normalized_ratio();
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw PoleError("normalized ratio hit a zero of P_n at n = " +
                        std::to_string(stream.degree()));
      out[stream.degree()] = v;
    }
  }
  return out;
}

}  // namespace

NormalizedRatioProfile normalized_ratio_difference(
    const HessenbergTruncation& a, const HessenbergTruncation& b,
    const SubsequenceSpec& sub_a, const SubsequenceSpec& sub_b,
    Eigen::Index j_min, Eigen::Index j_max, double radius,
    Eigen::Index grid_size) {
  if (sub_a.size() != sub_b.size())
    throw InvalidParameterError("paired subsequences must have equal length");
  if (j_min > j_max) throw InvalidParameterError("offset range is empty");
  warn_radius(a, b, radius);

  std::set<Eigen::Index> centers_a, centers_b;
  for (std::size_t k = 0; k < sub_a.size(); ++k)
    for (Eigen::Index j = j_min; j <= j_max; ++j) {
      const Eigen::Index ca = sub_a.indices[k] + j;
      const Eigen::Index cb = sub_b.indices[k] + j;
      if (ca < 1 || cb < 1)
        throw BoundsError("offset pushes a ratio index below 1");
      centers_a.insert(ca);
      centers_b.insert(cb);
    }
  {
    RatioStream probe_a(a, Complex(radius, 0.0));
    RatioStream probe_b(b, Complex(radius, 0.0));
    if (*centers_a.rbegin() > probe_a.normalized_max_degree() ||
        *centers_b.rbegin() > probe_b.normalized_max_degree())
      throw BoundsError("subsequence and offsets exceed the truncation sizes");
  }

  const auto grid = circle_grid(radius, grid_size);
  const Eigen::Index offsets = j_max - j_min + 1;
  const Eigen::Index pairs = static_cast<Eigen::Index>(sub_a.size());

  NormalizedRatioProfile out;
  out.offsets.resize(static_cast<std::size_t>(offsets));
  for (Eigen::Index j = j_min; j <= j_max; ++j)
    out.offsets[static_cast<std::size_t>(j - j_min)] = j;
  out.sup_difference = Eigen::MatrixXd::Zero(offsets, pairs);
  out.radius = radius;
  out.grid_size = grid_size;

  for (const Complex& z : grid) {
    const auto va = stream_normalized(a, z, centers_a);
    const auto vb = stream_normalized(b, z, centers_b);
    for (Eigen::Index p = 0; p < pairs; ++p)
      for (Eigen::Index j = j_min; j <= j_max; ++j) {
        const double d =
            std::abs(va.at(sub_a.indices[static_cast<std::size_t>(p)] + j) -
                     vb.at(sub_b.indices[static_cast<std::size_t>(p)] + j));
        double& cell = out.sup_difference(j - j_min, p);
        cell = std::max(cell, d);
      }
  }

  out.tail_max_per_offset.assign(static_cast<std::size_t>(offsets), 0.0);
  out.tail_max = 0.0;
  const Eigen::Index tail_start = pairs / 2;
  for (Eigen::Index j = 0; j < offsets; ++j) {
    double worst = 0.0;
    for (Eigen::Index p = tail_start; p < pairs; ++p)
      worst = std::max(worst, out.sup_difference(j, p));
    out.tail_max_per_offset[static_cast<std::size_t>(j)] = worst;
    out.tail_max = std::max(out.tail_max, worst);
  }
  return out;
}

BestMatchResult best_match_distance(const HessenbergTruncation& a,
                                    const HessenbergTruncation& b,
                                    Eigen::Index n, Eigen::Index k, double radius,
                                    Eigen::Index grid_size, Eigen::Index horizon) {
  if (k < 0) throw InvalidParameterError("search start k must be >= 0");
  if (horizon <= k) throw InvalidParameterError("empty search range (horizon <= k)");
  warn_radius(a, b, radius);

  const auto grid = circle_grid(radius, grid_size);

  // Target ratios of B at degree n.
  std::vector<Complex> target(grid.size());
  {
    std::set<Eigen::Index> want{n};
    for (std::size_t g = 0; g < grid.size(); ++g) {
      RatioStream probe(b, grid[g]);
      if (n < 1 || n > probe.normalized_max_degree())
        throw BoundsError("target index n out of range for the second matrix");
      target[g] = stream_normalized(b, grid[g], want).at(n);
    }
  }

  std::vector<RatioStream> streams;
  streams.reserve(grid.size());
  for (const Complex& z : grid) {
    streams.emplace_back(a, z);
    if (horizon > streams.back().normalized_max_degree())
      throw BoundsError("horizon exceeds the truncation of the first matrix");
  }

  BestMatchResult out{std::numeric_limits<double>::infinity(), -1};
  for (Eigen::Index m = 1; m <= horizon; ++m) {
    double sup = 0.0;
    for (std::size_t g = 0; g < streams.size(); ++g) {
      streams[g].advance();
      if (m > k) {
        const Complex v = streams[g].normalized_ratio();
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          throw PoleError("normalized ratio hit a zero of P_m at m = " +
                          std::to_string(m));
        sup = std::max(sup, std::abs(v - target[g]));
      }
    }
    if (m > k && sup < out.distance) {
      out.distance = sup;
      out.best_m = m;
    }
  }
  return out;
}

}  // namespace bergman
