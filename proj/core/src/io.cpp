#include "bergman/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace bergman {

using nlohmann::json;

// -- Formatting ---------------------------------------------------------------

std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_complex(Complex v) {
  std::string out = format_double(v.real());
  if (!(v.imag() < 0.0)) out += "+";
  out += format_double(v.imag());
  out += "i";
  return out;
}

Complex parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw InvalidParameterError("empty complex literal");

  if (text.rfind("exp:", 0) == 0) {
    const std::string arg = text.substr(4);
    try {
      std::size_t used = 0;
      const double t = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument("trailing junk");
      return Complex(std::cos(t), std::sin(t));
    } catch (const std::exception&) {
      throw InvalidParameterError("cannot parse polar form '" + raw + "'");
    }
  }

  auto parse_real = [&raw](const std::string& piece) -> double {
    try {
      std::size_t used = 0;
      const double v = std::stod(piece, &used);
      if (used != piece.size()) throw std::invalid_argument("trailing junk");
      return v;
    } catch (const std::exception&) {
      throw InvalidParameterError("cannot parse number in '" + raw + "'");
    }
  };

  if (text.back() != 'i') return Complex(parse_real(text), 0.0);

  std::string body = text.substr(0, text.size() - 1);
  // Split off the imaginary part: last +/- not bound to an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') &&
        body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  auto imag_value = [&](std::string piece) -> double {
    if (piece.empty() || piece == "+") return 1.0;
    if (piece == "-") return -1.0;
    return parse_real(piece);
  };
  if (split == std::string::npos) return Complex(0.0, imag_value(body));
  return Complex(parse_real(body.substr(0, split)),
                 imag_value(body.substr(split)));
}

// -- Files ---------------------------------------------------------------------

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
  if (!out_) throw IoError("cannot open '" + path + "' for writing");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw IoError("write failed on '" + path_ + "'");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failed on '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// -- ModelSpec ------------------------------------------------------------------

namespace {

/// Split on delim, ignoring delimiters inside {...}.
std::vector<std::string> split_top_level(const std::string& text, char delim) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == delim && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  for (const std::string& piece : split_top_level(text, ';'))
    out.push_back(parse_complex(piece));
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& piece : split_top_level(text, ';')) {
    const Complex v = parse_complex(piece);
    if (v.imag() != 0.0)
      throw InvalidParameterError("expected a real value, got '" + piece + "'");
    out.push_back(v.real());
  }
  return out;
}

DistributionSpec parse_dist_compact(const std::string& text) {
  const std::size_t brace = text.find('{');
  if (brace == std::string::npos || text.back() != '}')
    throw InvalidParameterError("distribution needs the form name{...}: '" + text + "'");
  const std::string name = text.substr(0, brace);
  const std::string body = text.substr(brace + 1, text.size() - brace - 2);
  if (name == "atomic") {
    std::vector<Complex> atoms;
    std::vector<double> probs;
    for (const std::string& pair : split_top_level(body, ',')) {
      const std::size_t colon = pair.rfind(':');
      if (colon == std::string::npos)
        throw InvalidParameterError("atomic atom needs value:probability");
      atoms.push_back(parse_complex(pair.substr(0, colon)));
      probs.push_back(parse_complex(pair.substr(colon + 1)).real());
    }
    return DistributionSpec::atomic(std::move(atoms), std::move(probs));
  }
  if (name == "disk") return DistributionSpec::uniform_disk(parse_complex(body).real());
  if (name == "interval") {
    const auto parts = split_top_level(body, ',');
    if (parts.size() != 2)
      throw InvalidParameterError("interval needs lo,hi");
    return DistributionSpec::uniform_interval(parse_complex(parts[0]).real(),
                                              parse_complex(parts[1]).real());
  }
  throw InvalidParameterError("unknown distribution '" + name + "'");
}

json dist_to_json(const DistributionSpec& d) {
  json out;
  switch (d.kind()) {
    case DistributionSpec::Kind::FiniteAtomic: {
      out["kind"] = "atomic";
      json atoms = json::array(), probs = json::array();
      for (std::size_t i = 0; i < d.atoms().size(); ++i) {
        atoms.push_back({d.atoms()[i].real(), d.atoms()[i].imag()});
        probs.push_back(d.probabilities()[i]);
      }
      out["atoms"] = atoms;
      out["probs"] = probs;
      break;
    }
    case DistributionSpec::Kind::UniformDiskRadius:
      out["kind"] = "disk";
      out["radius"] = d.radius();
      break;
    case DistributionSpec::Kind::UniformInterval:
      out["kind"] = "interval";
      out["lo"] = d.lo();
      out["hi"] = d.hi();
      break;
  }
  return out;
}

DistributionSpec dist_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "atomic") {
    std::vector<Complex> atoms;
    std::vector<double> probs;
    for (const auto& a : j.at("atoms"))
      atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    for (const auto& p : j.at("probs")) probs.push_back(p.get<double>());
    return DistributionSpec::atomic(std::move(atoms), std::move(probs));
  }
  if (kind == "disk") return DistributionSpec::uniform_disk(j.at("radius").get<double>());
  if (kind == "interval")
    return DistributionSpec::uniform_interval(j.at("lo").get<double>(),
                                              j.at("hi").get<double>());
  throw InvalidParameterError("unknown distribution kind '" + kind + "'");
}

json complex_list_to_json(const std::vector<Complex>& values) {
  json out = json::array();
  for (const Complex& v : values) out.push_back({v.real(), v.imag()});
  return out;
}

std::vector<Complex> complex_list_from_json(const json& j) {
  std::vector<Complex> out;
  for (const auto& v : j) out.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  return out;
}

}  // namespace

ModelSpec ModelSpec::parse_compact(const std::string& text) {
  ModelSpec spec;
  const auto head = split_top_level(text, ':');
  if (head.empty()) throw InvalidParameterError("empty model spec");
  const std::string& family = head[0];
  auto rest = [&](std::size_t from) {
    std::string joined;
    for (std::size_t i = from; i < head.size(); ++i) {
      if (i > from) joined += ':';
      joined += head[i];
    }
    return joined;
  };

  if (family == "ggt" || family == "verblunsky") {
    spec.family_ = Family::Verblunsky;
    if (head.size() < 2) throw InvalidParameterError("ggt model needs a body");
    if (head[1] == "random") {
      spec.kind_ = "random";
      spec.dist_ = parse_dist_compact(rest(2));
      return spec;
    }
    if (head[1] == "universal") {
      spec.kind_ = "universal";
      spec.values_ = parse_complex_list(rest(2));
      return spec;
    }
    const std::string body = rest(1);
    if (body.rfind("alpha=", 0) != 0)
      throw InvalidParameterError("ggt model needs alpha=...: '" + text + "'");
    const std::string value = body.substr(6);
    if (value == "decay" || value == "zero" || value == "degenerate-mu" ||
        value == "degenerate-nu") {
      spec.kind_ = value;
    } else if (value.rfind("list:", 0) == 0) {
      spec.kind_ = "list";
      spec.values_ = parse_complex_list(value.substr(5));
    } else {
      spec.kind_ = "constant";
      spec.values_ = {parse_complex(value)};
    }
    return spec;
  }

  if (family == "jacobi") {
    spec.family_ = Family::Jacobi;
    if (head.size() < 2) throw InvalidParameterError("jacobi model needs a body");
    if (head[1] == "random") {
      spec.kind_ = "random";
      for (const std::string& part : split_top_level(rest(2), ',')) {
        if (part.rfind("a=", 0) == 0)
          spec.a_dist_ = parse_dist_compact(part.substr(2));
        else if (part.rfind("b=", 0) == 0)
          spec.b_dist_ = parse_dist_compact(part.substr(2));
        else
          throw InvalidParameterError("jacobi random needs a=?,b=?: '" + text + "'");
      }
      if (!spec.a_dist_ || !spec.b_dist_)
        throw InvalidParameterError("jacobi random needs both distributions");
      return spec;
    }
    if (head[1] == "universal") {
      spec.kind_ = "universal";
      for (const std::string& part : split_top_level(rest(2), ',')) {
        if (part.rfind("a=", 0) == 0)
          spec.a_values_ = parse_real_list(part.substr(2));
        else if (part.rfind("b=", 0) == 0)
          spec.b_values_ = parse_real_list(part.substr(2));
      }
      if (spec.a_values_.empty() || spec.b_values_.empty())
        throw InvalidParameterError("jacobi universal needs both bases");
      return spec;
    }
    for (const std::string& part : split_top_level(rest(1), ',')) {
      if (part.rfind("a=", 0) == 0)
        spec.a_values_ = parse_real_list(part.substr(2));
      else if (part.rfind("b=", 0) == 0)
        spec.b_values_ = parse_real_list(part.substr(2));
      else
        throw InvalidParameterError("jacobi model needs a=?,b=?: '" + text + "'");
    }
    if (spec.a_values_.empty() || spec.b_values_.empty())
      throw InvalidParameterError("jacobi model needs both a and b");
    spec.kind_ = (spec.a_values_.size() == 1 && spec.b_values_.size() == 1)
                     ? "constant"
                     : "periodic";
    return spec;
  }

  if (family == "arnoldi" || family == "measure") {
    spec.family_ = Family::Measure;
    if (head.size() < 2) throw InvalidParameterError("arnoldi model needs a body");
    if (head[1] == "roots-of-unity") {
      spec.kind_ = "roots-of-unity";
      if (head.size() < 3)
        throw InvalidParameterError("roots-of-unity needs a point count");
      spec.count_ = static_cast<std::size_t>(parse_complex(head[2]).real());
      return spec;
    }
    if (head[1] == "random-disk") {
      spec.kind_ = "random-disk";
      for (const std::string& part : split_top_level(rest(2), ',')) {
        if (part.rfind("count=", 0) == 0)
          spec.count_ = static_cast<std::size_t>(parse_complex(part.substr(6)).real());
        else if (part.rfind("radius=", 0) == 0)
          spec.radius_ = parse_complex(part.substr(7)).real();
      }
      if (spec.count_ == 0 || !(spec.radius_ > 0.0))
        throw InvalidParameterError("random-disk needs count=?,radius=?");
      return spec;
    }
    throw InvalidParameterError("unknown arnoldi model '" + head[1] + "'");
  }

  throw InvalidParameterError("unknown model family '" + family + "'");
}

ModelSpec ModelSpec::parse_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidParameterError(std::string("model JSON does not parse: ") + e.what());
  }
  ModelSpec spec;
  const std::string model = j.at("model").get<std::string>();
  if (model == "verblunsky")
    spec.family_ = Family::Verblunsky;
  else if (model == "jacobi")
    spec.family_ = Family::Jacobi;
  else if (model == "measure")
    spec.family_ = Family::Measure;
  else
    throw InvalidParameterError("unknown model '" + model + "'");
  spec.kind_ = j.at("kind").get<std::string>();
  const json params = j.value("params", json::object());
  for (auto it = params.begin(); it != params.end(); ++it) {
    const std::string& key = it.key();
    if (key == "values" || key == "base")
      spec.values_ = complex_list_from_json(*it);
    else if (key == "value")
      spec.values_ = {Complex(it->at(0).get<double>(), it->at(1).get<double>())};
    else if (key == "a")
      spec.a_values_ = it->get<std::vector<double>>();
    else if (key == "b")
      spec.b_values_ = it->get<std::vector<double>>();
    else if (key == "base_a")
      spec.a_values_ = it->get<std::vector<double>>();
    else if (key == "base_b")
      spec.b_values_ = it->get<std::vector<double>>();
    else if (key == "dist")
      spec.dist_ = dist_from_json(*it);
    else if (key == "a_dist")
      spec.a_dist_ = dist_from_json(*it);
    else if (key == "b_dist")
      spec.b_dist_ = dist_from_json(*it);
    else if (key == "count")
      spec.count_ = it->get<std::size_t>();
    else if (key == "radius")
      spec.radius_ = it->get<double>();
    else
      throw InvalidParameterError("unknown model parameter '" + key + "'");
  }
  if (j.contains("seed")) spec.seed_ = j.at("seed").get<std::uint64_t>();
  if (j.contains("transform")) {
    const json& t = j.at("transform");
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (it.key() == "alexandrov")
        spec.set_lambda(Complex(it->at(0).get<double>(), it->at(1).get<double>()));
      else if (it.key() == "strip")
        spec.set_strip(it->get<std::size_t>());
      else
        throw InvalidParameterError("unknown transform '" + it.key() + "'");
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key != "model" && key != "kind" && key != "params" && key != "seed" &&
        key != "transform")
      throw InvalidParameterError("unknown model key '" + key + "'");
  }
  return spec;
}

std::string ModelSpec::to_json_text() const {
  json j;
  switch (family_) {
    case Family::Verblunsky: j["model"] = "verblunsky"; break;
    case Family::Jacobi: j["model"] = "jacobi"; break;
    case Family::Measure: j["model"] = "measure"; break;
  }
  j["kind"] = kind_;
  json params = json::object();
  if (kind_ == "constant" && family_ == Family::Verblunsky)
    params["value"] = {values_[0].real(), values_[0].imag()};
  if (kind_ == "list") params["values"] = complex_list_to_json(values_);
  if (kind_ == "universal" && family_ == Family::Verblunsky)
    params["base"] = complex_list_to_json(values_);
  if (family_ == Family::Jacobi && (kind_ == "constant" || kind_ == "periodic" ||
                                    kind_ == "list")) {
    params["a"] = a_values_;
    params["b"] = b_values_;
  }
  if (family_ == Family::Jacobi && kind_ == "universal") {
    params["base_a"] = a_values_;
    params["base_b"] = b_values_;
  }
  if (kind_ == "random") {
    if (dist_) params["dist"] = dist_to_json(*dist_);
    if (a_dist_) params["a_dist"] = dist_to_json(*a_dist_);
    if (b_dist_) params["b_dist"] = dist_to_json(*b_dist_);
  }
  if (kind_ == "roots-of-unity") params["count"] = count_;
  if (kind_ == "random-disk") {
    params["count"] = count_;
    params["radius"] = radius_;
  }
  j["params"] = params;
  if (seed_) j["seed"] = *seed_;
  if (lambda_ || strip_ > 0) {
    json t = json::object();
    if (lambda_) t["alexandrov"] = {lambda_->real(), lambda_->imag()};
    if (strip_ > 0) t["strip"] = strip_;
    j["transform"] = t;
  }
  return j.dump();
}

void ModelSpec::set_lambda(Complex lambda) {
  if (family_ != Family::Verblunsky)
    throw InvalidParameterError("alexandrov twist applies to verblunsky models only");
  lambda_ = lambda;
}

void ModelSpec::set_strip(std::size_t k) {
  if (family_ != Family::Verblunsky)
    throw InvalidParameterError("stripping applies to verblunsky models only");
  strip_ = k;
}

VerblunskySequence ModelSpec::build_verblunsky(std::size_t horizon) const {
  if (family_ != Family::Verblunsky)
    throw InvalidParameterError("model is not a verblunsky model");
  auto base = [&]() -> VerblunskySequence {
    if (kind_ == "constant") return VerblunskySequence::constant(values_.at(0));
    if (kind_ == "decay") return VerblunskySequence::harmonic_decay();
    if (kind_ == "zero") return VerblunskySequence::zero();
    if (kind_ == "degenerate-mu")
      return degenerate_pair(horizon + strip_).first;
    if (kind_ == "degenerate-nu")
      return degenerate_pair(horizon + strip_).second;
    if (kind_ == "list") return VerblunskySequence::from_values(values_);
    if (kind_ == "universal")
      return universal_circle_sequence(values_, horizon + strip_);
    if (kind_ == "random") {
      if (!seed_) throw InvalidParameterError("random model needs a seed");
      return sample_iid(*dist_, horizon + strip_, *seed_);
    }
    throw InvalidParameterError("unknown verblunsky kind '" + kind_ + "'");
  }();
  VerblunskySequence seq = std::move(base);
  if (lambda_) seq = alexandrov(seq, *lambda_);
  if (strip_ > 0) seq = strip(seq, strip_);
  return seq;
}

JacobiSequence ModelSpec::build_jacobi(std::size_t horizon) const {
  if (family_ != Family::Jacobi)
    throw InvalidParameterError("model is not a jacobi model");
  if (kind_ == "constant")
    return JacobiSequence::constant(a_values_.at(0), b_values_.at(0));
  if (kind_ == "periodic") return JacobiSequence::periodic(a_values_, b_values_);
  if (kind_ == "list") return JacobiSequence::from_values(a_values_, b_values_);
  if (kind_ == "universal")
    return universal_jacobi_pair(a_values_, b_values_, horizon);
  if (kind_ == "random") {
    if (!seed_) throw InvalidParameterError("random model needs a seed");
    return sample_iid(*a_dist_, *b_dist_, horizon, *seed_);
  }
  throw InvalidParameterError("unknown jacobi kind '" + kind_ + "'");
}

DiscretePlanarMeasure ModelSpec::build_measure() const {
  if (family_ != Family::Measure)
    throw InvalidParameterError("model is not a measure model");
  if (kind_ == "roots-of-unity")
    return DiscretePlanarMeasure::uniform_roots_of_unity(count_);
  if (kind_ == "random-disk") {
    if (!seed_) throw InvalidParameterError("random model needs a seed");
    CounterRng rng(*seed_);
    std::vector<Complex> points(count_);
    std::vector<double> weights(count_);
    for (std::size_t k = 0; k < count_; ++k) {
      const double r = radius_ * std::sqrt(rng.uniform(3, k, 0));
      const double t = 2.0 * M_PI * rng.uniform(3, k, 1);
      points[k] = Complex(r * std::cos(t), r * std::sin(t));
      weights[k] = 0.5 + rng.uniform(4, k, 0);
    }
    return DiscretePlanarMeasure::normalized(std::move(points), std::move(weights));
  }
  throw InvalidParameterError("unknown measure kind '" + kind_ + "'");
}

HessenbergTruncation ModelSpec::build(Eigen::Index n) const {
  switch (family_) {
    case Family::Verblunsky:
      return ggt_truncation(build_verblunsky(static_cast<std::size_t>(n)), n);
    case Family::Jacobi:
      return jacobi_truncation(build_jacobi(static_cast<std::size_t>(n)), n);
    case Family::Measure:
      return arnoldi_truncation(build_measure(), n);
  }
  throw InvalidParameterError("unreachable model family");
}

// -- Typed emitters --------------------------------------------------------------

void write_verblunsky_csv(const std::string& path, const VerblunskySequence& seq,
                          std::size_t count) {
  CsvWriter csv(path);
  csv.row({"n", "re", "im"});
  for (std::size_t n = 0; n < count; ++n) {
    const Complex v = seq.value(n);
    csv.row({std::to_string(n), format_double(v.real()), format_double(v.imag())});
  }
}

void write_jacobi_csv(const std::string& path, const JacobiSequence& seq,
                      std::size_t count) {
  CsvWriter csv(path);
  csv.row({"n", "a", "b"});
  for (std::size_t n = 1; n <= count; ++n)
    csv.row({std::to_string(n), format_double(seq.a(n)), format_double(seq.b(n))});
}

void write_truncation_csv(const std::string& csv_path,
                          const std::string& header_json_path,
                          const HessenbergTruncation& trunc) {
  CsvWriter csv(csv_path);
  csv.row({"i", "j", "re", "im"});
  for (Eigen::Index j = 1; j <= trunc.size(); ++j) {
    const Eigen::Index top = std::min<Eigen::Index>(j + 1, trunc.size());
    for (Eigen::Index i = 1; i <= top; ++i) {
      const Complex v = trunc.entry(i, j);
      if (v == Complex(0.0, 0.0)) continue;
      csv.row({std::to_string(i), std::to_string(j), format_double(v.real()),
               format_double(v.imag())});
    }
  }
  json header;
  header["N"] = trunc.size();
  header["source"] = to_string(trunc.source());
  header["r_est"] = trunc.norm_bound();
  write_text_file(header_json_path, header.dump());
}

void write_moments_csv(const std::string& path,
                       const std::vector<MomentReport>& reports) {
  CsvWriter csv(path);
  csv.row({"kind", "j", "n", "re", "im"});
  for (const MomentReport& r : reports)
    csv.row({r.kind == MomentReport::Kind::Weak ? "weak" : "cesaro",
             std::to_string(r.order), std::to_string(r.index),
             format_double(r.value.real()), format_double(r.value.imag())});
}

void write_comparison_csv(const std::string& path,
                          const std::vector<ComparisonRow>& rows) {
  CsvWriter csv(path);
  csv.row({"quantity", "j", "n", "re", "im", "bound"});
  for (const ComparisonRow& r : rows)
    csv.row({r.quantity, std::to_string(r.j), std::to_string(r.n),
             format_double(r.value.real()), format_double(r.value.imag()),
             std::isnan(r.bound) ? "" : format_double(r.bound)});
}

std::string comparison_summary_json(double max_last_quartile,
                                    Eigen::Index grid_size, Eigen::Index q) {
  json j;
  j["max_last_quartile"] = max_last_quartile;
  j["grid"] = grid_size;
  j["q"] = q;
  return j.dump();
}

void write_right_limit_csv(const std::string& path,
                           const std::vector<RightLimitRow>& rows) {
  CsvWriter csv(path);
  csv.row({"k", "n_k", "m_k", "j", "sup_diff"});
  for (const RightLimitRow& r : rows)
    csv.row({std::to_string(r.k), std::to_string(r.n_k), std::to_string(r.m_k),
             std::to_string(r.j), format_double(r.sup_diff)});
}

void write_zeros_csv(const std::string& path, const ZeroSet& zs) {
  CsvWriter csv(path);
  csv.row({"n", "index", "re", "im"});
  for (std::size_t i = 0; i < zs.zeros.size(); ++i)
    csv.row({std::to_string(zs.degree), std::to_string(i),
             format_double(zs.zeros[i].real()), format_double(zs.zeros[i].imag())});
}

std::string zeros_summary_json(const ZeroSet& zs) {
  json j;
  j["degree"] = zs.degree;
  j["residual"] = zs.residual;
  double max_mod = 0.0;
  for (const Complex& z : zs.zeros) max_mod = std::max(max_mod, std::abs(z));
  j["max_modulus"] = max_mod;
  return j.dump();
}

EvalRequest parse_eval_request(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidParameterError(std::string("eval request does not parse: ") + e.what());
  }
  EvalRequest req;
  const auto& range = j.at("n_range");
  req.n_lo = range.at(0).get<Eigen::Index>();
  req.n_hi = range.at(1).get<Eigen::Index>();
  if (req.n_lo < 0 || req.n_hi < req.n_lo)
    throw InvalidParameterError("eval request needs 0 <= n_lo <= n_hi");
  const auto& grid = j.at("z_grid");
  const std::string kind = grid.at("kind").get<std::string>();
  if (kind == "circle") {
    const double r = grid.at("radius").get<double>();
    const Eigen::Index g = grid.at("points").get<Eigen::Index>();
    if (!(r > 0.0) || g < 1)
      throw InvalidParameterError("circle grid needs radius > 0 and points >= 1");
    for (Eigen::Index i = 0; i < g; ++i) {
      const double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(g);
      req.points.emplace_back(r * std::cos(t), r * std::sin(t));
    }
  } else if (kind == "list") {
    for (const auto& p : grid.at("points"))
      req.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  } else {
    throw InvalidParameterError("unknown z-grid kind '" + kind + "'");
  }
  if (req.points.empty()) throw InvalidParameterError("empty z grid");
  return req;
}

}  // namespace bergman
