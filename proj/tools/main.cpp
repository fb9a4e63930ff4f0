// Command-line front end: builds measure models, runs the asymptotic
// experiments, and emits CSV plus a manifest JSON per invocation.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric error
// (contamination / pole / eigensolver / degeneracy), 4 I/O error.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bergman/asymptotics.hpp"
#include "bergman/coefficients.hpp"
#include "bergman/hessenberg.hpp"
#include "bergman/io.hpp"
#include "bergman/polynomials.hpp"
#include "bergman/right_limits.hpp"
#include "bergman/zeros.hpp"

namespace {

using bergman::Complex;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

struct Experiment {
  std::string out_dir = ".";
  std::string subcommand;
  json config = json::object();
  json summary = json::object();
  std::vector<std::string> outputs;

  std::string path(const std::string& name) const {
    return (std::filesystem::path(out_dir) / name).string();
  }

  void note(const std::string& key, const json& value) { config[key] = value; }

  void write_manifest() {
    json m;
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["config"] = config;
    m["config_hash"] = hex64(fnv1a(subcommand + config.dump()));
    m["outputs"] = outputs;
    m["summary"] = summary;
    bergman::write_text_file(path("manifest.json"), m.dump(2) + "\n");
  }
};

bergman::ModelSpec parse_model(const std::string& text) {
  // Accept both the compact form and inline JSON.
  if (!text.empty() && text.front() == '{')
    return bergman::ModelSpec::parse_json_text(text);
  return bergman::ModelSpec::parse_compact(text);
}

bergman::ModelSpec build_model_spec(const std::string& model_text,
                                    std::optional<std::uint64_t> seed,
                                    const std::string& lambda_text,
                                    std::uint64_t strip_k) {
  bergman::ModelSpec spec = parse_model(model_text);
  if (seed) spec.set_seed(*seed);
  if (!lambda_text.empty()) spec.set_lambda(bergman::parse_complex(lambda_text));
  if (strip_k > 0) spec.set_strip(static_cast<std::size_t>(strip_k));
  if (spec.needs_seed() && !spec.has_seed())
    throw bergman::InvalidParameterError("random models need --seed");
  return spec;
}

std::vector<Eigen::Index> parse_index_list(const std::string& text) {
  std::vector<Eigen::Index> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(',', start);
    const std::string piece = text.substr(start, pos - start);
    if (!piece.empty()) out.push_back(static_cast<Eigen::Index>(std::stoll(piece)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (out.empty()) throw bergman::InvalidParameterError("empty index list");
  return out;
}

// Inject options read from --config <file.json> ahead of the explicit flags;
// every option takes the last occurrence, so flags override the file.
std::vector<std::string> with_config_defaults(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  json cfg;
  try {
    cfg = json::parse(bergman::read_text_file(config_path));
  } catch (const json::exception& e) {
    throw bergman::InvalidParameterError(std::string("config file does not parse: ") +
                                         e.what());
  }
  if (!cfg.is_object())
    throw bergman::InvalidParameterError("config file must hold a JSON object");

  std::vector<std::string> merged;
  merged.push_back(args[0]);
  std::size_t body_start = 1;
  if (args.size() > 1 && !args[1].empty() && args[1][0] != '-') {
    merged.push_back(args[1]);  // subcommand
    body_start = 2;
  }
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string flag = "--" + it.key();
    if (it->is_boolean()) {
      if (it->get<bool>()) merged.push_back(flag);
    } else if (it->is_string()) {
      merged.push_back(flag);
      merged.push_back(it->get<std::string>());
    } else {
      merged.push_back(flag);
      merged.push_back(it->dump());
    }
  }
  for (std::size_t i = body_start; i < args.size(); ++i) merged.push_back(args[i]);
  return merged;
}

void take_last_everywhere(CLI::App* app) {
  for (CLI::Option* opt : app->get_options())
    if (opt->get_expected_min() > 0)
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (CLI::App* sub : app->get_subcommands({})) take_last_everywhere(sub);
}

// ---------------------------------------------------------------------------
// Subcommand payloads. Each returns the filled Experiment.

struct CommonModelArgs {
  std::string model;
  std::optional<std::uint64_t> seed;
  std::string lambda;
  std::uint64_t strip_k = 0;

  void attach(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--model", model,
                                "Model spec (compact form or inline JSON)");
    if (required) opt->required();
    cmd->add_option("--seed", seed, "Seed for random models");
    cmd->add_option("--lambda", lambda,
                    "Alexandrov twist, e.g. '0+1i' or 'exp:2' (verblunsky only)");
    cmd->add_option("--strip", strip_k, "Drop the first k coefficients");
  }

  bergman::ModelSpec spec() const {
    return build_model_spec(model, seed, lambda, strip_k);
  }

  void note(Experiment& exp) const {
    exp.note("model", model);
    if (seed) exp.note("seed", *seed);
    if (!lambda.empty()) exp.note("lambda", lambda);
    if (strip_k > 0) exp.note("strip", strip_k);
  }
};

void run_build_matrix(Experiment& exp, const CommonModelArgs& margs,
                      Eigen::Index n) {
  const auto trunc = margs.spec().build(n);
  bergman::write_truncation_csv(exp.path("matrix.csv"),
                                exp.path("matrix_header.json"), trunc);
  exp.outputs = {"matrix.csv", "matrix_header.json"};
  exp.summary["N"] = trunc.size();
  exp.summary["source"] = bergman::to_string(trunc.source());
  exp.summary["r_est"] = trunc.norm_bound();
  std::cout << "built " << bergman::to_string(trunc.source()) << " truncation N="
            << n << " r_est=" << bergman::format_double(trunc.norm_bound()) << "\n";
}

void run_ratio(Experiment& exp, const CommonModelArgs& margs, Eigen::Index n,
               Eigen::Index trunc_size, const std::string& z_text, bool normalized,
               const std::string& batch_request) {
  const Eigen::Index size = trunc_size > 0 ? trunc_size : n + 1;
  const auto trunc = margs.spec().build(size);
  exp.note("N", size);
  exp.summary["r_est"] = trunc.norm_bound();

  if (!batch_request.empty()) {
    const auto req = bergman::parse_eval_request(
        bergman::read_text_file(batch_request));
    bergman::CsvWriter csv(exp.path("ratio_batch.csv"));
    csv.row({"n", "re_z", "im_z", "re_value", "im_value"});
    for (Eigen::Index deg = req.n_lo; deg <= req.n_hi; ++deg)
      for (const Complex& z : req.points) {
        const Complex v = bergman::ratio(trunc, deg, z, normalized);
        csv.row({std::to_string(deg), bergman::format_double(z.real()),
                 bergman::format_double(z.imag()),
                 bergman::format_double(v.real()),
                 bergman::format_double(v.imag())});
      }
    exp.outputs.push_back("ratio_batch.csv");
    return;
  }

  const Complex z = bergman::parse_complex(z_text);
  const Complex v = bergman::ratio(trunc, n, z, normalized);
  exp.summary["value"] = {v.real(), v.imag()};
  std::cout << (normalized ? "p" : "P") << "_" << (n - 1) << "/"
            << (normalized ? "p" : "P") << "_" << n << "(" << z_text
            << ") = " << bergman::format_complex(v) << "\n";
}

void run_laurent(Experiment& exp, const CommonModelArgs& margs, Eigen::Index n,
                 Eigen::Index trunc_size, Eigen::Index terms) {
  const Eigen::Index size = trunc_size > 0 ? trunc_size : n;
  const auto trunc = margs.spec().build(size);
  exp.note("N", size);
  const auto laurent = bergman::laurent_ratio(trunc, n, terms);
  bergman::CsvWriter csv(exp.path("laurent.csv"));
  csv.row({"m", "re", "im"});
  for (std::size_t m = 0; m < laurent.coefficients().size(); ++m) {
    const Complex c = laurent.coefficients()[m];
    csv.row({std::to_string(m), bergman::format_double(c.real()),
             bergman::format_double(c.imag())});
  }
  exp.outputs = {"laurent.csv"};
  const double r = trunc.norm_bound();
  exp.summary["r_est"] = r;
  exp.summary["tail_bound_at_2r"] =
      bergman::LaurentCoefficients::tail_bound(r, 2.0 * r, terms);
  std::cout << "laurent coefficients written (center n=" << n << ", "
            << terms << " terms)\n";
}

void run_moments(Experiment& exp, const CommonModelArgs& margs,
                 const std::string& kind, Eigen::Index j_max,
                 const std::string& n_grid_text, Eigen::Index trunc_size) {
  const auto n_grid = parse_index_list(n_grid_text);
  const Eigen::Index max_n = *std::max_element(n_grid.begin(), n_grid.end());
  Eigen::Index size = trunc_size;
  if (size <= 0) size = kind == "weak" ? max_n + j_max + 1 : max_n;
  const auto trunc = margs.spec().build(size);
  exp.note("N", size);

  std::vector<bergman::MomentReport> reports;
  for (const Eigen::Index n : n_grid) {
    if (kind == "weak") {
      for (Eigen::Index j = 0; j <= j_max; ++j)
        reports.push_back({bergman::MomentReport::Kind::Weak, j, n,
                           bergman::weak_moment(trunc, j, n)});
    } else if (kind == "cesaro") {
      const auto values = bergman::cesaro_moments_upto(trunc, j_max, n);
      for (Eigen::Index j = 0; j <= j_max; ++j)
        reports.push_back({bergman::MomentReport::Kind::Cesaro, j, n,
                           values[static_cast<std::size_t>(j)]});
    } else {
      throw bergman::InvalidParameterError("moment kind must be weak or cesaro");
    }
  }
  bergman::write_moments_csv(exp.path("moments.csv"), reports);
  exp.outputs = {"moments.csv"};
  exp.summary["rows"] = reports.size();
  std::cout << "wrote " << reports.size() << " moment rows\n";
}

void run_zeros(Experiment& exp, const CommonModelArgs& margs, Eigen::Index n,
               Eigen::Index trunc_size) {
  const Eigen::Index size = trunc_size > 0 ? trunc_size : n;
  const auto trunc = margs.spec().build(size);
  exp.note("N", size);
  const auto zs = bergman::zeros(trunc, n);
  bergman::write_zeros_csv(exp.path("zeros.csv"), zs);
  bergman::write_text_file(exp.path("zeros_summary.json"),
                           bergman::zeros_summary_json(zs) + "\n");
  exp.outputs = {"zeros.csv", "zeros_summary.json"};
  exp.summary["residual"] = zs.residual;
  std::cout << "computed " << n << " zeros, residual "
            << bergman::format_double(zs.residual) << "\n";
}

void run_right_limit(Experiment& exp, const CommonModelArgs& margs,
                     const std::string& sub_text, Eigen::Index m, double epsilon,
                     Eigen::Index trunc_size) {
  const auto trunc = margs.spec().build(trunc_size);
  const auto sub = bergman::SubsequenceSpec::parse(sub_text, trunc_size - m);
  const auto est = bergman::detect_right_limit(trunc, sub, m, epsilon);

  std::vector<bergman::RightLimitRow> rows;
  for (std::size_t k = 0; k < sub.indices.size(); ++k) {
    const auto w = bergman::window(trunc, sub.indices[k], m);
    rows.push_back({static_cast<Eigen::Index>(k), sub.indices[k], sub.indices[k],
                    0, w.distance(est.window)});
  }
  bergman::write_right_limit_csv(exp.path("right_limit.csv"), rows);
  json s;
  s["dispersion"] = est.dispersion;
  s["converged"] = est.converged;
  s["epsilon"] = epsilon;
  s["half_width"] = m;
  bergman::write_text_file(exp.path("right_limit_summary.json"), s.dump() + "\n");
  exp.outputs = {"right_limit.csv", "right_limit_summary.json"};
  exp.summary = s;
  std::cout << "dispersion = " << bergman::format_double(est.dispersion)
            << (est.converged ? " (converged)" : " (not converged)") << "\n";
}

struct CompareArgs {
  std::string model_a, model_b;
  std::string paper_example;
  std::string what = "h";
  Eigen::Index q = 0;
  Eigen::Index j_min = 0, j_max = 3;
  std::string n_grid_text;
  double radius = 0.0;  // 0 -> 2 * max(r_est)
  Eigen::Index grid_points = 64;
  Eigen::Index half_width = 2;
  Eigen::Index trunc_size = 0;
  std::optional<std::uint64_t> seed;
  std::string lambda = "0+1i";
  std::uint64_t strip_k = 1;
};

void run_compare(Experiment& exp, const CompareArgs& args) {
  std::string model_a = args.model_a, model_b = args.model_b;
  std::string lambda_b, what = args.what;
  std::uint64_t strip_b = 0;
  Eigen::Index q = args.q;

  if (!args.paper_example.empty()) {
    if (args.paper_example == "degenerate") {
      model_a = "ggt:alpha=degenerate-mu";
      model_b = "ggt:alpha=degenerate-nu";
    } else if (args.paper_example == "alexandrov") {
      model_a = "ggt:alpha=decay";
      model_b = "ggt:alpha=decay";
      lambda_b = args.lambda;
    } else if (args.paper_example == "stripping") {
      model_a = "ggt:alpha=decay";
      model_b = "ggt:alpha=decay";
      strip_b = args.strip_k;
      q = static_cast<Eigen::Index>(args.strip_k);
    } else {
      throw bergman::InvalidParameterError(
          "paper-example must be degenerate, alexandrov, or stripping");
    }
  }
  if (model_a.empty() || model_b.empty())
    throw bergman::InvalidParameterError("compare needs --model-a/--model-b or --paper-example");

  auto n_grid = args.n_grid_text.empty()
                    ? std::vector<Eigen::Index>{50, 100, 200}
                    : parse_index_list(args.n_grid_text);
  std::sort(n_grid.begin(), n_grid.end());
  const Eigen::Index max_n = n_grid.back();
  const Eigen::Index size_a =
      args.trunc_size > 0 ? args.trunc_size : max_n + args.j_max + 2;
  const Eigen::Index size_b = size_a;

  const auto spec_a = build_model_spec(model_a, args.seed, "", 0);
  const auto spec_b = build_model_spec(model_b, args.seed, lambda_b, strip_b);
  const auto trunc_a = spec_a.build(size_a);
  const auto trunc_b = spec_b.build(size_b);

  const double radius = args.radius > 0.0
                            ? args.radius
                            : 2.0 * std::max(trunc_a.norm_bound(), trunc_b.norm_bound());

  exp.note("model_a_effective", model_a);
  exp.note("model_b_effective", model_b);
  exp.note("q", q);
  exp.note("r", radius);
  exp.note("G", args.grid_points);
  exp.note("N", size_a);

  std::vector<bergman::ComparisonRow> rows;
  double summary_value = 0.0;

  if (what == "h") {
    const auto profile =
        bergman::relative_h_profile(trunc_a, trunc_b, q, args.j_max, n_grid);
    for (Eigen::Index j = 0; j <= args.j_max; ++j)
      for (std::size_t col = 0; col < n_grid.size(); ++col)
        rows.push_back({"h_diff", j, n_grid[col],
                        profile.differences(j, static_cast<Eigen::Index>(col)),
                        std::nan("")});
    summary_value = profile.overall_last_quartile_max;
  } else if (what == "weak") {
    for (Eigen::Index j = args.j_min < 0 ? 0 : args.j_min; j <= args.j_max; ++j)
      for (const Eigen::Index n : n_grid)
        rows.push_back({"weak_diff", j, n,
                        bergman::relative_weak_moments(trunc_a, trunc_b, q, j, n),
                        std::nan("")});
    for (const auto& row : rows)
      summary_value = std::max(summary_value, std::abs(row.value));
  } else if (what == "cesaro") {
    for (Eigen::Index j = args.j_min < 0 ? 0 : args.j_min; j <= args.j_max; ++j)
      for (const Eigen::Index n : n_grid) {
        rows.push_back({"cesaro_diff", j, n,
                        bergman::relative_cesaro_moments(trunc_a, trunc_b, j, n, q),
                        std::nan("")});
        const auto bound = bergman::cesaro_bound_check(trunc_a, trunc_b, j, n);
        rows.back().bound = bound.rhs;
      }
    for (const auto& row : rows)
      summary_value = std::max(summary_value, std::abs(row.value));
  } else if (what == "normalized-ratio") {
    auto sub_a = bergman::SubsequenceSpec::explicit_list(n_grid);
    auto sub_b = sub_a.shifted(-q);
    const auto profile = bergman::normalized_ratio_difference(
        trunc_a, trunc_b, sub_a, sub_b, args.j_min, args.j_max, radius,
        args.grid_points);
    std::vector<bergman::RightLimitRow> rl_rows;
    for (std::size_t joff = 0; joff < profile.offsets.size(); ++joff)
      for (std::size_t k = 0; k < sub_a.indices.size(); ++k)
        rl_rows.push_back({static_cast<Eigen::Index>(k), sub_a.indices[k],
                           sub_b.indices[k], profile.offsets[joff],
                           profile.sup_difference(static_cast<Eigen::Index>(joff),
                                                  static_cast<Eigen::Index>(k))});
    bergman::write_right_limit_csv(exp.path("compare.csv"), rl_rows);
    summary_value = profile.tail_max;
  } else if (what == "windows") {
    auto sub_a = bergman::SubsequenceSpec::explicit_list(n_grid);
    auto sub_b = sub_a.shifted(-q);
    const auto diff = bergman::right_limit_difference(trunc_a, trunc_b, sub_a,
                                                      sub_b, args.half_width);
    std::vector<bergman::RightLimitRow> rl_rows;
    for (std::size_t k = 0; k < diff.per_pair.size(); ++k)
      rl_rows.push_back({static_cast<Eigen::Index>(k), sub_a.indices[k],
                         sub_b.indices[k], 0, diff.per_pair[k]});
    bergman::write_right_limit_csv(exp.path("compare.csv"), rl_rows);
    summary_value = diff.tail_max;
  } else {
    throw bergman::InvalidParameterError(
        "compare --what must be h, weak, cesaro, normalized-ratio, or windows");
  }

  if (!rows.empty()) {
    bergman::write_comparison_csv(exp.path("compare.csv"), rows);
  }
  exp.outputs = {"compare.csv", "compare_summary.json"};
  bergman::write_text_file(
      exp.path("compare_summary.json"),
      bergman::comparison_summary_json(summary_value, args.grid_points, q) + "\n");
  exp.summary["max_last_quartile"] = summary_value;
  std::cout << "compare[" << what
            << "] tail summary = " << bergman::format_double(summary_value) << "\n";

  // The degenerate pair report: both normalized ratios tend to zero while the
  // diagonal gap stays at 2 sin(1/2); print both facts.
  if (args.paper_example == "degenerate") {
    const Eigen::Index n = max_n;
    const Complex z(radius, 0.0);
    const Complex ra = bergman::ratio(trunc_a, n, z, true);
    const Complex rb = bergman::ratio(trunc_b, n, z, true);
    const double gap = std::abs(trunc_a.entry(n, n) - trunc_b.entry(n, n));
    exp.summary["ratio_mu_modulus"] = std::abs(ra);
    exp.summary["ratio_nu_modulus"] = std::abs(rb);
    exp.summary["diagonal_gap"] = gap;
    std::cout << "degenerate pair at n=" << n << ": |p-ratio mu|="
              << bergman::format_double(std::abs(ra)) << ", |p-ratio nu|="
              << bergman::format_double(std::abs(rb)) << ", diagonal gap="
              << bergman::format_double(gap) << " (2 sin(1/2) = 0.958851)\n";
  }
}

void run_random(Experiment& exp, const std::string& dist_text,
                const std::string& target_model, Eigen::Index n, Eigen::Index k,
                Eigen::Index horizon, double radius, Eigen::Index grid_points,
                std::uint64_t seed, Eigen::Index runs) {
  bergman::CsvWriter csv(exp.path("random.csv"));
  csv.row({"seed", "distance", "best_m"});
  double worst = 0.0;
  for (Eigen::Index run = 0; run < runs; ++run) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(run);
    // The distribution reuses the model-spec grammar: atomic{...} etc.
    auto spec_a = bergman::ModelSpec::parse_compact("ggt:random:" + dist_text);
    spec_a.set_seed(s);
    const auto trunc_a = spec_a.build(horizon);
    const auto trunc_b = build_model_spec(target_model, s, "", 0).build(n + 1);
    const auto result =
        bergman::best_match_distance(trunc_a, trunc_b, n, k, radius, grid_points,
                                     horizon);
    worst = std::max(worst, result.distance);
    csv.row({std::to_string(s), bergman::format_double(result.distance),
             std::to_string(result.best_m)});
    std::cout << "seed " << s << ": distance = "
              << bergman::format_double(result.distance) << " at m = "
              << result.best_m << "\n";
  }
  exp.outputs = {"random.csv"};
  exp.summary["worst_distance"] = worst;
}

void run_universal(Experiment& exp, const std::string& kind,
                   const std::string& base_text, const std::string& base_a_text,
                   const std::string& base_b_text, Eigen::Index length) {
  if (kind == "circle") {
    std::vector<Complex> base;
    for (const std::string& piece : [&] {
           std::vector<std::string> parts;
           std::size_t start = 0;
           while (start <= base_text.size()) {
             const std::size_t pos = base_text.find(';', start);
             parts.push_back(base_text.substr(start, pos - start));
             if (pos == std::string::npos) break;
             start = pos + 1;
           }
           return parts;
         }())
      base.push_back(bergman::parse_complex(piece));
    const auto seq = bergman::universal_circle_sequence(
        base, static_cast<std::size_t>(length));
    bergman::write_verblunsky_csv(exp.path("universal.csv"), seq,
                                  static_cast<std::size_t>(length));
  } else if (kind == "jacobi") {
    std::vector<double> base_a, base_b;
    auto split_reals = [](const std::string& text) {
      std::vector<double> out;
      std::size_t start = 0;
      while (start <= text.size()) {
        const std::size_t pos = text.find(';', start);
        out.push_back(std::stod(text.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
      return out;
    };
    base_a = split_reals(base_a_text);
    base_b = split_reals(base_b_text);
    const auto seq = bergman::universal_jacobi_pair(
        base_a, base_b, static_cast<std::size_t>(length));
    bergman::write_jacobi_csv(exp.path("universal.csv"), seq,
                              static_cast<std::size_t>(length));
  } else {
    throw bergman::InvalidParameterError("universal --kind must be circle or jacobi");
  }
  exp.outputs = {"universal.csv"};
  exp.summary["length"] = length;
  std::cout << "wrote " << length << " universal coefficients\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman Shift matrix toolkit: ratio asymptotics, moments, "
               "right limits, and random-coefficient experiments for "
               "orthogonal polynomials"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::string config_file;

  // Shared per-subcommand state.
  CommonModelArgs margs;
  Eigen::Index n = 0, trunc_size = 0, terms = 30, j_max = 3, half_width = 1;
  double epsilon = 1e-3;
  std::string z_text = "2+0i", kind = "weak", n_grid, sub_text, batch_request;
  bool normalized = false;

  auto add_common = [&](CLI::App* cmd, bool model_required = true) {
    cmd->add_option("--out-dir", out_dir, "Directory for output files");
    cmd->add_option("--config", config_file,
                    "JSON config file; explicit flags override it");
    margs.attach(cmd, model_required);
  };

  CLI::App* cmd_build = app.add_subcommand("build-matrix",
                                           "Materialize a shift-matrix truncation");
  add_common(cmd_build);
  cmd_build->add_option("--N", trunc_size, "Truncation size")->required();

  CLI::App* cmd_ratio = app.add_subcommand("ratio", "Evaluate P_{n-1}/P_n");
  add_common(cmd_ratio);
  cmd_ratio->add_option("--n", n, "Degree n")->required();
  cmd_ratio->add_option("--z", z_text, "Evaluation point (a+bi)");
  cmd_ratio->add_option("--N", trunc_size, "Truncation size (default n+1)");
  cmd_ratio->add_flag("--normalized", normalized, "Orthonormal ratio p_{n-1}/p_n");
  cmd_ratio->add_option("--batch", batch_request,
                        "JSON eval request file (n-range + z-grid)");

  CLI::App* cmd_laurent =
      app.add_subcommand("laurent", "Resolvent Laurent coefficients at (n, n)");
  add_common(cmd_laurent);
  cmd_laurent->add_option("--n", n, "Center index")->required();
  cmd_laurent->add_option("--terms", terms, "Number of coefficients (<= 40)");
  cmd_laurent->add_option("--N", trunc_size, "Truncation size (default n)");

  CLI::App* cmd_moments = app.add_subcommand("moments", "Weak or Cesaro moments");
  add_common(cmd_moments);
  cmd_moments->add_option("--kind", kind, "weak | cesaro")->required();
  cmd_moments->add_option("--j-max", j_max, "Largest moment order");
  cmd_moments->add_option("--n-grid", n_grid, "Comma list of indices")->required();
  cmd_moments->add_option("--N", trunc_size, "Truncation size (default: safe)");

  CLI::App* cmd_zeros = app.add_subcommand("zeros", "Zeros of P_n");
  add_common(cmd_zeros);
  cmd_zeros->add_option("--n", n, "Degree")->required();
  cmd_zeros->add_option("--N", trunc_size, "Truncation size (default n)");

  CLI::App* cmd_rl = app.add_subcommand("right-limit",
                                        "Window dispersion along a subsequence");
  add_common(cmd_rl);
  cmd_rl->add_option("--sub", sub_text, "Subsequence: 'a,b,c' or offset:stride[:count]")
      ->required();
  cmd_rl->add_option("--m", half_width, "Window half-width");
  cmd_rl->add_option("--epsilon", epsilon, "Convergence threshold");
  cmd_rl->add_option("--N", trunc_size, "Truncation size")->required();

  CLI::App* cmd_compare =
      app.add_subcommand("compare", "Relative asymptotics between two models");
  CompareArgs cargs;
  cmd_compare->add_option("--out-dir", out_dir, "Directory for output files");
  cmd_compare->add_option("--config", config_file,
                          "JSON config file; explicit flags override it");
  cmd_compare->add_option("--model-a", cargs.model_a, "First model");
  cmd_compare->add_option("--model-b", cargs.model_b, "Second model");
  cmd_compare->add_option("--paper-example", cargs.paper_example,
                          "degenerate | alexandrov | stripping");
  cmd_compare->add_option("--what", cargs.what,
                          "h | weak | cesaro | normalized-ratio | windows");
  cmd_compare->add_option("--q", cargs.q, "Index shift");
  cmd_compare->add_option("--j-min", cargs.j_min, "Smallest offset/order");
  cmd_compare->add_option("--j-max", cargs.j_max, "Largest offset/order");
  cmd_compare->add_option("--n-grid", cargs.n_grid_text, "Comma list of indices");
  cmd_compare->add_option("--n", cargs.n_grid_text,
                          "Single index (alias for --n-grid)");
  cmd_compare->add_option("--r", cargs.radius, "Grid radius (default 2 r_est)");
  cmd_compare->add_option("--G", cargs.grid_points, "Grid size on |z| = r");
  cmd_compare->add_option("--m", cargs.half_width, "Window half-width");
  cmd_compare->add_option("--N", cargs.trunc_size, "Truncation size");
  cmd_compare->add_option("--seed", cargs.seed, "Seed for random models");
  cmd_compare->add_option("--lambda", cargs.lambda,
                          "Twist for the alexandrov example");
  cmd_compare->add_option("--strip-k", cargs.strip_k,
                          "Strip depth for the stripping example");

  CLI::App* cmd_random = app.add_subcommand(
      "random", "Best-match distance for i.i.d. coefficient draws");
  std::string dist_text, target_model;
  Eigen::Index match_n = 40, match_k = 40, horizon = 100000, grid_points = 64,
               runs = 1;
  double match_radius = 2.0;
  std::optional<std::uint64_t> random_seed;
  cmd_random->add_option("--out-dir", out_dir, "Directory for output files");
  cmd_random->add_option("--config", config_file,
                         "JSON config file; explicit flags override it");
  cmd_random->add_option("--dist", dist_text,
                         "Coefficient distribution, e.g. atomic{0.3:0.5,-0.3:0.5}")
      ->required();
  cmd_random->add_option("--target-model", target_model, "Comparison model")
      ->required();
  cmd_random->add_option("--n", match_n, "Target ratio index");
  cmd_random->add_option("--k", match_k, "Search start (match over m > k)");
  cmd_random->add_option("--H", horizon, "Search horizon");
  cmd_random->add_option("--r", match_radius, "Grid radius");
  cmd_random->add_option("--G", grid_points, "Grid size");
  cmd_random->add_option("--seed", random_seed, "Base seed")->required();
  cmd_random->add_option("--runs", runs, "Number of seeds (seed, seed+1, ...)");

  CLI::App* cmd_universal =
      app.add_subcommand("universal", "Emit the universal coefficient sequences");
  std::string u_kind = "circle", u_base, u_base_a, u_base_b;
  Eigen::Index u_length = 32;
  cmd_universal->add_option("--out-dir", out_dir, "Directory for output files");
  cmd_universal->add_option("--config", config_file,
                            "JSON config file; explicit flags override it");
  cmd_universal->add_option("--kind", u_kind, "circle | jacobi");
  cmd_universal->add_option("--base", u_base, "Circle base, ';' separated");
  cmd_universal->add_option("--base-a", u_base_a, "Jacobi a-base");
  cmd_universal->add_option("--base-b", u_base_b, "Jacobi b-base");
  cmd_universal->add_option("--length", u_length, "Entries to emit");

  take_last_everywhere(&app);

  try {
    const auto args = with_config_defaults(argc, argv);
    std::vector<const char*> argv2;
    argv2.reserve(args.size());
    for (const auto& a : args) argv2.push_back(a.c_str());
    app.parse(static_cast<int>(argv2.size()), argv2.data());

    try {
      std::filesystem::create_directories(out_dir);
    } catch (const std::filesystem::filesystem_error& e) {
      throw bergman::IoError("cannot create output directory '" + out_dir +
                             "': " + e.what());
    }
    Experiment exp;
    exp.out_dir = out_dir;

    if (cmd_build->parsed()) {
      exp.subcommand = "build-matrix";
      margs.note(exp);
      exp.note("N", trunc_size);
      run_build_matrix(exp, margs, trunc_size);
    } else if (cmd_ratio->parsed()) {
      exp.subcommand = "ratio";
      margs.note(exp);
      exp.note("n", n);
      exp.note("z", z_text);
      exp.note("normalized", normalized);
      run_ratio(exp, margs, n, trunc_size, z_text, normalized, batch_request);
    } else if (cmd_laurent->parsed()) {
      exp.subcommand = "laurent";
      margs.note(exp);
      exp.note("n", n);
      exp.note("terms", terms);
      run_laurent(exp, margs, n, trunc_size, terms);
    } else if (cmd_moments->parsed()) {
      exp.subcommand = "moments";
      margs.note(exp);
      exp.note("kind", kind);
      exp.note("j_max", j_max);
      exp.note("n_grid", n_grid);
      run_moments(exp, margs, kind, j_max, n_grid, trunc_size);
    } else if (cmd_zeros->parsed()) {
      exp.subcommand = "zeros";
      margs.note(exp);
      exp.note("n", n);
      run_zeros(exp, margs, n, trunc_size);
    } else if (cmd_rl->parsed()) {
      exp.subcommand = "right-limit";
      margs.note(exp);
      exp.note("sub", sub_text);
      exp.note("m", half_width);
      exp.note("epsilon", epsilon);
      exp.note("N", trunc_size);
      run_right_limit(exp, margs, sub_text, half_width, epsilon, trunc_size);
    } else if (cmd_compare->parsed()) {
      exp.subcommand = "compare";
      exp.note("what", cargs.what);
      if (!cargs.paper_example.empty())
        exp.note("paper_example", cargs.paper_example);
      run_compare(exp, cargs);
    } else if (cmd_random->parsed()) {
      exp.subcommand = "random";
      exp.note("dist", dist_text);
      exp.note("target_model", target_model);
      exp.note("n", match_n);
      exp.note("k", match_k);
      exp.note("H", horizon);
      exp.note("r", match_radius);
      exp.note("G", grid_points);
      exp.note("seed", *random_seed);
      exp.note("runs", runs);
      run_random(exp, dist_text, target_model, match_n, match_k, horizon,
                 match_radius, grid_points, *random_seed, runs);
    } else if (cmd_universal->parsed()) {
      exp.subcommand = "universal";
      exp.note("kind", u_kind);
      exp.note("length", u_length);
      if (!u_base.empty()) exp.note("base", u_base);
      if (!u_base_a.empty()) exp.note("base_a", u_base_a);
      if (!u_base_b.empty()) exp.note("base_b", u_base_b);
      run_universal(exp, u_kind, u_base, u_base_a, u_base_b, u_length);
    }

    exp.write_manifest();
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const bergman::InvalidParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const bergman::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const bergman::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const bergman::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
}
