// Integration checks for the command-line tool: spawns the real binary and
// inspects exit codes, stdout, and emitted files.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;
std::string binary;
std::filesystem::path work;

struct CmdResult {
  int code;
  std::string output;
};

CmdResult run(const std::string& args) {
  const std::string cmd = binary + " " + args + " 2>&1";
  std::array<char, 4096> buf;
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "popen failed"};
  while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

void check(bool ok, const std::string& what, const std::string& detail = "") {
  if (ok) {
    std::printf("[ok] %s\n", what.c_str());
  } else {
    ++failures;
    std::printf("[FAILED] %s\n%s\n", what.c_str(), detail.c_str());
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir(const std::string& name) {
  const auto p = work / name;
  std::filesystem::create_directories(p);
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-bergman-binary>\n");
    return 2;
  }
  binary = argv[1];
  work = std::filesystem::temp_directory_path() / "bergman_cli_tests";
  std::filesystem::remove_all(work);
  std::filesystem::create_directories(work);

  {
    const auto r = run("ratio --model jacobi:a=0.5,b=0 --n 200 --z 2+0i --out-dir " +
                       dir("ratio"));
    check(r.code == 0 && r.output.find("0.535898") != std::string::npos,
          "ratio subcommand prints the chebyshev-type fixed point", r.output);
  }
  {
    const auto r = run(
        "compare --paper-example degenerate --what windows --n-grid "
        "270,280,290,300 --r 2 --out-dir " +
        dir("degenerate"));
    check(r.code == 0 && r.output.find("diagonal gap=0.95") != std::string::npos,
          "degenerate-pair report shows the 2 sin(1/2) diagonal gap", r.output);
    check(std::filesystem::exists(work / "degenerate" / "compare.csv") &&
              std::filesystem::exists(work / "degenerate" / "manifest.json"),
          "compare emits CSV and manifest");
  }
  {
    const auto r = run("ratio --model martian:x=1 --n 5 --z 2+0i --out-dir " +
                       dir("badmodel"));
    check(r.code == 2, "unknown model family exits with code 2", r.output);
  }
  {
    const auto r = run(
        "build-matrix --model 'ggt:alpha=list:0.5;1.5' --N 2 --out-dir " +
        dir("badalpha"));
    check(r.code == 2 && r.output.find("index 1") != std::string::npos,
          "invalid coefficient exits 2 and names the index", r.output);
  }
  {
    const auto r = run(
        "moments --model jacobi:a=0.5,b=0 --kind weak --j-max 4 --n-grid 8 "
        "--N 10 --out-dir " +
        dir("contaminated"));
    check(r.code == 3, "weak-moment contamination exits with code 3", r.output);
  }
  {
    const auto a = dir("repro_a");
    const auto b = dir("repro_b");
    const std::string cmd =
        "zeros --model ggt:random:disk{0.8} --seed 5 --n 12 --out-dir ";
    const auto ra = run(cmd + a);
    const auto rb = run(cmd + b);
    check(ra.code == 0 && rb.code == 0 &&
              slurp(work / "repro_a" / "zeros.csv") ==
                  slurp(work / "repro_b" / "zeros.csv"),
          "identical configs produce byte-identical zero CSVs",
          ra.output + rb.output);
  }
  {
    const auto cfg = work / "config.json";
    std::ofstream(cfg) << R"({"model":"jacobi:a=0.5,b=0","n":100,"z":"2+0i"})";
    const auto out = dir("configured");
    const auto r = run("ratio --config " + cfg.string() + " --n 200 --out-dir " + out);
    const std::string manifest = slurp(work / "configured" / "manifest.json");
    check(r.code == 0 && manifest.find("\"n\": 200") != std::string::npos,
          "flags override the config file", r.output + manifest);
  }
  {
    const auto cfg = work / "bad_config.json";
    std::ofstream(cfg) << R"({"model":"jacobi:a=0.5,b=0","banana":1})";
    const auto r = run("ratio --config " + cfg.string() + " --n 5 --out-dir " +
                       dir("badcfg"));
    check(r.code == 2, "unknown config keys are rejected with code 2", r.output);
  }
  {
    const auto out = dir("universal");
    const auto r = run(
        "universal --kind circle --base '0.1;0.2;0.3' --length 8 --out-dir " + out);
    const std::string csv = slurp(work / "universal" / "universal.csv");
    check(r.code == 0 &&
              csv.rfind("n,re,im\n0,0.1,0\n1,0.1,0\n2,0.2,0\n3,0.2,0\n4,0.1,0\n",
                        0) == 0,
          "universal subcommand emits the construction prefix", csv);
  }
  {
    const auto r = run(
        "random --dist atomic{0.3:0.5,-0.3:0.5} --target-model ggt:alpha=0.3 "
        "--n 12 --k 12 --H 20000 --r 2 --G 16 --seed 7 --out-dir " +
        dir("random"));
    check(r.code == 0 && r.output.find("distance") != std::string::npos,
          "random subcommand reports a match distance", r.output);
    check(slurp(work / "random" / "random.csv").rfind("seed,distance,best_m", 0) == 0,
          "random subcommand writes the ensemble CSV");
  }
  {
    const auto r = run("ratio --model jacobi:a=0.5,b=0 --n 5 --z 2+0i --out-dir "
                       "/dev/null/impossible");
    check(r.code == 4, "unwritable output directory exits with code 4", r.output);
  }
  {
    const auto req = work / "eval.json";
    std::ofstream(req)
        << R"({"n_range":[1,3],"z_grid":{"kind":"list","points":[[2.0,0.0]]}})";
    const auto out = dir("batch");
    const auto r = run("ratio --model ggt:alpha=0 --n 1 --N 4 --batch " +
                       req.string() + " --out-dir " + out);
    const std::string csv = slurp(work / "batch" / "ratio_batch.csv");
    // Free case: every ratio is exactly 1/z = 0.5.
    check(r.code == 0 &&
              csv == "n,re_z,im_z,re_value,im_value\n1,2,0,0.5,0\n2,2,0,0.5,0\n"
                     "3,2,0,0.5,0\n",
          "batch evaluation emits the documented CSV shape", csv);
  }
  {
    const auto out = dir("laurent");
    const auto r = run("laurent --model jacobi:a=0.5,b=0 --n 10 --N 20 --terms 6 "
                       "--out-dir " + out);
    const std::string csv = slurp(work / "laurent" / "laurent.csv");
    check(r.code == 0 && csv.find("2,0.25,0") != std::string::npos,
          "laurent subcommand writes c_2 = 1/4 for the chebyshev-type model", csv);
  }
  {
    const auto out = dir("rl");
    const auto r = run(
        "right-limit --model jacobi:a=0.5,b=0 --sub 10:10 --m 1 --epsilon 1e-6 "
        "--N 60 --out-dir " + out);
    check(r.code == 0 && r.output.find("(converged)") != std::string::npos,
          "right-limit detects the constant window", r.output);
  }

  if (failures > 0) {
    std::printf("%d cli check(s) failed\n", failures);
    return 1;
  }
  std::printf("all cli checks passed\n");
  return 0;
}
