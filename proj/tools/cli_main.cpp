#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "corpus.hpp"
#include "hc/dethom.hpp"
#include "hc/solver.hpp"
#include "jsonio.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSetup = 3;

void emit(const nlohmann::ordered_json& j, const std::string& output) {
  if (output.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot open output file: " + output);
    out << j.dump(2) << "\n";
  }
}

int run_solve(const std::string& input, hc::SolveOptions opts, const std::string& output) {
  hc::ParsedSystem ps;
  try {
    ps = hc::parse_system_file(input);
  } catch (const hc::ParseError& e) {
    std::cerr << "parse error at line " << e.line << ", column " << e.column << ": "
              << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  hc::SolveResult result;
  try {
    result = hc::solve(ps.system, opts);
  } catch (const std::exception& e) {
    std::cerr << "solve error: " << e.what() << "\n";
    return kExitSetup;
  }
  emit(hc::result_to_json(result), output);
  return kExitOk;
}

int run_bench(const std::string& name, hc::SolveOptions opts) {
  std::vector<hc::BenchmarkEntry> entries;
  if (name == "all") {
    entries = hc::benchmark_table();
  } else {
    for (const hc::BenchmarkEntry& e : hc::benchmark_table())
      if (e.name == name) entries.push_back(e);
    if (entries.empty()) {
      std::cerr << "unknown benchmark system: " << name << "\n";
      return kExitSetup;
    }
  }
  std::printf("%-10s %8s %10s %6s %8s %9s  %s\n", "system", "paths", "solutions",
              "real", "failed", "seconds", "verdict");
  bool all_pass = true;
  for (const hc::BenchmarkEntry& e : entries) {
    hc::ParsedSystem ps = hc::corpus_system(e.name);
    hc::SolveResult r = hc::solve(ps.system, opts);
    int n_real = 0;
    for (const hc::Solution& s : r.solutions) n_real += s.is_real ? 1 : 0;
    bool pass = r.n_paths == e.bezout &&
                static_cast<int>(r.solutions.size()) == e.expected_complex_roots &&
                n_real == e.expected_real_roots;
    all_pass = all_pass && pass;
    std::printf("%-10s %8llu %10zu %6d %8d %9.2f  %s\n", e.name.c_str(),
                static_cast<unsigned long long>(r.n_paths), r.solutions.size(), n_real,
                r.n_failed, r.runtime_seconds, pass ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
  return all_pass ? kExitOk : 1;
}

int run_dethom(const std::string& a_path, const std::string& b_path,
               const std::string& starts_path, hc::SolveOptions opts, double psd_tol,
               const std::string& output) {
  hc::SymmetricPencil A, B;
  std::vector<hc::CVec> starts;
  try {
    A = hc::load_pencil_file(a_path);
    B = hc::load_pencil_file(b_path);
    starts = hc::parse_starts_json(starts_path);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    if (A.n != B.n) throw std::invalid_argument("pencils must have equal size");
    for (const hc::CVec& s : starts)
      if (s.size() != 4)
        throw std::invalid_argument("start points must have 4 homogeneous coordinates");

    auto h = std::make_shared<hc::DeterminantHomotopy>(A, B);
    opts.complex_detour = true;  // no gamma trick in this homotopy
    hc::SolveResult result = hc::solve_with_start(h, starts, opts);

    nlohmann::ordered_json j = hc::result_to_json(result);
    j["n"] = A.n;
    for (size_t i = 0; i < result.solutions.size(); ++i) {
      const hc::Solution& s = result.solutions[i];
      bool on_boundary = false;
      if (s.is_real && !s.at_infinity) {
        Eigen::Vector4d x(1.0, s.x[0].real(), s.x[1].real(), s.x[2].real());
        on_boundary = hc::on_spectrahedron_boundary(A, x, psd_tol);
      }
      j["solutions"][i]["on_boundary"] = on_boundary;
    }
    emit(j, output);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "dethom error: " << e.what() << "\n";
    return kExitSetup;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical homotopy continuation for polynomial systems"};
  app.require_subcommand(1);

  hc::SolveOptions opts;
  std::string input, output, bench_name = "all";
  std::string pencil_a, pencil_b, starts_path;
  double psd_tol = 1e-8;
  bool no_endgame = false;

  CLI::App* solve = app.add_subcommand("solve", "solve a square polynomial system");
  solve->add_option("input", input, "system file")->required();
  solve->add_option("--seed", opts.seed, "RNG seed for the gamma trick");
  solve->add_option("--threads", opts.threads, "worker threads (0 = all)");
  solve->add_option("--tol", opts.tracker.corrector_tol, "corrector tolerance");
  solve->add_flag("--no-endgame", no_endgame, "track straight to t=0");
  solve->add_option("--output", output, "write JSON here instead of stdout");

  CLI::App* bench = app.add_subcommand("bench", "run the benchmark corpus");
  bench->add_option("name", bench_name, "system name or 'all'");
  bench->add_option("--seed", opts.seed, "RNG seed");
  bench->add_option("--threads", opts.threads, "worker threads (0 = all)");

  CLI::App* dethom = app.add_subcommand("dethom", "track a determinant homotopy");
  dethom->add_option("target", pencil_a, "target pencil file")->required();
  dethom->add_option("start", pencil_b, "start pencil file")->required();
  dethom->add_option("starts", starts_path, "start solutions (JSON)")->required();
  dethom->add_option("--seed", opts.seed, "RNG seed");
  dethom->add_option("--threads", opts.threads, "worker threads (0 = all)");
  dethom->add_option("--tol", opts.tracker.corrector_tol, "corrector tolerance");
  dethom->add_option("--psd-tol", psd_tol, "PSD membership tolerance");
  dethom->add_option("--output", output, "write JSON here instead of stdout");

  CLI11_PARSE(app, argc, argv);
  opts.use_endgame = !no_endgame;

  try {
    if (solve->parsed()) return run_solve(input, opts, output);
    if (bench->parsed()) return run_bench(bench_name, opts);
    if (dethom->parsed()) return run_dethom(pencil_a, pencil_b, starts_path, opts,
                                            psd_tol, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSetup;
  }
  return kExitOk;
}
