// Command-line driver: sample, analyze, knot, selftest.
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "knotperc/analysis.hpp"
#include "knotperc/pipeline.hpp"
#include "knotperc/random.hpp"
#include "knotperc/selftest.hpp"

using namespace knotperc;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitSelftest = 3;

int default_workers() {
  if (const char* env = std::getenv("KNOTPERC_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    std::cerr << "ignoring invalid KNOTPERC_WORKERS='" << env << "'\n";
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

int cmd_sample(const RunConfig& config, const std::string& path) {
  validate_config(config);
  const auto records = run_batch(config);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  write_jsonl(out, header_of(config), records, config.record_timings);
  return 0;
}

int cmd_analyze(const std::string& out_dir, const std::vector<std::string>& files) {
  std::vector<RunFile> runs;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw IoError("cannot open " + f);
    try {
      runs.push_back(read_jsonl(in));
    } catch (const SchemaError& e) {
      throw SchemaError(f + ": " + e.what());
    }
  }
  const auto summary = analyze_runs(runs, out_dir);
  std::cout << summary.dump(2) << '\n';
  return 0;
}

struct KnotDumps {
  std::string grid, curve, code;
};

int cmd_knot(const RunConfig& config, std::uint64_t index, const KnotDumps& dumps) {
  validate_config(config);
  const SampleDetail d = run_sample_detail(config, index);
  const auto& r = d.record;
  std::cout << "size " << config.size << "  base seed " << config.base_seed << "  index " << index
            << "  sample seed " << r.seed << '\n';
  std::cout << "curve length " << r.length << "  perturbation retries " << r.retries << '\n';
  std::cout << "crossings raw " << r.crossings_raw << "  simplified " << r.crossings_simplified
            << "  (moves I " << d.moves.r1 << ", II " << d.moves.r2 << ", III " << d.moves.r3 << ")\n";
  for (const auto* code : {&d.raw_code, &d.simplified_code}) {
    const char* which = code == &d.raw_code ? "raw" : "simplified";
    try {
      validate(*code);
      const bool planar = code->empty() || face_count(*code) == code->crossing_count() + 2;
      std::cout << which << " code: conditions (i)-(vi) OK, regions " << (planar ? "n+2 OK" : "MISMATCH") << '\n';
    } catch (const ValidationError& e) {
      std::cout << which << " code: condition " << e.item() << " FAILED: " << e.what() << '\n';
    }
  }
  std::cout << "simplified code (u sigma alpha phi tau, labels from 0):\n";
  write_code(std::cout, d.simplified_code);
  std::cout << std::setprecision(12);
  std::cout << "|Delta(-1)| = " << std::exp(r.log_abs_minus1) << "  log " << r.log_abs_minus1 << '\n';
  std::cout << "|Delta(i)|  = " << std::exp(r.log_abs_i) << "  log " << r.log_abs_i << '\n';
  if (r.exact_minus1) std::cout << "exact |Delta(-1)|   = " << *r.exact_minus1 << '\n';
  if (r.exact_i_norm) std::cout << "exact |Delta(i)|^2  = " << *r.exact_i_norm << '\n';

  if (!dumps.grid.empty()) {
    std::ofstream out(dumps.grid);
    if (!out) throw IoError("cannot open " + dumps.grid);
    const SampleSeeds seeds = sample_seeds(config.base_seed, index);
    write_grid(out, sample_colouring(CubeSize(config.size), Boundary::Dobrushin, seeds.colouring));
  }
  if (!dumps.curve.empty()) {
    std::ofstream out(dumps.curve);
    if (!out) throw IoError("cannot open " + dumps.curve);
    write_curve_csv(out, d.curve);
  }
  if (!dumps.code.empty()) {
    std::ofstream out(dumps.code);
    if (!out) throw IoError("cannot open " + dumps.code);
    write_code(out, d.raw_code);
  }
  return 0;
}

int cmd_selftest() {
  bool ok = true;
  for (const auto& r : run_selftest()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.passed) std::cout << ": " << r.detail;
    std::cout << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitSelftest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random knots from three-colour percolation interfaces"};
  app.require_subcommand(1);

  RunConfig config;
  config.workers = default_workers();
  std::string mode = "float";
  std::string out_path, out_dir;
  std::vector<std::string> inputs;
  std::uint64_t index = 0;
  KnotDumps dumps;

  auto* sample = app.add_subcommand("sample", "Run a Monte Carlo batch and write JSONL records");
  sample->add_option("--size", config.size, "Cube size N")->required();
  sample->add_option("--samples", config.samples, "Number of samples M")->required();
  sample->add_option("--seed", config.base_seed, "Base seed");
  sample->add_option("--workers", config.workers, "Worker threads (default: KNOTPERC_WORKERS or all cores)");
  sample->add_option("--mode", mode, "float, exact or both");
  sample->add_option("--shake-rounds", config.shake_rounds, "Rounds of random type III moves");
  sample->add_option("--shake-probability", config.shake_probability, "Flip probability per trigon");
  sample->add_flag("--allow-large-exact", config.allow_large_exact, "Permit exact mode above size 50");
  sample->add_flag("--timings", config.record_timings, "Include per-sample elapsed times");
  sample->add_option("--out", out_path, "Output JSONL file")->required();

  auto* analyze = app.add_subcommand("analyze", "Aggregate JSONL runs into CSV tables and a summary");
  analyze->add_option("--out-dir", out_dir, "Output directory")->required();
  analyze->add_option("files", inputs, "JSONL files")->required();

  auto* knot = app.add_subcommand("knot", "Report a single sample");
  knot->add_option("--size", config.size, "Cube size N")->required();
  knot->add_option("--seed", config.base_seed, "Base seed")->required();
  knot->add_option("--index", index, "Sample index under the base seed");
  knot->add_option("--mode", mode, "float, exact or both");
  knot->add_option("--shake-rounds", config.shake_rounds, "Rounds of random type III moves");
  knot->add_flag("--allow-large-exact", config.allow_large_exact, "Permit exact mode above size 50");
  knot->add_option("--dump-grid", dumps.grid, "Write the colouring (N, then k1 k2 k3 c)");
  knot->add_option("--dump-curve", dumps.curve, "Write the curve as x,y,z CSV");
  knot->add_option("--dump-code", dumps.code, "Write the raw code (u sigma alpha phi tau)");

  auto* selftest = app.add_subcommand("selftest", "Run the embedded oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sample || *knot) config.mode = parse_mode(mode);
    if (*sample) return cmd_sample(config, out_path);
    if (*analyze) return cmd_analyze(out_dir, inputs);
    if (*knot) return cmd_knot(config, index, dumps);
    if (*selftest) return cmd_selftest();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
