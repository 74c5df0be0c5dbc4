#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "knotperc/analysis.hpp"
#include "knotperc/pipeline.hpp"

using namespace knotperc;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(int workers, EvalMode mode = EvalMode::Float) {
  RunConfig c;
  c.size = 8;
  c.samples = 40;
  c.base_seed = 314;
  c.workers = workers;
  c.mode = mode;
  c.shake_rounds = 20;
  return c;
}

std::string jsonl_text(const RunConfig& c, const std::vector<SampleRecord>& records) {
  std::ostringstream out;
  write_jsonl(out, header_of(c), records);
  return out.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("knotperc_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("modes parse and print") {
  for (auto m : {EvalMode::Float, EvalMode::Exact, EvalMode::Both}) CHECK(parse_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_mode("fast"), ConfigError);
}

TEST_CASE("configuration checks") {
  RunConfig c = small_config(1);
  CHECK_NOTHROW(validate_config(c));
  c.size = 1;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = small_config(0);
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = small_config(1);
  c.shake_rounds = -1;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = small_config(1, EvalMode::Exact);
  c.size = kExactSizeLimit + 1;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.allow_large_exact = true;
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("per-stage seeds are distinct and reproducible") {
  const SampleSeeds a = sample_seeds(7, 3), b = sample_seeds(7, 3), c = sample_seeds(7, 4);
  CHECK(a.sample == b.sample);
  CHECK(a.colouring == b.colouring);
  CHECK(a.sample != c.sample);
  CHECK(a.colouring != a.shake);
  CHECK(a.perturbation(0) != a.perturbation(1));
}

TEST_CASE("output is identical across worker counts") {
  const auto serial = run_batch_serial(small_config(1));
  REQUIRE(serial.size() == 40);
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].index == i);
  const std::string reference = jsonl_text(small_config(1), serial);
  for (int w : {1, 4, 8}) {
    const auto records = run_batch(small_config(w));
    CHECK(records == serial);
    CHECK(jsonl_text(small_config(w), records) == reference);
  }
}

TEST_CASE("single samples match the batch") {
  const RunConfig c = small_config(2);
  const auto batch = run_batch(c);
  const SampleDetail d = run_sample_detail(c, 5);
  CHECK(d.record == batch[5]);
  CHECK(d.record.length == d.curve.tetrahedra.size());
  CHECK(d.record.crossings_raw == d.raw_code.crossing_count());
  CHECK(d.record.crossings_simplified == d.simplified_code.crossing_count());
  CHECK(d.record.crossings_simplified <= d.record.crossings_raw);
}

TEST_CASE("jsonl round trip") {
  RunConfig c = small_config(2, EvalMode::Both);
  c.samples = 10;
  const auto records = run_batch(c);
  std::stringstream io;
  write_jsonl(io, header_of(c), records);
  const RunFile back = read_jsonl(io);
  CHECK(back.header == header_of(c));
  CHECK(back.records == records);

  std::istringstream first_line(jsonl_text(c, records));
  std::string header;
  std::getline(first_line, header);
  CHECK(header.find("\"schema_version\":1") != std::string::npos);
  CHECK(header.find("\"mode\":\"both\"") != std::string::npos);
}

TEST_CASE("malformed files are schema errors") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_jsonl(empty), SchemaError);
  std::istringstream version(R"({"schema_version":2,"N":8,"M":0,"base_seed":0,"mode":"float","shake_rounds":3})" "\n");
  CHECK_THROWS_AS(read_jsonl(version), SchemaError);
  std::istringstream garbage("not json\n");
  CHECK_THROWS_AS(read_jsonl(garbage), SchemaError);

  const RunConfig c = small_config(1);
  std::string text = jsonl_text(c, run_batch_serial(c));
  const auto pos = text.find("\"N\":8", text.find('\n'));
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 5, "\"N\":9");
  std::istringstream wrong_size(text);
  CHECK_THROWS_AS(read_jsonl(wrong_size), SchemaError);
}

TEST_CASE("exact determinants of sampled knots are odd") {
  RunConfig c = small_config(4, EvalMode::Exact);
  c.size = 10;
  c.samples = 100;
  for (const auto& r : run_batch(c)) {
    REQUIRE(r.exact_minus1.has_value());
    REQUIRE(r.exact_i_norm.has_value());
    const mpz_class v(*r.exact_minus1);
    CHECK(mpz_odd_p(v.get_mpz_t()) != 0);
    CHECK(std::abs(r.log_abs_minus1 - log_of(v)) < 1e-12);
  }
}

TEST_CASE("analysis writes every table") {
  const fs::path dir = fresh_dir("analysis");
  std::vector<RunFile> runs;
  for (int n : {6, 8, 10}) {
    RunConfig c = small_config(4, EvalMode::Both);
    c.size = n;
    runs.push_back({header_of(c), run_batch(c)});
  }
  const auto summary = analyze_runs(runs, dir);
  for (const char* name : {"fig6_length.csv", "fig7_ecdf.csv", "fig8_crossings.csv", "fig9_unknot.csv",
                           "fig10_divisibility.csv", "fig11_loginv.csv", "fig12_ecdf_inv.csv", "summary.json"})
    CHECK(fs::exists(dir / name));
  CHECK(summary["fits"]["length"].is_object());
  CHECK(summary["fits"]["length"]["exponent"].get<double>() > 2.0);

  std::ifstream fig6(dir / "fig6_length.csv");
  std::string line;
  std::getline(fig6, line);
  CHECK(line.rfind("#", 0) == 0);
  std::getline(fig6, line);
  CHECK(line == "N,mean_length,std_error,samples");
  int rows = 0;
  while (std::getline(fig6, line)) ++rows;
  CHECK(rows == 3);
  fs::remove_all(dir);
}

TEST_CASE("a single size leaves the fits empty") {
  const RunConfig c = small_config(2);
  const std::vector<RunFile> runs{{header_of(c), run_batch(c)}};
  const auto summary = summarize_runs(runs);
  CHECK(summary["fits"]["length"].is_null());
  CHECK(summary["fits"]["crossings_raw"].is_null());
}

TEST_CASE("empty input writes nothing") {
  const fs::path dir = fresh_dir("empty");
  const RunConfig c = small_config(1);
  const std::vector<RunFile> runs{{header_of(c), {}}};
  CHECK_THROWS_AS(analyze_runs(runs, dir), EmptyInput);
  CHECK_THROWS_AS(analyze_runs({}, dir), EmptyInput);
  CHECK_FALSE(fs::exists(dir / "summary.json"));
}
