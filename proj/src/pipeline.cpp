#include "knotperc/pipeline.hpp"

#include <chrono>
#include <exception>
#include <istream>
#include <ostream>

#include <omp.h>

#include "json.hpp"
#include "knotperc/random.hpp"

namespace knotperc {

using nlohmann::json;

std::string to_string(EvalMode mode) {
  switch (mode) {
    case EvalMode::Float: return "float";
    case EvalMode::Exact: return "exact";
    case EvalMode::Both: return "both";
  }
  return "float";
}

EvalMode parse_mode(const std::string& text) {
  if (text == "float") return EvalMode::Float;
  if (text == "exact") return EvalMode::Exact;
  if (text == "both") return EvalMode::Both;
  throw ConfigError("mode must be float, exact or both, got '" + text + "'");
}

void validate_config(const RunConfig& c) {
  if (c.size < 2) throw ConfigError("size must be at least 2");
  if (c.samples < 1) throw ConfigError("at least one sample is required");
  if (c.workers < 1) throw ConfigError("at least one worker is required");
  if (c.shake_rounds < 0) throw ConfigError("shake rounds must be non-negative");
  if (!(c.shake_probability >= 0.0 && c.shake_probability <= 1.0))
    throw ConfigError("shake probability must lie in [0,1]");
  if (c.mode != EvalMode::Float && c.size > kExactSizeLimit && !c.allow_large_exact)
    throw ConfigError("exact evaluation above size " + std::to_string(kExactSizeLimit) +
                      " must be enabled explicitly");
}

std::uint64_t SampleSeeds::perturbation(int attempt) const {
  return mix_seed(sample, 0x7065727475726200ULL + static_cast<std::uint64_t>(attempt));
}

SampleSeeds sample_seeds(std::uint64_t base_seed, std::uint64_t index) {
  SampleSeeds s;
  s.sample = mix_seed(base_seed, index);
  s.colouring = mix_seed(s.sample, 0x636f6c6f7572ULL);
  s.shake = mix_seed(s.sample, 0x7368616b65ULL);
  return s;
}

SampleDetail run_sample_detail(const RunConfig& config, std::uint64_t index) {
  const auto start = std::chrono::steady_clock::now();
  const SampleSeeds seeds = sample_seeds(config.base_seed, index);
  const CubeSize size(config.size);
  const ColouringGrid grid = sample_colouring(size, Boundary::Dobrushin, seeds.colouring);

  SampleDetail d;
  int attempt = 0;
  for (;; ++attempt) {
    if (attempt == kPerturbationAttempts)
      throw DegeneracyError("projection stayed degenerate after " + std::to_string(attempt) +
                            " perturbations");
    try {
      d.curve = trace_curve(grid, FacePerturbation(seeds.perturbation(attempt)));
      const auto crossings = detect_crossings(d.curve);
      d.raw_code = build_code(d.curve, crossings);
      break;
    } catch (const DegeneracyError&) {
    }
  }

  d.simplified_code = d.raw_code;
  SimplifyConfig sc;
  sc.shake_probability = config.shake_probability;
  sc.shake_rounds = config.shake_rounds;
  sc.rng_seed = seeds.shake;
  simplify(d.simplified_code, sc, &d.moves);

  InvariantOptions opts;
  opts.float_values = config.mode != EvalMode::Exact;
  opts.exact_values = config.mode != EvalMode::Float;
  d.invariants = compute_invariants(d.simplified_code, opts);

  SampleRecord& r = d.record;
  r.size = config.size;
  r.index = index;
  r.seed = seeds.sample;
  r.length = d.curve.length();
  r.crossings_raw = d.raw_code.crossing_count();
  r.crossings_simplified = d.simplified_code.crossing_count();
  r.log_abs_minus1 = d.invariants.log_abs_minus1;
  r.log_abs_i = d.invariants.log_abs_i;
  if (d.invariants.exact_minus1) r.exact_minus1 = d.invariants.exact_minus1->get_str();
  if (d.invariants.exact_i_norm) r.exact_i_norm = d.invariants.exact_i_norm->get_str();
  r.retries = attempt;
  if (config.record_timings)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return d;
}

SampleRecord run_sample(const RunConfig& config, std::uint64_t index) {
  return run_sample_detail(config, index).record;
}

std::vector<SampleRecord> run_batch_serial(const RunConfig& config) {
  validate_config(config);
  std::vector<SampleRecord> out;
  out.reserve(config.samples);
  for (std::size_t k = 0; k < config.samples; ++k) out.push_back(run_sample(config, k));
  return out;
}

std::vector<SampleRecord> run_batch(const RunConfig& config) {
  validate_config(config);
  std::vector<SampleRecord> out(config.samples);
  std::exception_ptr failure;
  const auto count = static_cast<long long>(config.samples);
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.workers)
  for (long long k = 0; k < count; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = run_sample(config, static_cast<std::uint64_t>(k));
    } catch (...) {
#pragma omp critical(knotperc_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

RunHeader header_of(const RunConfig& c) {
  return {kSchemaVersion, c.size, c.samples, c.base_seed, c.mode, c.shake_rounds};
}

void write_jsonl(std::ostream& out, const RunHeader& h, std::span<const SampleRecord> records, bool timings) {
  json header = {{"schema_version", h.schema_version}, {"N", h.size},         {"M", h.samples},
                 {"base_seed", h.base_seed},           {"mode", to_string(h.mode)}, {"shake_rounds", h.shake_rounds}};
  out << header.dump() << '\n';
  std::vector<const SampleRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->index < b->index; });
  for (const auto* r : sorted) {
    json j = {{"index", r->index},
              {"seed", r->seed},
              {"N", r->size},
              {"length", r->length},
              {"crossings_raw", r->crossings_raw},
              {"crossings_simplified", r->crossings_simplified},
              {"log_abs_minus1", r->log_abs_minus1},
              {"log_abs_i", r->log_abs_i},
              {"retries", r->retries}};
    if (r->exact_minus1) j["exact_minus1"] = *r->exact_minus1;
    if (r->exact_i_norm) j["exact_i_norm"] = *r->exact_i_norm;
    if (timings) j["elapsed_ms"] = r->elapsed_ms;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("failed writing sample records");
}

namespace {

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad field '") + name + "': " + e.what());
  }
}

bool is_decimal(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

}  // namespace

RunFile read_jsonl(std::istream& in) {
  RunFile file;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw SchemaError("line " + std::to_string(line_no) + ": not JSON: " + e.what());
    }
    if (!have_header) {
      const int version = field<int>(j, "schema_version");
      if (version != kSchemaVersion)
        throw SchemaError("schema version " + std::to_string(version) + " is not supported (expected " +
                          std::to_string(kSchemaVersion) + ")");
      file.header.schema_version = version;
      file.header.size = field<int>(j, "N");
      file.header.samples = field<std::size_t>(j, "M");
      file.header.base_seed = field<std::uint64_t>(j, "base_seed");
      try {
        file.header.mode = parse_mode(field<std::string>(j, "mode"));
      } catch (const ConfigError& e) {
        throw SchemaError(e.what());
      }
      file.header.shake_rounds = field<int>(j, "shake_rounds");
      have_header = true;
      continue;
    }
    SampleRecord r;
    r.index = field<std::uint64_t>(j, "index");
    r.seed = field<std::uint64_t>(j, "seed");
    r.size = field<int>(j, "N");
    if (r.size != file.header.size)
      throw SchemaError("line " + std::to_string(line_no) + ": record size differs from header");
    r.length = field<std::size_t>(j, "length");
    r.crossings_raw = field<std::size_t>(j, "crossings_raw");
    r.crossings_simplified = field<std::size_t>(j, "crossings_simplified");
    r.log_abs_minus1 = field<double>(j, "log_abs_minus1");
    r.log_abs_i = field<double>(j, "log_abs_i");
    r.retries = field<int>(j, "retries");
    if (j.contains("exact_minus1")) {
      r.exact_minus1 = field<std::string>(j, "exact_minus1");
      if (!is_decimal(*r.exact_minus1)) throw SchemaError("exact_minus1 is not a decimal integer");
    }
    if (j.contains("exact_i_norm")) {
      r.exact_i_norm = field<std::string>(j, "exact_i_norm");
      if (!is_decimal(*r.exact_i_norm)) throw SchemaError("exact_i_norm is not a decimal integer");
    }
    if (j.contains("elapsed_ms")) r.elapsed_ms = field<double>(j, "elapsed_ms");
    file.records.push_back(std::move(r));
  }
  if (!have_header) throw SchemaError("missing header line");
  return file;
}

}  // namespace knotperc
