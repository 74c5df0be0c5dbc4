#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotperc/alexander.hpp"
#include "knotperc/diagram.hpp"
#include "knotperc/interface.hpp"
#include "knotperc/simplify.hpp"
#include "knotperc/stats.hpp"

namespace knotperc {

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;
inline constexpr int kDefaultShakeRounds = 300;
inline constexpr int kPerturbationAttempts = 8;
/// Exact evaluation is refused above this size unless explicitly allowed.
inline constexpr int kExactSizeLimit = 50;

enum class EvalMode { Float, Exact, Both };

std::string to_string(EvalMode mode);
EvalMode parse_mode(const std::string& text);

struct RunConfig {
  int size = 10;
  std::size_t samples = 1;
  std::uint64_t base_seed = 0;
  int workers = 1;
  EvalMode mode = EvalMode::Float;
  int shake_rounds = kDefaultShakeRounds;
  double shake_probability = 0.5;
  bool allow_large_exact = false;
  bool record_timings = false;
};

/// Throws ConfigError when the configuration cannot be run.
void validate_config(const RunConfig& config);

/// Per-stage seeds of one sample, all derived from mix_seed(base_seed, index).
struct SampleSeeds {
  std::uint64_t sample = 0;
  std::uint64_t colouring = 0;
  std::uint64_t shake = 0;
  std::uint64_t perturbation(int attempt) const;
};

SampleSeeds sample_seeds(std::uint64_t base_seed, std::uint64_t index);

/// Everything one sample produces, for reports and debugging.
struct SampleDetail {
  SampleRecord record;
  TricolourCurve curve;
  KnotCode raw_code;
  KnotCode simplified_code;
  SimplifyStats moves;
  InvariantPair invariants;
};

/// Runs the pipeline for sample `index`: colouring, curve, crossings (retrying
/// the perturbation on degenerate projections), code, simplification, invariants.
SampleDetail run_sample_detail(const RunConfig& config, std::uint64_t index);
SampleRecord run_sample(const RunConfig& config, std::uint64_t index);

/// All samples, sorted by index; parallel over `config.workers` threads.
std::vector<SampleRecord> run_batch(const RunConfig& config);
/// Same result computed one sample after another on the calling thread.
std::vector<SampleRecord> run_batch_serial(const RunConfig& config);

struct RunHeader {
  int schema_version = kSchemaVersion;
  int size = 0;
  std::size_t samples = 0;
  std::uint64_t base_seed = 0;
  EvalMode mode = EvalMode::Float;
  int shake_rounds = 0;

  bool operator==(const RunHeader&) const = default;
};

RunHeader header_of(const RunConfig& config);

/// Header line, then one JSON object per record in index order. Elapsed
/// times are written only with `timings`, so default output is reproducible.
void write_jsonl(std::ostream& out, const RunHeader& header, std::span<const SampleRecord> records,
                 bool timings = false);

struct RunFile {
  RunHeader header;
  std::vector<SampleRecord> records;
};

/// Throws SchemaError on a missing header, version mismatch or malformed record.
RunFile read_jsonl(std::istream& in);

}  // namespace knotperc
