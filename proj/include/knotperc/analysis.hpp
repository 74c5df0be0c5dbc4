#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "knotperc/pipeline.hpp"

namespace knotperc {

class EmptyInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Groups records by size and writes fig6_length.csv, fig7_ecdf.csv,
/// fig8_crossings.csv, fig9_unknot.csv, fig10_divisibility.csv,
/// fig11_loginv.csv, fig12_ecdf_inv.csv and summary.json into `out_dir`.
/// Returns the summary. Throws EmptyInput (before writing anything) when no
/// records are given.
nlohmann::json analyze_runs(const std::vector<RunFile>& runs, const std::filesystem::path& out_dir);

/// Summary only, without touching the filesystem.
nlohmann::json summarize_runs(const std::vector<RunFile>& runs);

}  // namespace knotperc
