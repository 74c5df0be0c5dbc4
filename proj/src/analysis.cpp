#include "knotperc/analysis.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "knotperc/stats.hpp"

namespace knotperc {

using nlohmann::json;

namespace {

constexpr const char* kErrorNote = "# standard errors: sample standard deviation / sqrt(count)";

using BySize = std::map<int, std::vector<SampleRecord>>;

BySize group(const std::vector<RunFile>& runs) {
  BySize out;
  for (const auto& run : runs)
    for (const auto& r : run.records) out[r.size].push_back(r);
  for (auto& [n, records] : out)
    std::stable_sort(records.begin(), records.end(),
                     [](const SampleRecord& a, const SampleRecord& b) { return a.index < b.index; });
  return out;
}

template <typename F>
std::vector<double> column(const std::vector<SampleRecord>& records, F f) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(static_cast<double>(f(r)));
  return out;
}

bool all_exact(const std::vector<SampleRecord>& records) {
  for (const auto& r : records)
    if (!r.exact_minus1) return false;
  return !records.empty();
}

std::optional<EcdfTable> normalized(std::vector<double> values) {
  try {
    return EcdfTable(std::move(values), true);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::optional<AlphaFit> alpha_fit(const std::optional<EcdfTable>& table) {
  if (!table || table->size() < 100) return std::nullopt;
  return fit_alpha(*table);
}

json fit_or_null(const std::vector<std::pair<double, double>>& points) {
  try {
    const ScalingFit f = fit_scaling_exponent(points);
    return {{"exponent", f.exponent}, {"prefactor", f.prefactor}};
  } catch (const DomainError&) {
    return nullptr;
  }
}

json alpha_json(const std::optional<AlphaFit>& f) {
  if (!f) return nullptr;
  return {{"alpha", f->alpha}, {"distance", f->distance}};
}

std::ofstream open_csv(const std::filesystem::path& dir, const char* name) {
  std::ofstream out(dir / name);
  if (!out) throw IoError("cannot write " + (dir / name).string());
  out.precision(10);
  return out;
}

}  // namespace

json summarize_runs(const std::vector<RunFile>& runs) {
  const BySize sizes = group(runs);
  std::size_t total = 0;
  for (const auto& [n, r] : sizes) total += r.size();
  if (total == 0) throw EmptyInput("no sample records in the input");

  json summary;
  summary["standard_errors"] = "sample standard deviation / sqrt(count)";
  summary["sizes"] = json::array();
  std::vector<std::pair<double, double>> lengths, raw, simplified, logs;
  for (const auto& [n, records] : sizes) {
    if (records.empty()) continue;
    const auto L = column(records, [](const SampleRecord& r) { return r.length; });
    const auto cr = column(records, [](const SampleRecord& r) { return r.crossings_raw; });
    const auto cs = column(records, [](const SampleRecord& r) { return r.crossings_simplified; });
    const auto y = column(records, [](const SampleRecord& r) { return r.log_abs_minus1; });
    const auto z = column(records, [](const SampleRecord& r) { return r.log_abs_i; });
    const MeanEstimate mL = estimate_mean(L), mr = estimate_mean(cr), ms = estimate_mean(cs);
    const MeanEstimate my = estimate_mean(y), mz = estimate_mean(z);
    lengths.emplace_back(n, mL.mean);
    raw.emplace_back(n, mr.mean);
    simplified.emplace_back(n, ms.mean);
    logs.emplace_back(n, my.mean);

    json s;
    s["N"] = n;
    s["samples"] = records.size();
    s["mean_length"] = mL.mean;
    s["std_error_length"] = mL.std_error;
    s["mean_crossings_raw"] = mr.mean;
    s["std_error_crossings_raw"] = mr.std_error;
    s["mean_crossings_simplified"] = ms.mean;
    s["std_error_crossings_simplified"] = ms.std_error;
    s["mean_log_abs_minus1"] = my.mean;
    s["std_error_log_abs_minus1"] = my.std_error;
    s["mean_log_abs_i"] = mz.mean;
    s["std_error_log_abs_i"] = mz.std_error;
    const auto length_table = normalized(L);
    s["length_law_distance"] = length_table ? json(ecdf_distance(*length_table, length_law_survival)) : json(nullptr);
    s["alpha_minus1"] = alpha_json(alpha_fit(normalized(y)));
    s["alpha_i"] = alpha_json(alpha_fit(normalized(z)));
    const FractionEstimate u = unknot_candidate_fraction(records);
    s["unknot_candidates"] = u.hits;
    s["unknot_fraction"] = u.fraction;
    s["unknot_std_error"] = u.std_error;
    if (all_exact(records)) {
      json div = json::object();
      for (const auto& row : divisibility_table(records)) div[std::to_string(row.divisor)] = row.frequency;
      s["divisibility"] = div;
    } else {
      s["divisibility"] = nullptr;
    }
    summary["sizes"].push_back(s);
  }
  json fits;
  fits["length"] = fit_or_null(lengths);
  fits["crossings_raw"] = fit_or_null(raw);
  fits["crossings_simplified"] = fit_or_null(simplified);
  fits["log_abs_minus1"] = fit_or_null(logs);
  summary["fits"] = fits;
  if (logs.size() >= 2) {
    bool increasing = true;
    for (std::size_t k = 1; k < logs.size(); ++k) increasing = increasing && logs[k].second > logs[k - 1].second;
    summary["log_abs_minus1_increasing"] = increasing;
  } else {
    summary["log_abs_minus1_increasing"] = nullptr;
  }
  return summary;
}

json analyze_runs(const std::vector<RunFile>& runs, const std::filesystem::path& out_dir) {
  const json summary = summarize_runs(runs);
  const BySize sizes = group(runs);
  std::filesystem::create_directories(out_dir);

  auto fig6 = open_csv(out_dir, "fig6_length.csv");
  fig6 << kErrorNote << "\nN,mean_length,std_error,samples\n";
  auto fig7 = open_csv(out_dir, "fig7_ecdf.csv");
  fig7 << "N,x,survival,reference\n";
  auto fig8 = open_csv(out_dir, "fig8_crossings.csv");
  fig8 << kErrorNote << "\nN,mean_raw,std_error_raw,mean_simplified,std_error_simplified,samples\n";
  auto fig9 = open_csv(out_dir, "fig9_unknot.csv");
  fig9 << kErrorNote << "\nN,samples,unknot_candidates,fraction,std_error,unit_minus1\n";
  auto fig10 = open_csv(out_dir, "fig10_divisibility.csv");
  fig10 << "N,divisor,frequency,excess,samples\n";
  auto fig11 = open_csv(out_dir, "fig11_loginv.csv");
  fig11 << kErrorNote << "\nN,mean_log_minus1,std_error_minus1,mean_log_i,std_error_i,samples\n";
  auto fig12 = open_csv(out_dir, "fig12_ecdf_inv.csv");
  fig12 << "N,x,survival_minus1,h_minus1,survival_i,h_i\n";

  std::size_t k = 0;
  for (const auto& [n, records] : sizes) {
    if (records.empty()) continue;
    const json& s = summary["sizes"][k++];
    fig6 << n << ',' << s["mean_length"].get<double>() << ',' << s["std_error_length"].get<double>() << ','
         << records.size() << '\n';
    fig8 << n << ',' << s["mean_crossings_raw"].get<double>() << ','
         << s["std_error_crossings_raw"].get<double>() << ',' << s["mean_crossings_simplified"].get<double>()
         << ',' << s["std_error_crossings_simplified"].get<double>() << ',' << records.size() << '\n';
    std::size_t unit = 0;
    for (const auto& r : records) unit += has_unit_determinant(r) ? 1 : 0;
    fig9 << n << ',' << records.size() << ',' << s["unknot_candidates"].get<std::size_t>() << ','
         << s["unknot_fraction"].get<double>() << ',' << s["unknot_std_error"].get<double>() << ',' << unit
         << '\n';
    fig11 << n << ',' << s["mean_log_abs_minus1"].get<double>() << ','
          << s["std_error_log_abs_minus1"].get<double>() << ',' << s["mean_log_abs_i"].get<double>() << ','
          << s["std_error_log_abs_i"].get<double>() << ',' << records.size() << '\n';

    if (all_exact(records))
      for (const auto& row : divisibility_table(records))
        fig10 << n << ',' << row.divisor << ',' << row.frequency << ',' << row.excess << ',' << records.size()
              << '\n';

    if (const auto table = normalized(column(records, [](const SampleRecord& r) { return r.length; })))
      for (int i = 0; i <= 125; ++i) {
        const double x = 0.02 * i;
        fig7 << n << ',' << x << ',' << table->survival(x) << ',' << length_law_survival(x) << '\n';
      }

    const auto ty = normalized(column(records, [](const SampleRecord& r) { return r.log_abs_minus1; }));
    const auto tz = normalized(column(records, [](const SampleRecord& r) { return r.log_abs_i; }));
    const json& ay = s["alpha_minus1"];
    const json& az = s["alpha_i"];
    if (ty || tz)
      for (int i = 0; i <= 200; ++i) {
        const double x = 0.02 * i;
        auto cell = [](const std::optional<EcdfTable>& t, double x) {
          return t ? std::to_string(t->survival(x)) : std::string("nan");
        };
        auto model = [](const json& a, double x) {
          return a.is_null() ? std::string("nan") : std::to_string(h_repartition(x, a["alpha"].get<double>()));
        };
        fig12 << n << ',' << x << ',' << cell(ty, x) << ',' << model(ay, x) << ',' << cell(tz, x) << ','
              << model(az, x) << '\n';
      }
  }

  std::ofstream js(out_dir / "summary.json");
  if (!js) throw IoError("cannot write summary.json");
  js << summary.dump(2) << '\n';
  return summary;
}

}  // namespace knotperc
