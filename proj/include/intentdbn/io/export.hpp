#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "intentdbn/io/config.hpp"

namespace intentdbn::io {

/// Column layout shared by every record of a run.
struct RunLayout {
  std::size_t n_ships = 1;
  /// Intention node names and their state counts, in posterior order.
  std::vector<std::string> intentions;
  std::vector<std::size_t> cardinalities;
  std::vector<std::string> candidates;
};

struct StepRecord {
  double t = 0.0;
  double sdg_f = 0.0;
  double sdg_s = 0.0;
  std::vector<double> c_nav_m;
  std::vector<double> c_colav_m;
  double c = 0.0;
  /// Flattened intention posteriors, layout.intentions order.
  std::vector<double> intentions;
  std::vector<double> candidates;
  bool all_incompatible = false;
};

/// Column names in output order:
/// t, SDG_F, SDG_S, C_NAV_M_1..n, C_COLAV_M_1..n, C, then `<node>[<state>]`
/// for every intention state, then `cand_<id>` per candidate and
/// all_incompatible (the last two groups only when enabled).
std::vector<std::string> export_columns(const RunLayout& layout, const ExportOptions& opts);

/// CSV numbers use 12 significant digits; JSONL writes one object per step
/// with the same member names. Throws std::runtime_error naming the path on I/O failure.
void export_run(const std::vector<StepRecord>& records, const RunLayout& layout, const std::filesystem::path& path,
                const ExportOptions& opts);

/// Parse a CSV written by export_run back into column names and rows.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
CsvTable read_export_csv(const std::filesystem::path& path);

}  // namespace intentdbn::io
