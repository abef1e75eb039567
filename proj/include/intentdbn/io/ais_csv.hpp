#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "intentdbn/extract/extract.hpp"
#include "intentdbn/io/errors.hpp"

namespace intentdbn::io {

struct AisRecord {
  std::string encounter_id;
  std::string role;  // "reference" or "obstacle"
  std::string mmsi;
  double timestamp = 0.0;
  double lat = 0.0;
  double lon = 0.0;
  double sog = 0.0;  // m/s
  double cog = 0.0;  // degrees

  /// Throws FormatError for a non-finite timestamp, |lat| > 90, |lon| > 180,
  /// sog < 0, cog outside [0, 360) or an unknown role.
  void validate() const;
};

struct AisCorpus {
  std::vector<extract::Encounter> encounters;
  /// False when no label sidecar was found; labels then default to crossing.
  bool labeled = false;
  std::vector<std::string> warnings;
};

/// Columns: encounter_id, role, mmsi, timestamp, lat, lon, sog_mps, cog_deg
/// (any order, extra columns ignored). Labels come from `labels`, or from
/// `<stem>.labels.csv` next to the corpus when not given (columns
/// encounter_id, label). Tracks are projected about the encounter's earliest
/// reference fix, time-sorted, and duplicate timestamps drop all but the first.
/// Errors: FormatError with line number, SchemaError for missing columns.
AisCorpus load_ais_csv(const std::filesystem::path& path,
                       const std::optional<std::filesystem::path>& labels = std::nullopt);

/// Splits one CSV line; double quotes may wrap fields containing commas.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace intentdbn::io
