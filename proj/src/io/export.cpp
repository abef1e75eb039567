#include "intentdbn/io/export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "intentdbn/io/ais_csv.hpp"
#include "json.hpp"

namespace intentdbn::io {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> row_values(const StepRecord& r, const RunLayout& layout, const ExportOptions& opts) {
  std::vector<double> v{r.t, r.sdg_f, r.sdg_s};
  auto per_ship = [&](const std::vector<double>& xs, const char* what) {
    if (xs.size() != layout.n_ships) throw std::invalid_argument(std::string("record has wrong ") + what + " count");
    v.insert(v.end(), xs.begin(), xs.end());
  };
  per_ship(r.c_nav_m, "C_NAV_M");
  per_ship(r.c_colav_m, "C_COLAV_M");
  v.push_back(r.c);
  if (opts.intentions) {
    std::size_t total = 0;
    for (auto c : layout.cardinalities) total += c;
    if (r.intentions.size() != total) throw std::invalid_argument("record has wrong intention state count");
    v.insert(v.end(), r.intentions.begin(), r.intentions.end());
  }
  if (opts.candidates) {
    if (r.candidates.size() != layout.candidates.size()) throw std::invalid_argument("record has wrong candidate count");
    v.insert(v.end(), r.candidates.begin(), r.candidates.end());
    v.push_back(r.all_incompatible ? 1.0 : 0.0);
  }
  return v;
}

}  // namespace

std::vector<std::string> export_columns(const RunLayout& layout, const ExportOptions& opts) {
  std::vector<std::string> c{"t", "SDG_F", "SDG_S"};
  for (std::size_t i = 0; i < layout.n_ships; ++i) c.push_back("C_NAV_M_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < layout.n_ships; ++i) c.push_back("C_COLAV_M_" + std::to_string(i + 1));
  c.push_back("C");
  if (opts.intentions) {
    for (std::size_t k = 0; k < layout.intentions.size(); ++k) {
      for (std::size_t s = 0; s < layout.cardinalities.at(k); ++s) {
        c.push_back(layout.intentions[k] + "[" + std::to_string(s) + "]");
      }
    }
  }
  if (opts.candidates) {
    for (const auto& id : layout.candidates) c.push_back("cand_" + id);
    c.push_back("all_incompatible");
  }
  return c;
}

void export_run(const std::vector<StepRecord>& records, const RunLayout& layout, const std::filesystem::path& path,
                const ExportOptions& opts) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  const auto cols = export_columns(layout, opts);
  if (opts.format == ExportFormat::kCsv) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : records) {
      const auto v = row_values(r, layout, opts);
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << fmt(v[i]);
      out << "\n";
    }
  } else {
    for (const auto& r : records) {
      const auto v = row_values(r, layout, opts);
      nlohmann::ordered_json j;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (cols[i] == "all_incompatible") {
          j[cols[i]] = v[i] != 0.0;
        } else {
          j[cols[i]] = v[i];
        }
      }
      out << j.dump() << "\n";
    }
  }
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

CsvTable read_export_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) return t;
  t.columns = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& f : split_csv_line(line)) row.push_back(std::stod(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace intentdbn::io
