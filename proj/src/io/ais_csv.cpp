#include "intentdbn/io/ais_csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "intentdbn/geometry/angles.hpp"
#include "intentdbn/geometry/projection.hpp"

namespace intentdbn::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const std::filesystem::path& p, std::size_t line) {
  return p.string() + ":" + std::to_string(line) + ": ";
}

double to_double(const std::string& s, const std::filesystem::path& p, std::size_t line, const char* col) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (!s.empty() && *b == '+') ++b;
  const auto r = std::from_chars(b, e, v);
  if (s.empty() || r.ec != std::errc() || r.ptr != e) {
    throw FormatError(where(p, line) + "column '" + col + "' is not a number: '" + s + "'");
  }
  return v;
}

struct Header {
  std::map<std::string, std::size_t> index;

  std::size_t at(const std::string& name, const std::filesystem::path& p) const {
    auto it = index.find(name);
    if (it == index.end()) throw SchemaError(p.string() + ": missing column '" + name + "'");
    return it->second;
  }
};

Header read_header(std::istream& in, const std::filesystem::path& p) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(p.string() + ": missing header row");
  Header h;
  const auto cols = split_csv_line(line);
  for (std::size_t i = 0; i < cols.size(); ++i) h.index.emplace(trim(cols[i]), i);
  return h;
}

std::map<std::string, extract::ColregsLabel> load_labels(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw FormatError(p.string() + ": cannot open label file");
  const Header h = read_header(in, p);
  const std::size_t ci = h.at("encounter_id", p), cl = h.at("label", p);
  std::map<std::string, extract::ColregsLabel> out;
  std::string line;
  for (std::size_t ln = 2; std::getline(in, line); ++ln) {
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() <= std::max(ci, cl)) throw FormatError(where(p, ln) + "too few fields");
    try {
      out[trim(f[ci])] = extract::parse_label(trim(f[cl]));
    } catch (const std::invalid_argument& e) {
      throw FormatError(where(p, ln) + e.what());
    }
  }
  return out;
}

struct Track {
  std::string mmsi;
  std::vector<std::pair<AisRecord, std::size_t>> rows;  // record, line
};

std::vector<geo::ShipState> to_states(Track& tr, geo::LatLon origin, const std::string& what,
                                      std::vector<std::string>& warnings) {
  const bool sorted = std::is_sorted(tr.rows.begin(), tr.rows.end(),
                                     [](const auto& a, const auto& b) { return a.first.timestamp < b.first.timestamp; });
  if (!sorted) {
    warnings.push_back(what + ": timestamps out of order, sorted");
    std::stable_sort(tr.rows.begin(), tr.rows.end(),
                     [](const auto& a, const auto& b) { return a.first.timestamp < b.first.timestamp; });
  }
  std::vector<geo::ShipState> out;
  std::size_t dropped = 0;
  for (const auto& [r, ln] : tr.rows) {
    if (!out.empty() && out.back().t == r.timestamp) {
      ++dropped;
      continue;
    }
    const geo::Vec2 p = geo::project_local(r.lat, r.lon, origin);
    out.push_back(geo::ShipState{r.timestamp, p.x, p.y, r.sog, geo::wrap_two_pi(geo::deg2rad(r.cog))});
  }
  if (dropped > 0) warnings.push_back(what + ": dropped " + std::to_string(dropped) + " duplicate timestamps");
  return out;
}

}  // namespace

void AisRecord::validate() const {
  if (!std::isfinite(timestamp)) throw FormatError("timestamp is not finite");
  if (!(std::abs(lat) <= 90.0)) throw FormatError("lat outside [-90, 90]");
  if (!(std::abs(lon) <= 180.0)) throw FormatError("lon outside [-180, 180]");
  if (!(sog >= 0.0) || !std::isfinite(sog)) throw FormatError("sog must be finite and >= 0");
  if (!(cog >= 0.0 && cog < 360.0)) throw FormatError("cog outside [0, 360)");
  if (role != "reference" && role != "obstacle") throw FormatError("role must be 'reference' or 'obstacle'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r' && c != '\n') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

AisCorpus load_ais_csv(const std::filesystem::path& path, const std::optional<std::filesystem::path>& labels) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open corpus");
  const Header h = read_header(in, path);
  const std::size_t c_id = h.at("encounter_id", path), c_role = h.at("role", path), c_mmsi = h.at("mmsi", path),
                    c_t = h.at("timestamp", path), c_lat = h.at("lat", path), c_lon = h.at("lon", path),
                    c_sog = h.at("sog_mps", path), c_cog = h.at("cog_deg", path);
  const std::size_t need = std::max({c_id, c_role, c_mmsi, c_t, c_lat, c_lon, c_sog, c_cog}) + 1;

  struct Group {
    Track ref, obs;
  };
  std::map<std::string, Group> groups;
  std::vector<std::string> order;
  std::string line;
  for (std::size_t ln = 2; std::getline(in, line); ++ln) {
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() < need) throw FormatError(where(path, ln) + "expected " + std::to_string(need) + " fields");
    AisRecord r;
    r.encounter_id = trim(f[c_id]);
    r.role = trim(f[c_role]);
    r.mmsi = trim(f[c_mmsi]);
    r.timestamp = to_double(trim(f[c_t]), path, ln, "timestamp");
    r.lat = to_double(trim(f[c_lat]), path, ln, "lat");
    r.lon = to_double(trim(f[c_lon]), path, ln, "lon");
    r.sog = to_double(trim(f[c_sog]), path, ln, "sog_mps");
    r.cog = to_double(trim(f[c_cog]), path, ln, "cog_deg");
    try {
      r.validate();
    } catch (const FormatError& e) {
      throw FormatError(where(path, ln) + e.what());
    }
    auto [it, fresh] = groups.try_emplace(r.encounter_id);
    if (fresh) order.push_back(r.encounter_id);
    Track& tr = r.role == "reference" ? it->second.ref : it->second.obs;
    if (tr.rows.empty()) {
      tr.mmsi = r.mmsi;
    } else if (tr.mmsi != r.mmsi) {
      throw FormatError(where(path, ln) + "encounter '" + r.encounter_id + "' has more than one " + r.role +
                        " vessel");
    }
    tr.rows.emplace_back(std::move(r), ln);
  }

  AisCorpus corpus;
  std::map<std::string, extract::ColregsLabel> label_map;
  std::filesystem::path lp = labels ? *labels : path.parent_path() / (path.stem().string() + ".labels.csv");
  if (labels || std::filesystem::exists(lp)) {
    label_map = load_labels(lp);
    corpus.labeled = true;
  }

  for (const auto& id : order) {
    Group& g = groups[id];
    if (g.ref.rows.empty() || g.obs.rows.empty()) {
      corpus.warnings.push_back("encounter '" + id + "': missing reference or obstacle track, skipped");
      continue;
    }
    const auto first = std::min_element(g.ref.rows.begin(), g.ref.rows.end(), [](const auto& a, const auto& b) {
      return a.first.timestamp < b.first.timestamp;
    });
    extract::Encounter e;
    e.id = id;
    e.origin = {first->first.lat, first->first.lon};
    e.ref = to_states(g.ref, e.origin, "encounter '" + id + "' reference", corpus.warnings);
    e.obs = to_states(g.obs, e.origin, "encounter '" + id + "' obstacle", corpus.warnings);
    if (corpus.labeled) {
      auto it = label_map.find(id);
      if (it == label_map.end()) {
        corpus.warnings.push_back("encounter '" + id + "': no label, skipped");
        continue;
      }
      e.label = it->second;
    }
    corpus.encounters.push_back(std::move(e));
  }
  return corpus;
}

}  // namespace intentdbn::io
