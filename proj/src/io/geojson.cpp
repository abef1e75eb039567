#include "intentdbn/io/geojson.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace intentdbn::io {

namespace {

using nlohmann::json;

std::vector<geo::LatLon> read_ring(const json& coords, const std::string& source) {
  if (!coords.is_array()) throw FormatError(source + ": ring is not an array");
  std::vector<geo::LatLon> ring;
  for (const auto& pt : coords) {
    if (!pt.is_array() || pt.size() < 2 || !pt[0].is_number() || !pt[1].is_number()) {
      throw FormatError(source + ": position must be [lon, lat]");
    }
    ring.push_back({pt[1].get<double>(), pt[0].get<double>()});
  }
  if (!ring.empty() && (ring.front().lat != ring.back().lat || ring.front().lon != ring.back().lon)) {
    ring.push_back(ring.front());
  }
  std::size_t distinct = 0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    const auto& a = ring[i];
    const auto& b = ring[i + 1];
    if (a.lat != b.lat || a.lon != b.lon) ++distinct;
  }
  if (distinct < 3) throw FormatError(source + ": degenerate ring with fewer than 3 distinct vertices");
  return ring;
}

void read_polygon(const json& coords, const std::string& source, GeoRings& out) {
  if (!coords.is_array() || coords.empty()) throw FormatError(source + ": polygon has no rings");
  out.rings.push_back(read_ring(coords[0], source));
}

void read_geometry(const json& g, const std::string& source, GeoRings& out) {
  if (g.is_null()) return;
  const std::string type = g.value("type", "");
  if (type == "Polygon") {
    read_polygon(g.at("coordinates"), source, out);
  } else if (type == "MultiPolygon") {
    for (const auto& poly : g.at("coordinates")) read_polygon(poly, source, out);
  } else if (type == "GeometryCollection") {
    for (const auto& sub : g.at("geometries")) read_geometry(sub, source, out);
  } else {
    out.warnings.push_back(source + ": skipped " + (type.empty() ? std::string("untyped") : type) + " geometry");
  }
}

}  // namespace

GeoRings parse_geojson(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(source + ": " + e.what());
  }
  GeoRings out;
  try {
    const std::string type = doc.value("type", "");
    if (type == "FeatureCollection") {
      for (const auto& f : doc.at("features")) read_geometry(f.value("geometry", json()), source, out);
    } else if (type == "Feature") {
      read_geometry(doc.value("geometry", json()), source, out);
    } else {
      read_geometry(doc, source, out);
    }
  } catch (const json::exception& e) {
    throw FormatError(source + ": " + e.what());
  }
  return out;
}

GeoRings load_geojson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open map");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_geojson(ss.str(), path.string());
}

geo::PolygonMap project_map(const GeoRings& rings, geo::LatLon origin) {
  geo::PolygonMap map;
  for (const auto& r : rings.rings) {
    std::vector<geo::Vec2> ring;
    for (const auto& p : r) ring.push_back(geo::project_local(p.lat, p.lon, origin));
    map.rings.push_back(std::move(ring));
  }
  return map;
}

geo::PolygonMap load_map_geojson(const std::filesystem::path& path, geo::LatLon origin) {
  return project_map(load_geojson(path), origin);
}

std::string to_geojson(const geo::PolygonMap& map, geo::LatLon origin) {
  json features = json::array();
  for (const auto& ring : map.rings) {
    json coords = json::array();
    for (const auto& p : ring) {
      const auto ll = geo::unproject_local(p, origin);
      coords.push_back({ll.lon, ll.lat});
    }
    features.push_back({{"type", "Feature"},
                        {"properties", json::object()},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({coords})}}}});
  }
  return json{{"type", "FeatureCollection"}, {"features", features}}.dump(1) + "\n";
}

}  // namespace intentdbn::io
