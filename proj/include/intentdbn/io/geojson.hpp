#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "intentdbn/geometry/projection.hpp"
#include "intentdbn/geometry/types.hpp"
#include "intentdbn/io/errors.hpp"

namespace intentdbn::io {

/// Exterior rings in (lon, lat) degrees, closed (first == last).
struct GeoRings {
  std::vector<std::vector<geo::LatLon>> rings;
  std::vector<std::string> warnings;
};

/// FeatureCollection of Polygon/MultiPolygon features (a bare geometry or
/// Feature is accepted too). Interior rings are ignored, other geometry types
/// are skipped with a warning, and rings with fewer than 3 distinct vertices
/// throw FormatError.
GeoRings load_geojson(const std::filesystem::path& path);
GeoRings parse_geojson(const std::string& text, const std::string& source = "<memory>");

geo::PolygonMap project_map(const GeoRings& rings, geo::LatLon origin);

/// load_geojson followed by project_map.
geo::PolygonMap load_map_geojson(const std::filesystem::path& path, geo::LatLon origin);

/// FeatureCollection with one Polygon feature per ring, unprojected about `origin`.
std::string to_geojson(const geo::PolygonMap& map, geo::LatLon origin);

}  // namespace intentdbn::io
