#include <cmath>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "intentdbn/io/ais_csv.hpp"
#include "intentdbn/io/config.hpp"
#include "intentdbn/io/export.hpp"
#include "intentdbn/io/geojson.hpp"

using namespace intentdbn;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    std::random_device rd;
    auto d = fs::temp_directory_path() / ("intentdbn_unit_" + std::to_string(rd()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kHeader = "encounter_id,role,mmsi,timestamp,lat,lon,sog_mps,cog_deg\n";

}  // namespace

TEST_CASE("ais csv: empty corpus") {
  const auto c = io::load_ais_csv(write("empty.csv", kHeader));
  CHECK(c.encounters.empty());
}

TEST_CASE("ais csv: three-sample encounter with labels") {
  std::string s = kHeader;
  for (int k = 0; k < 3; ++k) {
    const std::string t = std::to_string(10 * k);
    s += "e1,reference,111," + t + ",63.4," + std::to_string(10.4 + 0.001 * k) + ",5,90\n";
    s += "e1,obstacle,222," + t + ",63.41,10.41,5,180\n";
  }
  const auto p = write("three.csv", s);
  write("three.labels.csv", "encounter_id,label\ne1,head-on\n");
  const auto c = io::load_ais_csv(p);
  REQUIRE(c.encounters.size() == 1);
  CHECK(c.labeled);
  const auto& e = c.encounters.front();
  CHECK(e.ref.size() == 3);
  CHECK(e.obs.size() == 3);
  CHECK(e.label == extract::ColregsLabel::kHeadOn);
  CHECK(e.ref.front().x == doctest::Approx(0.0));
  CHECK(e.ref[1].x > 0.0);
  CHECK(e.ref.front().cog == doctest::Approx(geo::kPi / 2));
}

TEST_CASE("ais csv: out of order timestamps are sorted with a warning") {
  std::string s = kHeader;
  for (int t : {20, 0, 10}) {
    s += "e1,reference,111," + std::to_string(t) + ",63.4,10.4,5,0\n";
    s += "e1,obstacle,222," + std::to_string(t) + ",63.41,10.41,5,180\n";
  }
  const auto c = io::load_ais_csv(write("ooo.csv", s), write("ooo.labels.csv", "encounter_id,label\ne1,crossing\n"));
  REQUIRE(c.encounters.size() == 1);
  const auto& r = c.encounters.front().ref;
  CHECK(std::is_sorted(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.t < b.t; }));
  bool warned = false;
  for (const auto& w : c.warnings) warned |= w.find("out of order") != std::string::npos;
  CHECK(warned);
}

TEST_CASE("ais csv: schema and format errors") {
  CHECK_THROWS_AS(io::load_ais_csv(write("nocol.csv", "encounter_id,role,timestamp\n")), io::SchemaError);
  std::string s = kHeader;
  s += "e1,reference,111,0,63.4,10.4,5,0\n";
  s += "e1,reference,111,10,63.4,10.4,fast,0\n";
  try {
    io::load_ais_csv(write("bad.csv", s));
    FAIL("expected a format error");
  } catch (const io::FormatError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  CHECK(io::split_csv_line("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
}

TEST_CASE("geojson polygons") {
  const std::string square = R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{},
    "geometry":{"type":"Polygon","coordinates":[[[10,63],[10.01,63],[10.01,63.01],[10,63.01],[10,63]]]}}]})";
  const auto g = io::parse_geojson(square);
  REQUIRE(g.rings.size() == 1);
  CHECK(g.rings.front().size() == 5);

  const std::string multi = R"({"type":"MultiPolygon","coordinates":[
    [[[0,0],[1,0],[1,1],[0,0]]], [[[2,2],[3,2],[3,3],[2,2]]]]})";
  CHECK(io::parse_geojson(multi).rings.size() == 2);

  const std::string degenerate = R"({"type":"Polygon","coordinates":[[[0,0],[1,1],[0,0]]]})";
  CHECK_THROWS_AS(io::parse_geojson(degenerate), io::FormatError);

  const std::string mixed = R"({"type":"FeatureCollection","features":[
    {"type":"Feature","geometry":{"type":"Point","coordinates":[0,0]}},
    {"type":"Feature","geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}}]})";
  const auto m = io::parse_geojson(mixed);
  CHECK(m.rings.size() == 1);
  CHECK(m.warnings.size() == 1);
}

TEST_CASE("geojson projection round trip") {
  const geo::LatLon o{63.4, 10.4};
  const std::string square = R"({"type":"Polygon","coordinates":[[[10.4,63.4],[10.41,63.4],[10.41,63.41],[10.4,63.4]]]})";
  const auto g = io::parse_geojson(square);
  const auto map = io::project_map(g, o);
  const auto back = io::parse_geojson(io::to_geojson(map, o));
  REQUIRE(back.rings.size() == 1);
  for (std::size_t i = 0; i < g.rings[0].size(); ++i) {
    CHECK(std::abs(back.rings[0][i].lat - g.rings[0][i].lat) < 1e-9);
    CHECK(std::abs(back.rings[0][i].lon - g.rings[0][i].lon) < 1e-9);
  }
}

TEST_CASE("config round trip is byte exact") {
  io::RunConfig cfg;
  cfg.priors.sd.mu = 812.5;
  cfg.slice.dts_max = 45.0;
  cfg.route = {{63.4, 10.4}, {63.5, 10.5}};
  const auto text = io::serialize_config(cfg);
  const auto parsed = io::parse_config(text);
  CHECK(parsed == cfg);
  CHECK(io::serialize_config(parsed) == text);
  CHECK(io::serialize_config(io::parse_config("{}")) == io::serialize_config(io::RunConfig{}));
}

TEST_CASE("config rejects unknown members and bad values") {
  CHECK_THROWS_AS(io::parse_config(R"({"bogus": 1})"), io::SchemaError);
  CHECK_THROWS_AS(io::parse_config(R"({"slice": {"dts_max": "sixty"}})"), io::SchemaError);
  CHECK_THROWS_AS(io::parse_config(R"({"slice": {"dts_max": -1}})"), io::FormatError);
  CHECK_THROWS_AS(io::parse_config("{"), io::FormatError);
}

TEST_CASE("export csv and jsonl") {
  io::RunLayout layout;
  layout.n_ships = 1;
  layout.intentions = {"I_U"};
  layout.cardinalities = {2};
  layout.candidates = {"nominal", "stbd20"};
  io::ExportOptions opts;
  const auto cols = io::export_columns(layout, opts);
  CHECK(cols.front() == "t");
  CHECK(cols.back() == "all_incompatible");

  const auto empty = scratch() / "empty.csv";
  io::export_run({}, layout, empty, opts);
  const auto e = io::read_export_csv(empty);
  CHECK(e.columns == cols);
  CHECK(e.rows.empty());

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<io::StepRecord> recs;
  for (int k = 0; k < 7; ++k) {
    io::StepRecord r;
    r.t = 5.0 * k + u(rng);
    r.sdg_f = u(rng);
    r.sdg_s = u(rng);
    r.c_nav_m = {u(rng)};
    r.c_colav_m = {u(rng)};
    r.c = u(rng);
    r.intentions = {u(rng), u(rng)};
    r.candidates = {u(rng), u(rng)};
    recs.push_back(r);
  }
  const auto csv = scratch() / "run.csv";
  io::export_run(recs, layout, csv, opts);
  const auto tab = io::read_export_csv(csv);
  REQUIRE(tab.rows.size() == recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto& row = tab.rows[k];
    CHECK(std::abs(row[0] - recs[k].t) < 1e-9 * std::max(1.0, recs[k].t));
    CHECK(std::abs(row[1] - recs[k].sdg_f) < 1e-9);
    CHECK(std::abs(row[5] - recs[k].c) < 1e-9);
  }

  opts.format = io::ExportFormat::kJsonl;
  const auto jl = scratch() / "run.jsonl";
  io::export_run(recs, layout, jl, opts);
  std::istringstream lines(slurp(jl));
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) n += !line.empty();
  CHECK(n == recs.size());
}

TEST_CASE("export to an unwritable path names it") {
  io::RunLayout layout;
  try {
    io::export_run({}, layout, "/nonexistent_dir_xyz/out.csv", {});
    FAIL("expected failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent_dir_xyz/out.csv") != std::string::npos);
  }
}
