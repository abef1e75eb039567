#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "intentdbn/bn/errors.hpp"
#include "intentdbn/io/ais_csv.hpp"
#include "intentdbn/io/config.hpp"
#include "intentdbn/io/export.hpp"
#include "intentdbn/io/geojson.hpp"
#include "intentdbn/io/pipeline.hpp"
#include "intentdbn/runtime/session.hpp"
#include "intentdbn/simd/kernels.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace intentdbn;

namespace {

fs::path output_path(const fs::path& p) {
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("INTENTDBN_OUTPUT_DIR"); dir && *dir) return fs::path(dir) / p;
  return p;
}

std::size_t workers_or_default(std::size_t w) { return w > 0 ? w : runtime::default_workers(); }

const extract::Encounter& pick(const io::AisCorpus& corpus, const std::string& id, const fs::path& path) {
  if (corpus.encounters.empty()) throw io::FormatError(path.string() + ": no usable encounters");
  if (id.empty()) {
    if (corpus.encounters.size() > 1) {
      throw io::FormatError(path.string() + ": several encounters present, choose one with --encounter");
    }
    return corpus.encounters.front();
  }
  for (const auto& e : corpus.encounters) {
    if (e.id == id) return e;
  }
  throw io::FormatError(path.string() + ": no encounter '" + id + "'");
}

void print_warnings(const std::vector<std::string>& w) {
  for (const auto& s : w) std::cerr << "warning: " << s << "\n";
}

geo::PolygonMap map_for(const std::optional<io::GeoRings>& rings, geo::LatLon origin) {
  return rings ? io::project_map(*rings, origin) : geo::PolygonMap{};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intention-aware DBN for vessel intention inference and trajectory scoring"};
  app.require_subcommand(1);

  std::string simd_mode;
  app.add_option("--simd", simd_mode, "Kernel variant: auto, scalar or avx2 (env INTENTDBN_SIMD)")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  // extract-priors
  auto* ex = app.add_subcommand("extract-priors", "Fit intention priors from an AIS corpus");
  fs::path ex_corpus, ex_map, ex_out, ex_labels, ex_config;
  std::size_t ex_workers = 0;
  ex->add_option("corpus", ex_corpus, "AIS corpus CSV")->required()->check(CLI::ExistingFile);
  ex->add_option("map", ex_map, "Ground polygons (GeoJSON)")->required()->check(CLI::ExistingFile);
  ex->add_option("-o,--output", ex_out, "Output configuration file")->required();
  ex->add_option("--labels", ex_labels, "Label sidecar (default <corpus stem>.labels.csv)");
  ex->add_option("--config", ex_config, "Base configuration supplying defaults");
  ex->add_option("--workers", ex_workers, "Worker threads (env INTENTDBN_WORKERS)");

  // replay
  auto* rp = app.add_subcommand("replay", "Run the step loop and candidate scoring over an encounter");
  fs::path rp_enc, rp_map, rp_config, rp_out;
  std::string rp_id;
  std::size_t rp_workers = 0;
  bool rp_no_score = false;
  rp->add_option("encounters", rp_enc, "Encounter CSV")->required()->check(CLI::ExistingFile);
  rp->add_option("map", rp_map, "Ground polygons (GeoJSON)")->required()->check(CLI::ExistingFile);
  rp->add_option("config", rp_config, "Run configuration")->required()->check(CLI::ExistingFile);
  rp->add_option("-o,--output", rp_out, "Export path (.csv or .jsonl per config)")->required();
  rp->add_option("--encounter", rp_id, "Encounter id when the file holds several");
  rp->add_option("--workers", rp_workers, "Worker threads (env INTENTDBN_WORKERS)");
  rp->add_flag("--no-score", rp_no_score, "Skip candidate scoring");

  // score
  auto* sc = app.add_subcommand("score", "Score candidate trajectories at one instant");
  fs::path sc_enc, sc_config, sc_map;
  std::string sc_id;
  double sc_at = 0.0;
  std::size_t sc_workers = 0;
  sc->add_option("encounters", sc_enc, "Encounter CSV")->required()->check(CLI::ExistingFile);
  sc->add_option("config", sc_config, "Run configuration")->required()->check(CLI::ExistingFile);
  sc->add_option("--at", sc_at, "Timestamp (s)")->required();
  sc->add_option("--map", sc_map, "Ground polygons (GeoJSON)")->check(CLI::ExistingFile);
  sc->add_option("--encounter", sc_id, "Encounter id when the file holds several");
  sc->add_option("--workers", sc_workers, "Worker threads (env INTENTDBN_WORKERS)");

  // selftest
  auto* st = app.add_subcommand("selftest", "Run the oracle suites");
  std::size_t st_networks = 1000;
  std::uint64_t st_seed = 1;
  st->add_option("--networks", st_networks, "Random networks for the inference oracle");
  st->add_option("--seed", st_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (simd_mode.empty()) {
      if (const char* env = std::getenv("INTENTDBN_SIMD")) simd_mode = env;
    }
    if (simd_mode == "scalar") simd::force_isa(simd::Isa::kScalar);
    if (simd_mode == "avx2") simd::force_isa(simd::Isa::kAvx2);

    if (*ex) {
      io::RunConfig cfg = ex_config.empty() ? io::RunConfig{} : io::load_config(ex_config);
      const auto corpus =
          io::load_ais_csv(ex_corpus, ex_labels.empty() ? std::nullopt : std::optional<fs::path>(ex_labels));
      print_warnings(corpus.warnings);
      if (!corpus.labeled) throw io::FormatError(ex_corpus.string() + ": no label sidecar found");
      const io::GeoRings rings = io::load_geojson(ex_map);
      print_warnings(rings.warnings);
      const auto rep = extract::build_prior_config(
          corpus.encounters, extract::MapProvider([&](const extract::Encounter& e) { return io::project_map(rings, e.origin); }),
          cfg.extraction, cfg.priors, workers_or_default(ex_workers));
      cfg.priors = rep.priors;
      cfg.validate();
      const fs::path out = output_path(ex_out);
      std::ofstream f(out);
      if (!(f << io::serialize_config(cfg))) throw std::runtime_error(out.string() + ": write failed");
      std::cout << rep.text();
      return 0;
    }

    if (*rp) {
      const io::RunConfig cfg = io::load_config(rp_config);
      const auto corpus = io::load_ais_csv(rp_enc);
      print_warnings(corpus.warnings);
      const auto& e = pick(corpus, rp_id, rp_enc);
      const io::GeoRings rings = io::load_geojson(rp_map);
      print_warnings(rings.warnings);
      io::ReplayOptions opts;
      opts.workers = workers_or_default(rp_workers);
      opts.score = !rp_no_score && cfg.output.candidates;
      const auto run = io::replay(e, map_for(rings, e.origin), cfg, opts);
      const fs::path out = output_path(rp_out);
      io::export_run(run.records, run.layout, out, cfg.output);
      std::cout << "wrote " << run.records.size() << " steps to " << out.string() << "\n";
      return 0;
    }

    if (*sc) {
      const io::RunConfig cfg = io::load_config(sc_config);
      const auto corpus = io::load_ais_csv(sc_enc);
      print_warnings(corpus.warnings);
      const auto& e = pick(corpus, sc_id, sc_enc);
      std::optional<io::GeoRings> rings;
      if (!sc_map.empty()) {
        rings = io::load_geojson(sc_map);
        print_warnings(rings->warnings);
      }
      io::RunLayout layout;
      const auto rec = io::score_at(e, map_for(rings, e.origin), cfg, sc_at, workers_or_default(sc_workers), &layout);
      nlohmann::ordered_json j;
      j["encounter"] = e.id;
      j["t"] = rec.t;
      j["SDG_F"] = rec.sdg_f;
      j["SDG_S"] = rec.sdg_s;
      j["C_NAV_M"] = rec.c_nav_m;
      j["C_COLAV_M"] = rec.c_colav_m;
      j["C"] = rec.c;
      nlohmann::ordered_json cands = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < layout.candidates.size() && i < rec.candidates.size(); ++i) {
        cands[layout.candidates[i]] = rec.candidates[i];
      }
      j["candidates"] = cands;
      j["all_incompatible"] = rec.all_incompatible;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*st) {
      const testing::Check checks[] = {
          testing::check_inference_oracle(st_networks, st_seed),
          testing::check_equation_fidelity(10000, st_seed),
          testing::check_segment_cpa(1000, st_seed),
          testing::check_discretization(),
          testing::check_simd_equivalence(st_seed),
      };
      bool ok = true;
      for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        ok = ok && c.pass;
      }
      return ok ? 0 : 1;
    }
  } catch (const bn::ContradictionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
