#include "intentdbn/io/pipeline.hpp"

#include <stdexcept>

#include "intentdbn/trajectory/los.hpp"

namespace intentdbn::io {

namespace {

struct Run {
  runtime::Environment env;
  std::vector<extract::AlignedPair> pairs;
  std::optional<runtime::Session> session;
};

Run start(const extract::Encounter& e, const geo::PolygonMap& map, const RunConfig& cfg, std::size_t workers) {
  e.validate();
  Run r;
  r.env = make_environment(cfg, map, e.origin);
  r.pairs = extract::align(e);
  if (r.pairs.empty()) throw std::invalid_argument("encounter '" + e.id + "' has no overlapping samples");
  const auto& first = r.pairs.front();
  r.session.emplace(runtime::VesselStates{first.ref, {first.obs}}, cfg.priors, cfg.discretization,
                    cfg.session_params(workers));
  return r;
}

RunLayout layout_of(const runtime::Session& s, const RunConfig& cfg) {
  RunLayout l;
  l.n_ships = s.dbn().n_ships;
  l.intentions = s.posterior().names;
  for (const auto& d : s.posterior().dists) l.cardinalities.push_back(d.p.size());
  for (double o : cfg.offsets) l.candidates.push_back(traj::offset_label(o));
  return l;
}

StepRecord record(runtime::Session& s, const runtime::VesselStates& st, const runtime::Environment& env,
                  const RunConfig& cfg, bool score) {
  StepRecord rec;
  const auto& post = s.posterior();
  rec.t = post.t;
  const auto np = s.node_probabilities();
  rec.sdg_f = np.sdg_f;
  rec.sdg_s = np.sdg_s;
  rec.c_nav_m = np.c_nav_m;
  rec.c_colav_m = np.c_colav_m;
  rec.c = np.c;
  for (const auto& d : post.dists) rec.intentions.insert(rec.intentions.end(), d.p.begin(), d.p.end());
  if (score) {
    const auto cands = traj::los_candidates(st.ref, cfg.offsets, cfg.trajectory);
    const auto sc = s.score_candidates(cands, env);
    for (const auto& c : sc.scores) rec.candidates.push_back(c.normalized);
    rec.all_incompatible = sc.all_incompatible;
  }
  return rec;
}

}  // namespace

runtime::Environment make_environment(const RunConfig& cfg, const geo::PolygonMap& map, geo::LatLon origin) {
  std::vector<geo::Waypoint> route;
  for (const auto& w : cfg.route) {
    const auto p = geo::project_local(w.lat, w.lon, origin);
    route.push_back({p.x, p.y});
  }
  auto env = runtime::Environment::from(map, std::move(route), cfg.slice.ground_spacing);
  env.waypoint_reached = cfg.slice.waypoint_reached;
  return env;
}

RunResult replay(const extract::Encounter& e, const geo::PolygonMap& map, const RunConfig& cfg,
                 const ReplayOptions& opts) {
  Run r = start(e, map, cfg, opts.workers);
  RunResult out;
  out.layout = layout_of(*r.session, cfg);
  for (const auto& [ref, obs] : r.pairs) {
    if (opts.until && ref.t > *opts.until) break;
    const runtime::VesselStates st{ref, {obs}};
    r.session->step_update(st, r.env);
    out.records.push_back(record(*r.session, st, r.env, cfg, opts.score));
  }
  if (!opts.score) out.layout.candidates.clear();
  return out;
}

StepRecord score_at(const extract::Encounter& e, const geo::PolygonMap& map, const RunConfig& cfg, double t,
                    std::size_t workers, RunLayout* layout) {
  Run r = start(e, map, cfg, workers);
  if (t < r.pairs.front().ref.t) throw std::invalid_argument("--at precedes the encounter start");
  std::optional<runtime::VesselStates> last;
  for (const auto& [ref, obs] : r.pairs) {
    if (ref.t > t) break;
    last = runtime::VesselStates{ref, {obs}};
    r.session->step_update(*last, r.env);
  }
  if (layout) *layout = layout_of(*r.session, cfg);
  return record(*r.session, *last, r.env, cfg, true);
}

}  // namespace intentdbn::io
