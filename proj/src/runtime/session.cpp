#include "intentdbn/runtime/session.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <thread>

#include "intentdbn/bn/errors.hpp"
#include "intentdbn/geometry/angles.hpp"
#include "intentdbn/geometry/kinematics.hpp"
#include "intentdbn/geometry/maneuver.hpp"

namespace intentdbn::runtime {

namespace {

constexpr double kScoreFloor = 1e-12;

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  }
  template <class T>
  void pod(const T& v) {
    bytes(&v, sizeof v);
  }
  void state(const geo::ShipState& s) {
    pod(s.t);
    pod(s.x);
    pod(s.y);
    pod(s.sog);
    pod(s.cog);
  }
};

}  // namespace

Environment Environment::from(const geo::PolygonMap& map, std::vector<geo::Waypoint> route, double densify_spacing) {
  Environment env;
  env.ground = geo::VertexCloud::from(densify_spacing > 0.0 ? geo::densify(map, densify_spacing) : map);
  env.route = std::move(route);
  return env;
}

void SessionParams::validate() const {
  if (!(dts_min > 0.0)) throw std::invalid_argument("runtime.dts_min must be > 0");
  if (!(dts_max >= dts_min)) throw std::invalid_argument("runtime.dts_max must be >= dts_min");
  if (!(theta > 0.0)) throw std::invalid_argument("runtime.theta must be > 0");
  if (!(upsilon > 0.0)) throw std::invalid_argument("runtime.upsilon must be > 0");
  if (!(lookahead > 0.0)) throw std::invalid_argument("runtime.lookahead must be > 0");
  geometry.validate();
}

const bn::Distribution& IntentionPosterior::operator[](std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return dists[i];
  }
  throw std::out_of_range("no intention node named '" + std::string(name) + "'");
}

std::size_t default_workers() {
  if (const char* w = std::getenv("INTENTDBN_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(w, &end, 10);
    if (end != w && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Session::Session(const VesselStates& initial, const model::IntentionPriors& priors,
                 const model::DiscretizationSet& disc, SessionParams params)
    : params_(std::move(params)), start_(initial), last_states_(initial), last_t_(initial.ref.t) {
  params_.validate();
  if (initial.obstacles.empty()) throw std::invalid_argument("at least one obstacle vessel is required");
  std::vector<geo::Situation> cs;
  for (const auto& o : initial.obstacles) cs.push_back(geo::classify_colregs(initial.ref, o, params_.geometry));
  dbn_ = model::build_intention_dbn(initial.obstacles.size(), priors, disc, 1, cs);
  scoring_ = model::build_scoring_dbn(initial.obstacles.size(), disc);
  dbn_.net.set_evidence(dbn_.intent.sa_init, 0);
  dbn_.net.set_evidence(dbn_.intent.pa_init, 0);
  ref_history_.push_back(initial.ref);
  slice_times_.push_back(initial.ref.t);
  slice_states_.push_back(initial);
  slice_mv_.emplace_back();
  posterior_ = infer_posterior(initial.ref.t);
}

std::optional<geo::Waypoint> Session::current_waypoint(const Environment& env) const {
  if (waypoint_index_ < env.route.size()) return env.route[waypoint_index_];
  return std::nullopt;
}

bool Session::should_add_slice(const VesselStates& states) const {
  const double age = states.ref.t - slice_times_.back();
  if (age > params_.dts_max) return true;
  if (age < params_.dts_min) return false;
  const VesselStates& base = slice_states_.back();
  auto changed = [&](const geo::ShipState& now, const geo::ShipState& then) {
    return std::abs(geo::angle_diff(now.cog, then.cog)) > params_.theta ||
           std::abs(now.sog - then.sog) > params_.upsilon;
  };
  if (changed(states.ref, base.ref)) return true;
  for (std::size_t i = 0; i < states.obstacles.size() && i < base.obstacles.size(); ++i) {
    if (changed(states.obstacles[i], base.obstacles[i])) return true;
  }
  return false;
}

std::vector<geo::ShipState> Session::recent_history(const geo::ShipState& now) const {
  const double window = std::max(params_.geometry.wpt_window, params_.geometry.ccc_window);
  std::vector<geo::ShipState> out;
  // One sample at or before the window start keeps the waypoint trend defined.
  std::size_t first = 0;
  for (std::size_t i = 0; i < ref_history_.size(); ++i) {
    if (ref_history_[i].t <= now.t - window) first = i;
  }
  for (std::size_t i = first; i < ref_history_.size(); ++i) {
    if (ref_history_[i].t < now.t) out.push_back(ref_history_[i]);
  }
  out.push_back(now);
  return out;
}

model::RawMeasurements Session::measure(const VesselStates& states, const Environment& env) const {
  if (states.obstacles.size() != dbn_.n_ships) {
    throw std::invalid_argument("obstacle count does not match the session");
  }
  const auto& g = params_.geometry;
  model::RawMeasurements raw;
  for (const auto& o : states.obstacles) raw.ships.push_back(model::measure_pair(states.ref, o, g));
  const auto recent = recent_history(states.ref);
  const auto cc = geo::course_speed_changes(start_.ref, recent, g);
  raw.cic = cc.cic;
  raw.cis = cc.cis;
  raw.ccc = cc.ccc;
  if (auto wp = current_waypoint(env)) {
    const auto w = geo::waypoint_measurements(recent, *wp, g);
    raw.wprb = w.wprb;
    raw.wprd = w.wprd;
    raw.wpah = w.wpah;
  }
  if (env.ground.size() > 0) {
    const auto d = geo::grounding_measurements(states.ref, env.ground, g);
    raw.dgsb = d.dgsb;
    raw.dgps = d.dgps;
    raw.dgf = d.dgf;
  }
  return raw;
}

const IntentionPosterior& Session::step_update(const VesselStates& states, const Environment& env) {
  const double t = states.ref.t;
  if (states.obstacles.size() != dbn_.n_ships) {
    throw std::invalid_argument("obstacle count does not match the session");
  }
  if (stepped_ ? !(t > last_t_) : !(t >= last_t_)) {
    throw std::invalid_argument("step states must be later than the previous step");
  }
  for (const auto& o : states.obstacles) {
    if (o.t != t) throw std::invalid_argument("obstacle states must share the reference timestamp");
  }

  while (waypoint_index_ < env.route.size() &&
         geo::norm(env.route[waypoint_index_].pos() - states.ref.pos()) < env.waypoint_reached) {
    ++waypoint_index_;
  }
  if (stepped_ && should_add_slice(states)) {
    dbn_.add_slice();
    slice_times_.push_back(t);
    slice_states_.push_back(states);
    slice_mv_.emplace_back();
  }

  const model::MeasurementVector mv = model::discretize(measure(states, env), dbn_.disc);
  model::apply_measurements(dbn_.net, dbn_.slices.back(), mv);
  dbn_.net.set_evidence(dbn_.slices.back().c, 1);
  slice_mv_.back() = mv;

  if (!ref_history_.empty() && ref_history_.back().t == t) {
    ref_history_.back() = states.ref;
  } else {
    ref_history_.push_back(states.ref);
  }
  const double keep = 2.0 * std::max(params_.geometry.wpt_window, params_.geometry.ccc_window);
  while (ref_history_.size() > 2 && ref_history_[1].t < t - keep) ref_history_.erase(ref_history_.begin());

  last_states_ = states;
  last_t_ = t;
  stepped_ = true;
  posterior_ = infer_posterior(t);
  return posterior_;
}

IntentionPosterior Session::infer_posterior(double t) const {
  IntentionPosterior p;
  p.t = t;
  const auto q = dbn_.intent.all();
  p.dists = bn::posteriors(dbn_.net, q, params_.inference);
  for (auto v : q) p.names.push_back(dbn_.net.variable(v).name);
  return p;
}

NodeProbabilities Session::node_probabilities() const {
  const auto& s = dbn_.slices.back();
  std::vector<bn::VarId> q{s.sdg_f, s.sdg_s};
  for (const auto& h : s.ships) {
    q.push_back(h.c_nav_m);
    q.push_back(h.c_colav_m);
  }
  const auto d = bn::posteriors(dbn_.net, q, params_.inference);
  bn::Network open = dbn_.net;
  open.clear_evidence(s.c);
  NodeProbabilities np;
  np.c = bn::posterior(open, s.c, params_.inference)[1];
  np.sdg_f = d[0][1];
  np.sdg_s = d[1][1];
  for (std::size_t i = 0; i < s.ships.size(); ++i) {
    np.c_nav_m.push_back(d[2 + 2 * i][1]);
    np.c_colav_m.push_back(d[3 + 2 * i][1]);
  }
  return np;
}

bool Session::latch(geo::CourseChange side) const {
  for (std::size_t k = 0; k < slice_mv_.size(); ++k) {
    if (!slice_mv_[k].ships.empty() && slice_mv_[k].cic == side) return true;
  }
  return false;
}

model::MeasurementVector Session::measure_candidate(const traj::CandidateTrajectory& c, const Environment& env) const {
  if (c.samples.empty()) throw std::invalid_argument("candidate '" + c.id + "' has no samples");
  const auto& g = params_.geometry;
  const geo::ShipState& start = c.samples.front();
  const geo::ShipState look = c.at(start.t + params_.lookahead);
  const double elapsed = look.t - start.t;

  model::RawMeasurements raw;
  for (const auto& o : last_states_.obstacles) {
    const geo::ShipState obs = o.advanced(look.t - o.t);
    auto m = model::measure_pair(look, obs, g);
    m.tcpa += elapsed;
    raw.ships.push_back(m);
  }

  // Course/speed change at the lookahead point; course-changing as observed at the start.
  const geo::ShipState look_only[] = {look};
  const auto cc = geo::course_speed_changes(start_.ref, look_only, g);
  raw.cic = cc.cic;
  raw.cis = cc.cis;
  raw.ccc = geo::course_speed_changes(start_.ref, recent_history(start), g).ccc;

  if (auto wp = current_waypoint(env)) {
    const auto w = geo::waypoint_change(start, look, *wp, g);
    raw.wprb = w.wprb;
    raw.wprd = w.wprd;
    raw.wpah = w.wpah;
  }
  if (env.ground.size() > 0) {
    const auto d = geo::grounding_measurements(look, env.ground, g);
    raw.dgsb = d.dgsb;
    raw.dgps = d.dgps;
    raw.dgf = d.dgf;
  }
  return model::discretize(raw, dbn_.disc);
}

CandidateScores Session::score_candidates(std::span<const traj::CandidateTrajectory> candidates,
                                          const Environment& env) const {
  if (candidates.empty()) throw std::invalid_argument("no candidate trajectories to score");
  const auto score_ids = scoring_.intent.all();
  const bool sa = latch(geo::CourseChange::kStarboard);
  const bool pa = latch(geo::CourseChange::kPort);

  std::vector<double> raw(candidates.size(), 0.0);
  auto score_one = [&](std::size_t k) {
    bn::Network net = scoring_.net;
    for (std::size_t i = 0; i < score_ids.size(); ++i) {
      net.set_virtual_evidence(score_ids[i], posterior_.dists[i].p);
    }
    net.set_evidence(scoring_.intent.sa_init, sa ? 1 : 0);
    net.set_evidence(scoring_.intent.pa_init, pa ? 1 : 0);
    model::apply_measurements(net, scoring_.slices.front(), measure_candidate(candidates[k], env));
    double p = 0.0;
    try {
      p = bn::posterior(net, scoring_.slices.front().c, params_.inference)[1];
    } catch (const bn::ContradictionError&) {
      p = 0.0;
    }
    raw[k] = p < kScoreFloor ? 0.0 : p;
  };

  const std::size_t workers = std::min(std::max<std::size_t>(params_.workers, 1), candidates.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < candidates.size(); ++k) score_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k; (k = next.fetch_add(1)) < candidates.size();) score_one(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  CandidateScores out;
  double sum = 0.0;
  for (double r : raw) sum += r;
  out.all_incompatible = !(sum > 0.0);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    CandidateScore s;
    s.id = candidates[k].id;
    s.raw = raw[k];
    s.normalized = out.all_incompatible ? 1.0 / static_cast<double>(candidates.size()) : raw[k] / sum;
    out.scores.push_back(std::move(s));
  }
  return out;
}

std::uint64_t Session::state_hash() const {
  Fnv f;
  const auto& net = dbn_.net;
  f.pod(net.size());
  for (bn::VarId v = 0; v < net.size(); ++v) {
    const auto& e = net.evidence(v);
    f.pod(e.index());
    if (const auto* s = std::get_if<bn::State>(&e)) f.pod(*s);
    if (const auto* l = std::get_if<std::vector<double>>(&e)) f.bytes(l->data(), l->size() * sizeof(double));
  }
  for (double t : slice_times_) f.pod(t);
  for (const auto& mv : slice_mv_) {
    for (const auto& s : mv.ships) {
      f.pod(s.dcpa_bin);
      f.pod(s.df_bin);
      f.pod(s.dm_bin);
      f.pod(s.tcpa_bin);
      f.pod(s.passed);
      f.pod(s.ps);
      f.pod(s.mps);
      f.pod(s.cs);
    }
    f.pod(mv.cic);
    f.pod(mv.cis);
    f.pod(mv.ccc);
    f.pod(mv.dgsb_bin);
    f.pod(mv.dgps_bin);
    f.pod(mv.dgf_bin);
    f.pod(mv.wprb);
    f.pod(mv.wprd);
    f.pod(mv.wpah);
  }
  for (const auto& s : ref_history_) f.state(s);
  f.state(last_states_.ref);
  for (const auto& s : last_states_.obstacles) f.state(s);
  f.pod(waypoint_index_);
  f.pod(last_t_);
  f.pod(stepped_);
  f.pod(posterior_.t);
  for (const auto& d : posterior_.dists) f.bytes(d.p.data(), d.p.size() * sizeof(double));
  return f.h;
}

}  // namespace intentdbn::runtime
