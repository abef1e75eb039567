#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "intentdbn/geometry/angles.hpp"
#include "intentdbn/trajectory/los.hpp"

namespace intentdbn::testing {

namespace {

constexpr double kSpeed = 6.0;

geo::ShipState straight(double t, double x0, double y0, double cog, double sog, double t0 = 0.0) {
  geo::ShipState s{t0, x0, y0, sog, geo::wrap_two_pi(cog)};
  return s.advanced(t - t0);
}

StepTrace trace(const runtime::Session& s, const runtime::VesselStates& st, const runtime::Environment& env) {
  StepTrace tr;
  tr.t = st.ref.t;
  tr.np = s.node_probabilities();
  tr.mv = s.slice_measurements().back();
  const auto d = geo::grounding_measurements(st.ref, env.ground, s.params().geometry);
  tr.front_distance = d.dgf;
  tr.stbd_distance = d.dgsb;
  return tr;
}

runtime::SessionParams one_worker(double dts_max = 60.0) {
  runtime::SessionParams p;
  p.workers = 1;
  p.dts_max = dts_max;
  return p;
}

}  // namespace

std::vector<geo::ShipState> scripted_track(geo::ShipState start, const std::vector<Leg>& legs, double t_end,
                                           double rate, double dt) {
  std::vector<geo::ShipState> out;
  double x = start.x, y = start.y, h = start.cog;
  const double h0 = start.cog;
  for (double t = start.t; t <= t_end + 1e-9; t += dt) {
    out.push_back({t, x, y, start.sog, geo::wrap_two_pi(h)});
    double target = h0;
    for (const auto& l : legs) {
      if (t >= l.t) target = h0 + geo::deg2rad(l.course_deg);
    }
    const double hn = h + std::clamp(target - h, -rate * dt, rate * dt);
    const double m = 0.5 * (h + hn);
    x += start.sog * std::sin(m) * dt;
    y += start.sog * std::cos(m) * dt;
    h = hn;
  }
  return out;
}

geo::ShipState sample(const std::vector<geo::ShipState>& track, double t) {
  const double dt = track.size() > 1 ? track[1].t - track[0].t : 1.0;
  const auto i = static_cast<std::size_t>(std::lround((t - track.front().t) / dt));
  geo::ShipState s = track.at(std::min(i, track.size() - 1));
  s.t = t;
  return s;
}

geo::PolygonMap box(double x0, double x1, double y0, double y1) {
  geo::PolygonMap m;
  m.rings.push_back({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}});
  return m;
}

std::vector<StepTrace> approach_run(double dts_max, double start_gap, double dt) {
  const auto env = runtime::Environment::from(box(-500.0, 500.0, start_gap, start_gap + 500.0), {});
  // Distant obstacle on a parallel course, astern to starboard.
  auto obs = [](double t) { return straight(t, 8000.0, -8000.0, 0.0, kSpeed); };
  auto ref = [](double t) { return straight(t, 0.0, 0.0, 0.0, kSpeed); };
  runtime::Session s({ref(0.0), {obs(0.0)}}, {}, {}, one_worker(dts_max));
  std::vector<StepTrace> out;
  const double t_end = start_gap / kSpeed;
  for (double t = 0.0; t <= t_end + 1e-9; t += dt) {
    const runtime::VesselStates st{ref(t), {obs(t)}};
    s.step_update(st, env);
    out.push_back(trace(s, st, env));
  }
  return out;
}

std::vector<StepTrace> wall_turn_run(bool turn, double dts_max, double wall_x, double dt) {
  const auto env =
      runtime::Environment::from(box(wall_x, wall_x + 1000.0, -3000.0, 9000.0), {{0.0, 20000.0}});
  const double t_end = 30.0 + (wall_x - 40.0) / (kSpeed * std::sin(geo::deg2rad(20.0)));
  const auto track = scripted_track({0.0, 0.0, 0.0, kSpeed, 0.0},
                                    turn ? std::vector<Leg>{{30.0, 20.0}} : std::vector<Leg>{}, t_end,
                                    geo::deg2rad(4.0));
  auto obs = [](double t) { return straight(t, -8000.0, -8000.0, 0.0, kSpeed); };
  runtime::Session s({sample(track, 0.0), {obs(0.0)}}, {}, {}, one_worker(dts_max));
  std::vector<StepTrace> out;
  for (double t = 0.0; t <= t_end + 1e-9; t += dt) {
    const runtime::VesselStates st{sample(track, t), {obs(t)}};
    s.step_update(st, env);
    out.push_back(trace(s, st, env));
  }
  return out;
}

std::vector<StepTrace> head_on_turn_run(double t_end, double score_from, double dt) {
  const std::vector<Leg> legs{{60.0, 10.0}, {110.0, 0.0}, {150.0, -40.0}};
  const auto track = scripted_track({0.0, 0.0, 0.0, kSpeed, 0.0}, legs, t_end + dt);
  // Waypoint 4 km along the final course from where the port turn ends.
  const double turn_end = 150.0 + 40.0 / 2.0;
  const auto p = sample(track, turn_end);
  const double fc = geo::deg2rad(-40.0);
  runtime::Environment env;
  env.route = {{p.x + 4000.0 * std::sin(fc), p.y + 4000.0 * std::cos(fc)}};
  auto obs = [](double t) { return straight(t, -600.0, 5000.0, geo::kPi, kSpeed); };
  runtime::Session s({sample(track, 0.0), {obs(0.0)}}, {}, {}, one_worker());
  std::vector<StepTrace> out;
  for (double t = 0.0; t <= t_end + 1e-9; t += dt) {
    const runtime::VesselStates st{sample(track, t), {obs(t)}};
    s.step_update(st, env);
    StepTrace tr = trace(s, st, env);
    if (t >= score_from) {
      tr.scores = s.score_candidates(traj::los_candidates(st.ref, traj::default_offsets()), env).scores;
    }
    out.push_back(std::move(tr));
  }
  return out;
}

StepTrace flanked_crossing_run() {
  const double t_end = 60.0;
  geo::PolygonMap map = box(-400.0, -60.0, 850.0, 1200.0);
  map.rings.push_back(box(-700.0, -250.0, 0.0, 600.0).rings.front());
  const auto env = runtime::Environment::from(map, {{700.0, 4000.0}});
  const double oc = geo::deg2rad(90.0);
  auto ref = [&](double t) { return straight(t, 0.0, -kSpeed * t_end, 0.0, kSpeed); };
  auto obs = [&](double t) { return straight(t, -3000.0, 7000.0, oc, kSpeed, t_end); };
  runtime::Session s({ref(0.0), {obs(0.0)}}, {}, {}, one_worker());
  StepTrace tr;
  for (double t = 0.0; t <= t_end + 1e-9; t += 5.0) {
    const runtime::VesselStates st{ref(t), {obs(t)}};
    s.step_update(st, env);
    if (t + 5.0 > t_end + 1e-9) {
      tr = trace(s, st, env);
      tr.scores = s.score_candidates(traj::los_candidates(st.ref, traj::default_offsets()), env).scores;
    }
  }
  return tr;
}

std::vector<PlantedCpa> planted_cpa_corpus(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PlantedCpa> out;
  for (std::size_t k = 0; k < n; ++k) {
    PlantedCpa pc;
    pc.dt = 5.0 + 15.0 * u(rng);
    pc.tcpa = 200.0 + 600.0 * u(rng);
    pc.dcpa = 2000.0 * u(rng);
    const double ref_cog = 2.0 * geo::kPi * u(rng), ref_sog = 2.0 + 8.0 * u(rng);
    const double rel_dir = 2.0 * geo::kPi * u(rng);
    pc.rel_speed = 2.0 + 13.0 * u(rng);
    const geo::Vec2 vr = geo::Vec2{std::sin(rel_dir), std::cos(rel_dir)} * pc.rel_speed;
    const geo::Vec2 perp = geo::Vec2{-vr.y, vr.x} * (pc.dcpa / pc.rel_speed);
    const geo::ShipState r0{0.0, 1000.0 * (u(rng) - 0.5), 1000.0 * (u(rng) - 0.5), ref_sog, ref_cog};
    const geo::Vec2 ov = r0.velocity() + vr;
    const double obs_cog = geo::wrap_two_pi(std::atan2(ov.x, ov.y));
    const double obs_sog = geo::norm(ov);
    const double phase = pc.dt * u(rng);
    pc.e.id = "cpa" + std::to_string(k);
    pc.e.label = extract::ColregsLabel::kCrossing;
    for (double t = 0.0; t <= 1000.0; t += pc.dt) pc.e.ref.push_back(r0.advanced(t));
    for (double t = -phase; t <= 1000.0 + pc.dt; t += pc.dt) {
      const geo::ShipState rt = r0.advanced(t);
      const geo::Vec2 p = rt.pos() + perp + vr * (t - pc.tcpa);
      pc.e.obs.push_back({t, p.x, p.y, obs_sog, obs_cog});
    }
    out.push_back(std::move(pc));
  }
  return out;
}

std::vector<extract::Encounter> planted_overtaking_corpus(std::size_t n, const model::TruncNormSpec& sd,
                                                          std::uint64_t seed, std::vector<double>* planted) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(sd.mu, sd.sigma);
  std::bernoulli_distribution side(0.5);
  std::vector<extract::Encounter> out;
  for (std::size_t k = 0; k < n; ++k) {
    double d = 0.0;
    do {
      d = z(rng);
    } while (d < sd.lo || d > sd.hi);
    if (planted) planted->push_back(d);
    extract::Encounter e;
    e.id = "ot" + std::to_string(k);
    e.label = extract::ColregsLabel::kOvertaking;
    const double lat = side(rng) ? d : -d;
    for (double t = 0.0; t <= 1200.0; t += 10.0) {
      e.ref.push_back(straight(t, 0.0, 0.0, 0.0, 8.0));
      e.obs.push_back(straight(t, lat, 2000.0, 0.0, 4.0));
    }
    out.push_back(std::move(e));
  }
  return out;
}

RandomFixture random_fixture(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double cog = 2.0 * geo::kPi * u(rng), sog = 3.0 + 7.0 * u(rng);
  const double bearing = 2.0 * geo::kPi * u(rng), range = 500.0 + 4500.0 * u(rng);
  const geo::ShipState r0{0.0, 0.0, 0.0, sog, cog};
  const geo::ShipState o0{0.0, range * std::sin(bearing), range * std::cos(bearing), 2.0 + 8.0 * u(rng),
                          2.0 * geo::kPi * u(rng)};
  geo::PolygonMap map;
  if (u(rng) < 0.7) {
    const double hx = 3000.0 * (u(rng) - 0.5), hy = 3000.0 * (u(rng) - 0.5);
    map = box(hx, hx + 200.0 + 800.0 * u(rng), hy, hy + 200.0 + 800.0 * u(rng));
  }
  std::vector<geo::Waypoint> route;
  if (u(rng) < 0.8) route.push_back({6000.0 * (u(rng) - 0.5), 6000.0 * (u(rng) - 0.5)});
  RandomFixture f{runtime::Session({r0, {o0}}, {}, {}, one_worker()), runtime::Environment::from(map, route), {}};
  geo::ShipState r = r0, o = o0;
  const int steps = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < steps; ++i) {
    const double dt = 5.0 + 20.0 * u(rng);
    r = r.advanced(dt);
    o = o.advanced(dt);
    r.cog = geo::wrap_two_pi(r.cog + geo::deg2rad(30.0) * (u(rng) - 0.5));
    f.last = {r, {o}};
    f.session.step_update(f.last, f.env);
  }
  return f;
}

}  // namespace intentdbn::testing
