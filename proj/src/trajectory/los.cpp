#include "intentdbn/trajectory/los.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace intentdbn::traj {

geo::ShipState CandidateTrajectory::at(double t) const {
  if (samples.empty()) throw std::invalid_argument("empty candidate trajectory");
  if (t <= samples.front().t) return samples.front();
  if (t >= samples.back().t) return samples.back();
  const auto it = std::upper_bound(samples.begin(), samples.end(), t,
                                   [](double v, const geo::ShipState& s) { return v < s.t; });
  const geo::ShipState& b = *it;
  const geo::ShipState& a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  geo::ShipState s;
  s.t = t;
  s.x = a.x + w * (b.x - a.x);
  s.y = a.y + w * (b.y - a.y);
  s.sog = a.sog + w * (b.sog - a.sog);
  s.cog = geo::wrap_two_pi(a.cog + w * geo::angle_diff(b.cog, a.cog));
  return s;
}

void LosParams::validate() const {
  if (!(horizon > 0.0)) throw std::invalid_argument("trajectory.horizon must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("trajectory.dt must be > 0");
  if (!(turn_rate > 0.0)) throw std::invalid_argument("trajectory.turn_rate must be > 0");
  if (!(deviation_time >= 0.0)) throw std::invalid_argument("trajectory.deviation_time must be >= 0");
}

std::vector<double> default_offsets() {
  return {geo::deg2rad(-90.0), geo::deg2rad(-45.0), geo::deg2rad(-20.0),
          0.0,                 geo::deg2rad(20.0),  geo::deg2rad(45.0)};
}

std::string offset_label(double offset) {
  const long deg = std::lround(geo::rad2deg(offset));
  if (deg == 0) return "nominal";
  return (deg > 0 ? "stbd" : "port") + std::to_string(std::labs(deg));
}

std::vector<CandidateTrajectory> los_candidates(const geo::ShipState& start, const std::vector<double>& offsets,
                                                const LosParams& params) {
  params.validate();
  if (offsets.empty()) throw std::invalid_argument("at least one course offset is required");
  const auto steps = static_cast<std::size_t>(std::ceil(params.horizon / params.dt - 1e-9));
  const double max_step = params.turn_rate * params.dt;

  std::vector<CandidateTrajectory> out;
  for (double offset : offsets) {
    CandidateTrajectory c;
    c.id = offset_label(offset);
    c.offset = offset;
    c.samples.reserve(steps + 1);
    c.samples.push_back(start);

    // Heading relative to the initial course.
    double h = 0.0;
    double target = offset;
    double hold_until = -1.0;
    bool returning = offset == 0.0;
    double x = start.x, y = start.y;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double t0 = static_cast<double>(k - 1) * params.dt;
      if (!returning && h == offset) {
        if (hold_until < 0.0) hold_until = t0 + params.deviation_time;
        if (t0 >= hold_until) {
          returning = true;
          target = 0.0;
        }
      }
      const double step = std::clamp(target - h, -max_step, max_step);
      const double h_new = std::abs(target - h) <= max_step ? target : h + step;
      const double mid = start.cog + 0.5 * (h + h_new);
      x += start.sog * std::sin(mid) * params.dt;
      y += start.sog * std::cos(mid) * params.dt;
      h = h_new;
      geo::ShipState s;
      s.t = start.t + static_cast<double>(k) * params.dt;
      s.x = x;
      s.y = y;
      s.sog = start.sog;
      s.cog = geo::wrap_two_pi(start.cog + h);
      c.samples.push_back(s);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace intentdbn::traj
