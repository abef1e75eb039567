#include "intentdbn/extract/extract.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "intentdbn/geometry/angles.hpp"
#include "intentdbn/geometry/grounding.hpp"
#include "intentdbn/geometry/kinematics.hpp"

namespace intentdbn::extract {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

geo::ShipState lerp(const geo::ShipState& a, const geo::ShipState& b, double t) {
  if (b.t == a.t) return a;
  const double w = (t - a.t) / (b.t - a.t);
  geo::ShipState s;
  s.t = t;
  s.x = a.x + w * (b.x - a.x);
  s.y = a.y + w * (b.y - a.y);
  s.sog = a.sog + w * (b.sog - a.sog);
  s.cog = geo::wrap_two_pi(a.cog + w * geo::angle_diff(b.cog, a.cog));
  return s;
}

void check_track(const std::vector<geo::ShipState>& tr, const char* role, const std::string& id) {
  if (tr.size() < 2) throw std::invalid_argument("encounter '" + id + "': " + role + " track needs 2 samples");
  for (std::size_t i = 1; i < tr.size(); ++i) {
    if (!(tr[i].t > tr[i - 1].t)) {
      throw std::invalid_argument("encounter '" + id + "': " + role + " track not strictly time-ordered");
    }
  }
}

}  // namespace

const char* to_string(ColregsLabel l) {
  switch (l) {
    case ColregsLabel::kHeadOn: return "head-on";
    case ColregsLabel::kOvertaking: return "overtaking";
    case ColregsLabel::kCrossing: return "crossing";
  }
  return "?";
}

ColregsLabel parse_label(const std::string& s) {
  if (s == "head-on") return ColregsLabel::kHeadOn;
  if (s == "overtaking") return ColregsLabel::kOvertaking;
  if (s == "crossing") return ColregsLabel::kCrossing;
  throw std::invalid_argument("unknown COLREGS label '" + s + "'");
}

void Encounter::validate() const {
  check_track(ref, "reference", id);
  check_track(obs, "obstacle", id);
  if (ref.back().t < obs.front().t || obs.back().t < ref.front().t) {
    throw std::invalid_argument("encounter '" + id + "': tracks do not overlap in time");
  }
}

std::vector<AlignedPair> align(const Encounter& e) {
  std::vector<AlignedPair> out;
  if (e.obs.empty()) return out;
  std::size_t j = 0;
  for (const auto& r : e.ref) {
    if (r.t < e.obs.front().t || r.t > e.obs.back().t) continue;
    while (j + 1 < e.obs.size() && e.obs[j + 1].t < r.t) ++j;
    const auto& a = e.obs[j];
    const auto& b = j + 1 < e.obs.size() ? e.obs[j + 1] : a;
    out.push_back({r, r.t <= a.t ? a : lerp(a, b, r.t)});
  }
  return out;
}

std::optional<double> isdf_value(const Encounter& e) {
  const double gate = std::cos(geo::kPi / 8.0);
  double min_dist = kInf;
  for (const auto& [r, o] : align(e)) {
    const geo::Vec2 rel = o.pos() - r.pos();
    const double n = geo::norm(rel);
    if (n == 0.0) continue;
    if (geo::dot(r.heading(), rel) / n > gate) min_dist = std::min(min_dist, n);
  }
  if (min_dist == kInf) return std::nullopt;
  return min_dist;
}

std::vector<double> find_isdf_vals(std::span<const Encounter> encounters) {
  std::vector<double> out;
  for (const auto& e : encounters) {
    if (auto v = isdf_value(e)) out.push_back(*v);
  }
  return out;
}

std::optional<CpaState> find_cpa(const Encounter& e, std::vector<std::string>* warnings) {
  const auto pairs = align(e);
  if (pairs.size() < 2) {
    if (warnings) warnings->push_back("encounter '" + e.id + "': fewer than 2 aligned samples, skipped");
    return std::nullopt;
  }
  const double t0 = e.ref.front().t;
  double min_dist = kInf;
  CpaState best;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [r, o] = pairs[k];
    const double dist = geo::norm(o.pos() - r.pos());
    if (!(dist < min_dist)) continue;
    min_dist = dist;
    best.index = k;
    best.ref = r;
    best.dcpa = dist;
    best.tcpa = r.t - t0;
    if (k + 1 < pairs.size()) {
      const auto opt = geo::segment_cpa(r, pairs[k + 1].ref, o, pairs[k + 1].obs);
      if (opt.d_opt < dist) {
        best.dcpa = opt.d_opt;
        best.tcpa = r.t - t0 + opt.t_opt;
      }
    }
  }
  return best;
}

CpaValues find_cpa(std::span<const Encounter> encounters, std::vector<std::string>* warnings) {
  CpaValues out;
  for (const auto& e : encounters) {
    if (auto c = find_cpa(e, warnings)) {
      out.dcpa_vals.push_back(c->dcpa);
      out.tcpa_vals.push_back(c->tcpa);
    }
  }
  return out;
}

SectorDistances dist2grd(const geo::ShipState& at, const geo::PolygonMap& map, double roi_len) {
  geo::VertexCloud roi;
  for (const auto& ring : map.rings) {
    std::size_t n = ring.size();
    if (n > 1 && ring.front() == ring.back()) --n;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(ring[i].x - at.x) <= roi_len && std::abs(ring[i].y - at.y) <= roi_len) {
        roi.xs.push_back(ring[i].x);
        roi.ys.push_back(ring[i].y);
      }
    }
  }
  const double f = geo::kPi / 8.0;
  SectorDistances d;
  d.sb = geo::sector_ground_distance(at.pos(), at.cog, roi, f, geo::kPi);
  d.ps = geo::sector_ground_distance(at.pos(), at.cog, roi, -geo::kPi, -f);
  d.fr = geo::sector_ground_distance(at.pos(), at.cog, roi, -f, f);
  return d;
}

GroundValues find_dist2grd_cpa(std::span<const Encounter> encounters, const geo::PolygonMap& map,
                               double dist_thresh, double roi_len) {
  GroundValues out;
  for (const auto& e : encounters) {
    const auto cpa = find_cpa(e);
    if (!cpa) continue;
    const auto d = dist2grd(cpa->ref, map, roi_len);
    const double side = std::min(d.sb, d.ps);
    if (side <= dist_thresh) out.sdgs_vals.push_back(side);
    if (d.fr <= dist_thresh) out.sdgf_vals.push_back(d.fr);
  }
  return out;
}

namespace {

struct PerEncounter {
  std::optional<double> isdf;
  std::optional<CpaState> cpa;
  std::optional<double> sdgs, sdgf;
  std::vector<std::string> warnings;
};

PerEncounter process(const Encounter& e, const geo::PolygonMap& map, const Thresholds& th) {
  PerEncounter p;
  try {
    e.validate();
  } catch (const std::invalid_argument& ex) {
    p.warnings.push_back(std::string(ex.what()) + ", skipped");
    return p;
  }
  if (e.label == ColregsLabel::kCrossing) p.isdf = isdf_value(e);
  p.cpa = find_cpa(e, &p.warnings);
  if (p.cpa) {
    const auto d = dist2grd(p.cpa->ref, map, th.roi_len);
    const double side = std::min(d.sb, d.ps);
    if (side <= th.dist_thresh) p.sdgs = side;
    if (d.fr <= th.dist_thresh) p.sdgf = d.fr;
  }
  return p;
}

NodeFit fit_node(const char* node, const std::vector<double>& vals, const model::TruncNormSpec& base,
                 FitMethod method, std::vector<std::string>& warnings) {
  NodeFit nf;
  nf.node = node;
  nf.samples = vals.size();
  if (vals.size() < 2) {
    nf.fallback = true;
    nf.fit = TruncNormFit{base.mu, base.sigma, base.lo, base.hi, false, method};
    std::ostringstream os;
    os << node << ": " << vals.size() << " samples, keeping default N(" << base.mu << ", " << base.sigma << ")";
    warnings.push_back(os.str());
    return nf;
  }
  nf.fit = fit_truncnorm(vals, base.lo, base.hi, method);
  if (nf.fit.degenerate) warnings.push_back(std::string(node) + ": degenerate sample, sigma floored");
  return nf;
}

}  // namespace

PriorReport build_prior_config(std::span<const Encounter> corpus, const geo::PolygonMap& map,
                               const Thresholds& th, const model::IntentionPriors& base, std::size_t workers) {
  return build_prior_config(corpus, MapProvider([&](const Encounter&) { return map; }), th, base, workers);
}

PriorReport build_prior_config(std::span<const Encounter> corpus, const MapProvider& map_for, const Thresholds& th,
                               const model::IntentionPriors& base, std::size_t workers) {
  std::vector<PerEncounter> per(corpus.size());
  auto run = [&](std::size_t i) { per[i] = process(corpus[i], map_for(corpus[i]), th); };
  const std::size_t nw = std::max<std::size_t>(1, std::min(workers, corpus.size()));
  if (nw <= 1) {
    for (std::size_t i = 0; i < corpus.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < nw; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < corpus.size(); i = next++) run(i);
      });
    }
  }

  PriorReport rep;
  std::vector<double> sd_vals, sdm_vals;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& e = corpus[i];
    const auto& p = per[i];
    rep.warnings.insert(rep.warnings.end(), p.warnings.begin(), p.warnings.end());
    switch (e.label) {
      case ColregsLabel::kHeadOn: ++rep.head_on; break;
      case ColregsLabel::kOvertaking: ++rep.overtaking; break;
      case ColregsLabel::kCrossing: ++rep.crossing; break;
    }
    if (p.isdf) rep.values.isdf_vals.push_back(*p.isdf);
    if (p.cpa) {
      rep.values.dcpa_vals.push_back(p.cpa->dcpa);
      rep.values.tcpa_vals.push_back(p.cpa->tcpa);
      if (e.label == ColregsLabel::kOvertaking) sd_vals.push_back(p.cpa->dcpa);
      if (e.label == ColregsLabel::kHeadOn) sdm_vals.push_back(p.cpa->dcpa / 2.0);
    }
    if (p.sdgs) rep.values.sdgs_vals.push_back(*p.sdgs);
    if (p.sdgf) rep.values.sdgf_vals.push_back(*p.sdgf);
  }

  rep.priors = base;
  auto apply = [&](const char* node, const std::vector<double>& vals, model::TruncNormSpec& target) {
    rep.fits.push_back(fit_node(node, vals, target, th.method, rep.warnings));
    target = rep.fits.back().fit.spec();
  };
  apply("I_SDF", rep.values.isdf_vals, rep.priors.sdf);
  apply("I_SD", sd_vals, rep.priors.sd);
  apply("I_SDM", sdm_vals, rep.priors.sdm);
  apply("I_AT", rep.values.tcpa_vals, rep.priors.at);
  apply("I_SDGS", rep.values.sdgs_vals, rep.priors.sdgs);
  apply("I_SDGF", rep.values.sdgf_vals, rep.priors.sdgf);
  return rep;
}

std::string PriorReport::text() const {
  std::ostringstream os;
  os << "encounters: " << head_on + overtaking + crossing << " (head-on " << head_on << ", overtaking "
     << overtaking << ", crossing " << crossing << ")\n";
  os << "node     n     mu          sigma       window         method\n";
  for (const auto& f : fits) {
    char window[48];
    std::snprintf(window, sizeof window, "[%g, %g]", f.fit.lo, f.fit.hi);
    const char* method = f.fallback ? "default" : (f.fit.method == FitMethod::kTruncationCorrected ? "corrected" : "raw");
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %-5zu %-11.4f %-11.4f %-14s %s%s\n", f.node.c_str(), f.samples, f.fit.mu,
                  f.fit.sigma, window, method, f.fit.degenerate ? " (degenerate)" : "");
    os << line;
  }
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace intentdbn::extract
