#include "intentdbn/io/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace intentdbn::io {

namespace {

using nlohmann::json;

// Reads members of one object and rejects the ones nobody asked for.
class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw SchemaError(path_ + ": expected an object");
  }

  void num(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) throw SchemaError(where(key) + " must be a number");
      out = v->get<double>();
    }
  }
  void count(const char* key, std::uint32_t& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned()) throw SchemaError(where(key) + " must be a non-negative integer");
      out = v->get<std::uint32_t>();
    }
  }
  void flag(const char* key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) throw SchemaError(where(key) + " must be a boolean");
      out = v->get<bool>();
    }
  }
  void text(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) throw SchemaError(where(key) + " must be a string");
      out = v->get<std::string>();
    }
  }
  void numbers(const char* key, std::vector<double>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) throw SchemaError(where(key) + " must be an array");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) throw SchemaError(where(key) + " must hold numbers");
        out.push_back(e.get<double>());
      }
    }
  }
  template <class F>
  void object(const char* key, F&& f) {
    if (const json* v = take(key)) {
      Reader sub(*v, where(key));
      f(sub);
      sub.finish();
    }
  }
  const json* raw(const char* key) { return take(key); }
  std::string where(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw SchemaError(path_ + ": unknown member '" + it.key() + "'");
    }
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_tn(Reader& r, const char* key, model::TruncNormSpec& t) {
  r.object(key, [&](Reader& s) {
    s.num("mu", t.mu);
    s.num("sigma", t.sigma);
    s.num("lo", t.lo);
    s.num("hi", t.hi);
  });
}

json tn_json(const model::TruncNormSpec& t) { return {{"mu", t.mu}, {"sigma", t.sigma}, {"lo", t.lo}, {"hi", t.hi}}; }

void read_disc(Reader& r, const char* key, model::Discretization& d) {
  r.object(key, [&](Reader& s) {
    s.count("bins", d.bins);
    s.num("upper", d.upper);
  });
}

json disc_json(const model::Discretization& d) { return {{"bins", d.bins}, {"upper", d.upper}}; }

const char* method_name(extract::FitMethod m) {
  return m == extract::FitMethod::kRawMoments ? "raw" : "corrected";
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw FormatError("config: " + m); };
  try {
    priors.validate();
    discretization.validate();
    geometry.validate();
    trajectory.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  auto tn_window = [&](const char* name, const model::TruncNormSpec& t, const model::Discretization& d) {
    if (t.lo != 0.0 || t.hi != d.upper) {
      fail(std::string(name) + " window must be [0, " + std::to_string(d.upper) + "] to match its discretization");
    }
  };
  tn_window("I_AT", priors.at, discretization.tcpa);
  tn_window("I_SD", priors.sd, discretization.dcpa);
  tn_window("I_SDF", priors.sdf, discretization.df);
  tn_window("I_SDM", priors.sdm, discretization.dm);
  tn_window("I_SDGS", priors.sdgs, discretization.dgs);
  tn_window("I_SDGF", priors.sdgf, discretization.dgf);
  if (offsets.empty()) fail("trajectory.offsets_rad must not be empty");
  for (double o : offsets) {
    if (!(std::abs(o) <= geo::kPi)) fail("trajectory offsets must lie in [-pi, pi]");
  }
  if (!(slice.ground_spacing > 0.0)) fail("slice.ground_spacing must be > 0");
  if (!(slice.waypoint_reached >= 0.0)) fail("slice.waypoint_reached must be >= 0");
  if (!(extraction.dist_thresh > 0.0) || !(extraction.roi_len > 0.0)) fail("extraction distances must be > 0");
  for (const auto& w : route) {
    if (!(std::abs(w.lat) <= 90.0) || !(std::abs(w.lon) <= 180.0)) fail("route waypoint out of range");
  }
  try {
    (void)session_params(1);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

runtime::SessionParams RunConfig::session_params(std::size_t workers) const {
  runtime::SessionParams p;
  p.dts_max = slice.dts_max;
  p.dts_min = slice.dts_min;
  p.theta = slice.theta;
  p.upsilon = slice.upsilon;
  p.lookahead = slice.lookahead;
  p.workers = workers;
  p.geometry = geometry;
  p.validate();
  return p;
}

bool RunConfig::operator==(const RunConfig& o) const { return serialize_config(*this) == serialize_config(o); }

RunConfig parse_config(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(source + ": " + e.what());
  }
  RunConfig c;
  Reader root(doc, source);
  root.object("priors", [&](Reader& r) {
    auto& p = c.priors;
    read_tn(r, "I_AT", p.at);
    read_tn(r, "I_SDGS", p.sdgs);
    read_tn(r, "I_SDGF", p.sdgf);
    read_tn(r, "I_SD", p.sd);
    read_tn(r, "I_SDF", p.sdf);
    read_tn(r, "I_SDM", p.sdm);
    r.num("I_CC", p.cc_true);
    r.num("I_GS", p.gs_true);
    r.num("I_G", p.g_true);
    r.num("I_U", p.u_true);
    std::vector<double> pp(p.p.begin(), p.p.end());
    r.numbers("I_P", pp);
    if (pp.size() != 3) throw SchemaError(r.where("I_P") + " must hold 3 probabilities");
    std::copy(pp.begin(), pp.end(), p.p.begin());
    r.num("cs_concentration", p.cs_concentration);
  });
  root.object("discretization", [&](Reader& r) {
    auto& d = c.discretization;
    read_disc(r, "tcpa", d.tcpa);
    read_disc(r, "dcpa", d.dcpa);
    read_disc(r, "df", d.df);
    read_disc(r, "dm", d.dm);
    read_disc(r, "dgs", d.dgs);
    read_disc(r, "dgf", d.dgf);
  });
  root.object("geometry", [&](Reader& r) {
    auto& g = c.geometry;
    r.num("front_half_angle_rad", g.front_half_angle);
    r.num("wpt_window_s", g.wpt_window);
    r.num("wp_ahead_half_angle_rad", g.wp_ahead_half_angle);
    r.num("cic_threshold_rad", g.cic_threshold);
    r.num("ccc_window_s", g.ccc_window);
    r.num("cis_threshold_mps", g.cis_threshold);
    r.num("wprb_deadband_rad", g.wprb_deadband);
    r.num("wprd_deadband_m", g.wprd_deadband);
    r.num("head_on_half_angle_rad", g.head_on_half_angle);
    r.num("overtaking_half_angle_rad", g.overtaking_half_angle);
  });
  root.object("slice", [&](Reader& r) {
    auto& s = c.slice;
    r.num("dts_max_s", s.dts_max);
    r.num("dts_min_s", s.dts_min);
    r.num("theta_rad", s.theta);
    r.num("upsilon_mps", s.upsilon);
    r.num("lookahead_s", s.lookahead);
    r.num("waypoint_reached_m", s.waypoint_reached);
    r.num("ground_spacing_m", s.ground_spacing);
  });
  root.object("trajectory", [&](Reader& r) {
    auto& t = c.trajectory;
    r.num("horizon_s", t.horizon);
    r.num("dt_s", t.dt);
    r.num("turn_rate_rad_s", t.turn_rate);
    r.num("deviation_time_s", t.deviation_time);
    r.numbers("offsets_rad", c.offsets);
  });
  root.object("extraction", [&](Reader& r) {
    r.num("dist_thresh_m", c.extraction.dist_thresh);
    r.num("roi_len_m", c.extraction.roi_len);
    std::string m = method_name(c.extraction.method);
    r.text("fit", m);
    if (m == "raw") {
      c.extraction.method = extract::FitMethod::kRawMoments;
    } else if (m == "corrected") {
      c.extraction.method = extract::FitMethod::kTruncationCorrected;
    } else {
      throw SchemaError(r.where("fit") + " must be 'raw' or 'corrected'");
    }
  });
  root.object("output", [&](Reader& r) {
    std::string f = c.output.format == ExportFormat::kCsv ? "csv" : "jsonl";
    r.text("format", f);
    if (f == "csv") {
      c.output.format = ExportFormat::kCsv;
    } else if (f == "jsonl") {
      c.output.format = ExportFormat::kJsonl;
    } else {
      throw SchemaError(r.where("format") + " must be 'csv' or 'jsonl'");
    }
    r.flag("intentions", c.output.intentions);
    r.flag("candidates", c.output.candidates);
  });
  if (const json* route = root.raw("route")) {
    if (!route->is_array()) throw SchemaError(root.where("route") + " must be an array");
    for (const auto& w : *route) {
      if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
        throw SchemaError(root.where("route") + " entries must be [lat, lon]");
      }
      c.route.push_back({w[0].get<double>(), w[1].get<double>()});
    }
  }
  root.finish();
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string serialize_config(const RunConfig& c) {
  const auto& p = c.priors;
  const auto& d = c.discretization;
  const auto& g = c.geometry;
  const auto& s = c.slice;
  const auto& t = c.trajectory;
  json route = json::array();
  for (const auto& w : c.route) route.push_back({w.lat, w.lon});
  json doc = {
      {"priors",
       {{"I_AT", tn_json(p.at)},
        {"I_SDGS", tn_json(p.sdgs)},
        {"I_SDGF", tn_json(p.sdgf)},
        {"I_SD", tn_json(p.sd)},
        {"I_SDF", tn_json(p.sdf)},
        {"I_SDM", tn_json(p.sdm)},
        {"I_CC", p.cc_true},
        {"I_GS", p.gs_true},
        {"I_G", p.g_true},
        {"I_U", p.u_true},
        {"I_P", p.p},
        {"cs_concentration", p.cs_concentration}}},
      {"discretization",
       {{"tcpa", disc_json(d.tcpa)},
        {"dcpa", disc_json(d.dcpa)},
        {"df", disc_json(d.df)},
        {"dm", disc_json(d.dm)},
        {"dgs", disc_json(d.dgs)},
        {"dgf", disc_json(d.dgf)}}},
      {"geometry",
       {{"front_half_angle_rad", g.front_half_angle},
        {"wpt_window_s", g.wpt_window},
        {"wp_ahead_half_angle_rad", g.wp_ahead_half_angle},
        {"cic_threshold_rad", g.cic_threshold},
        {"ccc_window_s", g.ccc_window},
        {"cis_threshold_mps", g.cis_threshold},
        {"wprb_deadband_rad", g.wprb_deadband},
        {"wprd_deadband_m", g.wprd_deadband},
        {"head_on_half_angle_rad", g.head_on_half_angle},
        {"overtaking_half_angle_rad", g.overtaking_half_angle}}},
      {"slice",
       {{"dts_max_s", s.dts_max},
        {"dts_min_s", s.dts_min},
        {"theta_rad", s.theta},
        {"upsilon_mps", s.upsilon},
        {"lookahead_s", s.lookahead},
        {"waypoint_reached_m", s.waypoint_reached},
        {"ground_spacing_m", s.ground_spacing}}},
      {"trajectory",
       {{"horizon_s", t.horizon},
        {"dt_s", t.dt},
        {"turn_rate_rad_s", t.turn_rate},
        {"deviation_time_s", t.deviation_time},
        {"offsets_rad", c.offsets}}},
      {"extraction",
       {{"dist_thresh_m", c.extraction.dist_thresh},
        {"roi_len_m", c.extraction.roi_len},
        {"fit", method_name(c.extraction.method)}}},
      {"output",
       {{"format", c.output.format == ExportFormat::kCsv ? "csv" : "jsonl"},
        {"intentions", c.output.intentions},
        {"candidates", c.output.candidates}}},
      {"route", route},
  };
  return doc.dump(2) + "\n";
}

}  // namespace intentdbn::io
