#include "intentdbn/model/measurements.hpp"

#include <limits>

#include "intentdbn/bn/errors.hpp"
#include "intentdbn/geometry/kinematics.hpp"

namespace intentdbn::model {

namespace {

template <class E>
bn::State st(E e) {
  return static_cast<bn::State>(e);
}

}  // namespace

MeasurementVector discretize(const RawMeasurements& raw, const DiscretizationSet& disc) {
  MeasurementVector m;
  for (const auto& r : raw.ships) {
    ShipMeasurements s;
    s.dcpa_bin = real_to_bin(r.dcpa, disc.dcpa);
    s.df_bin = real_to_bin(r.df, disc.df);
    s.dm_bin = real_to_bin(r.dm, disc.dm);
    s.tcpa_bin = real_to_bin(r.tcpa, disc.tcpa);
    s.passed = r.passed;
    s.ps = r.ps;
    s.mps = r.mps;
    s.cs = r.cs;
    m.ships.push_back(s);
  }
  m.cic = raw.cic;
  m.cis = raw.cis;
  m.ccc = raw.ccc;
  m.dgsb_bin = real_to_bin(raw.dgsb, disc.dgs);
  m.dgps_bin = real_to_bin(raw.dgps, disc.dgs);
  m.dgf_bin = real_to_bin(raw.dgf, disc.dgf);
  m.wprb = raw.wprb;
  m.wprd = raw.wprd;
  m.wpah = raw.wpah;
  return m;
}

RawShipMeasurements measure_pair(const geo::ShipState& ref, const geo::ShipState& obs,
                                 const geo::GeometryParams& params) {
  RawShipMeasurements r;
  const geo::Cpa cpa = geo::cpa_linear(ref, obs);
  r.dcpa = cpa.dcpa;
  r.tcpa = cpa.tcpa;
  r.df = geo::cross_front_distance(ref, obs, std::numeric_limits<double>::infinity());
  const geo::MidpointCpa mid = geo::midpoint_cpa(ref, obs);
  r.dm = mid.dm;
  r.mps = mid.mps;
  r.passed = geo::has_passed(ref, obs);
  r.ps = geo::passing_side(ref, obs);
  r.cs = geo::classify_colregs(ref, obs, params);
  return r;
}

void apply_measurements(bn::Network& net, const SliceIds& slice, const MeasurementVector& m) {
  if (m.ships.size() != slice.ships.size()) {
    throw bn::InvalidEvidenceError("measurement vector ship count does not match the slice");
  }
  for (std::size_t i = 0; i < m.ships.size(); ++i) {
    const auto& s = m.ships[i];
    const auto& h = slice.ships[i];
    net.set_evidence(h.m_dcpa, s.dcpa_bin);
    net.set_evidence(h.m_df, s.df_bin);
    net.set_evidence(h.m_dm, s.dm_bin);
    net.set_evidence(h.m_tcpa, s.tcpa_bin);
    net.set_evidence(h.m_p, s.passed ? 1 : 0);
    net.set_evidence(h.m_ps, st(s.ps));
    net.set_evidence(h.m_mps, st(s.mps));
    net.set_evidence(h.m_cs, st(s.cs));
  }
  net.set_evidence(slice.m_cic, st(m.cic));
  net.set_evidence(slice.m_cis, st(m.cis));
  net.set_evidence(slice.m_ccc, m.ccc ? 1 : 0);
  net.set_evidence(slice.m_dgsb, m.dgsb_bin);
  net.set_evidence(slice.m_dgps, m.dgps_bin);
  net.set_evidence(slice.m_dgf, m.dgf_bin);
  net.set_evidence(slice.m_wprb, st(m.wprb));
  net.set_evidence(slice.m_wprd, st(m.wprd));
  net.set_evidence(slice.m_wpah, m.wpah ? 1 : 0);
}

}  // namespace intentdbn::model
