#include "intentdbn/model/predicates.hpp"

#include "intentdbn/bn/errors.hpp"
#include "intentdbn/geometry/types.hpp"

namespace intentdbn::model {

namespace {

using geo::CourseChange;
using geo::Side;
using geo::Situation;
using geo::SpeedChange;
using geo::Trend;

constexpr bn::State kTrue = 1;

template <class E>
constexpr bn::State st(E e) {
  return static_cast<bn::State>(e);
}

// Priority states.
constexpr bn::State kLower = 2;
constexpr bn::State kSimilar = 1;
// Role states.
constexpr bn::State kGW = 1;

}  // namespace

const char* node_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kSD: return "SD";
    case NodeKind::kP: return "P";
    case NodeKind::kCOTen: return "C_OTen";
    case NodeKind::kCOTing: return "C_OTing";
    case NodeKind::kCHO: return "C_HO";
    case NodeKind::kCCRSS: return "C_CR_SS";
    case NodeKind::kCCRPS: return "C_CR_PS";
    case NodeKind::kNAVM: return "NAV_M";
    case NodeKind::kCNAVM: return "C_NAV_M";
    case NodeKind::kR: return "R";
    case NodeKind::kGS: return "GS";
    case NodeKind::kCEM: return "CEM";
    case NodeKind::kSOC: return "SOC";
    case NodeKind::kSDGS: return "SDG_S";
    case NodeKind::kSDGF: return "SDG_F";
    case NodeKind::kSDG: return "SDG";
    case NodeKind::kGWC: return "GWC";
    case NodeKind::kCCOLAVM: return "C_COLAV_M";
    case NodeKind::kCi: return "C_i";
    case NodeKind::kC: return "C";
    case NodeKind::kSA: return "SA";
    case NodeKind::kPA: return "PA";
  }
  return "?";
}

ModelNodeSpec node_spec(NodeKind kind, std::size_t fan_in) {
  ModelNodeSpec s;
  s.kind = kind;
  s.fan_in = fan_in;
  switch (kind) {
    case NodeKind::kSD: s.parents = {"M_DCPA", "I_SD", "M_DF", "I_SDF"}; break;
    case NodeKind::kP: s.parents = {"M_P", "SD"}; break;
    case NodeKind::kCOTen:
    case NodeKind::kCOTing: s.parents = {"SD"}; break;
    case NodeKind::kCHO: s.parents = {"M_DM", "I_SDM", "M_MPS"}; break;
    case NodeKind::kCCRSS: s.parents = {"SD", "M_PS"}; break;
    case NodeKind::kCCRPS: s.parents = {"SD", "M_CIC"}; break;
    case NodeKind::kNAVM: s.parents = {"M_WPRD", "M_WPRB", "M_WPAH"}; break;
    case NodeKind::kCNAVM: s.parents = {"NAV_M", "SD", "I_CS", "M_P", "M_DM", "I_SDM"}; break;
    case NodeKind::kR: s.parents = {"I_P", "I_CS"}; break;
    case NodeKind::kGS: s.parents = {"SA", "PA", "M_CIC", "M_PS"}; break;
    case NodeKind::kCEM:
      s.parents = {"I_GS", "GS", "I_CC", "I_CS", "C_OTing", "C_OTen", "C_HO", "C_CR_SS", "C_CR_PS"};
      break;
    case NodeKind::kSOC:
      s.parents = {"M_CIC", "M_CIS"};
      for (std::size_t j = 0; j < fan_in; ++j) {
        s.parents.push_back("R_j" + std::to_string(j));
        s.parents.push_back("CEM_j" + std::to_string(j));
        s.parents.push_back("P_j" + std::to_string(j));
      }
      break;
    case NodeKind::kSDGS: s.parents = {"M_DGSB", "M_DGPS", "I_SDGS", "M_CIC"}; break;
    case NodeKind::kSDGF: s.parents = {"M_DGF", "I_SDGF", "M_CIC"}; break;
    case NodeKind::kSDG: s.parents = {"SDG_S", "SDG_F"}; break;
    case NodeKind::kGWC: s.parents = {"CEM", "M_CCC", "M_TCPA", "I_AT", "SOC"}; break;
    case NodeKind::kCCOLAVM: s.parents = {"P", "R", "SOC", "GWC"}; break;
    case NodeKind::kCi: s.parents = {"C_COLAV_M", "C_NAV_M", "SDG", "I_G"}; break;
    case NodeKind::kC:
      for (std::size_t i = 0; i < fan_in; ++i) s.parents.push_back("C_" + std::to_string(i + 1));
      s.parents.push_back("I_U");
      break;
    case NodeKind::kSA:
    case NodeKind::kPA: s.parents = {"prev", "M_CIC"}; break;
  }
  return s;
}

bool model_node_truth(const ModelNodeSpec& spec, std::span<const bn::State> x) {
  if (x.size() != spec.parents.size()) {
    throw bn::StructuralError(std::string("parent assignment for ") + node_name(spec.kind) + " has wrong length");
  }
  switch (spec.kind) {
    case NodeKind::kSD:
      return x[0] > x[1] && x[2] > x[3];
    case NodeKind::kP:
      return x[0] == kTrue && x[1] == kTrue;
    case NodeKind::kCOTen:
    case NodeKind::kCOTing:
      return x[0] == kTrue;
    case NodeKind::kCHO:
      return x[0] > x[1] && x[2] == st(Side::kPort);
    case NodeKind::kCCRSS:
      return x[0] == kTrue && x[1] == st(Side::kPort);
    case NodeKind::kCCRPS:
      return x[0] == kTrue && x[1] != st(CourseChange::kPort);
    case NodeKind::kNAVM:
      return x[0] == st(Trend::kDecreasing) && (x[1] == st(Trend::kDecreasing) || x[2] == kTrue);
    case NodeKind::kCNAVM: {
      const bool ho = x[2] == st(Situation::kHo);
      return x[0] == kTrue && ((x[1] == kTrue && !ho) || x[3] == kTrue || (x[4] > x[5] && ho));
    }
    case NodeKind::kR:
      return x[0] == kLower ||
             (x[0] == kSimilar &&
              (x[1] == st(Situation::kHo) || x[1] == st(Situation::kCrSs) || x[1] == st(Situation::kOtIng)));
    case NodeKind::kGS: {
      const bool both = x[0] == kTrue && x[1] == kTrue;
      const bool same = (x[2] == st(CourseChange::kStarboard) && x[3] == st(Side::kStarboard)) ||
                        (x[2] == st(CourseChange::kPort) && x[3] == st(Side::kPort));
      return !both && !same;
    }
    case NodeKind::kCEM: {
      const bool gs_ok = x[0] != kTrue || x[1] == kTrue;
      bool colregs = false;
      switch (static_cast<Situation>(x[3])) {
        case Situation::kOtIng: colregs = x[4] == kTrue; break;
        case Situation::kOtEn: colregs = x[5] == kTrue; break;
        case Situation::kHo: colregs = x[6] == kTrue; break;
        case Situation::kCrSs: colregs = x[7] == kTrue; break;
        case Situation::kCrPs: colregs = x[8] == kTrue; break;
      }
      return gs_ok && (x[2] != kTrue || colregs);
    }
    case NodeKind::kSOC: {
      if (x[0] == st(CourseChange::kStraight) && x[1] == st(SpeedChange::kNone)) return true;
      for (std::size_t j = 0; j < spec.fan_in; ++j) {
        const std::size_t b = 2 + 3 * j;
        if (x[b] == kGW && x[b + 1] == kTrue && x[b + 2] != kTrue) return true;
      }
      return false;
    }
    case NodeKind::kSDGS:
      return (x[0] > x[2] && x[3] == st(CourseChange::kStarboard)) ||
             (x[1] > x[2] && x[3] == st(CourseChange::kPort)) || x[3] == st(CourseChange::kStraight);
    case NodeKind::kSDGF:
      return x[0] > x[1] || x[2] != st(CourseChange::kStraight);
    case NodeKind::kSDG:
      return x[0] == kTrue && x[1] == kTrue;
    case NodeKind::kGWC:
      return x[0] == kTrue || x[1] == kTrue || (x[2] > x[3] && x[4] == kTrue);
    case NodeKind::kCCOLAVM: {
      if (x[0] == kTrue) return false;
      return x[1] == kGW ? x[3] == kTrue : x[2] == kTrue;
    }
    case NodeKind::kCi:
      return (x[0] == kTrue || x[1] == kTrue) && (x[2] == kTrue || x[3] == kTrue);
    case NodeKind::kC: {
      bool all = true;
      for (std::size_t i = 0; i < spec.fan_in; ++i) all = all && x[i] == kTrue;
      return all || x[spec.fan_in] == kTrue;
    }
    case NodeKind::kSA:
      return x[0] == kTrue || x[1] == st(CourseChange::kStarboard);
    case NodeKind::kPA:
      return x[0] == kTrue || x[1] == st(CourseChange::kPort);
  }
  return false;
}

bn::Factor::Rule node_rule(const ModelNodeSpec& spec) {
  return [spec](std::span<const bn::State> parents) -> bn::State {
    return model_node_truth(spec, parents) ? 1 : 0;
  };
}

}  // namespace intentdbn::model
