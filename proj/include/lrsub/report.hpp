#pragma once

// Line-oriented record serialization for witnesses, survey rows, and
// classification evidence, plus JSON emission of whole reports.

#include <sstream>
#include <string>

#include <json.hpp>

#include "lrsub/classify.hpp"
#include "lrsub/cyclic_code.hpp"
#include "lrsub/version.hpp"

namespace lrsub {

inline std::string format_perm(const std::vector<uint32_t>& p) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ",";
    os << p[i];
  }
  os << "]";
  return os.str();
}

// Flat record {q, m, n, d, xi_enc, L_images, perm, tag}.
inline std::string format_witness(const NonstandardWitness& w) {
  const FieldDesc& F = *w.xi.field;
  std::ostringstream os;
  os << "witness q=" << w.q << " m=" << w.m << " n=" << w.n << " d=" << w.d
     << " xi=" << w.xi.enc << " L_images=";
  uint64_t xk = F.one().enc;
  for (unsigned j = 0; j < w.m; ++j) {
    if (j) os << ",";
    os << evaluate(w.L, FieldElement{&F, xk}).enc;
    xk = F.mul(xk, w.xi.enc);
  }
  os << " perm=" << format_perm(w.perm) << " tag=" << w.tag.str();
  return os.str();
}

inline nlohmann::json witness_to_json(const NonstandardWitness& w) {
  const FieldDesc& F = *w.xi.field;
  nlohmann::json j;
  j["q"] = w.q;
  j["m"] = w.m;
  j["n"] = w.n;
  j["d"] = w.d;
  j["xi_enc"] = w.xi.enc;
  std::vector<uint64_t> images;
  uint64_t xk = F.one().enc;
  for (unsigned i = 0; i < w.m; ++i) {
    images.push_back(evaluate(w.L, FieldElement{&F, xk}).enc);
    xk = F.mul(xk, w.xi.enc);
  }
  j["L_images"] = images;
  j["perm"] = w.perm;
  j["tag"] = w.tag.str();
  return j;
}

inline std::string format_evidence(const Evidence& ev,
                                   const ClassLabel& label) {
  std::ostringstream os;
  if (label.kind == ClassLabel::Kind::type_I) {
    os << " eta=" << ev.eta_enc;
  } else if (label.kind == ClassLabel::Kind::type_II) {
    os << " lambda=" << ev.lambda_enc << " nu=" << ev.nu_enc
       << " omega_tilde=" << ev.omega_tilde_enc << " Xi_order="
       << ev.closure_order << " Xi=" << ev.closure_label << " q0=" << ev.q0
       << " t=" << ev.t << " delta0=" << ev.delta0 << " phi=" << ev.phi_enc
       << " phi_order=" << ev.phi_order << " phi_qorder=" << ev.phi_qorder
       << " phi_primitive=" << (ev.phi_primitive ? 1 : 0)
       << " phi_nonstandard=" << (ev.phi_nonstandard ? 1 : 0)
       << " t_odd=" << (ev.t_odd ? 1 : 0);
  }
  return os.str();
}

inline std::string format_survey_row(uint64_t q, unsigned m,
                                     const SurveyRow& row) {
  std::ostringstream os;
  os << "row q=" << q << " m=" << m << " n=" << row.n << " d=" << row.d
     << " e=" << row.e << " count=" << row.count
     << " label=" << row.label.str();
  if (row.classification)
    os << format_evidence(row.classification->evidence, row.label);
  return os.str();
}

inline nlohmann::json survey_row_to_json(uint64_t q, unsigned m,
                                         const SurveyRow& row) {
  nlohmann::json j;
  j["q"] = q;
  j["m"] = m;
  j["n"] = row.n;
  j["d"] = row.d;
  j["e"] = row.e;
  j["count"] = row.count;
  j["label"] = row.label.str();
  if (row.classification &&
      (row.label.kind == ClassLabel::Kind::type_I ||
       row.label.kind == ClassLabel::Kind::type_II)) {
    const Evidence& ev = row.classification->evidence;
    nlohmann::json e;
    if (row.label.kind == ClassLabel::Kind::type_I) {
      e["eta"] = ev.eta_enc;
    } else if (row.label.kind == ClassLabel::Kind::type_II) {
      e["lambda"] = ev.lambda_enc;
      e["nu"] = ev.nu_enc;
      e["omega_tilde"] = ev.omega_tilde_enc;
      e["Xi_order"] = ev.closure_order;
      e["Xi"] = ev.closure_label;
      e["q0"] = ev.q0;
      e["t"] = ev.t;
      e["delta0"] = ev.delta0;
      e["phi"] = ev.phi_enc;
      e["phi_order"] = ev.phi_order;
      e["phi_qorder"] = ev.phi_qorder;
      e["phi_primitive"] = ev.phi_primitive;
      e["phi_nonstandard"] = ev.phi_nonstandard;
      e["t_odd"] = ev.t_odd;
    }
    j["evidence"] = e;
  }
  return j;
}

// Report header; byte-identical across runs for identical inputs unless
// timing is requested.
inline std::string report_header(const std::string& command, uint64_t seed) {
  std::ostringstream os;
  os << "# lrsub report v1\n";
  os << "# version: " << LRSUB_VERSION << "\n";
  os << "# command: " << command << "\n";
  os << "# seed: " << seed << "\n";
  return os.str();
}

}  // namespace lrsub
