#pragma once

#include <json.hpp>

#include "altnet/oracle.hpp"
#include "altnet/simulate.hpp"
#include "altnet/verifier.hpp"

namespace altnet {

/// All reports use ordered JSON so identical inputs give byte-identical
/// output; wall-clock data lives in a separate "timing" block that
/// callers can strip when comparing.
using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& r) {
  Json j;
  j["rational"] = r.str();
  j["decimal"] = r.decimal();
  return j;
}

inline Json bounds_json(const BoundSet& b) {
  Json j;
  for (const auto& [name, value] : b.named()) j[name] = rational_json(value);
  j["min"] = rational_json(b.min());
  return j;
}

inline Json fractions_json(const StateFractions& f) {
  Json j;
  j["A"] = f.a().str();
  j["B"] = f.b().str();
  j["C"] = f.c().str();
  j["D"] = f.d().str();
  return j;
}

inline Json realization_json(const ChannelRealization& real) {
  Json slots = Json::array();
  for (int s = 0; s < real.slot_count(); ++s) {
    Json grid = Json::array();
    for (int r = 0; r < real.users(); ++r) {
      Json row = Json::array();
      for (int t = 0; t < real.users(); ++t) row.push_back(real.coeff(s, r, t));
      grid.push_back(row);
    }
    slots.push_back(grid);
  }
  Json j;
  j["p"] = real.field().p();
  j["slots"] = slots;
  return j;
}

inline Json scheme_json(const LinearScheme& scheme) {
  Json j;
  j["rate"] = rational_json(scheme.rate());
  Json lines = Json::array();
  std::istringstream text(format_scheme(scheme));
  std::string line;
  while (std::getline(text, line)) lines.push_back(line);
  j["text"] = lines;
  return j;
}

inline Json decodability_json(const DecodabilityReport& report) {
  Json j;
  j["schema"] = "altnet-decodability/v1";
  j["mode"] = to_string(report.mode);
  j["verdict"] = report.verdict;
  Json per_rx = Json::array();
  for (bool ok : report.per_receiver) per_rx.push_back(ok);
  j["per_receiver"] = per_rx;
  j["realizations_total"] = report.realizations_total;
  j["realizations_checked"] = report.realizations_checked;
  j["failures"] = report.failures;
  if (report.failure_fraction)
    j["failure_fraction"] = rational_json(*report.failure_fraction);
  else
    j["failure_fraction"] = nullptr;
  if (report.counterexample) {
    j["counterexample"] = realization_json(*report.counterexample);
    j["counterexample_receiver"] = *report.counterexample_receiver;
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

inline Json search_result_json(const SearchResult& result) {
  Json j;
  j["schema"] = "altnet-search/v1";
  j["best_rate"] = rational_json(result.best_rate);
  j["candidates_examined"] = result.candidates_examined;
  j["exhaustive"] = result.exhaustive;
  j["witness"] = scheme_json(result.witness);
  return j;
}

inline Json example_candidate_json(const ExampleCandidate& cand) {
  Json j;
  j["first"] = Json::array();
  j["second"] = Json::array();
  for (int r = 0; r < 3; ++r) {
    std::string row1, row2;
    for (int t = 0; t < 3; ++t) {
      row1.push_back(cand.first.link(r, t) ? '1' : '0');
      row2.push_back(cand.second.link(r, t) ? '1' : '0');
    }
    j["first"].push_back(row1);
    j["second"].push_back(row2);
  }
  Json profile;
  profile["individual"] = {cand.profile.individual[0].str(),
                           cand.profile.individual[1].str()};
  profile["joint"] = rational_json(cand.profile.joint);
  Json pw = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    Json entry;
    entry["users"] = {PairwiseRates::kPairs[i][0], PairwiseRates::kPairs[i][1]};
    entry["rate"] = cand.profile.pairwise[i].str();
    pw.push_back(entry);
  }
  profile["pairwise"] = pw;
  profile["pass"] = cand.profile.pass;
  j["profile"] = profile;
  j["witness"] = scheme_json(cand.witness);
  return j;
}

inline Json rate_report_json(const RateReport& report) {
  Json j;
  j["schema"] = "altnet-rate-report/v1";
  j["achieved"] = rational_json(report.achieved);
  j["formula"] = report.formula ? rational_json(*report.formula) : Json(nullptr);
  j["bounds"] = report.bounds ? bounds_json(*report.bounds) : Json(nullptr);
  j["gap"] = report.gap ? rational_json(*report.gap) : Json(nullptr);
  j["decode_failures"] = report.decode_failures;
  j["symbols_total"] = report.symbols_total;
  j["symbols_decoded"] = report.symbols_decoded;
  if (!report.note.empty()) j["note"] = report.note;
  Json prov;
  prov["seed"] = report.seed;
  prov["config"] = report.config_string;
  prov["config_hash"] = report.config_hash;
  prov["rng"] = report.rng_id;
  prov["offline_scheduling"] = report.offline_scheduling;
  prov["field_meets_capacity_preconditions"] = report.field_meets_preconditions;
  if (!report.field_meets_preconditions)
    prov["field_flag"] = "theorem-preconditions-unmet";
  j["provenance"] = prov;
  Json timing;
  timing["runtime_seconds"] = report.runtime_seconds;
  j["timing"] = timing;
  return j;
}

}  // namespace altnet
