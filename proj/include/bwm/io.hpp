#ifndef BWM_IO_HPP
#define BWM_IO_HPP

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

#include "bwm/census.hpp"
#include "bwm/error.hpp"
#include "bwm/llsm.hpp"
#include "bwm/model.hpp"
#include "bwm/montecarlo.hpp"
#include "bwm/ordinal.hpp"
#include "bwm/rational.hpp"

// JSON views of the library types. Indices are 1-based on the wire; exact
// values travel as strings ("9", "3/2"); floating values are rounded to 12
// significant digits. nlohmann::json keeps object keys sorted, so dump()
// output is canonical.

namespace bwm::io {

using json = nlohmann::json;

inline double round12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline json rounded(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(round12(x));
  return out;
}

inline Rational parse_value(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw Error(Errc::Parse, "comparison values must be strings or integers");
}

inline std::size_t parse_index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw Error(Errc::Parse, std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(v.get<std::int64_t>() - 1);
}

inline std::size_t parse_key(const std::string& key) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(key, &pos);
  } catch (const std::exception&) {
    throw Error(Errc::Parse, "alternative key '" + key + "' is not an integer");
  }
  if (pos != key.size() || v < 1) throw Error(Errc::Parse, "alternative key '" + key + "' is not a positive integer");
  return static_cast<std::size_t>(v - 1);
}

inline std::map<std::size_t, Rational> parse_entry_map(const json& obj, const char* what) {
  if (!obj.is_object()) throw Error(Errc::Parse, std::string(what) + " must be an object");
  std::map<std::size_t, Rational> out;
  for (const auto& [k, v] : obj.items()) out[parse_key(k)] = parse_value(v);
  return out;
}

inline BwmInput parse_bwm_input(const json& j) {
  if (!j.is_object()) throw Error(Errc::Parse, "instance must be a JSON object");
  for (const char* key : {"n", "best", "worst"})
    if (!j.contains(key)) throw Error(Errc::Parse, std::string("missing field '") + key + "'");
  BwmInput raw;
  if (!j["n"].is_number_integer() || j["n"].get<std::int64_t>() < 0) throw Error(Errc::Parse, "n must be a nonnegative integer");
  raw.n = j["n"].get<std::size_t>();
  raw.best = parse_index(j["best"], "best");
  raw.worst = parse_index(j["worst"], "worst");
  if (j.contains("best_to_others")) raw.best_to_others = parse_entry_map(j["best_to_others"], "best_to_others");
  if (j.contains("others_to_worst")) raw.others_to_worst = parse_entry_map(j["others_to_worst"], "others_to_worst");
  if (j.contains("best_to_worst")) raw.best_to_worst = parse_value(j["best_to_worst"]);
  return raw;
}

inline BwmInstance parse_bwm(const json& j) { return validate_bwm(parse_bwm_input(j)); }

inline BwmInstance parse_bwm(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Parse, e.what());
  }
  return parse_bwm(j);
}

inline json to_json(const BwmInstance& inst) {
  json j;
  j["n"] = inst.n();
  j["best"] = inst.best() + 1;
  j["worst"] = inst.worst() + 1;
  j["best_to_worst"] = inst.best_to_worst().str();
  json row = json::object();
  json col = json::object();
  for (auto k : inst.middles()) {
    row[std::to_string(k + 1)] = inst.a_best(k).str();
    col[std::to_string(k + 1)] = inst.a_worst(k).str();
  }
  j["best_to_others"] = row;
  j["others_to_worst"] = col;
  return j;
}

inline json to_json(const PriorityVector& pv) {
  return json{{"y", rounded(pv.log_weights())}, {"w_sum", rounded(pv.sum_one())}, {"w_prod", rounded(pv.product_one())}};
}

inline json to_json(const PairConflict& c) {
  return json{{"i", c.i + 1}, {"j", c.j + 1}, {"a_ij", c.a_ij.str()}};
}

inline json to_json(const ViolationReport& r) {
  json j;
  j["count"] = r.count();
  j["exact"] = r.exact;
  j["violations"] = json::array();
  for (const auto& v : r.violations) j["violations"].push_back(to_json(v));
  j["ties"] = json::array();
  for (const auto& t : r.ties) j["ties"].push_back(to_json(t));
  j["bwm_summary"] = json::array();
  for (const auto& f : r.bwm_summary)
    j["bwm_summary"].push_back({{"alternative", f.alternative + 1},
                                {"above_best", f.above_best},
                                {"ties_best", f.ties_best},
                                {"below_worst", f.below_worst},
                                {"ties_worst", f.ties_worst}});
  return j;
}

inline json to_json(const ConditionVerdict& v) {
  json j;
  j["pass"] = v.pass;
  if (v.bound_exact)
    j["bound"] = *v.bound_exact;
  else if (v.bound)
    j["bound"] = round12(*v.bound);
  else
    j["bound"] = nullptr;
  j["margin"] = v.margin ? json(round12(*v.margin)) : json(nullptr);
  return j;
}

inline json to_json(const ConditionDiagnosis& d) {
  json j;
  j["p"] = d.p.str();
  j["p_mode"] = d.p_mode == PMode::Given ? "given" : "derived-min";
  j["max_entry"] = d.max_entry.str();
  j["dominance"] = d.dominance;
  if (d.theorem1) j["theorem1"] = to_json(*d.theorem1);
  if (d.theorem2) {
    j["theorem2"] = to_json(*d.theorem2);
    j["theorem2"]["bw_maximal"] = d.bw_maximal;
  }
  if (d.corollary2) j["corollary2"] = to_json(*d.corollary2);
  j["certified"] = d.certified();
  return j;
}

// Full result for one instance: closed-form weights, exact violation
// report, condition diagnosis and the re-examination verdict.
inline json solve_document(const BwmInstance& inst, std::optional<Rational> p = std::nullopt) {
  const auto pv = solve_llsm_bwm_closed_form(inst);
  const auto report = detect_bwm_violations_exact(inst);
  const auto diag = diagnose(inst, p);
  json alternatives = json::array();
  for (auto a : report.offending_alternatives()) alternatives.push_back(a + 1);
  json j;
  j["instance"] = to_json(inst);
  j["weights"] = to_json(pv);
  j["violations"] = to_json(report);
  j["diagnosis"] = to_json(diag);
  j["reexamination"] = {{"needed", report.has_violation()}, {"alternatives", alternatives}};
  return j;
}

inline std::string scale_string(const std::vector<std::int64_t>& scale) {
  std::string s;
  for (auto v : scale) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

inline json to_json(const CensusReport& r) {
  json j;
  j["n"] = r.n;
  j["scale"] = r.scale;
  j["fixed_p"] = r.fixed_p.str();
  j["total"] = r.total;
  j["theorem1_p_fixed"] = r.theorem1_fixed_p;
  j["theorem1_best_p"] = r.theorem1_best_p;
  j["violating"] = r.violating;
  j["ties_only"] = r.ties_only;
  if (r.float_cross_checked) j["float_mismatches"] = r.float_mismatches;
  j["witness_count"] = r.witnesses.size();
  j["jobs"] = r.jobs;
  j["wall_time"] = round12(r.wall_time);
  return j;
}

inline json to_json(const McReport& r) {
  json j;
  j["n"] = r.n;
  j["k"] = r.samples;
  j["seed"] = r.seed;
  j["rng"] = r.rng;
  j["violating_count"] = r.violating_count;
  j["estimated_probability"] = round12(r.estimated_probability);
  j["exact_event_probability"] = r.exact_event_probability ? json(round12(*r.exact_event_probability)) : json(nullptr);
  if (r.exact_event_count) j["exact_event_count"] = *r.exact_event_count;
  if (r.exact_space_size) j["exact_space_size"] = *r.exact_space_size;
  j["q_no_detection"] = round12(r.q_no_detection);
  return j;
}

// "2..9" (inclusive integer range) or a comma list such as "2,3,7/2".
inline std::vector<Rational> parse_scale(const std::string& text) {
  std::vector<Rational> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = Rational::parse(text.substr(0, dots));
    const auto hi = Rational::parse(text.substr(dots + 2));
    if (!lo.is_integer() || !hi.is_integer() || lo > hi) throw Error(Errc::InvalidScale, "bad range '" + text + "'");
    for (auto v = lo.num(); v <= hi.num(); ++v) out.emplace_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(Rational::parse(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline json error_json(const std::string& code, const std::string& message) {
  return json{{"error", code}, {"message", message}};
}

}  // namespace bwm::io

#endif  // BWM_IO_HPP
