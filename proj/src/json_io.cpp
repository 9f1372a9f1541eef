#include "ramplane/json_io.hpp"

#include <sstream>

namespace ramplane {

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& v) {
  std::ostringstream os;
  os << numerator(v);
  if (denominator(v) != 1) os << "/" << denominator(v);
  return os.str();
}

Rat rat_from_str(const std::string& s) { return Rat(s); }

Json point_to_json(const ProjectivePoint& p) {
  return Json::array({int_str(p[0]), int_str(p[1]), int_str(p[2])});
}

ProjectivePoint point_from_json(const Json& j) {
  if (j.is_string()) return ProjectivePoint::parse(j.get<std::string>());
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("point must be a triple or 'a:b:c'");
  return ProjectivePoint(rat_from_str(j[0].get<std::string>()),
                         rat_from_str(j[1].get<std::string>()),
                         rat_from_str(j[2].get<std::string>()));
}

Json points_to_json(const std::vector<ProjectivePoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(point_to_json(p));
  return arr;
}

std::vector<ProjectivePoint> points_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("points must be an array");
  std::vector<ProjectivePoint> out;
  for (const auto& e : j) out.push_back(point_from_json(e));
  return out;
}

Json map_to_json(const PlaneEndomorphism& f) {
  return Json{{"f0", f.component(0).str()},
              {"f1", f.component(1).str()},
              {"f2", f.component(2).str()}};
}

PlaneEndomorphism map_from_json(const Json& j) {
  return PlaneEndomorphism::parse(j.at("f0").get<std::string>(),
                                  j.at("f1").get<std::string>(),
                                  j.at("f2").get<std::string>());
}

Json divisor_to_json(const PlaneDivisor& d) {
  Json comps = Json::array();
  for (const auto& c : d.components())
    comps.push_back(Json{{"form", c.form.str()},
                         {"multiplicity", std::to_string(c.multiplicity)}});
  return Json{{"components", comps},
              {"total_degree", std::to_string(d.total_degree())}};
}

Json fiber_to_json(const FiberReport& r) {
  Json pts = Json::array();
  for (const auto& fp : r.rational_points)
    pts.push_back(Json{{"point", point_to_json(fp.point)},
                       {"local_degree", std::to_string(fp.local_degree)}});
  return Json{{"target", point_to_json(r.target)},
              {"rational_points", pts},
              {"irrational_mass", std::to_string(r.irrational_mass)},
              {"completely_ramified", r.completely_ramified()},
              {"status", cr_status_name(r.status)}};
}

Json prop1_to_json(const Prop1Check& r) {
  return Json{{"lhs", int_str(r.lhs)},
              {"rhs", int_str(r.rhs)},
              {"slack", int_str(r.slack)},
              {"holds", r.holds},
              {"method",
               r.method == MultMethod::exact ? "exact" : "lower_bound"}};
}

Json prop2_audit_to_json(const Prop2Audit& r) {
  Json pts = Json::array();
  for (const auto& rec : r.points)
    pts.push_back(Json{{"point", point_to_json(rec.point)},
                       {"on_curve", rec.on_curve},
                       {"smooth", rec.smooth},
                       {"completely_ramified", cr_status_name(rec.cr)}});
  return Json{{"curve_degree", std::to_string(r.curve_degree)},
              {"points", pts},
              {"cr_smooth_count", std::to_string(r.cr_smooth_count)},
              {"bound", std::to_string(r.bound)},
              {"within_bound", r.within_bound}};
}

Json constraints_to_json(const ConstraintReport& r) {
  Json j{{"collinear_triples", r.collinear_triples},
         {"six_on_conic", r.six_on_conic},
         {"ten_on_cubic", r.ten_on_cubic},
         {"clean", r.clean()}};
  if (r.nine_point) {
    j["nine_point"] = Json{{"unique_cubic", r.nine_point->unique_cubic},
                           {"singular_at_member", r.nine_point->singular_at_member},
                           {"admissible", r.nine_point->admissible()}};
  }
  return j;
}

Json ep_result_to_json(const EpSearchResult& r) {
  Json j{{"s_square_le_points", r.s_square_le_points},
         {"tau_large_enough", r.tau_large_enough},
         {"conditions_dependent", r.conditions_dependent},
         {"applicable", r.applicable()}};
  if (r.witness) {
    j["witness"] = Json{{"t", std::to_string(r.witness->t)},
                        {"subset", r.witness->subset},
                        {"curve", r.witness->curve.str()}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json prop5_to_json(const Prop5Result& r) {
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back(Json{{"index", c.index},
                         {"degree", std::to_string(c.degree)},
                         {"multiplicity", std::to_string(c.multiplicity)},
                         {"low_degree", c.low_degree},
                         {"smooth_count", int_str(c.smooth_count)},
                         {"smooth_cap", int_str(c.smooth_cap)},
                         {"hypothesis_ok", c.hypothesis_ok},
                         {"on_count", int_str(c.on_count)},
                         {"three_halves_ok", c.three_halves_ok}});
  return Json{{"n", int_str(r.n_param)},
              {"es_size", int_str(r.es_size)},
              {"strict_bound", int_str(r.bound)},
              {"max_allowed", int_str(r.bound - 1)},
              {"hypothesis_ok", r.hypothesis_ok},
              {"satisfied", r.satisfied},
              {"components", comps}};
}

Json lemma5_to_json(const Lemma5Result& r) {
  return Json{{"lhs", rat_str(r.lhs)},
              {"rhs", rat_str(r.rhs)},
              {"q1", rat_str(r.q1)},
              {"q2", rat_str(r.q2)},
              {"holds", r.holds}};
}

MultiplicityConfig config_from_json(const Json& j) {
  MultiplicityConfig c;
  c.b = rat_from_str(j.at("b").get<std::string>());
  c.s = Int(j.at("s").get<std::string>());
  c.components_exhaustive = j.value("components_exhaustive", true);
  c.realizable = j.value("realizable", false);
  for (const auto& comp : j.at("components"))
    c.components.push_back(
        {std::stoi(comp.at("degree").get<std::string>()),
         std::stoi(comp.at("multiplicity").get<std::string>())});
  for (const auto& pt : j.at("points")) {
    ConfigPoint p;
    p.id = pt.at("id").get<std::string>();
    for (const auto& e : pt.at("on"))
      p.on.push_back({e.at("component").get<int>(),
                      std::stoi(e.at("multiplicity").get<std::string>())});
    c.points.push_back(std::move(p));
  }
  for (const auto& id : j.at("e_s")) c.e_s.push_back(id.get<std::string>());
  return c;
}

Json config_to_json(const MultiplicityConfig& c) {
  Json comps = Json::array();
  for (const auto& comp : c.components)
    comps.push_back(Json{{"degree", std::to_string(comp.degree)},
                         {"multiplicity", std::to_string(comp.multiplicity)}});
  Json pts = Json::array();
  for (const auto& p : c.points) {
    Json on = Json::array();
    for (const auto& e : p.on)
      on.push_back(Json{{"component", e.component},
                        {"multiplicity", std::to_string(e.multiplicity)}});
    pts.push_back(Json{{"id", p.id}, {"on", on}});
  }
  return Json{{"b", rat_str(c.b)},
              {"s", int_str(c.s)},
              {"components", comps},
              {"components_exhaustive", c.components_exhaustive},
              {"points", pts},
              {"e_s", c.e_s},
              {"realizable", c.realizable}};
}

SearchJob job_from_json(const Json& j) {
  SearchJob job;
  const std::string family = j.value("family", "perturbed_power");
  if (family == "power")
    job.family = SearchJob::Family::power;
  else if (family == "perturbed_power")
    job.family = SearchJob::Family::perturbed_power;
  else if (family == "composition")
    job.family = SearchJob::Family::composition;
  else
    throw std::invalid_argument("unknown family: " + family);
  job.m = j.value("m", 2);
  job.coeff_box = j.value("coeff_box", 1);
  if (j.contains("compose_exponents"))
    job.compose_exponents = j.at("compose_exponents").get<std::vector<int>>();
  if (j.contains("primes"))
    job.primes = j.at("primes").get<std::vector<int64_t>>();
  job.seed = j.value("seed", uint64_t(0));
  job.budget = j.value("budget", uint64_t(1) << 32);
  job.lift_height = j.value("lift_height", 12);
  return job;
}

Json job_to_json(const SearchJob& j) {
  std::string family = "perturbed_power";
  if (j.family == SearchJob::Family::power) family = "power";
  if (j.family == SearchJob::Family::composition) family = "composition";
  return Json{{"family", family},
              {"m", j.m},
              {"coeff_box", j.coeff_box},
              {"compose_exponents", j.compose_exponents},
              {"primes", j.primes},
              {"seed", j.seed},
              {"budget", j.budget},
              {"lift_height", j.lift_height}};
}

Json search_report_to_json(const SearchReport& r) {
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    Json cand = Json::object();
    for (const auto& [p, names] : rec.census_candidates)
      cand[std::to_string(p)] = names;
    recs.push_back(Json{{"map", Json{{"f0", rec.map[0]},
                                     {"f1", rec.map[1]},
                                     {"f2", rec.map[2]}}},
                        {"verified_points", rec.verified_points},
                        {"census_candidates", cand},
                        {"skipped_primes", rec.skipped_primes},
                        {"constraints_clean", rec.constraints_clean},
                        {"discovery", rec.discovery},
                        {"error", rec.error}});
  }
  return Json{{"records", recs},
              {"budget_exhausted", r.budget_exhausted},
              {"evaluations", std::to_string(r.evaluations)}};
}

Json crpoints_to_json(const CrPointsResult& r) {
  Json cand = Json::object();
  for (const auto& [p, names] : r.census_candidates)
    cand[std::to_string(p)] = names;
  return Json{{"verified", points_to_json(r.verified)},
              {"lift_candidates", points_to_json(r.lifted)},
              {"census_candidates", cand},
              {"skipped_primes", r.skipped_primes}};
}

Json make_report(const std::string& command, const Json& inputs,
                 const Json& results, uint64_t seed,
                 std::optional<double> seconds) {
  Json r{{"command", command},
         {"inputs", inputs},
         {"results", results},
         {"seed", std::to_string(seed)},
         {"artifact_version", "0.1.0"}};
  if (seconds) r["timings"] = Json{{"seconds", *seconds}};
  return r;
}

}  // namespace ramplane
