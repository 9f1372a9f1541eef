// Command-line front end: one subcommand per analysis, JSON in/out.
//
// Exit codes: 0 success, 1 usage or input errors, 2 certified mathematical
// assertion failure (a theorem check came out false).

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ramplane/certify.hpp"
#include "ramplane/errors.hpp"
#include "ramplane/ffsearch.hpp"
#include "ramplane/json_io.hpp"
#include "ramplane/pointconf.hpp"
#include "ramplane/projmap.hpp"
#include "ramplane/ramify.hpp"

namespace {

using namespace ramplane;

struct CommonOpts {
  uint64_t seed = 0;
  std::string out;
  int jobs = 1;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "root RNG seed");
  cmd->add_option("--out", opts.out, "write the report to a file");
  cmd->add_option("--jobs", opts.jobs, "worker count for family searches");
  cmd->add_flag("--timings", opts.timings,
                "include wall-clock timings (reports are otherwise byte-stable)");
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

PlaneEndomorphism load_map(const std::string& path) {
  return map_from_json(load_json(path));
}

int emit(const CommonOpts& opts, const std::string& command,
         const Json& inputs, const Json& results, double seconds,
         bool assertion_ok = true) {
  Json report = make_report(command, inputs, results, opts.seed,
                            opts.timings ? std::optional<double>(seconds)
                                         : std::nullopt);
  if (opts.out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(opts.out);
    out << report.dump(2) << "\n";
  }
  return assertion_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact ramification analysis of plane endomorphisms"};
  app.require_subcommand(1);

  std::string map_path, map2_path, curve_text, points_path, config_path,
      job_path, point_text, family = "perturbed_power";
  int degree = 0, tau = 0, s_param = 0, m_param = 0, n_param = 0, d_param = 1,
      height = 12, coeff_box = 1, example_m = 3;
  std::string c_param = "1", b_param = "1", s_str = "2";
  uint64_t budget = 1ull << 32;
  std::vector<int64_t> primes;
  std::vector<std::string> mult_conds;
  std::string bounds_kind;

  CommonOpts opts;

  auto* validate_cmd = app.add_subcommand("validate", "validate a map descriptor");
  validate_cmd->add_option("--map", map_path, "map JSON")->required();
  add_common(validate_cmd, opts);

  auto* ram_cmd = app.add_subcommand("ramification", "ramification divisor");
  ram_cmd->add_option("--map", map_path)->required();
  add_common(ram_cmd, opts);

  auto* fiber_cmd = app.add_subcommand("fiber", "fiber over a rational point");
  fiber_cmd->add_option("--map", map_path)->required();
  fiber_cmd->add_option("--point", point_text, "target point a:b:c")->required();
  add_common(fiber_cmd, opts);

  auto* cr_cmd = app.add_subcommand("crpoints",
                                    "completely ramified points (census + lift + symbolic check)");
  cr_cmd->add_option("--map", map_path)->required();
  cr_cmd->add_option("--primes", primes, "census primes");
  cr_cmd->add_option("--height", height, "lift height bound");
  cr_cmd->add_option("--budget", budget, "evaluation budget");
  add_common(cr_cmd, opts);

  auto* push_cmd = app.add_subcommand("pushmult",
                                      "multiplicity of the pushed-forward ramification divisor");
  push_cmd->add_option("--map", map_path)->required();
  push_cmd->add_option("--point", point_text)->required();
  add_common(push_cmd, opts);

  auto* prop1_cmd = app.add_subcommand("prop1", "pushforward multiplicity inequality");
  prop1_cmd->add_option("--map", map_path)->required();
  prop1_cmd->add_option("--point", point_text)->required();
  add_common(prop1_cmd, opts);

  auto* audit_cmd = app.add_subcommand("prop2-audit", "smooth-locus complete ramification audit");
  audit_cmd->add_option("--map", map_path)->required();
  audit_cmd->add_option("--curve", curve_text, "square-free form")->required();
  audit_cmd->add_option("--points", points_path, "points JSON")->required();
  add_common(audit_cmd, opts);

  auto* hilbert_cmd = app.add_subcommand("hilbert", "linear system dimension through points");
  hilbert_cmd->add_option("--points", points_path)->required();
  hilbert_cmd->add_option("--degree", degree)->required();
  hilbert_cmd->add_option("--mult", mult_conds,
                          "multiplicity conditions 'a:b:c=r'");
  add_common(hilbert_cmd, opts);

  auto* conf_cmd = app.add_subcommand("config-check", "collinear/conic/cubic constraints");
  conf_cmd->add_option("--points", points_path)->required();
  add_common(conf_cmd, opts);

  auto* ep_cmd = app.add_subcommand("ep-search", "subset-on-low-degree-curve witness search");
  ep_cmd->add_option("--points", points_path)->required();
  ep_cmd->add_option("--tau", tau)->required();
  ep_cmd->add_option("--s", s_param)->required();
  ep_cmd->add_option("--budget", budget);
  add_common(ep_cmd, opts);

  auto* certify_cmd = app.add_subcommand("certify", "multiplicity-config certificate");
  certify_cmd->add_option("--config", config_path)->required();
  add_common(certify_cmd, opts);

  auto* bounds_cmd = app.add_subcommand("bounds", "scalar bounds and inequalities");
  bounds_cmd->add_option("kind", bounds_kind,
                         "one of: hurwitz, prop2, theorem1, ten-cubics, prop3, "
                         "clower, genus, prop4, ep-condition, theorem2")
      ->required();
  bounds_cmd->add_option("--m", m_param);
  bounds_cmd->add_option("--N", n_param);
  bounds_cmd->add_option("--d", d_param);
  bounds_cmd->add_option("--c", c_param, "rational value");
  bounds_cmd->add_option("--b", b_param, "divisor degree");
  bounds_cmd->add_option("--s", s_str, "multiplicity threshold");
  bounds_cmd->add_option("--tau", tau);
  bounds_cmd->add_option("--t", degree);
  add_common(bounds_cmd, opts);

  auto* ex2_cmd = app.add_subcommand("example2", "odd-degree germ identity check");
  ex2_cmd->add_option("--m", example_m)->required();
  add_common(ex2_cmd, opts);

  auto* search_cmd = app.add_subcommand("search", "family search for completely ramified points");
  search_cmd->add_option("--job", job_path, "job JSON (overrides flags)");
  search_cmd->add_option("--family", family, "power | perturbed_power | composition");
  search_cmd->add_option("--m", m_param);
  search_cmd->add_option("--box", coeff_box);
  search_cmd->add_option("--primes", primes);
  search_cmd->add_option("--budget", budget);
  search_cmd->add_option("--height", height);
  add_common(search_cmd, opts);

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  try {
    if (validate_cmd->parsed()) {
      const Json in = load_json(map_path);
      Json results;
      try {
        PlaneEndomorphism f = map_from_json(in);
        results = Json{{"valid", true},
                       {"m", std::to_string(f.degree())},
                       {"degree_one", f.is_degree_one()}};
      } catch (const common_zero_error& e) {
        results = Json{{"valid", false}, {"reason", e.what()}};
        if (e.witness) results["witness"] = point_to_json(*e.witness);
        if (!e.certificate.empty()) results["certificate"] = e.certificate;
      } catch (const degree_mismatch_error& e) {
        results = Json{{"valid", false}, {"reason", e.what()}};
      }
      return emit(opts, "validate", in, results, elapsed());
    }

    if (ram_cmd->parsed()) {
      const Json in = load_json(map_path);
      PlaneEndomorphism f = map_from_json(in);
      PlaneDivisor r = ramification_divisor(f);
      Json results = divisor_to_json(r);
      results["expected_degree"] = std::to_string(3 * f.degree() - 3);
      return emit(opts, "ramification", in, results, elapsed());
    }

    if (fiber_cmd->parsed()) {
      const Json in = load_json(map_path);
      PlaneEndomorphism f = map_from_json(in);
      FiberReport rep = fiber(f, ProjectivePoint::parse(point_text));
      Json inputs{{"map", in}, {"point", point_text}};
      return emit(opts, "fiber", inputs, fiber_to_json(rep), elapsed());
    }

    if (cr_cmd->parsed()) {
      const Json in = load_json(map_path);
      PlaneEndomorphism f = map_from_json(in);
      CrPointsResult res = completely_ramified_points(f, primes, height, budget);
      Json inputs{{"map", in},
                  {"primes", primes},
                  {"height", height}};
      return emit(opts, "crpoints", inputs, crpoints_to_json(res), elapsed());
    }

    if (push_cmd->parsed()) {
      const Json in = load_json(map_path);
      PlaneEndomorphism f = map_from_json(in);
      const auto y = ProjectivePoint::parse(point_text);
      const auto pm =
          pushforward_multiplicity(f, ramification_divisor(f), y, opts.seed);
      Json results{{"value", int_str(pm.value)},
                   {"method",
                    pm.method == MultMethod::exact ? "exact" : "lower_bound"}};
      Json inputs{{"map", in}, {"point", point_text}};
      return emit(opts, "pushmult", inputs, results, elapsed());
    }

    if (prop1_cmd->parsed()) {
      const Json in = load_json(map_path);
      PlaneEndomorphism f = map_from_json(in);
      const auto check =
          check_prop1(f, ProjectivePoint::parse(point_text), opts.seed);
      Json inputs{{"map", in}, {"point", point_text}};
      return emit(opts, "prop1", inputs, prop1_to_json(check), elapsed(),
                  check.holds);
    }

    if (audit_cmd->parsed()) {
      const Json in = load_json(map_path);
      PlaneEndomorphism f = map_from_json(in);
      const auto points = points_from_json(load_json(points_path));
      const auto audit =
          prop2_audit(f, HomogeneousForm::parse(curve_text), points);
      Json inputs{{"map", in}, {"curve", curve_text}, {"points", points_path}};
      return emit(opts, "prop2-audit", inputs, prop2_audit_to_json(audit),
                  elapsed(), audit.within_bound);
    }

    if (hilbert_cmd->parsed()) {
      const auto points = points_from_json(load_json(points_path));
      std::vector<MultiplicityCondition> conds;
      for (const auto& text : mult_conds) {
        const auto eq = text.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("multiplicity condition must be 'a:b:c=r'");
        conds.push_back({ProjectivePoint::parse(text.substr(0, eq)),
                         std::stoi(text.substr(eq + 1))});
      }
      const int dim =
          linear_system_dimension(PointConfiguration(points), degree, conds);
      Json inputs{{"points", points_path},
                  {"degree", degree},
                  {"mult", mult_conds}};
      return emit(opts, "hilbert", inputs,
                  Json{{"dimension", std::to_string(dim)}}, elapsed());
    }

    if (conf_cmd->parsed()) {
      const auto points = points_from_json(load_json(points_path));
      const auto rep = configuration_constraints(PointConfiguration(points));
      return emit(opts, "config-check", Json{{"points", points_path}},
                  constraints_to_json(rep), elapsed());
    }

    if (ep_cmd->parsed()) {
      const auto points = points_from_json(load_json(points_path));
      const auto res =
          ellia_peskine_search(PointConfiguration(points), tau, s_param, budget);
      Json inputs{{"points", points_path}, {"tau", tau}, {"s", s_param}};
      return emit(opts, "ep-search", inputs, ep_result_to_json(res), elapsed());
    }

    if (certify_cmd->parsed()) {
      const Json in = load_json(config_path);
      const auto config = config_from_json(in);
      const auto res = prop5_certify(config);
      return emit(opts, "certify", in, prop5_to_json(res), elapsed(),
                  res.satisfied || !res.hypothesis_ok);
    }

    if (bounds_cmd->parsed()) {
      Json results;
      if (bounds_kind == "hurwitz") {
        const auto r = hurwitz_contradiction(m_param, d_param);
        results = Json{{"lhs", int_str(r.lhs)},
                       {"rhs", int_str(r.rhs)},
                       {"holds", r.holds}};
      } else if (bounds_kind == "prop2") {
        const auto r = prop2_inequality(m_param, d_param, Int(c_param));
        const char* conclusion =
            r.conclusion == Prop2Conclusion::inequality_fails
                ? "inequality_fails"
                : r.conclusion == Prop2Conclusion::excluded_integrality
                      ? "excluded_integrality"
                      : r.conclusion == Prop2Conclusion::excluded_fundamental_group
                            ? "excluded_fundamental_group"
                            : "not_excluded";
        results = Json{{"lhs", int_str(r.lhs)},
                       {"rhs", int_str(r.rhs)},
                       {"reduced_holds", r.reduced_holds},
                       {"c_le_d", r.c_le_d},
                       {"conclusion", conclusion}};
      } else if (bounds_kind == "theorem1") {
        results = Json{{"cubic_multiplicity",
                        rat_str(theorem1_cubic_multiplicity(m_param))}};
      } else if (bounds_kind == "ten-cubics") {
        results = Json{{"impossible", theorem1_ten_cubics(m_param)}};
      } else if (bounds_kind == "prop3") {
        const auto r = prop3_star(
            BoundParams{m_param, n_param, rat_from_str(c_param), d_param});
        results = Json{{"full_lhs", rat_str(r.full_lhs)},
                       {"full_rhs", rat_str(r.full_rhs)},
                       {"star_holds", r.star_holds},
                       {"reduced_holds", r.reduced_holds},
                       {"reduction_identity", prop3_reduction_identity()}};
      } else if (bounds_kind == "clower") {
        results = Json{{"bound", rat_str(c_lower_bound(m_param, n_param, d_param))},
                       {"mc_exceeds_N", mc_exceeds_n(m_param, n_param, d_param)}};
      } else if (bounds_kind == "genus") {
        const auto r = genus_bound(Int(b_param), Int(s_str));
        results = Json{{"bound", int_str(r.bound)}, {"coarse", rat_str(r.coarse)}};
      } else if (bounds_kind == "prop4") {
        results = Json{{"max", int_str(prop4_bound(n_param))},
                       {"sweep_ok", remark2_sweep()}};
      } else if (bounds_kind == "ep-condition") {
        results = Json{{"holds", ep_condition(tau, s_str.empty() ? Int(2) : Int(s_str),
                                              degree, n_param)}};
      } else if (bounds_kind == "theorem2") {
        const auto r = theorem2_bound(n_param);
        results = Json{{"max", int_str(r.max)}, {"witness", int_str(r.witness)}};
        if (r.sharper_strict)
          results["sharper_strict"] = int_str(*r.sharper_strict);
      } else {
        throw CLI::ValidationError("bounds", "unknown bounds kind: " + bounds_kind);
      }
      Json inputs{{"kind", bounds_kind}, {"m", m_param},   {"N", n_param},
                  {"d", d_param},        {"c", c_param},   {"b", b_param},
                  {"s", s_str},          {"tau", tau},     {"t", degree}};
      return emit(opts, "bounds", inputs, results, elapsed());
    }

    if (ex2_cmd->parsed()) {
      const bool ok = verify_example2(example_m);
      return emit(opts, "example2", Json{{"m", example_m}},
                  Json{{"verified", ok}}, elapsed(), ok);
    }

    if (search_cmd->parsed()) {
      SearchJob job;
      if (!job_path.empty()) {
        job = job_from_json(load_json(job_path));
      } else {
        Json jj{{"family", family}, {"m", m_param == 0 ? 2 : m_param},
                {"coeff_box", coeff_box}, {"budget", budget},
                {"lift_height", height}, {"seed", opts.seed}};
        if (!primes.empty()) jj["primes"] = primes;
        job = job_from_json(jj);
      }
      const auto report = run_search(job, opts.jobs);
      return emit(opts, "search", job_to_json(job),
                  search_report_to_json(report), elapsed());
    }
  } catch (const theorem_violation_error& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
