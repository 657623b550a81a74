#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ews/audit.hpp"
#include "ews/comparative_statics.hpp"
#include "ews/oracle.hpp"
#include "ews/params.hpp"
#include "ews/reporting.hpp"

namespace {

using namespace ews;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

struct Options {
  std::string params;
  std::string json_out;
  std::string out;
  std::string grid = kDefaultGrid;
  std::uint64_t seed = 1;
  int figure = 1;
  std::optional<double> step;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParamError("cannot write " + path);
  f << text;
  if (!f) throw ParamError("failed writing " + path);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

std::optional<std::pair<SectorAes, SectorAes>> sector_aes(const Params& p, const ModelShares& sh) {
  if (!p.aes) return std::nullopt;
  return std::pair{build_sector_aes(Sector::One, p.aes->first, sh), build_sector_aes(Sector::Two, p.aes->second, sh)};
}

int cmd_validate(const Options& o) {
  const Params p = load_params(o.params);
  auto fail = [](const char* what, const ModelError& e) {
    std::cout << what << ": FAIL " << e.what() << "\n";
    return kExitValidation;
  };
  std::optional<ModelShares> sh;
  try {
    sh = build_shares(p.theta, p.theta_good_1);
  } catch (const ModelError& e) {
    if (e.code() != ErrorCode::RankingViolation) return fail("shares", e);
    std::cout << "shares: OK\n";
    return fail("ranking", e);
  }
  std::cout << "shares: OK\nranking: OK\n";
  if (p.aes) {
    try {
      const auto aes = sector_aes(p, *sh);
      std::cout << "AES: OK (negative semidefinite: sector 1 " << (aes->first.negative_semidefinite() ? "yes" : "no")
                << ", sector 2 " << (aes->second.negative_semidefinite() ? "yes" : "no") << ")\n";
      compute_ews(*sh, aes->first, aes->second);
    } catch (const ModelError& e) {
      return fail(e.code() == ErrorCode::QuasiConcavityViolation ? "AES" : "EWS", e);
    }
    std::cout << "EWS: OK\n";
  } else if (p.reduced) {
    try {
      ews_from_triple(*sh, *p.reduced);
    } catch (const ModelError& e) {
      return fail("EWS", e);
    }
    std::cout << "EWS: OK (reduced)\n";
  } else {
    std::cout << "EWS: not given\n";
  }
  return kExitOk;
}

int cmd_report(const Options& o) {
  const Params p = load_params(o.params);
  const ModelShares sh = build_shares(p.theta, p.theta_good_1);
  const EwsTerms ews = build_ews(p, sh);
  emit(o.json_out.empty() ? o.out : o.json_out, serialize(report_json(sh, ews, sector_aes(p, sh))));
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  const Params p = load_params(o.params);
  const ModelShares sh = build_shares(p.theta, p.theta_good_1);
  const SweepResult res = run_sweep(sh, parse_grid(o.grid), o.seed);
  emit(o.out, sweep_csv(res));
  const Json summary = sweep_summary(res);
  if (!o.json_out.empty()) write_text(o.json_out, serialize(summary));
  std::cerr << "sweep: " << summary["points"].get<std::size_t>() << " points, "
            << summary["feasible"].get<std::size_t>() << " feasible, " << summary["mismatches"].get<std::size_t>()
            << " sign mismatches\n";
  return summary["mismatches"].get<std::size_t>() == 0 ? kExitOk : kExitInternal;
}

int cmd_plot(const Options& o) {
  const Params p = load_params(o.params);
  const ModelShares sh = build_shares(p.theta, p.theta_good_1);
  std::optional<RatioVector> current;
  int t_sign = 0;
  if (p.aes || p.reduced) {
    const EwsTerms ews = build_ews(p, sh);
    current = ews.ratio();
    t_sign = sign_of(ews.triple().t);
  }
  emit(o.out, render_svg(sh, current, t_sign, o.figure));
  return kExitOk;
}

int cmd_oracle(const Options& o) {
  const Params p = load_params(o.params);
  const ModelShares sh = build_shares(p.theta, p.theta_good_1);
  const PrimitiveEconomy econ = build_economy(p, sh);
  const double step = o.step ? *o.step : oracle_step(p);
  const Equilibrium eq = solve_equilibrium(econ);
  const OracleReport rep = verify_against_analytic(econ, step);
  std::printf("oracle: %s economy, step %g\n", to_string(econ.family), step);
  for (const auto& c : rep.comparisons) {
    std::printf("  %-10s analytic %14.8f  finite difference %14.8f  rel. dev %.2e\n", c.name.c_str(), c.analytic,
                c.finite_difference, c.relative_deviation);
  }
  for (const auto& c : rep.reciprocity) {
    std::printf("  %-20s %14.8f vs %14.8f  rel. dev %.2e\n", c.name.c_str(), c.analytic, c.finite_difference,
                c.relative_deviation);
  }
  std::printf("max relative deviation %.3e (threshold %.0e), Rybczynski signs %s: %s\n", rep.max_relative_deviation,
              rep.threshold, rep.rybczynski_signs ? "ok" : "broken", rep.passed ? "PASS" : "FAIL");
  if (!o.json_out.empty()) write_text(o.json_out, serialize(oracle_json(rep, econ, eq)));
  require_agreement(rep);
  return kExitOk;
}

int cmd_audit(const Options& o) {
  const Params p = load_params(o.params);
  const ModelShares sh = build_shares(p.theta, p.theta_good_1);
  const EwsTerms ews = build_ews(p, sh);
  const AuditBundle a = run_audit(sh, ews);
  for (const auto& c : a.identities.checks) {
    std::printf("identity (%s) %-58s %s\n", c.id.c_str(), c.description.c_str(), to_string(c.status));
  }
  std::printf("quadratic: discriminant %.17g vs (x-z)^2 %.17g, roots %.17g, %.17g: %s\n", a.roots.quadratic.discriminant,
              a.roots.quadratic.discriminant_closed_form, a.roots.quadratic.numeric_roots[0],
              a.roots.quadratic.numeric_roots[1], a.roots.all_passed() ? "pass" : "fail");
  const auto& t = a.thompson;
  std::printf("V_T*/p_1*: correct %.12g, alternative %.12g, direct solve %.12g, relative difference %.3e\n", t.route1,
              t.route2, t.direct, t.relative_difference);
  std::printf("g_KT coefficient: alternative %.12g, correct %.12g\n", t.coefficient_route2, t.coefficient_route1);
  if (t.finding) std::printf("FINDING: %s\n", t.finding->c_str());
  if (!o.json_out.empty()) write_text(o.json_out, serialize(audit_json(a)));
  a.identities.require_all();
  a.roots.require_all();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparative statics of a three-factor, two-good economy with imported energy"};
  app.name("ews-statics");
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--params", o.params, "JSON parameter file")->required()->check(CLI::ExistingFile);
    sub->add_option("--json", o.json_out, "write the JSON output to this file");
    sub->add_option("--out", o.out, "output file (CSV for sweep, SVG for plot)");
  };
  auto* validate = app.add_subcommand("validate", "check the parameter file against the model's assumptions");
  auto* report = app.add_subcommand("report", "elasticities, classification and audit as JSON");
  auto* sweep = app.add_subcommand("sweep", "map subregions over a grid of ratio vectors or random AES");
  auto* plot = app.add_subcommand("plot", "draw the ratio-plane figure as SVG");
  auto* oracle = app.add_subcommand("oracle", "compare analytic elasticities with a solved primitive economy");
  auto* audit = app.add_subcommand("audit", "closed-form identities, boundary quadratic and the alternative formula");
  for (auto* sub : {validate, report, sweep, plot, oracle, audit}) common(sub);
  sweep->add_option("--grid", o.grid, "ratio:MIN:MAX:STEP | ratio:SMIN:SMAX:UMIN:UMAX:STEP | aes:N")
      ->default_val(kDefaultGrid);
  sweep->add_option("--seed", o.seed, "seed for aes:N grids")->default_val(1);
  plot->add_option("--figure", o.figure, "1: energy-price lines, 2: commodity-price line")
      ->default_val(1)
      ->check(CLI::IsMember({1, 2}));
  double step = 0.0;
  oracle->add_option("--step", step, "finite-difference step in logs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (oracle->count("--step") > 0) o.step = step;

  try {
    if (*validate) return cmd_validate(o);
    if (*report) return cmd_report(o);
    if (*sweep) return cmd_sweep(o);
    if (*plot) return cmd_plot(o);
    if (*oracle) return cmd_oracle(o);
    if (*audit) return cmd_audit(o);
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_internal(e.code()) ? kExitInternal : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
