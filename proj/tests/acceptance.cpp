#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ews/audit.hpp"
#include "ews/comparative_statics.hpp"
#include "ews/linear_system.hpp"
#include "ews/oracle.hpp"
#include "ews/sampling.hpp"

using namespace ews;

namespace {

constexpr int kDraws = 10000;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
  double limit_seconds = 0.0;  // 0 = no runtime bound
};

ModelShares cp1() { return build_shares(canonical_share_table(), kCanonicalThetaGood1); }

EwsTerms with_aes(const ModelShares& sh, const OffDiagonalAes& a1, const OffDiagonalAes& a2) {
  return compute_ews(sh, build_sector_aes(Sector::One, a1, sh), build_sector_aes(Sector::Two, a2, sh));
}

EwsTerms cp1_unit(const ModelShares& sh) { return with_aes(sh, {}, {}); }

bool rel_close(double value, double target, double rel) {
  return std::fabs(value - target) <= rel * std::fabs(target);
}

template <class F>
void for_each_draw(F&& f) {
  DrawSampler gen(kSeed);
  for (int i = 0; i < kDraws; ++i) f(i, gen.next());
}

Outcome invariants() {
  int failures = 0;
  for_each_draw([&](int, const Draw& d) {
    const auto& sh = d.shares;
    const auto& g = d.ews;
    bool ok = true;
    for (Factor a : kFactors) {
      double row = 0.0;
      for (Factor b : kFactors) {
        row += g.g(a, b);
        ok = ok && approx_equal(sh.theta_factor(a) * g.g(a, b), sh.theta_factor(b) * g.g(b, a), 1e-12);
      }
      ok = ok && std::fabs(row) < 1e-12 && g.g(a, a) < 0.0;
    }
    const EwsTriple stu = g.triple();
    ok = ok && (stu.s < 0) + (stu.t < 0) + (stu.u < 0) <= 1;
    if (auto r = g.ratio()) ok = ok && ratio_feasible(*r, sign_of(stu.t), sh);
    const double delta = delta_closed_form(sh);
    ok = ok && delta < 0.0 && approx_equal(determinant<5>(assemble(sh, g).coefficients), delta, 1e-10);
    failures += !ok;
  });
  std::ostringstream os;
  os << kDraws << " draws, " << failures << " failures";
  return {failures == 0, os.str(), 10.0};
}

Outcome solver_equivalence() {
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int failures = 0;
  double worst = 0.0;
  double worst_residual = 0.0;
  for_each_draw([&](int, const Draw& d) {
    const HatSystem sys = assemble(d.shares, d.ews);
    const Shock shock{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const HatSolution sol = solve(sys, cofactors(d.shares, d.ews), shock);
    bool ok = sol.zero_profit_residual < 1e-10;
    for (std::size_t k = 0; k < 5; ++k) {
      const double scale = std::max(std::fabs(sol.elimination[k]), kAbsFloor);
      worst = std::max(worst, std::fabs(sol.elimination[k] - sol.cramer[k]) / scale);
      ok = ok && approx_equal(sol.elimination[k], sol.cramer[k], 1e-9);
    }
    worst_residual = std::max(worst_residual, sol.zero_profit_residual);
    failures += !ok;
  });
  std::ostringstream os;
  os << kDraws << " draws, " << failures << " failures, max relative gap " << worst << ", max zero-profit residual "
     << worst_residual;
  return {failures == 0, os.str()};
}

Outcome identities() {
  int failures = 0;
  std::string first;
  auto run = [&](const ModelShares& sh, const EwsTerms& g, const std::string& tag) {
    if (verify_identities(sh, g).all_passed() && verify_quadratic(sh).all_passed()) return;
    if (failures++ == 0) first = tag;
  };
  const ModelShares c = cp1();
  run(c, cp1_unit(c), "CP1");
  for_each_draw([&](int i, const Draw& d) { run(d.shares, d.ews, "draw " + std::to_string(i)); });
  std::ostringstream os;
  os << kDraws + 1 << " cases, " << failures << " failures";
  if (failures) os << ", first at " << first;
  return {failures == 0, os.str()};
}

Outcome theorem1() {
  int eligible = 0;
  int violations = 0;
  for_each_draw([&](int, const Draw& d) {
    const EwsTriple stu = d.ews.triple();
    if (!(stu.s > 0.0 && stu.t > 0.0 && stu.u < 0.0)) return;
    ++eligible;
    const EnergyPriceEffects e = energy_price_effects(d.shares, d.ews, cofactors(d.shares, d.ews));
    violations += !(e.x1 < 0.0 && e.x2 > 0.0);
  });
  std::ostringstream os;
  os << eligible << " draws with (S,T,U) = (+,+,-), " << violations << " violations";
  return {violations == 0 && eligible > 0, os.str()};
}

Outcome theorem2_witness() {
  const ModelShares sh = cp1();
  const EwsTerms g = with_aes(sh, {-0.42105, 1.0, 0.95}, {-0.42105, 1.3, 0.95});
  const StaticsReport r = analyze(sh, g);
  const double v = r.prices.x1_p2;
  bool ok = v > 0.0 && rel_close(v, 0.0800, 1e-3) && rel_close(v, 0.07997, 1e-9);
  std::ostringstream os;
  os << "X1/p2 = " << v;
  if (r.classification) {
    ok = ok && r.classification->commodity == CommoditySubregion::Pb &&
         r.classification->quadrant.quadrant == Quadrant::II;
    os << ", " << to_string(r.classification->commodity) << ", quadrant "
       << to_string(r.classification->quadrant.quadrant);
  } else {
    ok = false;
    os << ", unclassified";
  }
  return {ok, os.str()};
}

Outcome cp1_values() {
  const ModelShares sh = cp1();
  const StaticsReport r = analyze(sh, cp1_unit(sh));
  bool ok = rel_close(r.energy_price.x1, -6.0, 1e-9) && rel_close(r.energy_price.x2, 3.75, 1e-9) &&
            rel_close(r.prices.x1_p2, -16.0, 1e-9) && rel_close(r.energy_imports.vt_p1, 10.0, 1e-9) &&
            rel_close(r.delta, -4.0 / 195.0, 1e-9);
  ok = ok && r.classification && r.classification->energy == EnergySubregion::P1;
  std::ostringstream os;
  os.precision(12);
  os << "X1/wT = " << r.energy_price.x1 << ", X2/wT = " << r.energy_price.x2 << ", X1/p2 = " << r.prices.x1_p2
     << ", VT/p1 = " << r.energy_imports.vt_p1 << ", delta = " << r.delta << ", "
     << (r.classification ? to_string(r.classification->energy) : "unclassified");
  return {ok, os.str()};
}

Outcome oracle_agreement() {
  const ModelShares sh = cp1();
  const OracleReport cd = verify_against_analytic(calibrate_economy(sh, Technology::CobbDouglas, 1.0), 1e-4);
  const OracleReport ces = verify_against_analytic(calibrate_economy(sh, Technology::Ces, 0.5), 1e-4);
  std::ostringstream os;
  os << "Cobb-Douglas max deviation " << cd.max_relative_deviation << ", CES(0.5) max deviation "
     << ces.max_relative_deviation << ", Rybczynski " << (cd.rybczynski_signs && ces.rybczynski_signs ? "ok" : "bad")
     << ", reciprocity max "
     << std::max({cd.reciprocity[0].relative_deviation, cd.reciprocity[1].relative_deviation,
                  ces.reciprocity[0].relative_deviation, ces.reciprocity[1].relative_deviation});
  return {cd.passed && ces.passed, os.str(), 5.0};
}

Outcome thompson() {
  const ModelShares sh = cp1();
  const DiscrepancyReport c = thompson_discrepancy(sh, cp1_unit(sh));
  bool ok = c.formulas_differ && c.route1_vs_direct < 1e-9;
  int differ = 0;
  int direct_failures = 0;
  for_each_draw([&](int, const Draw& d) {
    const DiscrepancyReport t = thompson_discrepancy(d.shares, d.ews);
    differ += t.formulas_differ;
    direct_failures += !(t.route1_vs_direct < 1e-9);
  });
  ok = ok && differ * 100 >= kDraws * 99 && direct_failures == 0;
  std::ostringstream os;
  os << "CP1 route1 " << c.route1 << " vs route2 " << c.route2 << "; differ on " << differ << "/" << kDraws
     << " draws; route1 off the direct solve on " << direct_failures;
  return {ok, os.str()};
}

Outcome sign_scan(const std::string& artifact) {
  std::ofstream out(artifact);
  out << "draw,S,T,U,x1_p1\n";
  out.precision(17);
  int counterexamples = 0;
  for_each_draw([&](int i, const Draw& d) {
    const PriceEffects p = commodity_price_effects(d.shares, d.ews, cofactors(d.shares, d.ews));
    if (p.x1_p1 > 0.0) return;
    ++counterexamples;
    const EwsTriple stu = d.ews.triple();
    out << i << ',' << stu.s << ',' << stu.t << ',' << stu.u << ',' << p.x1_p1 << '\n';
  });
  std::ostringstream os;
  os << kDraws << " draws, " << counterexamples << " counterexamples (listed in " << artifact << ")";
  return {counterexamples == 0 && out.good(), os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string artifact = argc > 1 ? argv[1] : "sign_claim_scan.csv";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"invariant suite", invariants},
      {"solver equivalence", solver_equivalence},
      {"identity suite", identities},
      {"energy-price signs under (+,+,-)", theorem1},
      {"positive cross-price witness", theorem2_witness},
      {"canonical fixture", cp1_values},
      {"oracle agreement", oracle_agreement},
      {"route discrepancy audit", thompson},
      {"own-price sign scan", [&] { return sign_scan(artifact); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.limit_seconds > 0.0 && seconds >= o.limit_seconds) {
      o.pass = false;
      o.detail += ", over the runtime limit";
    }
    failed += !o.pass;
    std::printf("%s criterion %zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
