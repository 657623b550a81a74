#include "ews/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ews {

namespace {

struct CostEval {
  double log_cost = 0.0;
  std::array<double, 3> shares{};  // cost shares, indexed by Factor
};

CostEval unit_cost(const SectorTechnology& tech, Technology family, const std::array<double, 3>& log_w) {
  CostEval out;
  if (family == Technology::CobbDouglas) {
    out.log_cost = -std::log(tech.scale);
    for (std::size_t i = 0; i < 3; ++i) {
      out.log_cost += tech.weights[i] * (log_w[i] - std::log(tech.weights[i]));
      out.shares[i] = tech.weights[i];
    }
    return out;
  }
  // Weights sum to one, so sum_i b_i w_i^r = 1 + sum_i b_i expm1(r log w_i).
  const double r = 1.0 - tech.elasticity;
  double m = 0.0;
  std::array<double, 3> terms{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double e = std::expm1(r * log_w[i]);
    m += tech.weights[i] * e;
    terms[i] = tech.weights[i] * (1.0 + e);
  }
  out.log_cost = -std::log(tech.scale) + std::log1p(m) / r;
  for (std::size_t i = 0; i < 3; ++i) out.shares[i] = terms[i] / (1.0 + m);
  return out;
}

void validate(const PrimitiveEconomy& econ) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(econ.v_k) || !positive(econ.v_l) || !positive(econ.p1) || !positive(econ.p2) ||
      !positive(econ.w_t)) {
    throw ModelError(ErrorCode::InvalidInput, "endowments and prices must be positive");
  }
  for (const auto& s : econ.sectors) {
    double sum = 0.0;
    for (double w : s.weights) {
      if (!positive(w)) throw ModelError(ErrorCode::InvalidInput, "technology weights must be positive");
      sum += w;
    }
    if (std::fabs(sum - 1.0) > kColumnSumTolerance) {
      throw ModelError(ErrorCode::InvalidInput, "technology weights must sum to one");
    }
    if (!positive(s.scale)) throw ModelError(ErrorCode::InvalidInput, "technology scale must be positive");
    if (econ.family == Technology::Ces && (!positive(s.elasticity) || s.elasticity == 1.0)) {
      throw ModelError(ErrorCode::InvalidInput, "CES elasticity must be positive and different from one");
    }
  }
}

std::array<double, 2> price_residual(const PrimitiveEconomy& econ, const std::array<double, 3>& log_w,
                                     std::array<CostEval, 2>& evals) {
  const std::array<double, 2> log_p{std::log(econ.p1), std::log(econ.p2)};
  std::array<double, 2> f{};
  for (std::size_t j = 0; j < 2; ++j) {
    evals[j] = unit_cost(econ.sectors[j], econ.family, log_w);
    f[j] = evals[j].log_cost - log_p[j];
  }
  return f;
}

double norm_inf(const std::array<double, 2>& f) { return std::max(std::fabs(f[0]), std::fabs(f[1])); }

}  // namespace

const char* to_string(Technology t) { return t == Technology::CobbDouglas ? "cobb_douglas" : "ces"; }

PrimitiveEconomy calibrate_economy(const ModelShares& shares, Technology family, double elasticity) {
  PrimitiveEconomy econ;
  econ.family = family;
  for (Sector s : kSectors) {
    auto& tech = econ.sectors[idx(s)];
    double log_scale = 0.0;
    for (Factor f : kFactors) {
      const double b = shares.theta(f, s);
      tech.weights[idx(f)] = b;
      log_scale -= b * std::log(b);
    }
    tech.scale = family == Technology::CobbDouglas ? std::exp(log_scale) : 1.0;
    tech.elasticity = family == Technology::CobbDouglas ? 1.0 : elasticity;
  }
  econ.v_k = shares.theta_factor(Factor::K);
  econ.v_l = shares.theta_factor(Factor::L);
  econ.p1 = econ.p2 = econ.w_t = 1.0;
  return econ;
}

Equilibrium solve_equilibrium(const PrimitiveEconomy& econ) {
  validate(econ);
  Equilibrium eq;
  std::array<double, 3> log_w{std::log(econ.w_t), std::log(econ.w_t), std::log(econ.w_t)};
  std::array<CostEval, 2> evals{};

  if (econ.family == Technology::CobbDouglas) {
    // log p_j + log scale_j + sum_i b_ij log b_ij - b_Tj log w_T = b_Kj log w_K + b_Lj log w_L
    std::array<double, 2> rhs{};
    const std::array<double, 2> log_p{std::log(econ.p1), std::log(econ.p2)};
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& b = econ.sectors[j].weights;
      double acc = log_p[j] + std::log(econ.sectors[j].scale) - b[idx(Factor::T)] * log_w[idx(Factor::T)];
      for (double bi : b) acc += bi * std::log(bi);
      rhs[j] = acc;
    }
    const auto& b1 = econ.sectors[0].weights;
    const auto& b2 = econ.sectors[1].weights;
    const double det = b1[idx(Factor::K)] * b2[idx(Factor::L)] - b1[idx(Factor::L)] * b2[idx(Factor::K)];
    if (det == 0.0) throw ModelError(ErrorCode::NoEquilibrium, "unit-cost system is singular");
    log_w[idx(Factor::K)] = (rhs[0] * b2[idx(Factor::L)] - b1[idx(Factor::L)] * rhs[1]) / det;
    log_w[idx(Factor::L)] = (b1[idx(Factor::K)] * rhs[1] - rhs[0] * b2[idx(Factor::K)]) / det;
  } else {
    auto f = price_residual(econ, log_w, evals);
    double norm = norm_inf(f);
    constexpr double kTarget = 4.0 * std::numeric_limits<double>::epsilon();
    int it = 0;
    for (; it < kMaxNewtonIterations && norm > kTarget; ++it) {
      // d log c_j / d log w_i is the cost share theta_ij.
      const double jk1 = evals[0].shares[idx(Factor::K)], jl1 = evals[0].shares[idx(Factor::L)];
      const double jk2 = evals[1].shares[idx(Factor::K)], jl2 = evals[1].shares[idx(Factor::L)];
      const double det = jk1 * jl2 - jl1 * jk2;
      if (det == 0.0) throw ModelError(ErrorCode::NoEquilibrium, "singular Newton Jacobian");
      const double dk = (-f[0] * jl2 + jl1 * f[1]) / det;
      const double dl = (-jk1 * f[1] + f[0] * jk2) / det;

      double damping = 1.0;
      bool improved = false;
      for (int halvings = 0; halvings < 60; ++halvings, damping *= 0.5) {
        auto trial = log_w;
        trial[idx(Factor::K)] += damping * dk;
        trial[idx(Factor::L)] += damping * dl;
        std::array<CostEval, 2> trial_evals{};
        const auto tf = price_residual(econ, trial, trial_evals);
        if (norm_inf(tf) < norm) {
          log_w = trial;
          evals = trial_evals;
          f = tf;
          norm = norm_inf(tf);
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    eq.iterations = it;
    if (!(norm < 1e-12)) {
      std::ostringstream msg;
      msg << "Newton stopped after " << it << " iterations with residual " << norm;
      throw ModelError(ErrorCode::NoEquilibrium, msg.str());
    }
  }

  price_residual(econ, log_w, evals);
  eq.w_k = std::exp(log_w[idx(Factor::K)]);
  eq.w_l = std::exp(log_w[idx(Factor::L)]);
  const std::array<double, 3> w{econ.w_t, eq.w_k, eq.w_l};
  const std::array<double, 2> p{econ.p1, econ.p2};
  for (std::size_t j = 0; j < 2; ++j) {
    const double cost = std::exp(evals[j].log_cost);
    double spend = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      eq.input_output[i][j] = evals[j].shares[i] * cost / w[i];
      spend += eq.input_output[i][j] * w[i];
    }
    eq.zero_profit_residual = std::max(eq.zero_profit_residual, std::fabs(spend - p[j]) / p[j]);
  }

  const auto& a = eq.input_output;
  const double ak1 = a[idx(Factor::K)][0], ak2 = a[idx(Factor::K)][1];
  const double al1 = a[idx(Factor::L)][0], al2 = a[idx(Factor::L)][1];
  const double det = ak1 * al2 - ak2 * al1;
  if (det == 0.0) throw ModelError(ErrorCode::NoEquilibrium, "full-employment system is singular");
  eq.x1 = (econ.v_k * al2 - ak2 * econ.v_l) / det;
  eq.x2 = (ak1 * econ.v_l - econ.v_k * al1) / det;
  eq.v_t = a[idx(Factor::T)][0] * eq.x1 + a[idx(Factor::T)][1] * eq.x2;
  if (!(eq.x1 > 0.0 && eq.x2 > 0.0 && eq.v_t > 0.0 && eq.w_k > 0.0 && eq.w_l > 0.0)) {
    std::ostringstream msg;
    msg << "nonpositive outcome: X1 = " << eq.x1 << ", X2 = " << eq.x2 << ", V_T = " << eq.v_t;
    throw ModelError(ErrorCode::NoEquilibrium, msg.str());
  }
  eq.full_employment_residual =
      std::max(std::fabs(ak1 * eq.x1 + ak2 * eq.x2 - econ.v_k) / econ.v_k,
               std::fabs(al1 * eq.x1 + al2 * eq.x2 - econ.v_l) / econ.v_l);
  if (!(eq.zero_profit_residual < kEquilibriumTolerance && eq.full_employment_residual < kEquilibriumTolerance)) {
    throw ModelError(ErrorCode::NoEquilibrium, "equilibrium residuals exceed tolerance");
  }
  return eq;
}

ShareTable Equilibrium::implied_theta(const PrimitiveEconomy& econ) const {
  const std::array<double, 3> w{econ.w_t, w_k, w_l};
  const std::array<double, 2> p{econ.p1, econ.p2};
  ShareTable t{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) t[i][j] = input_output[i][j] * w[i] / p[j];
  }
  return t;
}

double Equilibrium::implied_theta_good_1(const PrimitiveEconomy& econ) const {
  return econ.p1 * x1 / (econ.p1 * x1 + econ.p2 * x2);
}

ImpliedStructure implied_structure(const PrimitiveEconomy& econ, const Equilibrium& eq) {
  ModelShares shares = build_shares(eq.implied_theta(econ), eq.implied_theta_good_1(econ));
  auto aes_for = [&](Sector s) {
    const double e = econ.family == Technology::CobbDouglas ? 1.0 : econ.sectors[idx(s)].elasticity;
    return build_sector_aes(s, OffDiagonalAes{e, e, e}, shares);
  };
  SectorAes s1 = aes_for(Sector::One);
  SectorAes s2 = aes_for(Sector::Two);
  EwsTerms ews = compute_ews(shares, s1, s2);
  return ImpliedStructure{shares, s1, s2, ews};
}

FiniteDifferenceTable finite_difference_elasticities(const PrimitiveEconomy& econ, double step) {
  if (!(step > 0.0)) throw ModelError(ErrorCode::InvalidInput, "finite-difference step must be positive");
  FiniteDifferenceTable table;
  table.step = step;
  for (std::size_t k = 0; k < 5; ++k) {
    auto perturbed = [&](double factor) {
      PrimitiveEconomy e = econ;
      double* target = nullptr;
      switch (k) {
        case kShockWt: target = &e.w_t; break;
        case kShockP1: target = &e.p1; break;
        case kShockP2: target = &e.p2; break;
        case kShockVk: target = &e.v_k; break;
        default: target = &e.v_l; break;
      }
      *target *= factor;
      return solve_equilibrium(e);
    };
    const Equilibrium up = perturbed(std::exp(step));
    const Equilibrium down = perturbed(std::exp(-step));
    auto d = [&](double a, double b) { return (std::log(a) - std::log(b)) / (2.0 * step); };
    auto& r = table.by_shock[k];
    r.x1 = d(up.x1, down.x1);
    r.x2 = d(up.x2, down.x2);
    r.v_t = d(up.v_t, down.v_t);
    r.w_k = d(up.w_k, down.w_k);
    r.w_l = d(up.w_l, down.w_l);
  }
  return table;
}

OracleReport verify_against_analytic(const PrimitiveEconomy& econ, double step, double threshold) {
  const Equilibrium eq = solve_equilibrium(econ);
  const ImpliedStructure imp = implied_structure(econ, eq);
  const StaticsReport statics = analyze(imp.shares, imp.ews);
  const HatSystem sys = assemble(imp.shares, imp.ews);
  const FiniteDifferenceTable fd = finite_difference_elasticities(econ, step);

  OracleReport rep;
  rep.step = step;
  rep.threshold = threshold;
  const std::array<Shock, 5> shocks{Shock{.w_t = 1.0}, Shock{.p1 = 1.0}, Shock{.p2 = 1.0}, Shock{.v_k = 1.0},
                                    Shock{.v_l = 1.0}};
  const std::array<std::array<double, 2>, 5> analytic_outputs{{
      {statics.energy_price.x1, statics.energy_price.x2},
      {statics.prices.x1_p1, statics.prices.x2_p1},
      {statics.prices.x1_p2, statics.prices.x2_p2},
      {statics.endowments.x1_vk, statics.endowments.x2_vk},
      {statics.endowments.x1_vl, statics.endowments.x2_vl},
  }};
  auto add = [&](std::string name, double analytic, double numeric) {
    OracleComparison c{std::move(name), analytic, numeric, relative_difference(analytic, numeric)};
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, c.relative_deviation);
    rep.comparisons.push_back(std::move(c));
  };
  for (std::size_t k = 0; k < 5; ++k) {
    const std::string z = kShockNames[k];
    add("X1/" + z, analytic_outputs[k][0], fd.by_shock[k].x1);
    add("X2/" + z, analytic_outputs[k][1], fd.by_shock[k].x2);
    const double vt = solve(sys, statics.cofactors, shocks[k]).elimination[kEnergyImports];
    add("V_T/" + z, vt, fd.by_shock[k].v_t);
  }

  const double th_t = imp.shares.theta_factor(Factor::T);
  const double th_1 = imp.shares.theta_good(Sector::One);
  const double th_2 = imp.shares.theta_good(Sector::Two);
  const double rec1 = -(th_1 / th_t) * fd.by_shock[kShockWt].x1;
  const double rec2 = -(th_2 / th_t) * fd.by_shock[kShockWt].x2;
  rep.reciprocity[0] = {"V_T/p1 reciprocity", rec1, fd.by_shock[kShockP1].v_t,
                        relative_difference(rec1, fd.by_shock[kShockP1].v_t)};
  rep.reciprocity[1] = {"V_T/p2 reciprocity", rec2, fd.by_shock[kShockP2].v_t,
                        relative_difference(rec2, fd.by_shock[kShockP2].v_t)};

  rep.rybczynski_signs = fd.by_shock[kShockVk].x1 < 0.0 && fd.by_shock[kShockVl].x1 > 0.0 &&
                         fd.by_shock[kShockVk].x2 > 0.0 && fd.by_shock[kShockVl].x2 < 0.0;
  rep.passed = rep.max_relative_deviation <= threshold && rep.reciprocity[0].relative_deviation <= threshold &&
               rep.reciprocity[1].relative_deviation <= threshold && rep.rybczynski_signs;
  return rep;
}

void require_agreement(const OracleReport& report) {
  if (report.passed) return;
  std::ostringstream msg;
  msg << "max relative deviation " << report.max_relative_deviation << " (threshold " << report.threshold
      << "), reciprocity " << report.reciprocity[0].relative_deviation << "/"
      << report.reciprocity[1].relative_deviation << ", Rybczynski signs "
      << (report.rybczynski_signs ? "ok" : "broken");
  throw ModelError(ErrorCode::OracleMismatch, msg.str());
}

}  // namespace ews
