#include "ews/comparative_statics.hpp"

#include <sstream>

namespace ews {

namespace {

void expect_close(ErrorCode code, const char* what, double a, double b, double tol) {
  if (!approx_equal(a, b, tol)) {
    std::ostringstream msg;
    msg << what << ": " << a << " vs " << b;
    throw ModelError(code, msg.str());
  }
}

}  // namespace

EnergyPriceEffects energy_price_effects(const ModelShares& sh, const EwsTerms& ews, const CofactorSet& cof) {
  EnergyPriceEffects e{-cof.ct1 / cof.delta, cof.ct2 / cof.delta};
  if (auto r = ews.ratio()) {
    const Geometry geo = geometry(sh);
    const double t = ews.triple().t;
    const double e_gap = sh.gap().labor;
    const double f1 = -e_gap * sh.lambda(Factor::L, Sector::Two) * t * (r->u_prime - geo.t1.at(r->s_prime)) / cof.delta;
    const double f2 = e_gap * sh.lambda(Factor::L, Sector::One) * t * (r->u_prime - geo.t2.at(r->s_prime)) / cof.delta;
    expect_close(ErrorCode::ExpansionMismatch, "X_1*/w_T* factored form", e.x1, f1, kStaticsTolerance);
    expect_close(ErrorCode::ExpansionMismatch, "X_2*/w_T* factored form", e.x2, f2, kStaticsTolerance);
  }
  return e;
}

PriceEffects commodity_price_effects(const ModelShares& sh, const EwsTerms& ews, const CofactorSet& cof) {
  PriceEffects p;
  p.x1_p1 = -cof.c11 / cof.delta;
  p.x1_p2 = cof.c21 / cof.delta;
  p.x2_p1 = cof.c12 / cof.delta;
  p.x2_p2 = -cof.c22 / cof.delta;
  if (auto r = ews.ratio()) {
    const Geometry geo = geometry(sh);
    const double c = cross_price_coefficients(sh).c;
    const double factored = c * ews.triple().t * (r->u_prime - geo.l21.at(r->s_prime)) / cof.delta;
    expect_close(ErrorCode::ExpansionMismatch, "X_1*/p_2* factored form", p.x1_p2, factored, kStaticsTolerance);
  }
  return p;
}

EndowmentEffects endowment_effects(const ModelShares&, const EwsTerms&, const CofactorSet& cof) {
  EndowmentEffects e;
  e.x1_vk = -cof.ck1 / cof.delta;
  e.x1_vl = cof.cl1 / cof.delta;
  e.x2_vk = cof.ck2 / cof.delta;
  e.x2_vl = -cof.cl2 / cof.delta;
  if (!(e.x1_vk < 0.0 && e.x1_vl > 0.0 && e.x2_vk > 0.0 && e.x2_vl < 0.0)) {
    std::ostringstream msg;
    msg << "endowment effects (" << e.x1_vk << ", " << e.x1_vl << ", " << e.x2_vk << ", " << e.x2_vl
        << ") break the (-, +, +, -) pattern";
    throw ModelError(ErrorCode::SignContractViolation, msg.str());
  }
  return e;
}

EnergyImportEffects energy_import_effects(const ModelShares& sh, const EwsTerms& ews, const CofactorSet& cof,
                                          const EnergyPriceEffects& energy) {
  const double th_t = sh.theta_factor(Factor::T);
  EnergyImportEffects v;
  v.vt_p1 = -(sh.theta_good(Sector::One) / th_t) * energy.x1;
  v.vt_p2 = -(sh.theta_good(Sector::Two) / th_t) * energy.x2;

  const HatSystem sys = assemble(sh, ews);
  const double direct1 = solve(sys, cof, Shock{.p1 = 1.0}).elimination[kEnergyImports];
  const double direct2 = solve(sys, cof, Shock{.p2 = 1.0}).elimination[kEnergyImports];
  expect_close(ErrorCode::ReciprocityViolation, "V_T*/p_1*", v.vt_p1, direct1, kRouteTolerance);
  expect_close(ErrorCode::ReciprocityViolation, "V_T*/p_2*", v.vt_p2, direct2, kRouteTolerance);
  return v;
}

const char* to_string(LineLabel l) {
  switch (l) {
    case LineLabel::T1: return "T1";
    case LineLabel::T2: return "T2";
    case LineLabel::L21: return "21";
  }
  return "?";
}

Geometry geometry(const ModelShares& sh) {
  const auto& gap = sh.gap();
  const double th_k = sh.theta_factor(Factor::K);
  const double th_l = sh.theta_factor(Factor::L);
  const double tt1 = sh.theta(Factor::T, Sector::One);
  const double tt2 = sh.theta(Factor::T, Sector::Two);
  const double tk1 = sh.theta(Factor::K, Sector::One);
  const double tk2 = sh.theta(Factor::K, Sector::Two);
  const double tl1 = sh.theta(Factor::L, Sector::One);
  const double tl2 = sh.theta(Factor::L, Sector::Two);
  const double el2 = gap.labor * sh.lambda(Factor::L, Sector::Two);
  const double el1 = gap.labor * sh.lambda(Factor::L, Sector::One);

  Geometry g;
  g.t1 = {LineLabel::T1, gap.energy * (1.0 - tt2) * (sh.theta_good(Sector::Two) / th_k) / el2,
          -gap.capital * sh.lambda(Factor::K, Sector::Two) / el2};
  g.t2 = {LineLabel::T2, gap.energy * (1.0 - tt1) * (sh.theta_good(Sector::One) / th_k) / el1,
          -gap.capital * sh.lambda(Factor::K, Sector::One) / el1};
  const auto k = cross_price_coefficients(sh);
  g.l21 = {LineLabel::L21, -k.a / k.c, -k.b / k.c};

  g.points.q = {gap.capital / gap.energy, gap.capital * th_l / (gap.labor * th_k)};
  g.points.r_t1 = {-tk2 / (1.0 - tt2), tk2 * th_l / (tl2 * th_k)};
  g.points.r_t2 = {-tk1 / (1.0 - tt1), tk1 * th_l / (tl1 * th_k)};

  const auto& p = g.points;
  auto on = [&](const char* what, double a, double b) {
    expect_close(ErrorCode::IncidenceViolation, what, a, b, kStaticsTolerance);
  };
  on("line T1 through Q", g.t1.at(p.q.s_prime), p.q.u_prime);
  on("line T2 through Q", g.t2.at(p.q.s_prime), p.q.u_prime);
  on("line T1 through R_T1", g.t1.at(p.r_t1.s_prime), p.r_t1.u_prime);
  on("line T2 through R_T2", g.t2.at(p.r_t2.s_prime), p.r_t2.u_prime);
  on("boundary through R_T1", boundary_value(p.r_t1.s_prime, sh), p.r_t1.u_prime);
  on("boundary through R_T2", boundary_value(p.r_t2.s_prime, sh), p.r_t2.u_prime);
  on("line 21 through R_T1", g.l21.at(p.r_t1.s_prime), p.r_t1.u_prime);
  on("line 21 through R_T2", g.l21.at(p.r_t2.s_prime), p.r_t2.u_prime);
  if (!(p.q.s_prime < 0.0 && p.q.u_prime < 0.0 && p.r_t1.s_prime < 0.0 && p.r_t1.u_prime > 0.0 &&
        p.r_t2.s_prime < 0.0 && p.r_t2.u_prime > 0.0 && p.r_t1.u_prime > p.r_t2.u_prime && g.l21.slope < 0.0 &&
        g.l21.intercept < 0.0)) {
    throw ModelError(ErrorCode::IncidenceViolation, "key points or line 21 have unexpected signs");
  }
  return g;
}

const char* to_string(EnergySubregion r) {
  switch (r) {
    case EnergySubregion::P1: return "P1";
    case EnergySubregion::P2: return "P2";
    case EnergySubregion::P3: return "P3";
    case EnergySubregion::M1: return "M1";
    case EnergySubregion::M2: return "M2";
    case EnergySubregion::M3: return "M3";
  }
  return "?";
}

const char* to_string(CommoditySubregion r) {
  switch (r) {
    case CommoditySubregion::Pa: return "Pa";
    case CommoditySubregion::Pb: return "Pb";
    case CommoditySubregion::Ma: return "Ma";
  }
  return "?";
}

std::array<int, 2> predicted_energy_signs(EnergySubregion r) {
  switch (r) {
    case EnergySubregion::P1:
    case EnergySubregion::M1: return {-1, +1};
    case EnergySubregion::P2:
    case EnergySubregion::M2: return {-1, -1};
    case EnergySubregion::P3:
    case EnergySubregion::M3: return {+1, -1};
  }
  return {0, 0};
}

int predicted_cross_sign(CommoditySubregion r) { return r == CommoditySubregion::Pb ? +1 : -1; }

RegionProbe probe_regions(const Geometry& geo, const RatioVector& r, int t_sign) {
  RegionProbe p;
  p.t_sign = t_sign;
  p.gap_t1 = r.u_prime - geo.t1.at(r.s_prime);
  p.gap_t2 = r.u_prime - geo.t2.at(r.s_prime);
  p.gap_21 = r.u_prime - geo.l21.at(r.s_prime);
  p.energy_boundary = std::fabs(p.gap_t1) < kBorderTolerance || std::fabs(p.gap_t2) < kBorderTolerance;
  p.commodity_boundary = std::fabs(p.gap_21) < kBorderTolerance;

  if (!p.energy_boundary) {
    const int a = sign_of(p.gap_t1);
    const int b = sign_of(p.gap_t2);
    if (t_sign > 0) {
      if (a < 0 && b < 0) p.energy = EnergySubregion::P1;
      else if (a < 0 && b > 0) p.energy = EnergySubregion::P2;
      else if (a > 0 && b > 0) p.energy = EnergySubregion::P3;
    } else if (t_sign < 0) {
      if (a > 0 && b > 0) p.energy = EnergySubregion::M1;
      else if (a > 0 && b < 0) p.energy = EnergySubregion::M2;
      else if (a < 0 && b < 0) p.energy = EnergySubregion::M3;
    }
  }
  if (!p.commodity_boundary) {
    const int c = sign_of(p.gap_21);
    if (t_sign > 0) p.commodity = c > 0 ? CommoditySubregion::Pa : CommoditySubregion::Pb;
    else if (t_sign < 0 && c < 0) p.commodity = CommoditySubregion::Ma;
  }
  return p;
}

Classification classify(const ModelShares& sh, const EwsTerms& ews) {
  const RatioVector r = ews.require_ratio();
  const auto stu = ews.triple();
  const Geometry geo = geometry(sh);
  const RegionProbe probe = probe_regions(geo, r, sign_of(stu.t));
  if (probe.energy_boundary || probe.commodity_boundary) {
    std::ostringstream msg;
    msg << "ratio vector (" << r.s_prime << ", " << r.u_prime << ") lies on a border line (U'-f_T1 = "
        << probe.gap_t1 << ", U'-f_T2 = " << probe.gap_t2 << ", U'-f_21 = " << probe.gap_21 << ")";
    throw ModelError(ErrorCode::BoundaryAmbiguity, msg.str());
  }
  if (!probe.energy || !probe.commodity) {
    std::ostringstream msg;
    msg << "sign pattern (T " << probe.t_sign << "; " << sign_of(probe.gap_t1) << ", " << sign_of(probe.gap_t2)
        << "; " << sign_of(probe.gap_21) << ") matches no subregion";
    throw ModelError(ErrorCode::UnmappedRegion, msg.str());
  }

  Classification c;
  c.ratio = r;
  c.quadrant = quadrant_of(r);
  c.energy = *probe.energy;
  c.commodity = *probe.commodity;
  c.predicted_energy = predicted_energy_signs(c.energy);
  c.predicted_cross = predicted_cross_sign(c.commodity);
  c.theorem1 = stu.s > 0.0 && stu.t > 0.0 && stu.u < 0.0;
  c.theorem2 = c.commodity == CommoditySubregion::Pb;
  c.gap_t1 = probe.gap_t1;
  c.gap_t2 = probe.gap_t2;
  c.gap_21 = probe.gap_21;
  return c;
}

StaticsReport analyze(const ModelShares& sh, const EwsTerms& ews) {
  StaticsReport rep;
  rep.cofactors = cofactors(sh, ews);
  rep.delta = rep.cofactors.delta;
  rep.energy_price = energy_price_effects(sh, ews, rep.cofactors);
  rep.prices = commodity_price_effects(sh, ews, rep.cofactors);
  rep.endowments = endowment_effects(sh, ews, rep.cofactors);
  rep.energy_imports = energy_import_effects(sh, ews, rep.cofactors, rep.energy_price);
  rep.geo = geometry(sh);
  try {
    rep.classification = classify(sh, ews);
  } catch (const ModelError& e) {
    if (e.code() != ErrorCode::DegenerateRatio && e.code() != ErrorCode::BoundaryAmbiguity) throw;
    rep.classification_error = e.code();
    rep.classification_reason = e.what();
  }
  return rep;
}

}  // namespace ews
