#include "ews/reporting.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "ews/params.hpp"
#include "ews/sampling.hpp"

namespace ews {

namespace {

std::string fmt17(double d) {
  if (!std::isfinite(d)) return "null";
  if (d == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

/// Shortest round-trip representation.
std::string shortest(double d) {
  if (d == 0.0) return "0";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

std::string fixed(double d, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, d == 0.0 ? 0.0 : d);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

bool is_primitive(const Json& v) { return !v.is_array() && !v.is_object(); }

void write(const Json& v, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case Json::value_t::null: out += "null"; return;
    case Json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; return;
    case Json::value_t::number_integer: out += std::to_string(v.get<std::int64_t>()); return;
    case Json::value_t::number_unsigned: out += std::to_string(v.get<std::uint64_t>()); return;
    case Json::value_t::number_float: out += fmt17(v.get<double>()); return;
    case Json::value_t::string: out += v.dump(); return;
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(v.begin(), v.end(), is_primitive);
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(item, out, indent, depth + 1);
      }
      if (!flat) out += "\n" + close_pad;
      out += "]";
      return;
    }
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    default: out += "null"; return;
  }
}

Json by_factor(const ModelShares& sh, double (ModelShares::*get)(Factor, Sector) const) {
  Json j = Json::object();
  for (Factor f : kFactors) {
    j[std::string(name(f))] = Json::array({(sh.*get)(f, Sector::One), (sh.*get)(f, Sector::Two)});
  }
  return j;
}

Json matrix_json(const FactorMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) rows.push_back(Json::array({row[0], row[1], row[2]}));
  return rows;
}

Json check_json(const IdentityCheck& c) {
  Json j = Json::object();
  j["id"] = c.id;
  j["description"] = c.description;
  j["status"] = to_string(c.status);
  if (c.status != CheckStatus::Skipped) {
    j["reference"] = c.reference;
    j["values"] = c.values;
    j["max_relative_deviation"] = c.max_relative_deviation;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json point_json(const RatioVector& r) { return Json::array({r.s_prime, r.u_prime}); }

Json pair_json(const std::array<double, 2>& a) { return Json::array({a[0], a[1]}); }

}  // namespace

std::string serialize(const Json& value, int indent) {
  std::string out;
  write(value, out, indent, 0);
  out += "\n";
  return out;
}

AuditBundle run_audit(const ModelShares& sh, const EwsTerms& ews) {
  return AuditBundle{verify_identities(sh, ews), verify_quadratic(sh), thompson_discrepancy(sh, ews)};
}

Json shares_json(const ModelShares& sh) {
  Json j = Json::object();
  j["theta"] = by_factor(sh, &ModelShares::theta);
  j["theta_good"] = Json::array({sh.theta_good(Sector::One), sh.theta_good(Sector::Two)});
  Json tf = Json::object();
  for (Factor f : kFactors) tf[std::string(name(f))] = sh.theta_factor(f);
  j["theta_factor"] = tf;
  j["lambda"] = by_factor(sh, &ModelShares::lambda);
  j["intensity_gap"] = {{"A", sh.gap().energy}, {"B", sh.gap().capital}, {"E", sh.gap().labor}};
  const RankingReport rr = ranking_report(sh);
  j["ranking"] = {{"energy_ratio", rr.energy_ratio},
                  {"labor_ratio", rr.labor_ratio},
                  {"capital_ratio", rr.capital_ratio},
                  {"middle", std::string(name(rr.middle))},
                  {"extremes", Json::array({std::string(name(rr.extremes[0])), std::string(name(rr.extremes[1]))})}};
  return j;
}

Json ews_json(const EwsTerms& ews, const std::optional<std::pair<SectorAes, SectorAes>>& aes) {
  const auto stu = ews.triple();
  Json j = Json::object();
  j["mode"] = ews.reduced() ? "reduced" : "aes";
  j["S"] = stu.s;
  j["T"] = stu.t;
  j["U"] = stu.u;
  j["order"] = Json::array({"T", "K", "L"});
  j["g"] = matrix_json(ews.matrix());
  if (aes) {
    j["aes"] = {{"sector1", {{"sigma", matrix_json(aes->first.matrix())},
                             {"negative_semidefinite", aes->first.negative_semidefinite()}}},
                {"sector2", {{"sigma", matrix_json(aes->second.matrix())},
                             {"negative_semidefinite", aes->second.negative_semidefinite()}}}};
  }
  return j;
}

Json geometry_json(const Geometry& geo) {
  Json lines = Json::object();
  for (const LineSpec* l : {&geo.t1, &geo.t2, &geo.l21}) {
    lines[to_string(l->label)] = {{"slope", l->slope}, {"intercept", l->intercept}};
  }
  return {{"lines", lines},
          {"points", {{"Q", point_json(geo.points.q)},
                      {"R_T1", point_json(geo.points.r_t1)},
                      {"R_T2", point_json(geo.points.r_t2)}}}};
}

Json classification_json(const StaticsReport& rep, const EwsTerms&) {
  if (!rep.classification) {
    return {{"status", "degenerate"},
            {"error", std::string(to_string(*rep.classification_error))},
            {"reason", rep.classification_reason}};
  }
  const Classification& c = *rep.classification;
  Json complements = nullptr;
  if (c.quadrant.complements) {
    complements = Json::array({std::string(name(c.quadrant.complements->first)),
                               std::string(name(c.quadrant.complements->second))});
  }
  return {{"status", "ok"},
          {"quadrant", to_string(c.quadrant.quadrant)},
          {"complements", complements},
          {"energy_subregion", to_string(c.energy)},
          {"commodity_subregion", to_string(c.commodity)},
          {"predicted_energy_signs", Json::array({c.predicted_energy[0], c.predicted_energy[1]})},
          {"predicted_cross_sign", c.predicted_cross},
          {"theorem1", c.theorem1},
          {"theorem2", c.theorem2},
          {"gaps", {{"T1", c.gap_t1}, {"T2", c.gap_t2}, {"21", c.gap_21}}}};
}

Json audit_json(const AuditBundle& a) {
  Json ids = Json::array();
  for (const auto& c : a.identities.checks) ids.push_back(check_json(c));
  Json root_checks = Json::array();
  for (const auto& c : a.roots.checks) root_checks.push_back(check_json(c));
  const auto& q = a.roots.quadratic;
  const auto& t = a.thompson;
  Json finding = nullptr;
  if (t.finding) finding = *t.finding;
  return {{"reduced", a.identities.reduced},
          {"identities_passed", a.identities.all_passed()},
          {"identities", ids},
          {"quadratic",
           {{"x", q.x},
            {"y", q.y},
            {"z", q.z},
            {"coefficients", Json::array({q.coefficients[0], q.coefficients[1], q.coefficients[2]})},
            {"discriminant", q.discriminant},
            {"discriminant_closed_form", q.discriminant_closed_form},
            {"numeric_roots", pair_json(q.numeric_roots)},
            {"closed_roots", pair_json(q.closed_roots)},
            {"t1_intersections", pair_json(a.roots.t1_intersections)},
            {"t2_intersections", pair_json(a.roots.t2_intersections)},
            {"l21_intersections", pair_json(a.roots.l21_intersections)},
            {"passed", a.roots.all_passed()},
            {"checks", root_checks}}},
          {"thompson",
           {{"route1", t.route1},
            {"route2", t.route2},
            {"route2_expanded", t.route2_expanded},
            {"direct", t.direct},
            {"absolute_difference", t.absolute_difference},
            {"relative_difference", t.relative_difference},
            {"route1_vs_direct", t.route1_vs_direct},
            {"gKT_coefficient", {{"alternative", t.coefficient_route2}, {"correct", t.coefficient_route1}}},
            {"formulas_differ", t.formulas_differ},
            {"finding", finding}}}};
}

Json oracle_json(const OracleReport& r, const PrimitiveEconomy& econ, const Equilibrium& eq) {
  Json cmp = Json::array();
  for (const auto& c : r.comparisons) {
    cmp.push_back({{"name", c.name},
                   {"analytic", c.analytic},
                   {"finite_difference", c.finite_difference},
                   {"relative_deviation", c.relative_deviation}});
  }
  Json rec = Json::array();
  for (const auto& c : r.reciprocity) {
    rec.push_back({{"name", c.name},
                   {"from_energy_price_effect", c.analytic},
                   {"finite_difference", c.finite_difference},
                   {"relative_deviation", c.relative_deviation}});
  }
  return {{"family", to_string(econ.family)},
          {"step", r.step},
          {"threshold", r.threshold},
          {"equilibrium",
           {{"w_K", eq.w_k},
            {"w_L", eq.w_l},
            {"X1", eq.x1},
            {"X2", eq.x2},
            {"V_T", eq.v_t},
            {"iterations", eq.iterations},
            {"zero_profit_residual", eq.zero_profit_residual},
            {"full_employment_residual", eq.full_employment_residual}}},
          {"comparisons", cmp},
          {"max_relative_deviation", r.max_relative_deviation},
          {"reciprocity", rec},
          {"rybczynski_signs", r.rybczynski_signs},
          {"passed", r.passed}};
}

Json report_json(const ModelShares& sh, const EwsTerms& ews,
                 const std::optional<std::pair<SectorAes, SectorAes>>& aes) {
  const StaticsReport rep = analyze(sh, ews);
  Json j = Json::object();
  j["shares"] = shares_json(sh);
  j["ews"] = ews_json(ews, aes);
  if (auto r = ews.ratio()) {
    j["ratio"] = {{"s_prime", r->s_prime}, {"u_prime", r->u_prime}};
  } else {
    j["ratio"] = nullptr;
  }
  j["delta"] = rep.delta;
  j["elasticities"] = {
      {"energy_price", {{"x1_wT", rep.energy_price.x1}, {"x2_wT", rep.energy_price.x2}}},
      {"prices",
       {{"x1_p1", rep.prices.x1_p1}, {"x1_p2", rep.prices.x1_p2}, {"x2_p1", rep.prices.x2_p1}, {"x2_p2", rep.prices.x2_p2}}},
      {"endowments",
       {{"x1_VK", rep.endowments.x1_vk},
        {"x1_VL", rep.endowments.x1_vl},
        {"x2_VK", rep.endowments.x2_vk},
        {"x2_VL", rep.endowments.x2_vl}}},
      {"energy_imports", {{"VT_p1", rep.energy_imports.vt_p1}, {"VT_p2", rep.energy_imports.vt_p2}}}};
  j["classification"] = classification_json(rep, ews);
  j["geometry"] = geometry_json(rep.geo);
  j["audit"] = audit_json(run_audit(sh, ews));
  return j;
}

// ---- sweep ----

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  g.text = spec;
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  auto num = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ParamError("grid spec \"" + spec + "\": \"" + s + "\" is not a number");
    }
    return v;
  };
  if (parts.size() == 2 && parts[0] == "aes") {
    const double n = num(parts[1]);
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) throw ParamError("grid spec \"" + spec + "\": bad draw count");
    g.kind = GridSpec::Kind::Aes;
    g.draws = static_cast<std::size_t>(n);
    return g;
  }
  if (parts.empty() || parts[0] != "ratio" || (parts.size() != 4 && parts.size() != 6)) {
    throw ParamError("grid spec \"" + spec + "\" must be ratio:MIN:MAX:STEP, ratio:SMIN:SMAX:UMIN:UMAX:STEP or aes:N");
  }
  g.kind = GridSpec::Kind::Ratio;
  if (parts.size() == 4) {
    g.s_min = g.u_min = num(parts[1]);
    g.s_max = g.u_max = num(parts[2]);
    g.step = num(parts[3]);
  } else {
    g.s_min = num(parts[1]);
    g.s_max = num(parts[2]);
    g.u_min = num(parts[3]);
    g.u_max = num(parts[4]);
    g.step = num(parts[5]);
  }
  if (!(g.step > 0.0) || g.s_max < g.s_min || g.u_max < g.u_min) {
    throw ParamError("grid spec \"" + spec + "\": need MIN <= MAX and STEP > 0");
  }
  const double points = (std::floor((g.s_max - g.s_min) / g.step + 1e-9) + 1.0) *
                        (std::floor((g.u_max - g.u_min) / g.step + 1e-9) + 1.0);
  if (points > 1e7) throw ParamError("grid spec \"" + spec + "\" has more than 1e7 points");
  return g;
}

namespace {

/// Grid coordinate snapped to the nearest double of its decimal value.
double grid_value(double lo, double step, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", lo + static_cast<double>(i) * step);
  return std::strtod(buf, nullptr);
}

std::size_t grid_count(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

void evaluate(SweepRow& row, const ModelShares& sh, const EwsTerms& ews, const Geometry& geo, const RatioVector& r) {
  const CofactorSet cof = cofactors(sh, ews);
  const EnergyPriceEffects e = energy_price_effects(sh, ews, cof);
  const PriceEffects p = commodity_price_effects(sh, ews, cof);
  row.x1_wt_sign = sign_of(e.x1);
  row.x2_wt_sign = sign_of(e.x2);
  row.x1_p2_sign = sign_of(p.x1_p2);

  const RegionProbe probe = probe_regions(geo, r, row.t_sign);
  if (probe.energy_boundary) {
    row.energy = "boundary";
  } else if (probe.energy) {
    row.energy = to_string(*probe.energy);
    const auto pred = predicted_energy_signs(*probe.energy);
    row.mismatch = row.mismatch || pred[0] != *row.x1_wt_sign || pred[1] != *row.x2_wt_sign;
  } else {
    row.energy = "unmapped";
    row.mismatch = true;
  }
  if (probe.commodity_boundary) {
    row.commodity = "boundary";
  } else if (probe.commodity) {
    row.commodity = to_string(*probe.commodity);
    row.mismatch = row.mismatch || predicted_cross_sign(*probe.commodity) != *row.x1_p2_sign;
  } else {
    row.commodity = "unmapped";
    row.mismatch = true;
  }
}

void mark(SweepRow& row, const char* label) {
  row.energy = label;
  row.commodity = label;
}

}  // namespace

SweepResult run_sweep(const ModelShares& sh, const GridSpec& grid, std::uint64_t seed) {
  SweepResult out;
  out.grid = grid;
  out.seed = seed;
  const Geometry geo = geometry(sh);

  if (grid.kind == GridSpec::Kind::Aes) {
    DrawSampler sampler(seed);
    for (std::size_t i = 0; i < grid.draws; ++i) {
      const Draw d = sampler.draw_on(sh);
      SweepRow row;
      row.t_sign = sign_of(d.ews.triple().t);
      if (auto r = d.ews.ratio()) {
        row.s_prime = r->s_prime;
        row.u_prime = r->u_prime;
        evaluate(row, sh, d.ews, geo, *r);
      } else {
        row.t_sign = 0;
        mark(row, "degenerate");
      }
      out.rows.push_back(std::move(row));
    }
    return out;
  }

  const std::size_t ns = grid_count(grid.s_min, grid.s_max, grid.step);
  const std::size_t nu = grid_count(grid.u_min, grid.u_max, grid.step);
  out.rows.reserve(ns * nu);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t k = 0; k < nu; ++k) {
      SweepRow row;
      row.s_prime = grid_value(grid.s_min, grid.step, i);
      row.u_prime = grid_value(grid.u_min, grid.step, k);
      const RatioVector r{row.s_prime, row.u_prime};
      // feasibility forces sgn T = sgn(S' + 1)
      row.t_sign = std::fabs(r.s_prime + 1.0) < kDegenerateT ? 0 : sign_of(r.s_prime + 1.0);
      if (!ratio_feasible(r, row.t_sign, sh)) {
        mark(row, "infeasible");
        out.rows.push_back(std::move(row));
        continue;
      }
      const double t = row.t_sign;
      try {
        const EwsTerms ews = ews_from_triple(sh, EwsTriple{r.s_prime * t, t, r.u_prime * t});
        evaluate(row, sh, ews, geo, r);
      } catch (const ModelError& e) {
        if (e.code() != ErrorCode::InfeasibleEws) throw;
        mark(row, "infeasible");
      }
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = kSweepHeader;
  out += "\n";
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& row : result.rows) {
    out += shortest(row.s_prime) + "," + shortest(row.u_prime) + "," + std::to_string(row.t_sign) + "," + row.energy +
           "," + row.commodity + "," + opt(row.x1_wt_sign) + "," + opt(row.x2_wt_sign) + "," + opt(row.x1_p2_sign) +
           "\n";
  }
  return out;
}

Json sweep_summary(const SweepResult& result) {
  std::map<std::string, std::size_t> energy, commodity;
  std::size_t infeasible = 0, boundary = 0, degenerate = 0, mismatches = 0, feasible = 0;
  for (const auto& row : result.rows) {
    if (row.energy == "infeasible") {
      ++infeasible;
      continue;
    }
    if (row.energy == "degenerate") {
      ++degenerate;
      continue;
    }
    ++feasible;
    if (row.energy == "boundary" || row.commodity == "boundary") ++boundary;
    ++energy[row.energy];
    ++commodity[row.commodity];
    if (row.mismatch) ++mismatches;
  }
  Json e = Json::object();
  for (const char* k : {"P1", "P2", "P3", "M1", "M2", "M3", "boundary", "unmapped"}) {
    if (energy.count(k)) e[k] = energy[k];
  }
  Json c = Json::object();
  for (const char* k : {"Pa", "Pb", "Ma", "boundary", "unmapped"}) {
    if (commodity.count(k)) c[k] = commodity[k];
  }
  Json j = Json::object();
  j["grid"] = result.grid.text;
  if (result.grid.kind == GridSpec::Kind::Aes) j["seed"] = result.seed;
  j["points"] = result.rows.size();
  j["feasible"] = feasible;
  j["infeasible"] = infeasible;
  j["degenerate"] = degenerate;
  j["boundary"] = boundary;
  j["energy_subregions"] = e;
  j["commodity_subregions"] = c;
  j["mismatches"] = mismatches;
  return j;
}

// ---- plot ----

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 720.0;
constexpr double kMargin = 48.0;

struct Frame {
  Viewport v;
  double px(double s) const { return kMargin + (s - v.s_min) / (v.s_max - v.s_min) * (kWidth - 2 * kMargin); }
  double py(double u) const { return kMargin + (v.u_max - u) / (v.u_max - v.u_min) * (kHeight - 2 * kMargin); }
};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void branch(std::ostringstream& svg, const Frame& f, const ModelShares& sh, const char* id, double lo, double hi) {
  const double span = f.v.u_max - f.v.u_min;
  svg << "  <polyline id=\"" << id << "\" class=\"boundary\" fill=\"none\" stroke=\"#1f3a93\" stroke-width=\"2\" points=\"";
  constexpr int kSamples = 600;
  bool first = true;
  for (int i = 0; i <= kSamples; ++i) {
    const double s = lo + (hi - lo) * i / kSamples;
    const double u = boundary_value(s, sh);
    if (u < f.v.u_min - span || u > f.v.u_max + span) continue;
    if (!first) svg << ' ';
    first = false;
    svg << fixed(f.px(s)) << ',' << fixed(f.py(u));
  }
  svg << "\"/>\n";
}

void line(std::ostringstream& svg, const Frame& f, const LineSpec& l, const char* color) {
  const std::string label = to_string(l.label);
  svg << "  <line id=\"line-" << label << "\" class=\"region-line\" data-slope=\"" << fmt17(l.slope)
      << "\" data-intercept=\"" << fmt17(l.intercept) << "\" x1=\"" << fixed(f.px(f.v.s_min)) << "\" y1=\""
      << fixed(f.py(l.at(f.v.s_min))) << "\" x2=\"" << fixed(f.px(f.v.s_max)) << "\" y2=\""
      << fixed(f.py(l.at(f.v.s_max))) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
  // label at the right edge, or where the line leaves the frame
  double s = f.v.s_max;
  double u = l.at(s);
  if (u > f.v.u_max || u < f.v.u_min) {
    const double edge = u > f.v.u_max ? f.v.u_max : f.v.u_min;
    s = (edge - l.intercept) / l.slope;
    u = edge;
  }
  svg << "  <text class=\"line-label\" x=\"" << fixed(f.px(s) - 22) << "\" y=\"" << fixed(f.py(u) + (u >= f.v.u_max ? 14 : -6))
      << "\" fill=\"" << color << "\" font-size=\"13\">" << label << "</text>\n";
}

void point(std::ostringstream& svg, const Frame& f, const char* id, const std::string& label, const RatioVector& r,
           const char* cls, const char* color, double radius) {
  svg << "  <circle id=\"" << id << "\" class=\"" << cls << "\" data-s=\"" << fmt17(r.s_prime) << "\" data-u=\""
      << fmt17(r.u_prime) << "\" cx=\"" << fixed(f.px(r.s_prime)) << "\" cy=\"" << fixed(f.py(r.u_prime))
      << "\" r=\"" << fixed(radius, 1) << "\" fill=\"" << color << "\"/>\n";
  svg << "  <text class=\"point-label\" x=\"" << fixed(f.px(r.s_prime) + 6) << "\" y=\"" << fixed(f.py(r.u_prime) - 6)
      << "\" font-size=\"12\">" << esc(label) << "</text>\n";
}

struct LabelAccumulator {
  double sum_s = 0.0, sum_u = 0.0;
  std::vector<RatioVector> members;
};

}  // namespace

std::string render_svg(const ModelShares& sh, const std::optional<RatioVector>& current, int t_sign, int figure,
                       const Viewport& view) {
  if (figure != 1 && figure != 2) throw ParamError("figure must be 1 or 2");
  if (!(view.s_min < -1.0 && view.s_max > -1.0 && view.u_min < view.u_max)) {
    throw ParamError("viewport must straddle S' = -1");
  }
  const Frame f{view};
  const Geometry geo = geometry(sh);
  const double u_asym = -sh.theta_factor(Factor::L) / sh.theta_factor(Factor::K);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" data-figure=\"" << figure << "\" data-s-min=\""
      << fmt17(view.s_min) << "\" data-s-max=\"" << fmt17(view.s_max) << "\" data-u-min=\"" << fmt17(view.u_min)
      << "\" data-u-max=\"" << fmt17(view.u_max) << "\">\n";
  svg << "  <title>" << (figure == 1 ? "Energy-price subregions" : "Commodity-price subregions")
      << " in the EWS-ratio plane</title>\n";
  svg << "  <defs><clipPath id=\"frame\"><rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin << "\"/></clipPath></defs>\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
      << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"#999\"/>\n";

  svg << "  <g clip-path=\"url(#frame)\">\n";
  svg << "  <line id=\"axis-s\" x1=\"" << fixed(f.px(view.s_min)) << "\" y1=\"" << fixed(f.py(0)) << "\" x2=\""
      << fixed(f.px(view.s_max)) << "\" y2=\"" << fixed(f.py(0)) << "\" stroke=\"#bbb\"/>\n";
  svg << "  <line id=\"axis-u\" x1=\"" << fixed(f.px(0)) << "\" y1=\"" << fixed(f.py(view.u_min)) << "\" x2=\""
      << fixed(f.px(0)) << "\" y2=\"" << fixed(f.py(view.u_max)) << "\" stroke=\"#bbb\"/>\n";
  svg << "  <line id=\"asymptote-s\" class=\"asymptote\" data-value=\"-1\" x1=\"" << fixed(f.px(-1)) << "\" y1=\""
      << fixed(f.py(view.u_min)) << "\" x2=\"" << fixed(f.px(-1)) << "\" y2=\"" << fixed(f.py(view.u_max))
      << "\" stroke=\"#555\" stroke-dasharray=\"6 4\"/>\n";
  svg << "  <line id=\"asymptote-u\" class=\"asymptote\" data-value=\"" << fmt17(u_asym) << "\" x1=\""
      << fixed(f.px(view.s_min)) << "\" y1=\"" << fixed(f.py(u_asym)) << "\" x2=\"" << fixed(f.px(view.s_max))
      << "\" y2=\"" << fixed(f.py(u_asym)) << "\" stroke=\"#555\" stroke-dasharray=\"6 4\"/>\n";
  constexpr double kGap = 1e-4;
  branch(svg, f, sh, "boundary-left", view.s_min, -1.0 - kGap);
  branch(svg, f, sh, "boundary-right", -1.0 + kGap, view.s_max);
  if (figure == 1) {
    line(svg, f, geo.t1, "#c0392b");
    line(svg, f, geo.t2, "#27ae60");
  } else {
    line(svg, f, geo.l21, "#8e44ad");
  }

  // subregion labels at the member grid point nearest each centroid
  std::map<std::string, LabelAccumulator> regions;
  constexpr double kLabelStep = 0.05;
  const std::size_t ns = grid_count(view.s_min, view.s_max, kLabelStep);
  const std::size_t nu = grid_count(view.u_min, view.u_max, kLabelStep);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t k = 0; k < nu; ++k) {
      const RatioVector r{grid_value(view.s_min, kLabelStep, i), grid_value(view.u_min, kLabelStep, k)};
      if (std::fabs(r.s_prime + 1.0) < kDegenerateT) continue;
      const int ts = sign_of(r.s_prime + 1.0);
      if (!ratio_feasible(r, ts, sh)) continue;
      const RegionProbe p = probe_regions(geo, r, ts);
      std::optional<std::string> label;
      if (figure == 1 && p.energy) label = to_string(*p.energy);
      if (figure == 2 && p.commodity) label = to_string(*p.commodity);
      if (!label) continue;
      auto& acc = regions[*label];
      acc.sum_s += r.s_prime;
      acc.sum_u += r.u_prime;
      acc.members.push_back(r);
    }
  }
  const std::vector<const char*> order =
      figure == 1 ? std::vector<const char*>{"P1", "P2", "P3", "M1", "M2", "M3"} : std::vector<const char*>{"Pa", "Pb", "Ma"};
  for (const char* label : order) {
    auto it = regions.find(label);
    if (it == regions.end()) continue;
    const auto& acc = it->second;
    const double n = static_cast<double>(acc.members.size());
    const RatioVector centroid{acc.sum_s / n, acc.sum_u / n};
    const RatioVector* best = &acc.members.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& m : acc.members) {
      const double d = std::hypot(m.s_prime - centroid.s_prime, m.u_prime - centroid.u_prime);
      if (d < best_d) {
        best_d = d;
        best = &m;
      }
    }
    svg << "  <text id=\"label-" << label << "\" class=\"region-label\" data-s=\"" << fmt17(best->s_prime)
        << "\" data-u=\"" << fmt17(best->u_prime) << "\" x=\"" << fixed(f.px(best->s_prime)) << "\" y=\""
        << fixed(f.py(best->u_prime)) << "\" font-size=\"15\" font-weight=\"bold\" fill=\"#444\" text-anchor=\"middle\">"
        << label << "</text>\n";
  }

  point(svg, f, "point-Q", "Q", geo.points.q, "key-point", "#000", 4.0);
  point(svg, f, "point-R_T1", "R_T1", geo.points.r_t1, "key-point", "#000", 4.0);
  point(svg, f, "point-R_T2", "R_T2", geo.points.r_t2, "key-point", "#000", 4.0);
  if (current) {
    point(svg, f, "current-ratio", "(S', U')", *current, "current", "#e67e22", 6.0);
    svg << "  <desc id=\"current-sign\">T sign " << t_sign << "</desc>\n";
  }
  svg << "  </g>\n";

  svg << "  <text x=\"" << fixed(kWidth - kMargin) << "\" y=\"" << fixed(kHeight - kMargin + 30)
      << "\" text-anchor=\"end\" font-size=\"14\">S'</text>\n";
  svg << "  <text x=\"" << fixed(kMargin - 30) << "\" y=\"" << fixed(kMargin) << "\" font-size=\"14\">U'</text>\n";
  for (double s = std::ceil(view.s_min); s <= view.s_max; s += 1.0) {
    svg << "  <text class=\"tick\" x=\"" << fixed(f.px(s)) << "\" y=\"" << fixed(kHeight - kMargin + 16)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << shortest(s) << "</text>\n";
  }
  for (double u = std::ceil(view.u_min); u <= view.u_max; u += 2.0) {
    svg << "  <text class=\"tick\" x=\"" << fixed(kMargin - 6) << "\" y=\"" << fixed(f.py(u) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << shortest(u) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ews
