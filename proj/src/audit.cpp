#include "ews/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ews/comparative_statics.hpp"

namespace ews {

namespace {

IdentityCheck make_check(std::string id, std::string description, double reference, std::vector<double> values,
                         double tol) {
  IdentityCheck c{std::move(id), std::move(description), reference, std::move(values), 0.0, CheckStatus::Pass, {}};
  for (double v : c.values) c.max_relative_deviation = std::max(c.max_relative_deviation, relative_difference(reference, v));
  const bool ok = std::all_of(c.values.begin(), c.values.end(),
                              [&](double v) { return std::isfinite(v) && approx_equal(reference, v, tol); });
  c.status = ok && std::isfinite(reference) ? CheckStatus::Pass : CheckStatus::Fail;
  return c;
}

IdentityCheck skipped(std::string id, std::string description) {
  IdentityCheck c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.status = CheckStatus::Skipped;
  c.note = "g rebuilt from (S, T, U); holds by construction";
  return c;
}

void throw_first_failure(const std::vector<IdentityCheck>& checks) {
  for (const auto& c : checks) {
    if (c.status != CheckStatus::Fail) continue;
    std::ostringstream msg;
    msg.precision(17);
    msg << "identity (" << c.id << ") " << c.description << ": reference " << c.reference << ", deviation "
        << c.max_relative_deviation;
    throw ModelError(ErrorCode::IdentityFailure, msg.str());
  }
}

/// Roots of a s^2 + b s + c, ascending, without cancellation.
std::array<double, 2> quadratic_roots(double a, double b, double c) {
  const double d = std::max(b * b - 4.0 * a * c, 0.0);
  if (d == 0.0) return {-b / (2.0 * a), -b / (2.0 * a)};
  const double q = -0.5 * (b + std::copysign(std::sqrt(d), b));
  std::array<double, 2> r{q / a, c / q};
  if (r[0] > r[1]) std::swap(r[0], r[1]);
  return r;
}

std::array<double, 2> sorted(double a, double b) { return a < b ? std::array{a, b} : std::array{b, a}; }

/// Line U' = m S' + k against U'(S'+1) = -y S'.
std::array<double, 2> line_boundary_roots(const LineSpec& line, double y) {
  return quadratic_roots(line.slope, line.slope + line.intercept + y, line.intercept);
}

double lambda_diff(const ModelShares& sh, Factor x, Factor y) {
  return sh.lambda(x, Sector::One) * sh.lambda(y, Sector::Two) - sh.lambda(x, Sector::Two) * sh.lambda(y, Sector::One);
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

bool IdentityReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
}

void IdentityReport::require_all() const { throw_first_failure(checks); }

IdentityReport verify_identities(const ModelShares& sh, const EwsTerms& ews) {
  IdentityReport rep;
  rep.reduced = ews.reduced();
  const auto& g = ews.matrix();
  auto gv = [&](Factor i, Factor h) { return g[idx(i)][idx(h)]; };
  auto th = [&](Factor f, Sector s) { return sh.theta(f, s); };
  auto lm = [&](Factor f, Sector s) { return sh.lambda(f, s); };
  const auto& gap = sh.gap();
  const double delta = delta_closed_form(sh);

  Matrix<5> a{};
  a[0] = {0.0, th(Factor::K, Sector::One), th(Factor::L, Sector::One), 0.0, 0.0};
  a[1] = {0.0, th(Factor::K, Sector::Two), th(Factor::L, Sector::Two), 0.0, 0.0};
  a[2] = {-1.0, gv(Factor::T, Factor::K), gv(Factor::T, Factor::L), lm(Factor::T, Sector::One), lm(Factor::T, Sector::Two)};
  a[3] = {0.0, gv(Factor::K, Factor::K), gv(Factor::K, Factor::L), lm(Factor::K, Sector::One), lm(Factor::K, Sector::Two)};
  a[4] = {0.0, gv(Factor::L, Factor::K), gv(Factor::L, Factor::L), lm(Factor::L, Sector::One), lm(Factor::L, Sector::Two)};
  rep.checks.push_back(make_check("a", "det(A) equals the closed form", delta, {determinant<5>(a)}, kIdentityTolerance));

  if (rep.reduced) {
    rep.checks.push_back(skipped("b", "CT1 determinant, bordered expansion and linear form agree"));
    rep.checks.push_back(skipped("c", "CT2 determinant equals its linear form"));
    rep.checks.push_back(skipped("d", "C21 determinant equals its linear form"));
    rep.checks.push_back(skipped("e", "|K| equals -CT1"));
    rep.checks.push_back(skipped("delta4", "X_1* numerator equals its cofactor decomposition"));
    return rep;
  }

  const CofactorSet det = direct_cofactors(sh, ews);
  const LinearCofactors lin = linear_cofactors(sh, ews.triple());
  const double be = gap.capital + gap.labor;
  const double ct1_expanded = lm(Factor::K, Sector::Two) * be * gv(Factor::L, Factor::K) +
                              lm(Factor::L, Sector::Two) * be * gv(Factor::K, Factor::L) +
                              gap.capital * lm(Factor::K, Sector::Two) * gv(Factor::L, Factor::T) +
                              gap.labor * lm(Factor::L, Sector::Two) * gv(Factor::K, Factor::T);
  rep.checks.push_back(make_check("b", "CT1 determinant, bordered expansion and linear form agree", det.ct1,
                                  {ct1_expanded, lin.ct1}, kIdentityTolerance));
  rep.checks.push_back(
      make_check("c", "CT2 determinant equals its linear form", det.ct2, {lin.ct2}, kIdentityTolerance));
  rep.checks.push_back(
      make_check("d", "C21 determinant equals its linear form", det.c21, {lin.c21}, kIdentityTolerance));

  const Matrix<4> k{{{th(Factor::K, Sector::One), th(Factor::L, Sector::One), th(Factor::T, Sector::One), 0.0},
                     {th(Factor::K, Sector::Two), th(Factor::L, Sector::Two), th(Factor::T, Sector::Two), 0.0},
                     {gv(Factor::K, Factor::K), gv(Factor::K, Factor::L), gv(Factor::K, Factor::T), lm(Factor::K, Sector::Two)},
                     {gv(Factor::L, Factor::K), gv(Factor::L, Factor::L), gv(Factor::L, Factor::T), lm(Factor::L, Sector::Two)}}};
  const Matrix<4> k_reduced{{{gap.capital, gap.labor, 0.0, 0.0},
                             {th(Factor::K, Sector::Two), th(Factor::L, Sector::Two), 1.0, 0.0},
                             {gv(Factor::K, Factor::K), gv(Factor::K, Factor::L), 0.0, lm(Factor::K, Sector::Two)},
                             {gv(Factor::L, Factor::K), gv(Factor::L, Factor::L), 0.0, lm(Factor::L, Sector::Two)}}};
  rep.checks.push_back(make_check("e", "|K| equals -CT1", -det.ct1, {determinant<4>(k), determinant<4>(k_reduced)},
                                  kIdentityTolerance));

  const Shock unit{.p1 = 1.0, .p2 = 1.0, .w_t = 1.0, .v_k = 1.0, .v_l = 1.0};
  const Delta4Decomposition d4 = delta4_decomposition(sh, ews, det, unit);
  rep.checks.push_back(make_check("delta4", "X_1* numerator equals its cofactor decomposition", d4.direct,
                                  {d4.via_j_k, d4.via_cofactors}, kIdentityTolerance));
  return rep;
}

BoundaryQuadratic boundary_quadratic(double x, double y, double z) {
  BoundaryQuadratic q;
  q.x = x;
  q.y = y;
  q.z = z;
  q.coefficients = {(1.0 + x) * (1.0 + z), (x + z) + 2.0 * x * z, x * z};
  const auto& c = q.coefficients;
  q.discriminant = c[1] * c[1] - 4.0 * c[0] * c[2];
  q.discriminant_closed_form = (x - z) * (x - z);
  q.numeric_roots = quadratic_roots(c[0], c[1], c[2]);
  q.closed_roots = sorted(-z / (1.0 + z), -x / (1.0 + x));
  return q;
}

bool RootReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
}

void RootReport::require_all() const { throw_first_failure(checks); }

RootReport verify_quadratic(const ModelShares& sh) {
  RootReport rep;
  const double x = sh.theta(Factor::K, Sector::One) / sh.theta(Factor::L, Sector::One);
  const double z = sh.theta(Factor::K, Sector::Two) / sh.theta(Factor::L, Sector::Two);
  const double y = sh.theta_factor(Factor::L) / sh.theta_factor(Factor::K);
  rep.quadratic = boundary_quadratic(x, y, z);
  const auto& q = rep.quadratic;
  const double r_t1 = -sh.theta(Factor::K, Sector::Two) / (1.0 - sh.theta(Factor::T, Sector::Two));
  const double r_t2 = -sh.theta(Factor::K, Sector::One) / (1.0 - sh.theta(Factor::T, Sector::One));
  rep.share_roots = {r_t1, r_t2};

  const Geometry geo = geometry(sh);
  rep.t1_intersections = line_boundary_roots(geo.t1, y);
  rep.t2_intersections = line_boundary_roots(geo.t2, y);
  rep.l21_intersections = line_boundary_roots(geo.l21, y);
  const double b_over_a = sh.gap().capital / sh.gap().energy;

  // 21 line coefficients against the closed forms a/c, b/c
  const auto k = cross_price_coefficients(sh);
  rep.checks.push_back(make_check("D2.a", "a/c equals (1+x)(1+z)y", (1.0 + x) * (1.0 + z) * y, {k.a / k.c}, kIdentityTolerance));
  rep.checks.push_back(make_check("D2.b", "b/c equals xzy", x * z * y, {k.b / k.c}, kIdentityTolerance));
  rep.checks.push_back(make_check("D4", "discriminant equals (x-z)^2", q.discriminant_closed_form, {q.discriminant},
                                  kIdentityTolerance));
  const auto share_sorted = sorted(r_t1, r_t2);
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string id = "D5." + std::to_string(i + 1);
    rep.checks.push_back(make_check(id, "numeric root equals the closed form", q.closed_roots[i],
                                    {q.numeric_roots[i], share_sorted[i]}, kRootTolerance));
  }
  rep.checks.push_back(make_check("R_T1", "R_T1 abscissa equals -theta_K2/(1-theta_T2)", r_t1, {geo.points.r_t1.s_prime},
                                  kRootTolerance));
  rep.checks.push_back(make_check("R_T2", "R_T2 abscissa equals -theta_K1/(1-theta_T1)", r_t2, {geo.points.r_t2.s_prime},
                                  kRootTolerance));

  const auto t1_expected = sorted(b_over_a, r_t1);
  const auto t2_expected = sorted(b_over_a, r_t2);
  for (std::size_t i = 0; i < 2; ++i) {
    rep.checks.push_back(make_check("T1." + std::to_string(i + 1), "line T1 meets the boundary at B/A and R_T1",
                                    t1_expected[i], {rep.t1_intersections[i]}, kIdentityTolerance));
    rep.checks.push_back(make_check("T2." + std::to_string(i + 1), "line T2 meets the boundary at B/A and R_T2",
                                    t2_expected[i], {rep.t2_intersections[i]}, kIdentityTolerance));
    rep.checks.push_back(make_check("21." + std::to_string(i + 1), "line 21 meets the boundary at R_T1 and R_T2",
                                    share_sorted[i], {rep.l21_intersections[i]}, kIdentityTolerance));
  }
  return rep;
}

DiscrepancyReport thompson_discrepancy(const ModelShares& sh, const EwsTerms& ews) {
  DiscrepancyReport rep;
  const double th_t = sh.theta_factor(Factor::T);
  const double th_k = sh.theta_factor(Factor::K);
  const double th_l = sh.theta_factor(Factor::L);
  const double th_1 = sh.theta_good(Sector::One);
  const double tk2 = sh.theta(Factor::K, Sector::Two);
  const double tl2 = sh.theta(Factor::L, Sector::Two);
  const CofactorSet cof = direct_cofactors(sh, ews);
  const double delta = cof.delta;
  const auto stu = ews.triple();

  rep.route1 = (th_1 / th_t) * cof.ct1 / delta;

  const double l_kl = lambda_diff(sh, Factor::K, Factor::L);
  const double l_tk = lambda_diff(sh, Factor::T, Factor::K);
  const double l_tl = lambda_diff(sh, Factor::T, Factor::L);
  auto g = [&](Factor i, Factor h) { return ews.g(i, h); };
  const double sigma1 = (l_kl - l_tk) * g(Factor::T, Factor::L) - (l_tl + l_tk) * g(Factor::K, Factor::L);
  const double sigma2 = (l_kl + l_tl) * g(Factor::T, Factor::K) + (l_tk + l_tl) * g(Factor::L, Factor::K);
  rep.route2 = (tk2 * sigma1 - tl2 * sigma2) / delta;
  rep.route2_expanded = (-tk2 * (l_tl + l_tk) * stu.s * (th_l / th_k) - tl2 * (l_tk + l_tl) * stu.s +
                         tk2 * (l_kl - l_tk) * stu.t * (th_l / th_t) - tl2 * (l_kl + l_tl) * stu.u * (th_k / th_t)) /
                        delta;

  const HatSystem sys = assemble(sh, ews);
  rep.direct = solve(sys, cof, Shock{.p1 = 1.0}).elimination[kEnergyImports];

  rep.absolute_difference = std::fabs(rep.route1 - rep.route2);
  rep.relative_difference = relative_difference(rep.route1, rep.route2);
  rep.route1_vs_direct = relative_difference(rep.route1, rep.direct);

  const double l_k1 = sh.lambda(Factor::K, Sector::One);
  const double l_l1 = sh.lambda(Factor::L, Sector::One);
  const double l_t1 = sh.lambda(Factor::T, Sector::One);
  rep.coefficient_route2 = -tl2 * ((l_k1 - l_l1) + (l_t1 - l_l1)) * (th_k / th_t) / delta;
  rep.coefficient_route1 = (th_1 / th_t) * sh.gap().labor * sh.lambda(Factor::L, Sector::Two) / delta;

  rep.formulas_differ = rep.relative_difference > kDiscrepancyThreshold;
  if (!rep.formulas_differ) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "routes coincide: " << rep.route1 << " vs " << rep.route2;
    rep.finding = msg.str();
  }
  return rep;
}

}  // namespace ews
