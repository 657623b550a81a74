#include "ews/linear_system.hpp"

#include <algorithm>
#include <sstream>

namespace ews {

namespace {

using M3 = Matrix<3>;

struct Entries {
  double tk1, tl1, tk2, tl2;
  double gkk, gkl, glk, gll;
  double lk1, lk2, ll1, ll2;
};

Entries entries(const ModelShares& sh, const EwsTerms& ews) {
  return {sh.theta(Factor::K, Sector::One), sh.theta(Factor::L, Sector::One), sh.theta(Factor::K, Sector::Two),
          sh.theta(Factor::L, Sector::Two), ews.g(Factor::K, Factor::K),        ews.g(Factor::K, Factor::L),
          ews.g(Factor::L, Factor::K),      ews.g(Factor::L, Factor::L),        sh.lambda(Factor::K, Sector::One),
          sh.lambda(Factor::K, Sector::Two), sh.lambda(Factor::L, Sector::One), sh.lambda(Factor::L, Sector::Two)};
}

void require_agreement(const char* what, double direct, double other, double tol) {
  if (!approx_equal(direct, other, tol)) {
    std::ostringstream msg;
    msg << what << ": " << direct << " vs " << other;
    throw ModelError(ErrorCode::ExpansionMismatch, msg.str());
  }
}

}  // namespace

Vector<5> HatSystem::rhs(const Shock& s) const {
  Vector<5> p{s.p1, s.p2, 0.0, s.v_k, s.v_l};
  for (std::size_t i = 0; i < 5; ++i) p[i] -= energy_price_loading[i] * s.w_t;
  return p;
}

HatSystem assemble(const ModelShares& sh, const EwsTerms& ews) {
  const auto stu = ews.triple();
  const double th_t = sh.theta_factor(Factor::T);
  const double th_k = sh.theta_factor(Factor::K);
  const double th_l = sh.theta_factor(Factor::L);
  // g rebuilt from (S, T, U) through the cross relation and the vanishing row sums.
  const double g_kl = th_l / th_k * stu.s;
  const double g_tl = th_l / th_t * stu.t;
  const double g_tk = th_k / th_t * stu.u;
  const double g_ll = -(stu.s + stu.t);
  const double g_kk = -(g_kl + stu.u);
  const double g_tt = -(g_tk + g_tl);

  HatSystem sys;
  auto& a = sys.coefficients;
  a[0] = {0.0, sh.theta(Factor::K, Sector::One), sh.theta(Factor::L, Sector::One), 0.0, 0.0};
  a[1] = {0.0, sh.theta(Factor::K, Sector::Two), sh.theta(Factor::L, Sector::Two), 0.0, 0.0};
  a[2] = {-1.0, g_tk, g_tl, sh.lambda(Factor::T, Sector::One), sh.lambda(Factor::T, Sector::Two)};
  a[3] = {0.0, g_kk, g_kl, sh.lambda(Factor::K, Sector::One), sh.lambda(Factor::K, Sector::Two)};
  a[4] = {0.0, stu.s, g_ll, sh.lambda(Factor::L, Sector::One), sh.lambda(Factor::L, Sector::Two)};
  sys.energy_price_loading = {sh.theta(Factor::T, Sector::One), sh.theta(Factor::T, Sector::Two), g_tt, stu.u,
                              stu.t};
  return sys;
}

double delta_closed_form(const ModelShares& sh) {
  const double d = sh.theta(Factor::K, Sector::One) * sh.theta(Factor::L, Sector::Two) -
                   sh.theta(Factor::K, Sector::Two) * sh.theta(Factor::L, Sector::One);
  return -d * d * sh.theta_good(Sector::One) * sh.theta_good(Sector::Two) /
         (sh.theta_factor(Factor::K) * sh.theta_factor(Factor::L));
}

CrossPriceCoefficients cross_price_coefficients(const ModelShares& sh) {
  CrossPriceCoefficients k;
  k.a = (sh.theta(Factor::K, Sector::One) + sh.theta(Factor::L, Sector::One)) *
        (sh.theta(Factor::K, Sector::Two) + sh.theta(Factor::L, Sector::Two)) * sh.theta_good(Sector::Two) /
        sh.theta_factor(Factor::K);
  k.b = sh.theta(Factor::K, Sector::One) * sh.lambda(Factor::K, Sector::Two);
  k.c = sh.theta(Factor::L, Sector::One) * sh.lambda(Factor::L, Sector::Two);
  return k;
}

CofactorSet direct_cofactors(const ModelShares& sh, const EwsTerms& ews) {
  const Entries e = entries(sh, ews);
  const auto& gap = sh.gap();
  CofactorSet c;
  c.c11 = determinant<3>(M3{{{e.tk2, e.tl2, 0.0}, {e.gkk, e.gkl, e.lk2}, {e.glk, e.gll, e.ll2}}});
  c.c21 = determinant<3>(M3{{{e.tk1, e.tl1, 0.0}, {e.gkk, e.gkl, e.lk2}, {e.glk, e.gll, e.ll2}}});
  c.ck1 = determinant<3>(M3{{{e.tk1, e.tl1, 0.0}, {e.tk2, e.tl2, 0.0}, {e.glk, e.gll, e.ll2}}});
  c.cl1 = determinant<3>(M3{{{e.tk1, e.tl1, 0.0}, {e.tk2, e.tl2, 0.0}, {e.gkk, e.gkl, e.lk2}}});
  c.c12 = determinant<3>(M3{{{e.tk2, e.tl2, 0.0}, {e.gkk, e.gkl, e.lk1}, {e.glk, e.gll, e.ll1}}});
  c.c22 = determinant<3>(M3{{{e.tk1, e.tl1, 0.0}, {e.gkk, e.gkl, e.lk1}, {e.glk, e.gll, e.ll1}}});
  c.ck2 = determinant<3>(M3{{{e.tk1, e.tl1, 0.0}, {e.tk2, e.tl2, 0.0}, {e.glk, e.gll, e.ll1}}});
  c.cl2 = determinant<3>(M3{{{e.tk1, e.tl1, 0.0}, {e.tk2, e.tl2, 0.0}, {e.gkk, e.gkl, e.lk1}}});
  c.ct1 = determinant<3>(M3{{{gap.capital, gap.labor, 0.0}, {e.gkk, e.gkl, e.lk2}, {e.glk, e.gll, e.ll2}}});
  c.ct2 = determinant<3>(M3{{{gap.capital, gap.labor, 0.0}, {e.gkk, e.gkl, e.lk1}, {e.glk, e.gll, e.ll1}}});
  c.delta = delta_closed_form(sh);
  return c;
}

LinearCofactors linear_cofactors(const ModelShares& sh, const EwsTriple& stu) {
  const auto& gap = sh.gap();
  const double th_k = sh.theta_factor(Factor::K);
  LinearCofactors l;
  l.ct1 = -gap.energy * (1.0 - sh.theta(Factor::T, Sector::Two)) * (sh.theta_good(Sector::Two) / th_k) * stu.s +
          gap.capital * sh.lambda(Factor::K, Sector::Two) * stu.t +
          gap.labor * sh.lambda(Factor::L, Sector::Two) * stu.u;
  l.ct2 = -gap.energy * (1.0 - sh.theta(Factor::T, Sector::One)) * (sh.theta_good(Sector::One) / th_k) * stu.s +
          gap.capital * sh.lambda(Factor::K, Sector::One) * stu.t +
          gap.labor * sh.lambda(Factor::L, Sector::One) * stu.u;
  const auto k = cross_price_coefficients(sh);
  l.c21 = k.a * stu.s + k.b * stu.t + k.c * stu.u;
  return l;
}

CofactorSet cofactors(const ModelShares& sh, const EwsTerms& ews) {
  CofactorSet c = direct_cofactors(sh, ews);
  const LinearCofactors l = linear_cofactors(sh, ews.triple());
  require_agreement("CT1 determinant vs linear form", c.ct1, l.ct1, kCofactorTolerance);
  require_agreement("CT2 determinant vs linear form", c.ct2, l.ct2, kCofactorTolerance);
  require_agreement("C21 determinant vs linear form", c.c21, l.c21, kCofactorTolerance);
  return c;
}

HatSolution solve(const HatSystem& system, const CofactorSet& cof, const Shock& shock) {
  const auto& a = system.coefficients;
  HatSolution out;
  out.determinant = determinant<5>(a);
  if (std::fabs(out.determinant) < kSingularDeterminant) {
    throw ModelError(ErrorCode::SingularSystem, "det(A) vanishes");
  }
  const Vector<5> p = system.rhs(shock);
  out.elimination = solve_elimination<5>(a, p);
  for (std::size_t k = 0; k < 5; ++k) {
    out.cramer[k] = determinant<5>(replace_column<5>(a, k, p)) / out.determinant;
  }
  out.x1_cofactor = -(shock.p1 * cof.c11 - shock.p2 * cof.c21 + shock.v_k * cof.ck1 - shock.v_l * cof.cl1 +
                      shock.w_t * cof.ct1) /
                    out.determinant;
  out.x2_cofactor = -(-shock.p1 * cof.c12 + shock.p2 * cof.c22 - shock.v_k * cof.ck2 + shock.v_l * cof.cl2 -
                      shock.w_t * cof.ct2) /
                    out.determinant;

  for (std::size_t i = 0; i < 5; ++i) {
    double r = -p[i];
    for (std::size_t j = 0; j < 5; ++j) r += a[i][j] * out.elimination[j];
    out.residual = std::max(out.residual, std::fabs(r));
    if (i < 2) out.zero_profit_residual = std::max(out.zero_profit_residual, std::fabs(r));
  }

  static constexpr const char* kNames[5] = {"V_T*", "w_K*", "w_L*", "X_1*", "X_2*"};
  for (std::size_t k = 0; k < 5; ++k) {
    require_agreement(kNames[k], out.elimination[k], out.cramer[k], kRouteTolerance);
  }
  require_agreement("X_1* cofactor route", out.elimination[kOutput1], out.x1_cofactor, kRouteTolerance);
  require_agreement("X_2* cofactor route", out.elimination[kOutput2], out.x2_cofactor, kRouteTolerance);
  if (!(out.residual < kResidualTolerance)) {
    std::ostringstream msg;
    msg << "residual " << out.residual << " exceeds " << kResidualTolerance;
    throw ModelError(ErrorCode::ExpansionMismatch, msg.str());
  }
  return out;
}

Delta4Decomposition delta4_decomposition(const ModelShares& sh, const EwsTerms& ews, const CofactorSet& cof,
                                         const Shock& s) {
  const HatSystem sys = assemble(sh, ews);
  const Vector<5> p = sys.rhs(s);
  const Entries e = entries(sh, ews);
  const double tt1 = sh.theta(Factor::T, Sector::One);
  const double tt2 = sh.theta(Factor::T, Sector::Two);
  const double gkt = ews.g(Factor::K, Factor::T);
  const double glt = ews.g(Factor::L, Factor::T);

  Delta4Decomposition d;
  d.direct = determinant<5>(replace_column<5>(sys.coefficients, kOutput1, p));
  const Matrix<4> j{{{e.tk1, e.tl1, s.p1, 0.0},
                     {e.tk2, e.tl2, s.p2, 0.0},
                     {e.gkk, e.gkl, s.v_k, e.lk2},
                     {e.glk, e.gll, s.v_l, e.ll2}}};
  const Matrix<4> k{{{e.tk1, e.tl1, tt1, 0.0},
                     {e.tk2, e.tl2, tt2, 0.0},
                     {e.gkk, e.gkl, gkt, e.lk2},
                     {e.glk, e.gll, glt, e.ll2}}};
  d.k_determinant = determinant<4>(k);
  d.via_j_k = -(determinant<4>(j) - s.w_t * d.k_determinant);
  d.via_cofactors =
      -(s.p1 * cof.c11 - s.p2 * cof.c21 + s.v_k * cof.ck1 - s.v_l * cof.cl1 + s.w_t * cof.ct1);
  return d;
}

}  // namespace ews
