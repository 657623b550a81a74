#include "ews/audit.hpp"

#include "fixtures.hpp"

using namespace ews;
using fx::close;

TEST_CASE("identities hold on the canonical fixture") {
  const auto f = fx::cp1_cobb_douglas();
  const IdentityReport r = verify_identities(f.shares, f.ews);
  CHECK(r.all_passed());
  CHECK(r.checks.size() == 6);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.status == CheckStatus::Pass, c.id);
  CHECK_NOTHROW(r.require_all());
}

TEST_CASE("perturbed row sums fail the CT1 expansion first") {
  const auto f = fx::cp1_cobb_douglas();
  FactorMatrix g = f.ews.matrix();
  g[idx(Factor::K)][idx(Factor::K)] += 1e-3;
  g[idx(Factor::L)][idx(Factor::L)] += 1e-3;
  const IdentityReport r = verify_identities(f.shares, EwsTerms::unchecked(g));
  CHECK_FALSE(r.all_passed());
  CHECK(r.checks[0].status == CheckStatus::Pass);
  CHECK(r.checks[1].id == "b");
  CHECK(r.checks[1].status == CheckStatus::Fail);
  try {
    r.require_all();
    FAIL("expected IdentityFailure");
  } catch (const ModelError& e) {
    CHECK(e.code() == ErrorCode::IdentityFailure);
    CHECK(std::string(e.what()).find("identity (b)") != std::string::npos);
  }
}

TEST_CASE("reduced input skips the AES-level identities") {
  const ModelShares sh = fx::cp1();
  const IdentityReport r = verify_identities(sh, ews_from_triple(sh, {0.5, 1.0, -0.2}));
  CHECK(r.reduced);
  CHECK(r.checks[0].status == CheckStatus::Pass);
  for (std::size_t i = 1; i < r.checks.size(); ++i) CHECK(r.checks[i].status == CheckStatus::Skipped);
}

TEST_CASE("boundary quadratic on the canonical shares") {
  const RootReport r = verify_quadratic(fx::cp1());
  CHECK(r.all_passed());
  CHECK(close(r.quadratic.x, 5.0 / 7.0));
  CHECK(close(r.quadratic.z, 5.0 / 3.0));
  CHECK(close(r.quadratic.discriminant, 400.0 / 441.0, 1e-13));
  CHECK(close(r.quadratic.numeric_roots[0], -0.625, 1e-13));
  CHECK(close(r.quadratic.numeric_roots[1], -5.0 / 12.0, 1e-13));
  CHECK(close(r.t1_intersections[0], -1.25, 1e-12));
  CHECK(close(r.t1_intersections[1], -0.625, 1e-12));
  CHECK(close(r.t2_intersections[0], -1.25, 1e-12));
  CHECK(close(r.t2_intersections[1], -5.0 / 12.0, 1e-12));
}

TEST_CASE("equal capital-labor ratios give a zero discriminant") {
  const BoundaryQuadratic q = boundary_quadratic(0.8, 1.0, 0.8);
  CHECK(q.discriminant == doctest::Approx(0.0).scale(1e-15));
  CHECK(q.discriminant_closed_form == 0.0);
  CHECK(close(q.numeric_roots[0], q.numeric_roots[1]));
  CHECK(close(q.numeric_roots[0], -0.8 / 1.8));
}

TEST_CASE("alternative V_T/p_1 formula differs from the correct one") {
  SUBCASE("Cobb-Douglas fixture") {
    const auto f = fx::cp1_cobb_douglas();
    const DiscrepancyReport d = thompson_discrepancy(f.shares, f.ews);
    CHECK(close(d.route1, 10.0, 1e-12));
    CHECK(close(d.direct, 10.0, 1e-12));
    CHECK(close(d.route2, 10.028846153846153, 1e-12));
    CHECK(close(d.route2_expanded, d.route2, 1e-12));
    CHECK(d.route1_vs_direct < 1e-9);
    CHECK(d.formulas_differ);
    CHECK_FALSE(d.finding.has_value());
    CHECK(close(d.coefficient_route2, -1.40625, 1e-12));
    CHECK(close(d.coefficient_route1, -1.875, 1e-12));
  }
  SUBCASE("second fixture") {
    const auto f = fx::pb1();
    const DiscrepancyReport d = thompson_discrepancy(f.shares, f.ews);
    CHECK(close(d.route1, 1.4000166666666667, 1e-11));
    CHECK(close(d.route2, 1.874054326923077, 1e-11));
    CHECK(d.formulas_differ);
  }
}
