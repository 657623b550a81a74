#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ews/linear_system.hpp"
#include "ews/model_core.hpp"
#include "ews/substitution.hpp"

namespace ews {

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kRootTolerance = 1e-12;

enum class CheckStatus { Pass, Fail, Skipped };
const char* to_string(CheckStatus s);

/// One closed-form identity: every value in `values` must agree with `reference`.
struct IdentityCheck {
  std::string id;           // "a" .. "e", "delta4"
  std::string description;
  double reference = 0.0;
  std::vector<double> values;
  double max_relative_deviation = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool reduced = false;

  bool all_passed() const;
  /// Throws IdentityFailure naming the first failing identity.
  void require_all() const;
};

/// (a) det(A) vs closed form, (b) CT1 determinant vs bordered expansion vs
/// linear form, (c) CT2, (d) C21, (e) |K| = -CT1, plus the X_1* numerator
/// decomposition. Uses the g matrix as given, so broken row sums show up.
/// In reduced mode g is rebuilt from (S, T, U) and (b)-(e) are skipped.
IdentityReport verify_identities(const ModelShares& shares, const EwsTerms& ews);

/// (1+x)(1+z) S'^2 + [(x+z) + 2xz] S' + xz = 0
struct BoundaryQuadratic {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  std::array<double, 3> coefficients{};  // S'^2, S', 1
  double discriminant = 0.0;
  double discriminant_closed_form = 0.0;  // (x - z)^2
  std::array<double, 2> numeric_roots{};  // ascending
  std::array<double, 2> closed_roots{};   // ascending: {-z/(1+z), -x/(1+x)} sorted
};

BoundaryQuadratic boundary_quadratic(double x, double y, double z);

struct RootReport {
  BoundaryQuadratic quadratic;
  std::array<double, 2> share_roots{};  // {-theta_K2/(1-theta_T2), -theta_K1/(1-theta_T1)}
  /// S' where line T1 (T2) meets the boundary hyperbola, ascending.
  std::array<double, 2> t1_intersections{};
  std::array<double, 2> t2_intersections{};
  /// S' where line 21 meets the boundary hyperbola, ascending.
  std::array<double, 2> l21_intersections{};
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
  void require_all() const;
};

RootReport verify_quadratic(const ModelShares& shares);

/// Correct V_T*/p_1* against the alternative formula assembled from the
/// lambda-difference notation lambda_XY = lambda_X1 lambda_Y2 - lambda_X2 lambda_Y1.
struct DiscrepancyReport {
  double route1 = 0.0;         // (theta_1/theta_T) CT1 / Delta
  double route2 = 0.0;         // (theta_K2 sigma_1 - theta_L2 sigma_2) / Delta
  double route2_expanded = 0.0;  // same, written in (S, T, U)
  double direct = 0.0;         // V_T* from the 5x5 solve under p_1* = 1
  double absolute_difference = 0.0;
  double relative_difference = 0.0;
  double route1_vs_direct = 0.0;  // relative
  double coefficient_route2 = 0.0;  // g_KT coefficient of the alternative formula
  double coefficient_route1 = 0.0;  // g_KT coefficient of the correct formula
  bool formulas_differ = false;     // relative difference > 1e-6
  /// Set when the two routes coincide on this draw.
  std::optional<std::string> finding;
};

inline constexpr double kDiscrepancyThreshold = 1e-6;

DiscrepancyReport thompson_discrepancy(const ModelShares& shares, const EwsTerms& ews);

}  // namespace ews
