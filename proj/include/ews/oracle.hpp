#pragma once

#include <array>
#include <string>
#include <vector>

#include "ews/comparative_statics.hpp"
#include "ews/model_core.hpp"
#include "ews/substitution.hpp"

namespace ews {

enum class Technology { CobbDouglas, Ces };
const char* to_string(Technology t);

/// One sector's production primitive.
/// Cobb-Douglas: c = (1/scale) prod_i (w_i / weight_i)^weight_i.
/// CES:          c = (1/scale) (sum_i weight_i w_i^(1-s))^(1/(1-s)), s = elasticity.
/// Weights are indexed by Factor and sum to one.
struct SectorTechnology {
  std::array<double, 3> weights{};
  double scale = 1.0;
  double elasticity = 1.0;
};

/// Small open economy: world prices and the energy price are given.
struct PrimitiveEconomy {
  Technology family = Technology::CobbDouglas;
  std::array<SectorTechnology, 2> sectors{};
  double v_k = 1.0;
  double v_l = 1.0;
  double p1 = 1.0;
  double p2 = 1.0;
  double w_t = 1.0;
};

/// Economy whose unit-price, unit-wage point is an equilibrium reproducing
/// the given shares (outputs X_j = theta_j, endowments V_i = theta_i).
PrimitiveEconomy calibrate_economy(const ModelShares& shares, Technology family, double elasticity = 1.0);

struct Equilibrium {
  double w_k = 0.0;
  double w_l = 0.0;
  ShareTable input_output{};  // a[factor][sector]
  double x1 = 0.0;
  double x2 = 0.0;
  double v_t = 0.0;
  int iterations = 0;
  double zero_profit_residual = 0.0;      // relative
  double full_employment_residual = 0.0;  // relative

  ShareTable implied_theta(const PrimitiveEconomy& econ) const;
  double implied_theta_good_1(const PrimitiveEconomy& econ) const;
};

inline constexpr double kEquilibriumTolerance = 1e-10;
inline constexpr int kMaxNewtonIterations = 200;

/// Throws NoEquilibrium (no convergence, nonpositive outcome) or InvalidInput.
Equilibrium solve_equilibrium(const PrimitiveEconomy& econ);

/// Shares and AES implied by an equilibrium. Throws RankingViolation when
/// the implied shares break the intensity ranking.
struct ImpliedStructure {
  ModelShares shares;
  SectorAes sector1;
  SectorAes sector2;
  EwsTerms ews;
};
ImpliedStructure implied_structure(const PrimitiveEconomy& econ, const Equilibrium& eq);

enum ShockIndex : std::size_t { kShockWt = 0, kShockP1 = 1, kShockP2 = 2, kShockVk = 3, kShockVl = 4 };
inline constexpr std::array<const char*, 5> kShockNames{"w_T", "p1", "p2", "V_K", "V_L"};

/// Log-derivatives of the endogenous quantities with respect to one exogenous variable.
struct Response {
  double x1 = 0.0;
  double x2 = 0.0;
  double v_t = 0.0;
  double w_k = 0.0;
  double w_l = 0.0;
};

struct FiniteDifferenceTable {
  double step = 0.0;
  std::array<Response, 5> by_shock{};
};

inline constexpr double kDefaultStep = 1e-4;

/// Central differences in logs, (log q(z e^h) - log q(z e^-h)) / 2h.
FiniteDifferenceTable finite_difference_elasticities(const PrimitiveEconomy& econ, double step = kDefaultStep);

struct OracleComparison {
  std::string name;
  double analytic = 0.0;
  double finite_difference = 0.0;
  double relative_deviation = 0.0;
};

struct OracleReport {
  double step = 0.0;
  double threshold = 0.0;
  std::vector<OracleComparison> comparisons;
  double max_relative_deviation = 0.0;
  /// FD(V_T/p_j) vs -(theta_j/theta_T) FD(X_j/w_T).
  std::array<OracleComparison, 2> reciprocity{};
  /// (X_1/V_K, X_1/V_L, X_2/V_K, X_2/V_L) signs on the FD values match (-, +, +, -).
  bool rybczynski_signs = false;
  bool passed = false;
};

inline constexpr double kOracleThreshold = 1e-5;

OracleReport verify_against_analytic(const PrimitiveEconomy& econ, double step = kDefaultStep,
                                     double threshold = kOracleThreshold);

/// Throws OracleMismatch when the report did not pass.
void require_agreement(const OracleReport& report);

}  // namespace ews
