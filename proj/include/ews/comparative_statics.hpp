#pragma once

#include <array>
#include <optional>
#include <string>

#include "ews/linear_system.hpp"
#include "ews/model_core.hpp"
#include "ews/substitution.hpp"

namespace ews {

/// (X_1*/w_T*, X_2*/w_T*)
struct EnergyPriceEffects {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// X_j*/p_k*
struct PriceEffects {
  double x1_p1 = 0.0, x1_p2 = 0.0;
  double x2_p1 = 0.0, x2_p2 = 0.0;
};

/// X_j*/V_K*, X_j*/V_L*
struct EndowmentEffects {
  double x1_vk = 0.0, x1_vl = 0.0;
  double x2_vk = 0.0, x2_vl = 0.0;
};

/// V_T*/p_j*
struct EnergyImportEffects {
  double vt_p1 = 0.0;
  double vt_p2 = 0.0;
};

inline constexpr double kStaticsTolerance = 1e-10;

/// -CT1/Delta and CT2/Delta; cross-checked against the factored form in the
/// ratio vector when g_LT != 0 (ExpansionMismatch on disagreement).
EnergyPriceEffects energy_price_effects(const ModelShares& shares, const EwsTerms& ews, const CofactorSet& cof);

PriceEffects commodity_price_effects(const ModelShares& shares, const EwsTerms& ews, const CofactorSet& cof);

/// Rybczynski-type effects. Signs must be (-, +, +, -); SignContractViolation otherwise.
EndowmentEffects endowment_effects(const ModelShares& shares, const EwsTerms& ews, const CofactorSet& cof);

/// Samuelson reciprocity V_T*/p_j* = -(theta_j/theta_T) X_j*/w_T*, checked
/// against a direct solve (ReciprocityViolation on disagreement).
EnergyImportEffects energy_import_effects(const ModelShares& shares, const EwsTerms& ews, const CofactorSet& cof,
                                          const EnergyPriceEffects& energy);

enum class LineLabel { T1, T2, L21 };
const char* to_string(LineLabel l);

/// U' = slope * S' + intercept
struct LineSpec {
  LineLabel label = LineLabel::T1;
  double slope = 0.0;
  double intercept = 0.0;

  double at(double s_prime) const { return slope * s_prime + intercept; }
};

struct KeyPoints {
  RatioVector q;
  RatioVector r_t1;
  RatioVector r_t2;
};

struct Geometry {
  LineSpec t1;
  LineSpec t2;
  LineSpec l21;
  KeyPoints points;
};

/// Lines T1, T2, 21 and points Q, R_T1, R_T2 with all incidence checks
/// (IncidenceViolation on failure).
Geometry geometry(const ModelShares& shares);

enum class EnergySubregion { P1, P2, P3, M1, M2, M3 };
enum class CommoditySubregion { Pa, Pb, Ma };
const char* to_string(EnergySubregion r);
const char* to_string(CommoditySubregion r);

/// Predicted sgn(X_1*/w_T*, X_2*/w_T*) for a subregion.
std::array<int, 2> predicted_energy_signs(EnergySubregion r);
/// Predicted sgn(X_1*/p_2*) for a subregion.
int predicted_cross_sign(CommoditySubregion r);

inline constexpr double kBorderTolerance = 1e-10;

/// Sign-triple lookup that tolerates borders; used by the sweep.
struct RegionProbe {
  int t_sign = 0;
  double gap_t1 = 0.0;  // U' - f_T1(S')
  double gap_t2 = 0.0;
  double gap_21 = 0.0;
  bool energy_boundary = false;
  bool commodity_boundary = false;
  std::optional<EnergySubregion> energy;        // empty on a border or for an unmapped triple
  std::optional<CommoditySubregion> commodity;  // likewise
};

RegionProbe probe_regions(const Geometry& geo, const RatioVector& r, int t_sign);

struct Classification {
  RatioVector ratio;
  QuadrantReport quadrant;
  EnergySubregion energy = EnergySubregion::P1;
  CommoditySubregion commodity = CommoditySubregion::Pa;
  std::array<int, 2> predicted_energy{};
  int predicted_cross = 0;
  /// (S, T, U) = (+, +, -): energy and capital are economy-wide complements.
  bool theorem1 = false;
  /// Positive cross-price effect X_1*/p_2* (subregion Pb).
  bool theorem2 = false;
  double gap_t1 = 0.0;
  double gap_t2 = 0.0;
  double gap_21 = 0.0;
};

/// Throws DegenerateRatio, BoundaryAmbiguity or UnmappedRegion.
Classification classify(const ModelShares& shares, const EwsTerms& ews);

struct StaticsReport {
  double delta = 0.0;
  CofactorSet cofactors;
  EnergyPriceEffects energy_price;
  PriceEffects prices;
  EndowmentEffects endowments;
  EnergyImportEffects energy_imports;
  Geometry geo;
  std::optional<Classification> classification;
  /// Set when classification was refused: the error code and message.
  std::optional<ErrorCode> classification_error;
  std::string classification_reason;
};

StaticsReport analyze(const ModelShares& shares, const EwsTerms& ews);

}  // namespace ews
