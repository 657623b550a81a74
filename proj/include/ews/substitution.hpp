#pragma once

#include <array>
#include <optional>
#include <utility>

#include "ews/model_core.hpp"

namespace ews {

/// User-supplied off-diagonal Allen elasticities of one sector.
struct OffDiagonalAes {
  double lk = 1.0;
  double lt = 1.0;
  double kt = 1.0;
};

using FactorMatrix = std::array<std::array<double, 3>, 3>;

/// Allen partial elasticities of one sector. Symmetric; diagonals are derived
/// so that the share-weighted row sums vanish.
class SectorAes {
 public:
  Sector sector() const { return sector_; }
  double sigma(Factor i, Factor h) const { return sigma_[idx(i)][idx(h)]; }
  const FactorMatrix& matrix() const { return sigma_; }
  /// True when theta_i theta_h sigma_ih is negative semidefinite with rank 2,
  /// i.e. the sector technology is strictly quasi-concave, not just diagonal-negative.
  bool negative_semidefinite() const { return nsd_; }

  friend SectorAes build_sector_aes(Sector, const OffDiagonalAes&, const ModelShares&);

 private:
  SectorAes() = default;
  Sector sector_ = Sector::One;
  FactorMatrix sigma_{};
  bool nsd_ = false;
};

/// Throws QuasiConcavityViolation if any derived diagonal is >= 0.
SectorAes build_sector_aes(Sector sector, const OffDiagonalAes& offdiag, const ModelShares& shares);

/// (S, T, U) = (g_LK, g_LT, g_KT).
struct EwsTriple {
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
};

/// The EWS-ratio vector (S', U') = (S/T, U/T).
struct RatioVector {
  double s_prime = 0.0;
  double u_prime = 0.0;
};

inline constexpr double kDegenerateT = 1e-12;

/// Economy-wide substitution terms g_ih.
class EwsTerms {
 public:
  double g(Factor i, Factor h) const { return g_[idx(i)][idx(h)]; }
  const FactorMatrix& matrix() const { return g_; }
  EwsTriple triple() const { return {g(Factor::L, Factor::K), g(Factor::L, Factor::T), g(Factor::K, Factor::T)}; }
  /// Empty when |T| < kDegenerateT.
  std::optional<RatioVector> ratio() const;
  /// Throws DegenerateRatio when the ratio is undefined.
  RatioVector require_ratio() const;
  /// Built from (S, T, U) directly rather than from sector AES.
  bool reduced() const { return reduced_; }

  friend EwsTerms compute_ews(const ModelShares&, const SectorAes&, const SectorAes&);
  friend EwsTerms ews_from_triple(const ModelShares&, const EwsTriple&);
  /// No validation at all. For diagnostics that must see broken inputs.
  static EwsTerms unchecked(const FactorMatrix& g, bool reduced = false);

 private:
  EwsTerms() = default;
  FactorMatrix g_{};
  bool reduced_ = false;
};

/// g_ih = sum_j lambda_ij theta_hj sigma^j_ih, validated (row sums, cross
/// relation, negative diagonals, at most one negative EWS, boundary feasibility).
EwsTerms compute_ews(const ModelShares& shares, const SectorAes& sector1, const SectorAes& sector2);

/// Reduced mode: reconstructs g from (S, T, U) through the row-sum and
/// cross relations. Enforces negative diagonals, at-most-one-negative and
/// boundary feasibility. Throws InfeasibleEws.
EwsTerms ews_from_triple(const ModelShares& shares, const EwsTriple& stu);

/// The boundary hyperbola U' = -(theta_L/theta_K) S'/(S'+1). Throws AsymptoteError at S' = -1.
double boundary_value(double s_prime, const ModelShares& shares);

/// Strict feasibility of a ratio vector for the given sign of T.
bool ratio_feasible(const RatioVector& r, int t_sign, const ModelShares& shares);

enum class Quadrant { I, II, III, IV, Axis };

struct QuadrantReport {
  Quadrant quadrant = Quadrant::Axis;
  /// The factor pair that is an economy-wide complement, if any.
  std::optional<std::pair<Factor, Factor>> complements;
};

QuadrantReport quadrant_of(const RatioVector& r);
const char* to_string(Quadrant q);

}  // namespace ews
