#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace ews {

/// Factors of the 3x2 economy. T is imported energy, K capital, L labor.
enum class Factor : std::size_t { T = 0, K = 1, L = 2 };
enum class Sector : std::size_t { One = 0, Two = 1 };

inline constexpr std::array<Factor, 3> kFactors{Factor::T, Factor::K, Factor::L};
inline constexpr std::array<Sector, 2> kSectors{Sector::One, Sector::Two};

constexpr std::size_t idx(Factor f) { return static_cast<std::size_t>(f); }
constexpr std::size_t idx(Sector s) { return static_cast<std::size_t>(s); }
constexpr Sector other(Sector s) { return s == Sector::One ? Sector::Two : Sector::One; }

std::string_view name(Factor f);
std::string_view name(Sector s);

/// theta[factor][sector]
using ShareTable = std::array<std::array<double, 2>, 3>;

/// Inter-sectoral share differences (A, B, E) = theta_.1 - theta_.2 for T, K, L.
struct IntensityGap {
  double energy = 0.0;
  double capital = 0.0;
  double labor = 0.0;
};

/// Tolerance on column sums before a table is rejected instead of renormalised.
inline constexpr double kColumnSumTolerance = 1e-9;
/// Minimum separation of intensity ratios for the ranking to count as strict.
inline constexpr double kRankingMargin = 1e-9;

/// Share structure of the economy. Factor income shares and employment shares
/// are always derived from the distributive shares and the goods' income shares.
class ModelShares {
 public:
  double theta(Factor f, Sector s) const { return theta_[idx(f)][idx(s)]; }
  double theta_good(Sector s) const { return theta_good_[idx(s)]; }
  double theta_factor(Factor f) const { return theta_factor_[idx(f)]; }
  double lambda(Factor f, Sector s) const { return lambda_[idx(f)][idx(s)]; }
  const IntensityGap& gap() const { return gap_; }
  const ShareTable& table() const { return theta_; }

  friend ModelShares build_shares(const ShareTable& theta, double theta_good_1);

 private:
  ModelShares() = default;

  ShareTable theta_{};
  std::array<double, 2> theta_good_{};
  std::array<double, 3> theta_factor_{};
  ShareTable lambda_{};
  IntensityGap gap_{};
};

/// Validates and derives the full share structure.
/// Throws ModelError with InvalidInput, ColumnSumViolation or RankingViolation.
ModelShares build_shares(const ShareTable& theta, double theta_good_1);

/// The constructed admissible fixture used throughout the tests.
ShareTable canonical_share_table();
inline constexpr double kCanonicalThetaGood1 = 0.5;

/// True when theta satisfies theta_T1/theta_T2 > theta_L1/theta_L2 > theta_K1/theta_K2
/// and theta_L1 > theta_L2, each by more than kRankingMargin.
bool satisfies_ranking(const ShareTable& theta);

struct RankingReport {
  double energy_ratio = 0.0;   // theta_T1 / theta_T2
  double labor_ratio = 0.0;    // theta_L1 / theta_L2
  double capital_ratio = 0.0;  // theta_K1 / theta_K2
  Factor middle = Factor::L;
  std::array<Factor, 2> extremes{Factor::T, Factor::K};
  std::array<int, 3> gap_signs{};  // sgn(A, B, E)
};

RankingReport ranking_report(const ModelShares& shares);

}  // namespace ews
