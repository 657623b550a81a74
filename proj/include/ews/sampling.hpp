#pragma once

#include <cstdint>
#include <random>

#include "ews/model_core.hpp"
#include "ews/substitution.hpp"

namespace ews {

/// One admissible parameter draw.
struct Draw {
  ModelShares shares;
  OffDiagonalAes offdiag1;
  OffDiagonalAes offdiag2;
  SectorAes sector1;
  SectorAes sector2;
  EwsTerms ews;
};

struct SamplerLimits {
  double min_share = 0.02;
  double min_theta_good = 0.1;
  double max_theta_good = 0.9;
  double min_intensity_det = 0.01;  // |theta_K1 theta_L2 - theta_K2 theta_L1|
  double aes_low = -2.0;
  double aes_high = 3.0;
};

/// Deterministic rejection sampler. Shares are uniform on each sector's
/// simplex subject to the ranking; off-diagonal AES are uniform on
/// [aes_low, aes_high] and kept only when both sectors are negative
/// semidefinite.
class DrawSampler {
 public:
  explicit DrawSampler(std::uint64_t seed, SamplerLimits limits = {});

  ModelShares shares();
  /// AES on fixed shares.
  Draw draw_on(const ModelShares& shares);
  Draw next();

  std::uint64_t share_rejections() const { return share_rejections_; }
  std::uint64_t aes_rejections() const { return aes_rejections_; }

 private:
  std::mt19937_64 rng_;
  SamplerLimits limits_;
  std::uint64_t share_rejections_ = 0;
  std::uint64_t aes_rejections_ = 0;
};

}  // namespace ews
