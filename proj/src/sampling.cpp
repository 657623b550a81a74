#include "ews/sampling.hpp"

#include <cmath>
#include <optional>

#include "ews/error.hpp"

namespace ews {

namespace {

std::optional<Draw> try_draw(const ModelShares& sh, const OffDiagonalAes& o1, const OffDiagonalAes& o2) {
  try {
    SectorAes s1 = build_sector_aes(Sector::One, o1, sh);
    SectorAes s2 = build_sector_aes(Sector::Two, o2, sh);
    if (!s1.negative_semidefinite() || !s2.negative_semidefinite()) return std::nullopt;
    EwsTerms g = compute_ews(sh, s1, s2);
    return Draw{sh, o1, o2, s1, s2, g};
  } catch (const ModelError& e) {
    if (e.code() == ErrorCode::QuasiConcavityViolation || e.code() == ErrorCode::InfeasibleEws) return std::nullopt;
    throw;
  }
}

}  // namespace

DrawSampler::DrawSampler(std::uint64_t seed, SamplerLimits limits) : rng_(seed), limits_(limits) {}

ModelShares DrawSampler::shares() {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> good(limits_.min_theta_good, limits_.max_theta_good);
  for (;;) {
    ShareTable t{};
    for (std::size_t s = 0; s < 2; ++s) {
      double e[3] = {expo(rng_), expo(rng_), expo(rng_)};
      const double sum = e[0] + e[1] + e[2];
      for (std::size_t f = 0; f < 3; ++f) t[f][s] = e[f] / sum;
    }
    const double theta_1 = good(rng_);
    bool ok = satisfies_ranking(t);
    for (const auto& row : t) {
      for (double v : row) ok = ok && v >= limits_.min_share;
    }
    const double det = t[idx(Factor::K)][0] * t[idx(Factor::L)][1] - t[idx(Factor::K)][1] * t[idx(Factor::L)][0];
    ok = ok && std::fabs(det) >= limits_.min_intensity_det;
    if (ok) return build_shares(t, theta_1);
    ++share_rejections_;
  }
}

Draw DrawSampler::draw_on(const ModelShares& sh) {
  std::uniform_real_distribution<double> aes(limits_.aes_low, limits_.aes_high);
  for (;;) {
    const OffDiagonalAes o1{aes(rng_), aes(rng_), aes(rng_)};
    const OffDiagonalAes o2{aes(rng_), aes(rng_), aes(rng_)};
    if (auto d = try_draw(sh, o1, o2)) return *d;
    ++aes_rejections_;
  }
}

Draw DrawSampler::next() { return draw_on(shares()); }

}  // namespace ews
