#include "ews/model_core.hpp"

#include <cmath>
#include <sstream>

#include "ews/error.hpp"

namespace ews {

std::string_view name(Factor f) {
  switch (f) {
    case Factor::T: return "T";
    case Factor::K: return "K";
    case Factor::L: return "L";
  }
  return "?";
}

std::string_view name(Sector s) { return s == Sector::One ? "1" : "2"; }

ShareTable canonical_share_table() {
  ShareTable t{};
  t[idx(Factor::T)] = {0.4, 0.2};
  t[idx(Factor::K)] = {0.25, 0.5};
  t[idx(Factor::L)] = {0.35, 0.3};
  return t;
}

bool satisfies_ranking(const ShareTable& theta) {
  const double rt = theta[idx(Factor::T)][0] / theta[idx(Factor::T)][1];
  const double rl = theta[idx(Factor::L)][0] / theta[idx(Factor::L)][1];
  const double rk = theta[idx(Factor::K)][0] / theta[idx(Factor::K)][1];
  const double e = theta[idx(Factor::L)][0] - theta[idx(Factor::L)][1];
  return rt - rl > kRankingMargin && rl - rk > kRankingMargin && e > kRankingMargin;
}

ModelShares build_shares(const ShareTable& theta_in, double theta_good_1) {
  if (!(theta_good_1 > 0.0 && theta_good_1 < 1.0)) {
    throw ModelError(ErrorCode::InvalidInput, "theta_good_1 must lie in (0,1)");
  }
  ShareTable theta = theta_in;
  for (Sector s : kSectors) {
    double sum = 0.0;
    for (Factor f : kFactors) {
      const double v = theta[idx(f)][idx(s)];
      if (!std::isfinite(v) || !(v > 0.0 && v < 1.0)) {
        std::ostringstream msg;
        msg << "theta_" << name(f) << name(s) << " = " << v << " is outside (0,1)";
        throw ModelError(ErrorCode::InvalidInput, msg.str());
      }
      sum += v;
    }
    if (std::fabs(sum - 1.0) > kColumnSumTolerance) {
      std::ostringstream msg;
      msg << "shares of sector " << name(s) << " sum to " << sum;
      throw ModelError(ErrorCode::ColumnSumViolation, msg.str());
    }
    for (Factor f : kFactors) theta[idx(f)][idx(s)] /= sum;
  }

  if (!satisfies_ranking(theta)) {
    std::ostringstream msg;
    msg << "need theta_T1/theta_T2 > theta_L1/theta_L2 > theta_K1/theta_K2 and theta_L1 > theta_L2; got ratios "
        << theta[0][0] / theta[0][1] << ", " << theta[2][0] / theta[2][1] << ", " << theta[1][0] / theta[1][1];
    throw ModelError(ErrorCode::RankingViolation, msg.str());
  }

  ModelShares m;
  m.theta_ = theta;
  m.theta_good_ = {theta_good_1, 1.0 - theta_good_1};
  for (Factor f : kFactors) {
    double tf = 0.0;
    for (Sector s : kSectors) tf += m.theta_good_[idx(s)] * theta[idx(f)][idx(s)];
    m.theta_factor_[idx(f)] = tf;
    for (Sector s : kSectors) {
      m.lambda_[idx(f)][idx(s)] = m.theta_good_[idx(s)] / tf * theta[idx(f)][idx(s)];
    }
  }
  m.gap_.energy = theta[idx(Factor::T)][0] - theta[idx(Factor::T)][1];
  m.gap_.capital = theta[idx(Factor::K)][0] - theta[idx(Factor::K)][1];
  m.gap_.labor = theta[idx(Factor::L)][0] - theta[idx(Factor::L)][1];
  return m;
}

RankingReport ranking_report(const ModelShares& shares) {
  RankingReport r;
  r.energy_ratio = shares.theta(Factor::T, Sector::One) / shares.theta(Factor::T, Sector::Two);
  r.labor_ratio = shares.theta(Factor::L, Sector::One) / shares.theta(Factor::L, Sector::Two);
  r.capital_ratio = shares.theta(Factor::K, Sector::One) / shares.theta(Factor::K, Sector::Two);
  const auto& g = shares.gap();
  r.gap_signs = {sign_of(g.energy), sign_of(g.capital), sign_of(g.labor)};
  return r;
}

}  // namespace ews
