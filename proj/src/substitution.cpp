#include "ews/substitution.hpp"

#include <cmath>
#include <sstream>

#include "ews/error.hpp"

namespace ews {

namespace {

constexpr double kInvariantTolerance = 1e-12;

// Checks shared by both construction routes.
void check_feasible(const FactorMatrix& g, const ModelShares& shares) {
  for (Factor f : kFactors) {
    if (!(g[idx(f)][idx(f)] < 0.0)) {
      std::ostringstream msg;
      msg << "g_" << name(f) << name(f) << " = " << g[idx(f)][idx(f)] << " is not negative";
      throw ModelError(ErrorCode::InfeasibleEws, msg.str());
    }
  }
  const double s = g[idx(Factor::L)][idx(Factor::K)];
  const double t = g[idx(Factor::L)][idx(Factor::T)];
  const double u = g[idx(Factor::K)][idx(Factor::T)];
  const int negatives = (s < 0.0) + (t < 0.0) + (u < 0.0);
  if (negatives > 1) {
    throw ModelError(ErrorCode::InfeasibleEws, "more than one of (g_LK, g_LT, g_KT) is negative");
  }
  if (std::fabs(t) >= kDegenerateT) {
    const RatioVector r{s / t, u / t};
    if (!ratio_feasible(r, sign_of(t), shares)) {
      std::ostringstream msg;
      msg << "ratio vector (" << r.s_prime << ", " << r.u_prime << ") lies outside the boundary";
      throw ModelError(ErrorCode::InfeasibleEws, msg.str());
    }
  }
}

}  // namespace

SectorAes build_sector_aes(Sector sector, const OffDiagonalAes& offdiag, const ModelShares& shares) {
  if (!std::isfinite(offdiag.lk) || !std::isfinite(offdiag.lt) || !std::isfinite(offdiag.kt)) {
    throw ModelError(ErrorCode::InvalidInput, "non-finite AES");
  }
  SectorAes a;
  a.sector_ = sector;
  auto set = [&](Factor i, Factor h, double v) {
    a.sigma_[idx(i)][idx(h)] = v;
    a.sigma_[idx(h)][idx(i)] = v;
  };
  set(Factor::L, Factor::K, offdiag.lk);
  set(Factor::L, Factor::T, offdiag.lt);
  set(Factor::K, Factor::T, offdiag.kt);

  for (Factor i : kFactors) {
    double acc = 0.0;
    for (Factor h : kFactors) {
      if (h != i) acc += shares.theta(h, sector) * a.sigma_[idx(i)][idx(h)];
    }
    const double diag = -acc / shares.theta(i, sector);
    if (!(diag < 0.0)) {
      std::ostringstream msg;
      msg << "sector " << name(sector) << ": derived sigma_" << name(i) << name(i) << " = " << diag
          << " is not negative";
      throw ModelError(ErrorCode::QuasiConcavityViolation, msg.str());
    }
    a.sigma_[idx(i)][idx(i)] = diag;
  }

  // Share-weighted matrix is a negated weighted Laplacian; with positive
  // diagonals it is NSD of rank 2 iff the pairwise weight products sum > 0.
  const double tt = shares.theta(Factor::T, sector);
  const double tk = shares.theta(Factor::K, sector);
  const double tl = shares.theta(Factor::L, sector);
  const double w_lk = tl * tk * offdiag.lk;
  const double w_lt = tl * tt * offdiag.lt;
  const double w_kt = tk * tt * offdiag.kt;
  a.nsd_ = w_lk * w_lt + w_lt * w_kt + w_kt * w_lk > 0.0;
  return a;
}

std::optional<RatioVector> EwsTerms::ratio() const {
  const auto stu = triple();
  if (std::fabs(stu.t) < kDegenerateT) return std::nullopt;
  return RatioVector{stu.s / stu.t, stu.u / stu.t};
}

RatioVector EwsTerms::require_ratio() const {
  auto r = ratio();
  if (!r) throw ModelError(ErrorCode::DegenerateRatio, "g_LT is zero; the EWS-ratio vector is undefined");
  return *r;
}

EwsTerms EwsTerms::unchecked(const FactorMatrix& g, bool reduced) {
  EwsTerms e;
  e.g_ = g;
  e.reduced_ = reduced;
  return e;
}

EwsTerms compute_ews(const ModelShares& shares, const SectorAes& sector1, const SectorAes& sector2) {
  const std::array<const SectorAes*, 2> aes{&sector1, &sector2};
  FactorMatrix g{};
  for (Factor i : kFactors) {
    for (Factor h : kFactors) {
      double acc = 0.0;
      for (Sector s : kSectors) {
        acc += shares.lambda(i, s) * shares.theta(h, s) * aes[idx(s)]->sigma(i, h);
      }
      g[idx(i)][idx(h)] = acc;
    }
  }

  for (Factor i : kFactors) {
    double row = 0.0;
    double scale = 0.0;
    for (Factor h : kFactors) {
      row += g[idx(i)][idx(h)];
      scale = std::max(scale, std::fabs(g[idx(i)][idx(h)]));
    }
    if (std::fabs(row) > kInvariantTolerance * std::max(1.0, scale)) {
      throw ModelError(ErrorCode::InfeasibleEws, "EWS row sum does not vanish");
    }
    for (Factor h : kFactors) {
      const double cross = shares.theta_factor(h) / shares.theta_factor(i) * g[idx(h)][idx(i)];
      if (!approx_equal(g[idx(i)][idx(h)], cross, kInvariantTolerance)) {
        throw ModelError(ErrorCode::InfeasibleEws, "EWS cross relation g_ih = (theta_h/theta_i) g_hi fails");
      }
    }
  }
  check_feasible(g, shares);

  EwsTerms e;
  e.g_ = g;
  e.reduced_ = false;
  return e;
}

EwsTerms ews_from_triple(const ModelShares& shares, const EwsTriple& stu) {
  if (!std::isfinite(stu.s) || !std::isfinite(stu.t) || !std::isfinite(stu.u)) {
    throw ModelError(ErrorCode::InvalidInput, "non-finite EWS");
  }
  const double th_t = shares.theta_factor(Factor::T);
  const double th_k = shares.theta_factor(Factor::K);
  const double th_l = shares.theta_factor(Factor::L);
  FactorMatrix g{};
  auto at = [&](Factor i, Factor h) -> double& { return g[idx(i)][idx(h)]; };
  at(Factor::L, Factor::K) = stu.s;
  at(Factor::L, Factor::T) = stu.t;
  at(Factor::K, Factor::T) = stu.u;
  at(Factor::K, Factor::L) = th_l / th_k * stu.s;
  at(Factor::T, Factor::L) = th_l / th_t * stu.t;
  at(Factor::T, Factor::K) = th_k / th_t * stu.u;
  for (Factor i : kFactors) {
    double off = 0.0;
    for (Factor h : kFactors) {
      if (h != i) off += at(i, h);
    }
    at(i, i) = -off;
  }
  check_feasible(g, shares);

  EwsTerms e;
  e.g_ = g;
  e.reduced_ = true;
  return e;
}

double boundary_value(double s_prime, const ModelShares& shares) {
  if (std::fabs(s_prime + 1.0) < kDegenerateT) {
    throw ModelError(ErrorCode::AsymptoteError, "S' = -1 is the vertical asymptote of the boundary");
  }
  return -(shares.theta_factor(Factor::L) / shares.theta_factor(Factor::K)) * s_prime / (s_prime + 1.0);
}

bool ratio_feasible(const RatioVector& r, int t_sign, const ModelShares& shares) {
  if (t_sign == 0 || std::fabs(r.s_prime + 1.0) < kDegenerateT) return false;
  // sgn(S'+1) = sgn T follows from g_LL < 0.
  if (sign_of(r.s_prime + 1.0) != t_sign) return false;
  const double b = boundary_value(r.s_prime, shares);
  return t_sign > 0 ? r.u_prime > b : r.u_prime < b;
}

QuadrantReport quadrant_of(const RatioVector& r) {
  QuadrantReport q;
  const int ss = std::fabs(r.s_prime) < kDegenerateT ? 0 : sign_of(r.s_prime);
  const int us = std::fabs(r.u_prime) < kDegenerateT ? 0 : sign_of(r.u_prime);
  if (ss == 0 || us == 0) {
    q.quadrant = Quadrant::Axis;
  } else if (ss > 0 && us > 0) {
    q.quadrant = Quadrant::I;
  } else if (ss < 0 && us > 0) {
    q.quadrant = Quadrant::II;
    q.complements = std::pair{Factor::K, Factor::L};
  } else if (ss < 0 && us < 0) {
    q.quadrant = Quadrant::III;
    q.complements = std::pair{Factor::L, Factor::T};
  } else {
    q.quadrant = Quadrant::IV;
    q.complements = std::pair{Factor::K, Factor::T};
  }
  return q;
}

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::I: return "I";
    case Quadrant::II: return "II";
    case Quadrant::III: return "III";
    case Quadrant::IV: return "IV";
    case Quadrant::Axis: return "axis";
  }
  return "?";
}

}  // namespace ews
