#pragma once

#include <doctest.h>

#include "ews/comparative_statics.hpp"
#include "ews/error.hpp"
#include "ews/model_core.hpp"
#include "ews/substitution.hpp"

namespace fx {

using namespace ews;

inline ModelShares cp1() { return build_shares(canonical_share_table(), kCanonicalThetaGood1); }

inline OffDiagonalAes unit_aes() { return {1.0, 1.0, 1.0}; }

struct Fixture {
  ModelShares shares;
  SectorAes sector1;
  SectorAes sector2;
  EwsTerms ews;
};

inline Fixture with_aes(const ModelShares& sh, const OffDiagonalAes& a1, const OffDiagonalAes& a2) {
  SectorAes s1 = build_sector_aes(Sector::One, a1, sh);
  SectorAes s2 = build_sector_aes(Sector::Two, a2, sh);
  EwsTerms g = compute_ews(sh, s1, s2);
  return {sh, s1, s2, g};
}

inline Fixture cp1_cobb_douglas() { return with_aes(cp1(), unit_aes(), unit_aes()); }

inline Fixture pb1() {
  return with_aes(cp1(), {-0.42105, 1.0, 0.95}, {-0.42105, 1.3, 0.95});
}

/// Relative closeness with the same floor the library uses.
inline bool close(double a, double b, double rel = 1e-12) { return approx_equal(a, b, rel); }

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const ModelError& e) {
    return e.code();
  }
  FAIL("expected a ModelError");
  return ErrorCode::InvalidInput;
}

}  // namespace fx
