#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ews/audit.hpp"
#include "ews/comparative_statics.hpp"
#include "ews/oracle.hpp"

namespace ews {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON with %.17g floats, -0 written as 0 and non-finite
/// numbers as null. Key order is insertion order.
std::string serialize(const Json& value, int indent = 2);

struct AuditBundle {
  IdentityReport identities;
  RootReport roots;
  DiscrepancyReport thompson;
};

AuditBundle run_audit(const ModelShares& shares, const EwsTerms& ews);

Json shares_json(const ModelShares& shares);
Json ews_json(const EwsTerms& ews, const std::optional<std::pair<SectorAes, SectorAes>>& aes);
Json geometry_json(const Geometry& geo);
Json classification_json(const StaticsReport& report, const EwsTerms& ews);
Json audit_json(const AuditBundle& audit);
Json oracle_json(const OracleReport& report, const PrimitiveEconomy& econ, const Equilibrium& eq);

Json report_json(const ModelShares& shares, const EwsTerms& ews,
                 const std::optional<std::pair<SectorAes, SectorAes>>& aes = std::nullopt);

// ---- sweep ----

struct GridSpec {
  enum class Kind { Ratio, Aes } kind = Kind::Ratio;
  double s_min = -3.0, s_max = 3.0;
  double u_min = -3.0, u_max = 3.0;
  double step = 0.05;
  std::size_t draws = 0;
  std::string text = "ratio:-3:3:0.05";
};

inline constexpr const char* kDefaultGrid = "ratio:-3:3:0.05";

/// "ratio:MIN:MAX:STEP", "ratio:SMIN:SMAX:UMIN:UMAX:STEP" or "aes:N".
/// Throws ParamError on a malformed spec.
GridSpec parse_grid(const std::string& spec);

struct SweepRow {
  double s_prime = 0.0;
  double u_prime = 0.0;
  int t_sign = 0;
  std::string energy;     // subregion, "boundary", "infeasible" or "degenerate"
  std::string commodity;
  std::optional<int> x1_wt_sign;
  std::optional<int> x2_wt_sign;
  std::optional<int> x1_p2_sign;
  bool mismatch = false;  // predicted and computed signs disagree
};

struct SweepResult {
  GridSpec grid;
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;
};

SweepResult run_sweep(const ModelShares& shares, const GridSpec& grid, std::uint64_t seed);

inline constexpr const char* kSweepHeader =
    "s_prime,u_prime,T_sign,energy_subregion,commodity_subregion,x1_wt_sign,x2_wt_sign,x1_p2_sign";

std::string sweep_csv(const SweepResult& result);
Json sweep_summary(const SweepResult& result);

// ---- plot ----

struct Viewport {
  double s_min = -4.0, s_max = 4.0;
  double u_min = -8.0, u_max = 4.0;
};

/// Figure 1: lines T1, T2 and the energy subregions. Figure 2: line 21 and
/// the commodity subregions. The current ratio is drawn when given.
std::string render_svg(const ModelShares& shares, const std::optional<RatioVector>& current, int t_sign, int figure,
                       const Viewport& view = {});

}  // namespace ews
