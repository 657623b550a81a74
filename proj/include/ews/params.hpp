#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "ews/model_core.hpp"
#include "ews/oracle.hpp"
#include "ews/substitution.hpp"

namespace ews {

/// Malformed or structurally wrong parameter file (as opposed to values that
/// fail model validation, which raise ModelError).
class ParamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleParams {
  Technology family = Technology::CobbDouglas;
  /// Per-sector exponents / weights; taken from the shares when absent.
  std::optional<std::array<std::array<double, 3>, 2>> exponents;
  std::optional<std::array<double, 2>> scale;
  std::array<double, 2> elasticity{1.0, 1.0};
  std::optional<double> v_k;
  std::optional<double> v_l;
  double p1 = 1.0;
  double p2 = 1.0;
  double w_t = 1.0;
  double step = kDefaultStep;
};

struct Params {
  ShareTable theta{};
  double theta_good_1 = 0.5;
  std::optional<std::pair<OffDiagonalAes, OffDiagonalAes>> aes;
  std::optional<EwsTriple> reduced;
  std::optional<OracleParams> oracle;
};

/// Parses a parameter document. Syntax errors report line and column.
Params parse_params(const std::string& text);
Params load_params(const std::filesystem::path& path);

/// Builds the EWS terms from the "aes" or "ews" section.
/// Throws ParamError when neither is present.
EwsTerms build_ews(const Params& params, const ModelShares& shares);

/// The oracle economy: explicit "oracle" section, or a calibrated
/// Cobb-Douglas economy on the shares when the section is missing.
PrimitiveEconomy build_economy(const Params& params, const ModelShares& shares);
double oracle_step(const Params& params);

}  // namespace ews
