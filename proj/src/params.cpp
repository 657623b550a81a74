#include "ews/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ews {

namespace {

using nlohmann::json;

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParamError(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParamError(where + "." + key + " is missing");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParamError(where + " must be a number");
  return v.get<double>();
}

std::array<double, 2> pair_of(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParamError(where + " must be a two-element array [sector1, sector2]");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

OffDiagonalAes offdiag(const json& v, const std::string& where) {
  return {number(require(v, "LK", where), where + ".LK"), number(require(v, "LT", where), where + ".LT"),
          number(require(v, "KT", where), where + ".KT")};
}

std::array<double, 3> factor_triple(const json& v, const std::string& where) {
  std::array<double, 3> out{};
  for (Factor f : kFactors) {
    const std::string key(name(f));
    out[idx(f)] = number(require(v, key.c_str(), where), where + "." + key);
  }
  return out;
}

OracleParams oracle_section(const json& o) {
  const std::string where = "oracle";
  if (!o.is_object()) throw ParamError("oracle must be an object");
  OracleParams p;
  if (auto it = o.find("family"); it != o.end()) {
    if (!it->is_string()) throw ParamError("oracle.family must be a string");
    const auto fam = it->get<std::string>();
    if (fam == "cobb_douglas") {
      p.family = Technology::CobbDouglas;
    } else if (fam == "ces") {
      p.family = Technology::Ces;
    } else {
      throw ParamError("oracle.family must be \"cobb_douglas\" or \"ces\", got \"" + fam + "\"");
    }
  }
  if (auto it = o.find("exponents"); it != o.end()) {
    p.exponents = std::array<std::array<double, 3>, 2>{factor_triple(require(*it, "sector1", where + ".exponents"),
                                                                     where + ".exponents.sector1"),
                                                       factor_triple(require(*it, "sector2", where + ".exponents"),
                                                                     where + ".exponents.sector2")};
  }
  if (auto it = o.find("scale"); it != o.end()) p.scale = pair_of(*it, where + ".scale");
  if (auto it = o.find("elasticity"); it != o.end()) {
    if (it->is_number()) {
      p.elasticity = {it->get<double>(), it->get<double>()};
    } else {
      p.elasticity = pair_of(*it, where + ".elasticity");
    }
  }
  if (auto it = o.find("endowments"); it != o.end()) {
    p.v_k = number(require(*it, "K", where + ".endowments"), where + ".endowments.K");
    p.v_l = number(require(*it, "L", where + ".endowments"), where + ".endowments.L");
  }
  if (auto it = o.find("prices"); it != o.end()) {
    if (!it->is_object()) throw ParamError("oracle.prices must be an object");
    if (it->contains("p1")) p.p1 = number((*it)["p1"], where + ".prices.p1");
    if (it->contains("p2")) p.p2 = number((*it)["p2"], where + ".prices.p2");
    if (it->contains("wT")) p.w_t = number((*it)["wT"], where + ".prices.wT");
  }
  if (auto it = o.find("step"); it != o.end()) p.step = number(*it, where + ".step");
  return p;
}

}  // namespace

Params parse_params(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParamError("JSON syntax error at " + location(text, at) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParamError("parameter file must contain a JSON object");

  Params p;
  const json& shares = require(doc, "shares", "(root)");
  const json& theta = require(shares, "theta", "shares");
  for (Factor f : kFactors) {
    const std::string key(name(f));
    const auto col = pair_of(require(theta, key.c_str(), "shares.theta"), "shares.theta." + key);
    p.theta[idx(f)] = {col[0], col[1]};
  }
  p.theta_good_1 = number(require(shares, "theta_good_1", "shares"), "shares.theta_good_1");

  const bool has_aes = doc.contains("aes");
  const bool has_ews = doc.contains("ews");
  if (has_aes && has_ews) throw ParamError("\"aes\" and \"ews\" sections are mutually exclusive");
  if (has_aes) {
    const json& aes = doc["aes"];
    p.aes = std::pair{offdiag(require(aes, "sector1", "aes"), "aes.sector1"),
                      offdiag(require(aes, "sector2", "aes"), "aes.sector2")};
  }
  if (has_ews) {
    const json& e = doc["ews"];
    p.reduced = EwsTriple{number(require(e, "S", "ews"), "ews.S"), number(require(e, "T", "ews"), "ews.T"),
                          number(require(e, "U", "ews"), "ews.U")};
  }
  if (doc.contains("oracle")) p.oracle = oracle_section(doc["oracle"]);
  return p;
}

Params load_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParamError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_params(buf.str());
}

EwsTerms build_ews(const Params& p, const ModelShares& shares) {
  if (p.aes) {
    const SectorAes s1 = build_sector_aes(Sector::One, p.aes->first, shares);
    const SectorAes s2 = build_sector_aes(Sector::Two, p.aes->second, shares);
    return compute_ews(shares, s1, s2);
  }
  if (p.reduced) return ews_from_triple(shares, *p.reduced);
  throw ParamError("parameter file needs an \"aes\" or an \"ews\" section");
}

PrimitiveEconomy build_economy(const Params& p, const ModelShares& shares) {
  if (!p.oracle) return calibrate_economy(shares, Technology::CobbDouglas);
  const OracleParams& o = *p.oracle;
  PrimitiveEconomy econ = calibrate_economy(shares, o.family, o.elasticity[0]);
  for (std::size_t s = 0; s < 2; ++s) {
    auto& tech = econ.sectors[s];
    if (o.exponents) tech.weights = (*o.exponents)[s];
    if (o.family == Technology::Ces) tech.elasticity = o.elasticity[s];
    if (o.scale) {
      tech.scale = (*o.scale)[s];
    } else if (o.family == Technology::CobbDouglas) {
      double log_scale = 0.0;
      for (double b : tech.weights) log_scale -= b > 0.0 ? b * std::log(b) : 0.0;
      tech.scale = std::exp(log_scale);
    }
  }
  if (o.v_k) econ.v_k = *o.v_k;
  if (o.v_l) econ.v_l = *o.v_l;
  econ.p1 = o.p1;
  econ.p2 = o.p2;
  econ.w_t = o.w_t;
  return econ;
}

double oracle_step(const Params& p) { return p.oracle ? p.oracle->step : kDefaultStep; }

}  // namespace ews
