#pragma once

// Curve and parameter-set files.
//
//   curve:  {"a0": 1.0, "cos": [a1, a2, ...], "sin": [b1, b2, ...], "margin": 0.001}
//   params: {"alpha": .., "delta": .., "mu": .., "sigma": .., "eta": .., "lambda": .., "xi": .., "zeta": ..}
//       or  {"preset": "cor_3_6", "epsilon": 0.25}

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoperim/curve_model.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/inequality.hpp"

namespace isoperim {

using json = nlohmann::json;

namespace detail {

inline double finite_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(what + ": value is not finite");
  return v;
}

inline std::vector<double> finite_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(finite_number(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

inline json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    // parse_error for malformed text, out_of_range for overflowing numbers
    throw ParseError(what + ": " + e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline json curve_to_json(const SupportFourier& c) {
  return json{{"a0", c.a0()}, {"cos", c.cos_coeffs()}, {"sin", c.sin_coeffs()}, {"margin", c.margin()}};
}

inline SupportFourier curve_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("curve: expected an object");
  if (!j.contains("a0")) throw ParseError("curve: missing a0");
  const double a0 = detail::finite_number(j.at("a0"), "curve.a0");
  std::vector<double> c = j.contains("cos") ? detail::finite_array(j.at("cos"), "curve.cos") : std::vector<double>{};
  std::vector<double> s = j.contains("sin") ? detail::finite_array(j.at("sin"), "curve.sin") : std::vector<double>{};
  // Shorter list is zero-padded, so "sin": [] is allowed for symmetric curves.
  const std::size_t n = std::max(c.size(), s.size());
  c.resize(n, 0.0);
  s.resize(n, 0.0);
  const double margin = j.contains("margin") ? detail::finite_number(j.at("margin"), "curve.margin") : -1.0;
  if (j.contains("margin") && margin < 0.0) throw ParseError("curve.margin: must be non-negative");
  try {
    return SupportFourier(a0, std::move(c), std::move(s), margin);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("curve: ") + e.what());
  }
}

inline std::string write_curve(const SupportFourier& c) { return curve_to_json(c).dump(2) + "\n"; }

inline SupportFourier read_curve(const std::string& text) {
  return curve_from_json(detail::parse_text(text, "curve"));
}

inline SupportFourier load_curve(const std::filesystem::path& path) { return read_curve(detail::read_file(path)); }

inline json params_to_json(const ParamSet& p) {
  json j = json::object();
  const auto v = p.values();
  for (std::size_t i = 0; i < v.size(); ++i) j[std::string(ParamSet::kNames[i])] = v[i];
  return j;
}

inline ParamSet params_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("params: expected an object");
  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) throw ParseError("params.preset: expected a string");
    std::optional<double> eps;
    if (j.contains("epsilon")) eps = detail::finite_number(j.at("epsilon"), "params.epsilon");
    try {
      return preset(j.at("preset").get<std::string>(), eps);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("params: ") + e.what());
    }
  }
  std::array<double, 8> v{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string key(ParamSet::kNames[i]);
    if (!j.contains(key)) throw ParseError("params: missing " + key);
    v[i] = detail::finite_number(j.at(key), "params." + key);
  }
  return ParamSet::from_values(v);
}

inline ParamSet read_params(const std::string& text) { return params_from_json(detail::parse_text(text, "params")); }

inline ParamSet load_params(const std::filesystem::path& path) { return read_params(detail::read_file(path)); }

}  // namespace isoperim
