#pragma once

// Batch front end shared by the isoperim tool and its tests.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isoperim/curve_model.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/inequality.hpp"
#include "isoperim/io.hpp"
#include "isoperim/oracle.hpp"
#include "isoperim/quantities.hpp"
#include "isoperim/stability.hpp"

namespace isoperim::cli {

inline constexpr const char* kToolName = "isoperim";
inline constexpr const char* kVersion = "1.0.0";

enum class Command { quantities, verify, params, stability, scan, gen, presets };
enum class OutputFormat { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::quantities: return "quantities";
    case Command::verify: return "verify";
    case Command::params: return "params";
    case Command::stability: return "stability";
    case Command::scan: return "scan";
    case Command::gen: return "gen";
    case Command::presets: return "presets";
  }
  return "unknown";
}

struct RunConfig {
  Command command = Command::presets;
  std::optional<std::string> curve_path;
  std::optional<std::string> params_path;
  std::optional<std::string> preset_name;
  std::optional<double> eps;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t max_harmonic = 8;
  double decay = 2.5;
  double margin = 0.05;
  std::optional<std::size_t> grid;  ///< oracle sample count for `quantities`
  std::optional<double> tol;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> output_path;
  bool timestamp = true;
  unsigned threads = 0;  ///< scan workers; 0 picks hardware concurrency
};

inline constexpr double kDefaultTol = 1e-8;

/// Ordered row of report cells.
using Row = std::vector<std::pair<std::string, json>>;

struct Report {
  json metadata = json::object();
  std::vector<Row> rows;
  json summary = json::object();
  int status = kExitOk;
};

namespace detail {

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

inline std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void flatten_into(const std::string& prefix, const json& j, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_into(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(), out);
  } else {
    out.push_back("# " + prefix + "=" + csv_cell(j));
  }
}

inline ParamSet resolve_params(const RunConfig& cfg, json& meta) {
  if (cfg.preset_name && cfg.params_path) throw std::invalid_argument("give either --preset or --params, not both");
  if (cfg.preset_name) {
    meta["preset"] = *cfg.preset_name;
    if (cfg.eps) meta["epsilon"] = *cfg.eps;
    return preset(*cfg.preset_name, cfg.eps);
  }
  if (cfg.params_path) {
    meta["params_path"] = *cfg.params_path;
    return load_params(*cfg.params_path);
  }
  throw std::invalid_argument("a parameter set is required (--preset NAME or --params PATH)");
}

inline SupportFourier resolve_curve(const RunConfig& cfg, json& meta) {
  if (!cfg.curve_path) throw std::invalid_argument("--curve PATH is required");
  meta["curve_path"] = *cfg.curve_path;
  return load_curve(*cfg.curve_path);
}

inline json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline void add_params(Row& row, const ParamSet& p) {
  const auto v = p.values();
  for (std::size_t i = 0; i < v.size(); ++i) row.emplace_back(std::string(ParamSet::kNames[i]), v[i]);
}

inline void add_quantities(Row& row, const QuantitySet& q) {
  row.emplace_back("L", q.L);
  row.emplace_back("A", q.A);
  row.emplace_back("A_tilde", q.A_tilde);
  row.emplace_back("A_tilde_abs", q.A_tilde_abs);
  row.emplace_back("int_rho_sq", q.int_rho_sq);
  row.emplace_back("int_rho_beta_sq", q.int_rho_beta_sq);
  row.emplace_back("rho_e", q.rho_e);
  row.emplace_back("rho_i", q.rho_i);
  row.emplace_back("rho_M", q.rho_M);
  row.emplace_back("rho_m", q.rho_m);
  row.emplace_back("int_kappa_sq_ds", q.int_kappa_sq_ds);
  row.emplace_back("provenance", std::string(to_string(q.provenance)));
}

inline void add_terms(Row& row, const WBreakdown& w) {
  row.emplace_back("W", w.W);
  for (std::size_t i = 0; i < w.terms.size(); ++i)
    row.emplace_back("term_" + std::string(ParamSet::kNames[i]), w.terms[i]);
}

inline void add_classical(Row& row, const ClassicalReport& c) {
  row.emplace_back("isoperimetric_ok", c.isoperimetric.holds);
  row.emplace_back("bonnesen_ok", c.bonnesen.holds);
  row.emplace_back("bottema_ok", c.bottema.holds);
  row.emplace_back("evolute_bound_ok", c.evolute_bound.holds);
  row.emplace_back("gage_ok", c.gage.holds);
}

// ---------------------------------------------------------------- commands

inline Report cmd_quantities(const RunConfig& cfg) {
  Report r;
  const double tol = cfg.tol.value_or(kDefaultTol);
  const auto curve = resolve_curve(cfg, r.metadata);
  const std::size_t m = cfg.grid.value_or(default_oracle_samples(curve.order()));
  r.metadata["tolerance"] = tol;
  r.metadata["grid"] = m;
  const auto cert = check_convexity(curve);
  if (!cert.pass) throw NotConvex(cert.min_rho, curve.margin());
  const auto q = full_quantities(curve);
  const auto cc = cross_check(curve, tol, m);
  Row row;
  row.emplace_back("curve_id", *cfg.curve_path);
  row.emplace_back("N", curve.order());
  row.emplace_back("min_rho", cert.min_rho);
  add_quantities(row, q);
  for (const auto& [name, d] : cc.deltas) row.emplace_back("delta_" + name, d);
  row.emplace_back("max_delta", cc.max_delta);
  row.emplace_back("cross_check_ok", cc.pass);
  r.rows.push_back(std::move(row));
  r.summary["pass"] = cc.pass;
  r.status = cc.pass ? kExitOk : kExitViolation;
  return r;
}

inline Row verify_row(const std::string& id, const ParamSet& p, const SupportFourier& curve, double tol,
                      bool& pass) {
  const auto q = full_quantities(curve);
  const auto ch = verify_chain(p, curve, q, tol);
  const auto cl = classical_checks(q, tol);
  Row row;
  row.emplace_back("curve_id", id);
  add_terms(row, ch.w);
  row.emplace_back("fourier_bound", ch.fourier_bound);
  row.emplace_back("uniform_bound", ch.uniform_bound);
  row.emplace_back("chain_tol", ch.tol);
  row.emplace_back("chain_ok", ch.chain_ok);
  add_classical(row, cl);
  pass = ch.chain_ok && cl.all();
  return row;
}

inline Report cmd_verify(const RunConfig& cfg) {
  Report r;
  const double tol = cfg.tol.value_or(kDefaultTol);
  const auto p = resolve_params(cfg, r.metadata);
  const auto curve = resolve_curve(cfg, r.metadata);
  r.metadata["tolerance"] = tol;
  r.metadata["params"] = params_to_json(p);
  bool pass = false;
  r.rows.push_back(verify_row(*cfg.curve_path, p, curve, tol, pass));
  r.summary["pass"] = pass;
  r.status = pass ? kExitOk : kExitViolation;
  return r;
}

inline Row params_row(const std::string& name, const ParamSet& p) {
  const auto c = check_conditions(p);
  Row row;
  row.emplace_back("name", name);
  add_params(row, p);
  row.emplace_back("ok_1_9", c.ok_1_9);
  row.emplace_back("ok_1_11", c.ok_1_11);
  row.emplace_back("ok_1_12", c.ok_1_12);
  row.emplace_back("ok_1_13", c.ok_1_13);
  row.emplace_back("ok_3_2", c.ok_3_2);
  row.emplace_back("D", c.D);
  row.emplace_back("a0_block", c.a0_block);
  row.emplace_back("quadratic_coeff", c.quadratic_coeff);
  row.emplace_back("disk_block", c.disk_block);
  row.emplace_back("f2", f_poly(p, 2));
  std::optional<double> c2, c3;
  if (forms::discriminant(p).positive()) {
    const auto k = stability_constants(p);
    c2 = k.C2;
    c3 = k.C3;
  }
  row.emplace_back("C2", nullable(c2));
  row.emplace_back("C3", nullable(c3));
  row.emplace_back("classification", std::string(to_string(classify_stability(p))));
  row.emplace_back("failed_line", c.failed_line_1_9);
  return row;
}

inline Report cmd_params(const RunConfig& cfg) {
  Report r;
  const auto p = resolve_params(cfg, r.metadata);
  r.metadata["condition_slack"] = kConditionSlack;
  r.rows.push_back(params_row(cfg.preset_name.value_or(cfg.params_path.value_or("params")), p));
  r.status = kExitOk;
  return r;
}

inline Report cmd_stability(const RunConfig& cfg) {
  Report r;
  const double tol = cfg.tol.value_or(kDefaultTol);
  const auto p = resolve_params(cfg, r.metadata);
  const auto curve = resolve_curve(cfg, r.metadata);
  r.metadata["tolerance"] = tol;
  r.metadata["params"] = params_to_json(p);
  const auto s = verify_stability(p, curve, tol);
  Row row;
  row.emplace_back("curve_id", *cfg.curve_path);
  row.emplace_back("steiner_x", s.steiner.center.x);
  row.emplace_back("steiner_y", s.steiner.center.y);
  row.emplace_back("steiner_radius", s.steiner.radius);
  row.emplace_back("W", s.W);
  row.emplace_back("h1", s.h1);
  row.emplace_back("h1_sq", s.h1_sq);
  row.emplace_back("h2_sq", s.h2_sq);
  row.emplace_back("C2", s.C2);
  row.emplace_back("C3", s.C3);
  row.emplace_back("C2_W", s.C2 * s.W);
  row.emplace_back("C3_W", s.C3 * s.W);
  row.emplace_back("bound_1_14_ok", s.bound_1_14_ok);
  row.emplace_back("bound_1_15_ok", s.bound_1_15_ok);
  row.emplace_back("classification", std::string(to_string(s.classification)));
  r.rows.push_back(std::move(row));
  const bool pass = s.bound_1_14_ok && s.bound_1_15_ok;
  r.summary["pass"] = pass;
  r.status = pass ? kExitOk : kExitViolation;
  return r;
}

inline Report cmd_scan(const RunConfig& cfg) {
  Report r;
  const double tol = cfg.tol.value_or(kDefaultTol);
  const auto p = resolve_params(cfg, r.metadata);
  r.metadata["tolerance"] = tol;
  r.metadata["params"] = params_to_json(p);
  r.metadata["seed"] = cfg.seed;
  r.metadata["count"] = cfg.count;
  r.metadata["max_harmonic"] = cfg.max_harmonic;
  r.metadata["decay"] = cfg.decay;
  r.metadata["margin"] = cfg.margin;

  const auto cond = check_conditions(p);
  if (!cond.ok_1_9) throw ConditionNotMet("admissibility", cond.failed_line_1_9);

  struct Outcome {
    Row row;
    double W = 0.0;
    double violation = 0.0;
    bool pass = false;
  };
  std::vector<Outcome> out(cfg.count);
  auto work = [&](std::size_t i) {
    const std::uint64_t s = cfg.seed + i;
    Outcome& o = out[i];
    o.row.emplace_back("curve_id", "seed:" + std::to_string(s));
    try {
      const auto curve = random_convex_curve(s, cfg.max_harmonic, cfg.decay, cfg.margin);
      const auto q = full_quantities(curve);
      const auto ch = verify_chain(p, curve, q, tol);
      const auto cl = classical_checks(q, tol);
      const double scale = std::max(1.0, ch.w.abs_sum());
      o.W = ch.w.W;
      o.violation = std::max({0.0, -ch.w.W, ch.fourier_bound - ch.w.W, ch.uniform_bound - ch.fourier_bound,
                              -ch.uniform_bound}) /
                    scale;
      o.pass = ch.chain_ok && cl.all();
      o.row.emplace_back("W", ch.w.W);
      o.row.emplace_back("fourier_bound", ch.fourier_bound);
      o.row.emplace_back("uniform_bound", ch.uniform_bound);
      o.row.emplace_back("rel_violation", o.violation);
      o.row.emplace_back("chain_ok", ch.chain_ok);
      o.row.emplace_back("classical_ok", cl.all());
      o.row.emplace_back("error", "");
    } catch (const std::exception& e) {
      o.pass = false;
      o.W = std::numeric_limits<double>::quiet_NaN();
      for (const char* k : {"W", "fourier_bound", "uniform_bound", "rel_violation"}) o.row.emplace_back(k, nullptr);
      o.row.emplace_back("chain_ok", false);
      o.row.emplace_back("classical_ok", false);
      o.row.emplace_back("error", std::string(e.what()));
    }
  };

  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, cfg.count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < cfg.count; i += workers) work(i);
      });
  }

  std::size_t passed = 0;
  double min_w = std::numeric_limits<double>::infinity();
  double max_violation = 0.0;
  for (auto& o : out) {
    passed += o.pass ? 1 : 0;
    if (!std::isnan(o.W)) min_w = std::min(min_w, o.W);
    max_violation = std::max(max_violation, o.violation);
    r.rows.push_back(std::move(o.row));
  }
  r.summary["count"] = cfg.count;
  r.summary["passed"] = passed;
  r.summary["pass_rate"] = cfg.count ? static_cast<double>(passed) / static_cast<double>(cfg.count) : 1.0;
  r.summary["min_W"] = std::isfinite(min_w) ? json(min_w) : json(nullptr);
  r.summary["max_rel_violation"] = max_violation;
  r.status = passed == cfg.count ? kExitOk : kExitViolation;
  return r;
}

inline Report cmd_presets(const RunConfig& cfg) {
  Report r;
  const double eps = cfg.eps.value_or(0.25);
  r.metadata["epsilon"] = eps;
  for (Preset name : kAllPresets) r.rows.push_back(params_row(std::string(to_string(name)), preset(name, eps)));
  return r;
}

}  // namespace detail

inline std::string render(const Report& rep, OutputFormat format) {
  if (format == OutputFormat::json) {
    json cases = json::array();
    for (const auto& row : rep.rows) {
      json o = json::object();
      for (const auto& [k, v] : row) o[k] = v;
      cases.push_back(std::move(o));
    }
    json doc = {{"metadata", rep.metadata}, {"cases", cases}, {"summary", rep.summary}};
    return doc.dump(2) + "\n";
  }
  std::vector<std::string> lines;
  detail::flatten_into("", rep.metadata, lines);
  if (!rep.rows.empty()) {
    std::string header;
    for (const auto& [k, v] : rep.rows.front()) header += (header.empty() ? "" : ",") + k;
    lines.push_back(header);
    for (const auto& row : rep.rows) {
      std::string line;
      bool first = true;
      for (const auto& [k, v] : row) {
        line += (first ? "" : ",") + detail::csv_cell(v);
        first = false;
      }
      lines.push_back(line);
    }
  }
  if (!rep.summary.empty()) detail::flatten_into("summary", rep.summary, lines);
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

/// Runs one command. The report (or curve file for `gen`) goes to
/// cfg.output_path when set, else to `out`; diagnostics go to `err`.
/// Returns 0 when everything passes, 1 on a violated inequality or bound,
/// 2 on usage, input or precondition errors.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string text;
  int status = kExitOk;
  try {
    if (cfg.tol && !(std::isfinite(*cfg.tol) && *cfg.tol >= 0.0))
      throw std::invalid_argument("--tol must be a finite non-negative number");
    if (cfg.command == Command::gen) {
      text = write_curve(random_convex_curve(cfg.seed, cfg.max_harmonic, cfg.decay, cfg.margin));
    } else {
      Report rep;
      switch (cfg.command) {
        case Command::quantities: rep = detail::cmd_quantities(cfg); break;
        case Command::verify: rep = detail::cmd_verify(cfg); break;
        case Command::params: rep = detail::cmd_params(cfg); break;
        case Command::stability: rep = detail::cmd_stability(cfg); break;
        case Command::scan: rep = detail::cmd_scan(cfg); break;
        case Command::presets: rep = detail::cmd_presets(cfg); break;
        case Command::gen: break;
      }
      rep.metadata["tool"] = kToolName;
      rep.metadata["version"] = kVersion;
      rep.metadata["command"] = std::string(to_string(cfg.command));
      if (cfg.timestamp) rep.metadata["timestamp"] = detail::utc_timestamp();
      text = render(rep, cfg.format);
      status = rep.status;
    }
  } catch (const std::exception& e) {
    err << kToolName << ": error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (cfg.output_path) {
    std::ofstream f(*cfg.output_path);
    if (!f) {
      err << kToolName << ": error: cannot write " << *cfg.output_path << "\n";
      return kExitUsage;
    }
    f << text;
  } else {
    out << text;
  }
  return status;
}

}  // namespace isoperim::cli
