#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "isoperim/cli.hpp"

namespace {

using isoperim::cli::Command;
using isoperim::cli::OutputFormat;
using isoperim::cli::RunConfig;

void add_output_flags(CLI::App* sub, RunConfig& cfg, std::string& format) {
  sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", cfg.output_path, "write the report here instead of stdout");
  sub->add_flag("--no-timestamp", [&cfg](std::int64_t) { cfg.timestamp = false; }, "omit the run timestamp");
}

void add_param_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--params", cfg.params_path, "parameter-set JSON file");
  sub->add_option("--preset", cfg.preset_name, "named parameter set (see `presets`)");
  sub->add_option("--eps", cfg.eps, "epsilon for cor_3_6, in [0, 0.5]");
}

void add_generator_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--max-harmonic", cfg.max_harmonic, "highest harmonic of random curves")->check(CLI::Range(2, 4096));
  sub->add_option("--decay", cfg.decay, "coefficient decay exponent");
  sub->add_option("--margin", cfg.margin, "minimum curvature radius of random curves")->check(CLI::Range(0.0, 0.99));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-series checks of curvature-weighted isoperimetric inequalities"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";

  auto* quantities = app.add_subcommand("quantities", "geometric quantities of a curve, spectral vs brute force");
  quantities->add_option("--curve", cfg.curve_path, "curve JSON file")->required();
  quantities->add_option("--grid", cfg.grid, "brute-force sample count");
  quantities->add_option("--tol", cfg.tol, "relative agreement tolerance");
  add_output_flags(quantities, cfg, format);

  auto* verify = app.add_subcommand("verify", "evaluate W and its lower-bound chain on a curve");
  verify->add_option("--curve", cfg.curve_path, "curve JSON file")->required();
  verify->add_option("--tol", cfg.tol, "relative tolerance");
  add_param_flags(verify, cfg);
  add_output_flags(verify, cfg, format);

  auto* params = app.add_subcommand("params", "conditions, discriminant and constants of a parameter set");
  add_param_flags(params, cfg);
  add_output_flags(params, cfg, format);

  auto* stability = app.add_subcommand("stability", "distance to the Steiner disk against C2 W and C3 W");
  stability->add_option("--curve", cfg.curve_path, "curve JSON file")->required();
  stability->add_option("--tol", cfg.tol, "relative tolerance");
  add_param_flags(stability, cfg);
  add_output_flags(stability, cfg, format);

  auto* scan = app.add_subcommand("scan", "verify the chain on a batch of random convex curves");
  scan->add_option("--count", cfg.count, "number of curves");
  scan->add_option("--tol", cfg.tol, "relative tolerance");
  scan->add_option("--threads", cfg.threads, "worker threads, 0 for all cores");
  add_param_flags(scan, cfg);
  add_generator_flags(scan, cfg);
  add_output_flags(scan, cfg, format);

  auto* gen = app.add_subcommand("gen", "write a random convex curve as JSON");
  add_generator_flags(gen, cfg);
  gen->add_option("--out", cfg.output_path, "output file instead of stdout");

  auto* presets = app.add_subcommand("presets", "list the named parameter sets");
  presets->add_option("--eps", cfg.eps, "epsilon used for cor_3_6");
  add_output_flags(presets, cfg, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : isoperim::cli::kExitUsage;
  }

  const std::map<CLI::App*, Command> commands{
      {quantities, Command::quantities}, {verify, Command::verify}, {params, Command::params},
      {stability, Command::stability},   {scan, Command::scan},     {gen, Command::gen},
      {presets, Command::presets}};
  cfg.command = commands.at(app.get_subcommands().front());
  cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  return isoperim::cli::run(cfg, std::cout, std::cerr);
}
