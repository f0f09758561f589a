// dioph: exact heights, angles, constructions, scans and spectrum certificates.
#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace dioph;
using namespace dioph::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact Diophantine approximation of subspaces"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::string modeText = "strict";
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--precision-bits", g.precisionBits, "Working precision in bits")->check(CLI::Range(64, 1 << 20));
  app.add_option("--mode", modeText, "strict or relaxed")->check(CLI::IsMember({"strict", "relaxed"}));
  app.add_option("--workers", g.workers, "Scan worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--out", g.outDir, "Directory for JSON/CSV outputs and the manifest");

  std::string basis, a, b, y;
  auto* height = app.add_subcommand("height", "Saturated basis and exact squared height");
  height->add_option("--basis", basis, "Vectors: entries by ',', vectors by ';'")->required();
  auto* angles = app.add_subcommand("angles", "Principal squared sines between two spans");
  angles->add_option("--a", a)->required();
  angles->add_option("--b", b)->required();
  auto* member = app.add_subcommand("member", "Exact membership of an integer vector");
  member->add_option("--y", y)->required();
  member->add_option("--basis", basis)->required();

  std::string configPath, tolerance;
  std::vector<std::string> overrides;
  auto addConfig = [&](CLI::App* sub) {
    sub->add_option("--config", configPath, "key = value file with [section] headers");
    sub->add_option("--set", overrides, "Override as section.key=value");
  };
  auto* line = app.add_subcommand("construct-line", "d = 1 construction and predicted exponents");
  auto* blocks = app.add_subcommand("construct-blocks", "Block construction, hypotheses and predictions");
  auto* recursive = app.add_subcommand("construct-recursive", "Recursive d > 1 construction");
  auto* scan = app.add_subcommand("scan", "Best-approximation scan");
  auto* estimate = app.add_subcommand("estimate", "Empirical exponent against the formula");
  for (auto* sub : {line, blocks, recursive, scan, estimate}) addConfig(sub);
  estimate->add_option("--tolerance", tolerance, "Relative tolerance, e.g. 1/10");

  std::string family;
  std::string custom;
  int n = 0, d = 0, trials = 20;
  auto* spectrum = app.add_subcommand("spectrum-certify", "Jacobian rank certificate for a family U");
  spectrum->add_option("--family", family, "min-angle, last-angle-d or custom")->required();
  spectrum->add_option("--n", n)->required();
  spectrum->add_option("--d", d)->required();
  spectrum->add_option("--u", custom, "Custom U as e:k pairs, e.g. 1:1,2:2");
  spectrum->add_option("--trials", trials);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  const auto start = std::chrono::steady_clock::now();
  CommandOutput out;
  RunManifest manifest;
  manifest.command = app.get_subcommands().front()->get_name();
  manifest.seed = g.seed;
  try {
    g.mode = parseMode(modeText);
    Config cfg;
    if (scan->parsed() || estimate->parsed() || line->parsed() || blocks->parsed() || recursive->parsed())
      cfg = loadConfig(configPath, overrides);
    if (height->parsed()) out = cmdHeight(basis);
    else if (angles->parsed()) out = cmdAngles(a, b, g);
    else if (member->parsed()) out = cmdMember(y, basis);
    else if (line->parsed()) out = cmdConstructLine(cfg, g);
    else if (blocks->parsed()) out = cmdConstructBlocks(cfg, g);
    else if (recursive->parsed()) out = cmdConstructRecursive(cfg, g);
    else if (scan->parsed()) out = cmdScan(cfg, g);
    else if (estimate->parsed()) out = cmdEstimate(cfg, g, tolerance);
    else if (spectrum->parsed()) out = cmdSpectrumCertify(family, n, d, custom, trials, g);

    for (const auto& [k, v] : cfg.values()) manifest.config[k] = v;
  } catch (const ValidationError& e) {
    out.summary = {{"error", "validation"}, {"message", e.what()}};
    out.exitCode = kValidation;
  } catch (const PrecisionExhausted& e) {
    out.summary = {{"error", "precision"}, {"message", e.what()}};
    out.exitCode = kPrecision;
  }
  manifest.config["seed"] = std::to_string(g.seed);
  manifest.config["precision_bits"] = std::to_string(g.precisionBits);
  manifest.config["mode"] = modeText;
  manifest.config["workers"] = std::to_string(g.workers);
  manifest.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string summary = out.summary.dump(2) + "\n";
  std::cout << summary;
  if (out.exitCode != kOk && out.summary.contains("message"))
    std::cerr << "dioph: " << out.summary["message"].get<std::string>() << "\n";
  if (!g.outDir.empty()) {
    try {
      out.files["summary.json"] = summary;
      writeOutputs(g.outDir, out.files, manifest);
    } catch (const std::exception& e) {
      std::cerr << "dioph: " << e.what() << "\n";
      return kValidation;
    }
  }
  return out.exitCode;
}
