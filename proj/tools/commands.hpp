// Subcommand implementations for the dioph tool.
#pragma once

#include "dioph/config.hpp"
#include "dioph/construct.hpp"
#include "dioph/report.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dioph::cli {

enum ExitCode { kOk = 0, kValidation = 2, kPrecision = 3, kTolerance = 4 };

struct GlobalOptions {
  std::uint64_t seed = 0;
  int precisionBits = 256;
  Mode mode = Mode::Strict;
  int workers = 1;
  std::string outDir;  // empty: print only
};

struct CommandOutput {
  Json summary = Json::object();
  std::map<std::string, std::string> files;  // extra outputs besides summary.json
  int exitCode = kOk;
};

CommandOutput cmdHeight(const std::string& basis);
CommandOutput cmdAngles(const std::string& a, const std::string& b, const GlobalOptions& g);
CommandOutput cmdMember(const std::string& y, const std::string& basis);

CommandOutput cmdConstructLine(const Config& cfg, const GlobalOptions& g);
CommandOutput cmdConstructBlocks(const Config& cfg, const GlobalOptions& g);
CommandOutput cmdConstructRecursive(const Config& cfg, const GlobalOptions& g);

CommandOutput cmdScan(const Config& cfg, const GlobalOptions& g);
CommandOutput cmdEstimate(const Config& cfg, const GlobalOptions& g, const std::string& toleranceText);

CommandOutput cmdSpectrumCertify(const std::string& family, int n, int d, const std::string& custom, int trials,
                                 const GlobalOptions& g);

// Reads "section.key=value" overrides on top of an optional config file.
Config loadConfig(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace dioph::cli
