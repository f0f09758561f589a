// JSON and CSV serialization, SHA-256 digests and run manifests.
#pragma once

#include "dioph/exactlin.hpp"
#include "dioph/exponents.hpp"
#include "dioph/interval.hpp"
#include "dioph/search.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace dioph {

using Json = nlohmann::ordered_json;

Json toJson(const Interval& x, int digits = 20);
Json toJson(const ExponentValue& v);
Json toJson(const RationalSubspace& b);
Json toJson(const AngleEntry& a);
Json toJson(const std::vector<BigRat>& xs);
Json toJson(const IntVector& v);

// Columns: N_or_rank, heightSq, log10_H, psi_lo, psi_hi, score_lo, score_hi, plucker.
std::string recordsCsv(const std::vector<ApproximationRecord>& records);

std::string sha256Hex(const std::string& bytes);

struct RunManifest {
  std::string command;
  Json config = Json::object();
  std::uint64_t seed = 0;
  double seconds = 0;
  std::map<std::string, std::string> digests;  // file name -> sha256
};

Json toJson(const RunManifest& m);
Json libraryVersions();

// Writes each file under dir, records its digest and writes manifest.json.
void writeOutputs(const std::string& dir, const std::map<std::string, std::string>& files, RunManifest& manifest);

}  // namespace dioph
