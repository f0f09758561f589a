#include "dioph/report.hpp"

#include <boost/version.hpp>
#include <gmp.h>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dioph {

Json toJson(const Interval& x, int digits) { return {{"lo", x.loString(digits)}, {"hi", x.hiString(digits)}}; }

Json toJson(const ExponentValue& v) { return v.toString(); }

Json toJson(const std::vector<BigRat>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(toString(x));
  return a;
}

Json toJson(const IntVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(toString(v[i]));
  return a;
}

Json toJson(const RationalSubspace& b) {
  Json basis = Json::array();
  for (int i = 0; i < b.dim(); ++i) basis.push_back(toJson(IntVector(b.basis().col(i))));
  Json pl = Json::array();
  for (const auto& c : b.plucker().coords()) pl.push_back(toString(c));
  return {{"n", b.ambient()}, {"dim", b.dim()}, {"basis", basis}, {"plucker", pl}, {"heightSq", toString(b.heightSq())}};
}

Json toJson(const AngleEntry& a) {
  if (a.exact) return {{"sinSq", toString(a.sqLo)}, {"exact", true}};
  return {{"sinSqLo", toString(a.sqLo)}, {"sinSqHi", toString(a.sqHi)}, {"exact", false}};
}

namespace {

std::string pluckerText(const RationalSubspace& b) {
  std::string s;
  for (const auto& c : b.plucker().coords()) s += (s.empty() ? "" : " ") + toString(c);
  return s;
}

}  // namespace

std::string recordsCsv(const std::vector<ApproximationRecord>& records) {
  std::ostringstream out;
  out << "N_or_rank,heightSq,log10_H,psi_lo,psi_hi,score_lo,score_hi,plucker\n";
  long rank = 0;
  for (const auto& r : records) {
    ++rank;
    const mpfr_prec_t bits = r.psi.precision();
    // log10 H = log(H^2) / (2 log 10), kept as an interval.
    Interval l = log(Interval::fromInteger(r.heightSq, bits)) /
                 (Interval::fromInteger(2, bits) * log(Interval::fromInteger(10, bits)));
    out << (r.label ? *r.label : rank) << ',' << toString(r.heightSq) << ",\"[" << l.loString(12) << ", "
        << l.hiString(12) << "]\"," << r.psi.loString(12) << ',' << r.psi.hiString(12) << ','
        << r.score.loString(12) << ',' << r.score.hiString(12) << ",\"" << pluckerText(r.subspace) << "\"\n";
  }
  return out.str();
}

std::string sha256Hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

Json libraryVersions() {
  return {{"dioph", "0.1.0"},
          {"gmp", gmp_version},
          {"mpfr", mpfr_get_version()},
          {"boost", BOOST_LIB_VERSION},
          {"openssl", OPENSSL_VERSION_TEXT}};
}

Json toJson(const RunManifest& m) {
  Json digests = Json::object();
  for (const auto& [k, v] : m.digests) digests[k] = v;
  std::ostringstream secs;
  secs << std::fixed << std::setprecision(3) << m.seconds;
  return {{"command", m.command},
          {"config", m.config},
          {"seed", std::to_string(m.seed)},
          {"versions", libraryVersions()},
          {"timing", {{"seconds", secs.str()}}},
          {"digests", digests}};
}

void writeOutputs(const std::string& dir, const std::map<std::string, std::string>& files, RunManifest& manifest) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + name + " in " + dir);
    f << content;
  };
  for (const auto& [name, content] : files) {
    write(name, content);
    manifest.digests[name] = sha256Hex(content);
  }
  write("manifest.json", toJson(manifest).dump(2) + "\n");
}

}  // namespace dioph
