#include "commands.hpp"

#include "dioph/angles.hpp"
#include "dioph/exactlin.hpp"
#include "dioph/search.hpp"
#include "dioph/spectrum.hpp"

#include <algorithm>
#include <sstream>

namespace dioph::cli {

namespace {

PrecisionConfig precisionOf(const GlobalOptions& g) {
  if (g.precisionBits < 64) throw ValidationError("--precision-bits must be >= 64");
  PrecisionConfig p;
  p.workingBits = g.precisionBits;
  return p;
}

Mode modeOf(const Config& cfg, const std::string& section, const GlobalOptions& g) {
  return cfg.has(section + ".mode") ? parseMode(cfg.getString(section + ".mode")) : g.mode;
}

std::uint64_t seedOf(const Config& cfg, const std::string& section, const GlobalOptions& g) {
  return cfg.has(section + ".seed") ? static_cast<std::uint64_t>(cfg.getInt(section + ".seed")) : g.seed;
}

BigInt thetaOf(const Config& cfg, const std::string& section) {
  return cfg.has(section + ".theta") ? cfg.getBigInt(section + ".theta") : BigInt(5);
}

int intOf(const Config& cfg, const std::string& key) { return static_cast<int>(cfg.getInt(key)); }
int intOf(const Config& cfg, const std::string& key, int fallback) {
  return static_cast<int>(cfg.getInt(key, fallback));
}

IntMatrix intColumns(const std::string& rows) {
  auto vs = parseIntRows(rows);
  if (vs.empty()) throw ValidationError("empty vector list");
  for (const auto& v : vs)
    if (v.size() != vs.front().size()) throw ValidationError("vectors of different lengths");
  return columns(vs);
}

Json predictionsLine(const LineConstruction& line) {
  Json p = Json::array();
  for (int e = 1; e <= line.n() - 1; ++e) p.push_back({{"e", e}, {"j", 1}, {"mu", toJson(line.predictedExponent(e))}});
  return p;
}

LineBuild lineFromConfig(const Config& cfg, const std::string& section, const GlobalOptions& g) {
  return buildLine(intOf(cfg, section + ".n"), cfg.getRationalList(section + ".gamma"), thetaOf(cfg, section),
                   seedOf(cfg, section, g), modeOf(cfg, section, g),
                   cfg.getInt(section + ".floor_cap", kDefaultFloorCap));
}

const std::set<std::string> kLineKeys = {"line.n", "line.gamma", "line.theta", "line.seed",
                                         "line.mode", "line.levels", "line.floor_cap"};

}  // namespace

Config loadConfig(const std::string& path, const std::vector<std::string>& overrides) {
  Config cfg = path.empty() ? Config() : Config::load(path);
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    const std::string key = eq == std::string::npos ? o : o.substr(0, eq);
    const auto dot = key.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot == 0 || dot + 1 == key.size())
      throw ValidationError("--set expects section.key=value, got '" + o + "'");
    cfg.set(key, o.substr(eq + 1));
  }
  return cfg;
}

CommandOutput cmdHeight(const std::string& basis) {
  CommandOutput out;
  RationalSubspace b = saturate(intColumns(basis));
  out.summary["subspace"] = toJson(b);
  out.summary["heightSq"] = toString(b.heightSq());
  return out;
}

CommandOutput cmdAngles(const std::string& a, const std::string& b, const GlobalOptions& g) {
  CommandOutput out;
  RatMatrix ma = toRational(intColumns(a)), mb = toRational(intColumns(b));
  AngleReport rep = principalSines(ma, mb, precisionOf(g));
  Json sines = Json::array();
  for (const auto& w : rep.omegas) sines.push_back(toJson(w));
  out.summary["d"] = rep.d;
  out.summary["e"] = rep.e;
  out.summary["omegas"] = sines;
  return out;
}

CommandOutput cmdMember(const std::string& y, const std::string& basis) {
  CommandOutput out;
  auto ys = parseIntRows(y);
  if (ys.size() != 1) throw ValidationError("--y expects a single vector");
  RationalSubspace b = saturate(intColumns(basis));
  if (ys.front().size() != b.ambient()) throw ValidationError("--y and --basis dimensions differ");
  auto res = membershipByWedge(ys.front(), b);
  out.summary["verdict"] = res.verdict == Membership::InB ? "InB" : "Inconclusive";
  out.summary["wedgeNormSq"] = toString(res.wedgeNormSq);
  return out;
}

CommandOutput cmdConstructLine(const Config& cfg, const GlobalOptions& g) {
  cfg.requireKnown(kLineKeys);
  CommandOutput out;
  LineBuild lb = lineFromConfig(cfg, "line", g);
  const auto& line = lb.line;
  const long levels = cfg.getInt("line.levels", 4);
  if (levels < 0) throw ValidationError("line.levels must be >= 0");
  Json alphas = Json::array(), xs = Json::array();
  for (long k = 0; k <= levels; ++k) {
    alphas.push_back({{"k", k}, {"alpha", toString(line.schedule().alpha(k))},
                      {"floor", line.schedule().floorAlpha(k)}});
    xs.push_back({{"N", k}, {"X", toJson(line.xVector(k))}});
  }
  Json digits = Json::array();
  for (int d : line.digits().transcript(levels + 1)) digits.push_back(d);
  out.summary["construction"] = {{"kind", "line"},
                                 {"n", line.n()},
                                 {"theta", toString(line.schedule().theta())},
                                 {"gamma", toJson(line.schedule().gammaPeriod())},
                                 {"mode", toString(lb.mode)},
                                 {"seed", std::to_string(line.digits().seed())},
                                 {"alphas", alphas},
                                 {"digits", digits},
                                 {"X", xs}};
  out.summary["flags"] = lb.flags;
  out.summary["predictions"] = predictionsLine(line);
  return out;
}

CommandOutput cmdConstructBlocks(const Config& cfg, const GlobalOptions& g) {
  cfg.requireKnown({"blocks.d", "blocks.m", "blocks.beta", "blocks.theta", "blocks.seed", "blocks.mode",
                    "blocks.c2", "blocks.levels", "blocks.floor_cap"});
  CommandOutput out;
  BlockParams p;
  p.d = intOf(cfg, "blocks.d");
  p.m = intOf(cfg, "blocks.m");
  p.beta = cfg.getRationalRows("blocks.beta");
  p.theta = thetaOf(cfg, "blocks");
  p.seed = seedOf(cfg, "blocks", g);
  p.mode = modeOf(cfg, "blocks", g);
  p.c2 = cfg.getOptionalRational("blocks.c2");
  p.floorCap = cfg.getInt("blocks.floor_cap", kDefaultFloorCap);

  if (p.d < 1 || p.m < 1) throw ValidationError("blocks.d and blocks.m must be >= 1");
  const BigRat c2 = p.c2 ? *p.c2 : BigRat(1) + BigRat(BigInt(1), BigInt(2 * p.d * p.m));
  BetaReport report = validateBetaHypotheses(p.d, p.m, p.beta, c2);
  Json checks = Json::array();
  Json violations = Json::array();
  for (const auto& c : report.checks) {
    Json j = {{"name", c.name}, {"passed", c.passed}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    checks.push_back(j);
    if (!c.passed) violations.push_back(j);
  }
  out.summary["hypotheses"] = checks;
  out.summary["minKKi"] = {{"passed", report.minKKi.passed}, {"lhs", report.minKKi.lhs}, {"rhs", report.minKKi.rhs}};
  if (p.mode == Mode::Strict && !violations.empty()) {
    out.summary["error"] = "validation";
    out.summary["violations"] = violations;
    out.exitCode = kValidation;
    return out;
  }

  BlockConstruction bc = buildBlocks(p);
  const int n = bc.n();
  const long levels = cfg.getInt("blocks.levels", 1);
  Json xs = Json::array();
  for (int i = 1; i <= bc.d(); ++i)
    for (long N = 0; N <= levels; ++N) xs.push_back({{"i", i}, {"N", N}, {"X", toJson(bc.xVector(i, N))}});
  Json beta = Json::array();
  for (const auto& row : bc.extendedBeta()) beta.push_back(toJson(row));
  out.summary["construction"] = {{"kind", "blocks"}, {"d", bc.d()}, {"m", bc.m()}, {"n", n},
                                 {"theta", toString(p.theta)}, {"c2", toString(bc.c2())},
                                 {"mode", toString(bc.mode())}, {"extendedBeta", beta}, {"X", xs}};
  Json preds = Json::array();
  for (int e = 1; e <= n - 1; ++e)
    for (int k = 1 + gFunc(p.d, e, n); k <= std::min(p.d, e); ++k)
      if (e < k * (p.m + 1)) preds.push_back({{"e", e}, {"k", k}, {"mu", toJson(bc.predictedExponent(e, k))}});
  out.summary["predictions"] = preds;
  return out;
}

CommandOutput cmdConstructRecursive(const Config& cfg, const GlobalOptions& g) {
  cfg.requireKnown({"recursive.n", "recursive.d", "recursive.gamma", "recursive.theta", "recursive.seed",
                    "recursive.mode", "recursive.proxy", "recursive.truncation", "recursive.floor_cap"});
  CommandOutput out;
  RecursiveParams p;
  p.n = intOf(cfg, "recursive.n");
  p.d = intOf(cfg, "recursive.d");
  p.gamma = cfg.getRationalList("recursive.gamma");
  p.theta = thetaOf(cfg, "recursive");
  p.seed = seedOf(cfg, "recursive", g);
  p.mode = modeOf(cfg, "recursive", g);
  p.proxy = cfg.getOptionalRational("recursive.proxy");
  p.truncation = cfg.getInt("recursive.truncation", 4);
  p.floorCap = cfg.getInt("recursive.floor_cap", kDefaultFloorCap);
  RecursiveConstruction rc = buildRecursive(p);

  Json levels = Json::array();
  for (std::size_t i = 0; i < rc.levels().size(); ++i) {
    const auto& line = rc.levels()[i];
    Json floors = Json::array();
    for (long k = 0; k <= rc.level() + 1; ++k) floors.push_back(line.schedule().floorAlpha(k));
    levels.push_back({{"i", i + 1},
                      {"zeroGap", line.zeroGap()},
                      {"lanes", line.lanes()},
                      {"gamma", toJson(line.schedule().gammaPeriod())},
                      {"floors", floors},
                      {"X_M", toJson(line.xVector(rc.level()))}});
  }
  out.summary["construction"] = {{"kind", "recursive"}, {"n", rc.n()}, {"d", rc.d()},
                                 {"theta", toString(p.theta)}, {"mode", toString(rc.mode())},
                                 {"truncation", rc.level()}, {"constants", toJson(rc.constants())},
                                 {"levels", levels}};
  Json preds = Json::array();
  for (int e = 1; e <= rc.n() - rc.d(); ++e) preds.push_back({{"e", e}, {"j", 1}, {"mu", toJson(rc.predictedExponent(e))}});
  out.summary["predictions"] = preds;
  return out;
}

namespace {

const std::set<std::string> kScanKeys = {
    "scan.n", "scan.e", "scan.j", "scan.height_sq_max", "scan.strategy", "scan.score_floor", "scan.max_candidates",
    "target.kind", "target.basis", "target.gamma", "target.theta", "target.seed", "target.mode", "target.level",
    "target.floor_cap", "estimate.mode", "estimate.n_lo", "estimate.n_hi", "estimate.period",
    "estimate.prediction", "estimate.tolerance"};

struct ScanSetup {
  ScanConfig scan;
  std::optional<LineBuild> line;
};

ScanSetup scanFromConfig(const Config& cfg, const GlobalOptions& g, long minLevel = 0) {
  ScanSetup s;
  ScanConfig& sc = s.scan;
  sc.n = intOf(cfg, "scan.n");
  sc.e = intOf(cfg, "scan.e", 1);
  sc.j = intOf(cfg, "scan.j", 1);
  sc.heightSqMax = cfg.has("scan.height_sq_max") ? cfg.getBigInt("scan.height_sq_max") : BigInt(100);
  sc.strategy = parseStrategy(cfg.getString("scan.strategy", "auto"));
  sc.scoreFloor = cfg.getOptionalRational("scan.score_floor");
  sc.maxCandidates = cfg.getInt("scan.max_candidates", sc.maxCandidates);
  sc.workers = g.workers;
  sc.seed = g.seed;
  sc.precision = precisionOf(g);

  const std::string kind = cfg.getString("target.kind", "line");
  if (kind == "subspace") {
    RationalSubspace a = saturate(intColumns(cfg.getString("target.basis")));
    if (a.ambient() != sc.n) throw ValidationError("target.basis does not live in R^n");
    sc.target = a;
  } else if (kind == "line") {
    Config lineCfg;
    lineCfg.set("t.n", std::to_string(sc.n));
    lineCfg.set("t.gamma", cfg.getString("target.gamma"));
    for (const char* k : {"theta", "seed", "mode", "floor_cap"})
      if (cfg.has(std::string("target.") + k)) lineCfg.set(std::string("t.") + k, cfg.getString(std::string("target.") + k));
    s.line = lineFromConfig(lineCfg, "t", g);
    const long level = std::max(cfg.getInt("target.level", 4), minLevel);
    sc.target = s.line->line.truncatedTarget(level);
  } else {
    throw ValidationError("target.kind must be line or subspace");
  }
  return s;
}

Json scanSummary(const ScanConfig& sc, const ScanResult& r) {
  Json flagged = Json::array();
  for (const auto& f : r.flagged) flagged.push_back(f);
  return {{"n", sc.n},
          {"e", sc.e},
          {"j", sc.j},
          {"heightSqMax", toString(sc.heightSqMax)},
          {"strategy", toString(r.strategy)},
          {"complete", r.complete},
          {"conePrefilter", r.conePrefilter},
          {"scoreFloor", sc.scoreFloor ? toString(*sc.scoreFloor) : "none"},
          {"candidates", r.candidates},
          {"records", r.records.size()},
          {"exactContacts", r.exactContacts},
          {"precisionExhausted", flagged}};
}

}  // namespace

CommandOutput cmdScan(const Config& cfg, const GlobalOptions& g) {
  cfg.requireKnown(kScanKeys);
  CommandOutput out;
  ScanSetup s = scanFromConfig(cfg, g);
  ScanResult r = bestApproxScan(s.scan);
  out.summary["scan"] = scanSummary(s.scan, r);
  const bool informative = std::any_of(r.records.begin(), r.records.end(),
                                      [](const ApproximationRecord& x) { return x.heightSq > 1; });
  if (r.records.size() >= 2 && informative)
    out.summary["frontierMax"] = toJson(exponentEstimate(r.records, EstimateMode::FrontierMax));
  out.files["records.csv"] = recordsCsv(r.records);
  return out;
}

CommandOutput cmdEstimate(const Config& cfg, const GlobalOptions& g, const std::string& toleranceText) {
  cfg.requireKnown(kScanKeys);
  CommandOutput out;
  const EstimateMode mode = parseEstimateMode(cfg.getString("estimate.mode", "familySlope"));
  const BigRat tol = !toleranceText.empty()               ? parseRational(toleranceText)
                     : cfg.has("estimate.tolerance") ? cfg.getRational("estimate.tolerance")
                                                          : BigRat(1, 10);
  if (tol < 0) throw ValidationError("tolerance must be >= 0");
  const int e = intOf(cfg, "scan.e", 1);
  const long nLo = cfg.getInt("estimate.n_lo", 2), nHi = cfg.getInt("estimate.n_hi", 6);

  ScanSetup s = scanFromConfig(cfg, g, mode == EstimateMode::FamilySlope ? nHi + e + 2 : 0);
  int period = 1;
  if (mode == EstimateMode::FamilySlope) {
    if (!s.line) throw ValidationError("familySlope needs target.kind = line");
    s.scan.strategy = Strategy::ConstructedFamily;
    s.scan.family = lineFamily(s.line->line, e, nLo, nHi);
    period = intOf(cfg, "estimate.period", static_cast<int>(s.line->line.schedule().gammaPeriod().size()));
  }
  ScanResult r = bestApproxScan(s.scan);
  if (!r.flagged.empty()) {
    out.summary["scan"] = scanSummary(s.scan, r);
    out.summary["error"] = "precision";
    out.exitCode = kPrecision;
    return out;
  }
  Interval est = exponentEstimate(r.records, mode, period);

  std::optional<ExponentValue> pred;
  if (cfg.has("estimate.prediction")) pred = ExponentValue(cfg.getRational("estimate.prediction"));
  else if (s.line) pred = s.line->line.predictedExponent(e);
  out.summary["scan"] = scanSummary(s.scan, r);
  out.summary["estimate"] = {{"mode", mode == EstimateMode::FamilySlope ? "familySlope" : "frontierMax"},
                             {"period", period},
                             {"interval", toJson(est)}};
  if (pred && !pred->isInfinite()) {
    const BigRat lo = pred->value() * (BigRat(1) - tol), hi = pred->value() * (BigRat(1) + tol);
    const bool pass = mpfr_cmp_q(est.lo().get(), lo.backend().data()) >= 0 &&
                      mpfr_cmp_q(est.hi().get(), hi.backend().data()) <= 0;
    out.summary["prediction"] = toJson(*pred);
    out.summary["tolerance"] = toString(tol);
    out.summary["pass"] = pass;
    if (!pass) out.exitCode = kTolerance;
  }
  out.files["records.csv"] = recordsCsv(r.records);
  return out;
}

CommandOutput cmdSpectrumCertify(const std::string& family, int n, int d, const std::string& custom, int trials,
                                 const GlobalOptions& g) {
  CommandOutput out;
  const FamilyKind kind = parseFamily(family);
  std::vector<std::pair<int, int>> pairs;
  if (kind == FamilyKind::Custom) {
    std::stringstream ss(custom);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ValidationError("--u expects e:k pairs separated by commas");
      try {
        pairs.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
      } catch (const std::logic_error&) {
        throw ValidationError("bad pair '" + item + "' in --u");
      }
    }
  }
  if (trials < 1) throw ValidationError("--trials must be >= 1");
  SpectrumTarget t = uFamily(kind, n, d, pairs);
  RankCertificate cert = rankCertify(t, trials, g.seed);
  Json u = Json::array(), chis = Json::array();
  for (const auto& [e, k] : t.U) {
    u.push_back({e, k});
    Json c = Json::array();
    for (const auto& [q, l] : chi(e, k, t.d, t.m)) c.push_back({q, l});
    chis.push_back(c);
  }
  Json order = Json::array(), fresh = Json::array();
  for (int i : cert.triangular.order) order.push_back(i);
  for (const auto& [q, l] : cert.triangular.fresh) fresh.push_back({q, l});
  Json beta = Json::array();
  for (const auto& row : cert.witnessBeta) beta.push_back(toJson(row));
  out.summary = {{"family", family}, {"n", n}, {"d", d}, {"m", t.m}, {"U", u}, {"chi", chis},
                 {"level", toString(cert.level)},
                 {"triangular", {{"found", cert.triangular.found}, {"order", order}, {"fresh", fresh}}},
                 {"trials", cert.trials}, {"fullRankTrials", cert.fullRankTrials}, {"witnessBeta", beta},
                 {"diagnostic", cert.diagnostic}};
  return out;
}

}  // namespace dioph::cli
