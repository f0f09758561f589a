#include "dioph/config.hpp"

#include <fstream>
#include <sstream>

namespace dioph {

ConfigParseError::ConfigParseError(int line, int column, const std::string& what)
    : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// [first, last) of the trimmed range.
std::pair<std::size_t, std::size_t> trim(const std::string& s, std::size_t first, std::size_t last) {
  while (first < last && isSpace(s[first])) ++first;
  while (last > first && isSpace(s[last - 1])) --last;
  return {first, last};
}

bool validName(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::size_t end = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (raw[i] == '#') {
        end = i;
        break;
      }
    auto [b, e] = trim(raw, 0, end);
    if (b == e) continue;
    const int col = static_cast<int>(b) + 1;
    if (raw[b] == '[') {
      if (raw[e - 1] != ']') throw ConfigParseError(lineNo, static_cast<int>(e), "section header missing ']'");
      auto [sb, se] = trim(raw, b + 1, e - 1);
      section = raw.substr(sb, se - sb);
      if (!validName(section)) throw ConfigParseError(lineNo, static_cast<int>(sb) + 1, "invalid section name");
      continue;
    }
    const std::size_t eq = raw.find('=', b);
    if (eq == std::string::npos || eq >= e) throw ConfigParseError(lineNo, col, "expected key = value");
    auto [kb, ke] = trim(raw, b, eq);
    auto [vb, ve] = trim(raw, eq + 1, e);
    const std::string key = raw.substr(kb, ke - kb);
    if (!validName(key)) throw ConfigParseError(lineNo, static_cast<int>(kb) + 1, "invalid key '" + key + "'");
    if (vb == ve) throw ConfigParseError(lineNo, static_cast<int>(eq) + 2, "empty value for '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.values_.count(full)) throw ConfigParseError(lineNo, static_cast<int>(kb) + 1, "duplicate key '" + full + "'");
    cfg.values_[full] = raw.substr(vb, ve - vb);
    cfg.positions_[full] = {lineNo, static_cast<int>(vb) + 1};
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

void Config::fail(const std::string& key, const std::string& what) const {
  auto it = positions_.find(key);
  if (it != positions_.end()) throw ConfigParseError(it->second.first, it->second.second, key + ": " + what);
  throw ValidationError(key + ": " + what);
}

std::string Config::getString(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ValidationError("missing config key '" + key + "'");
  return it->second;
}

std::string Config::getString(const std::string& key, const std::string& fallback) const {
  return has(key) ? getString(key) : fallback;
}

long Config::getInt(const std::string& key) const {
  const std::string v = getString(key);
  try {
    std::size_t used = 0;
    long x = std::stol(v, &used);
    if (used != v.size()) fail(key, "expected an integer, got '" + v + "'");
    return x;
  } catch (const std::logic_error&) {
    fail(key, "expected an integer, got '" + v + "'");
  }
}

long Config::getInt(const std::string& key, long fallback) const { return has(key) ? getInt(key) : fallback; }

BigInt Config::getBigInt(const std::string& key) const {
  try {
    return parseInteger(getString(key));
  } catch (const ValidationError& ex) {
    fail(key, ex.what());
  }
}

BigRat Config::getRational(const std::string& key) const {
  try {
    return parseRational(getString(key));
  } catch (const ValidationError& ex) {
    fail(key, ex.what());
  }
}

std::optional<BigRat> Config::getOptionalRational(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return getRational(key);
}

std::vector<BigRat> Config::getRationalList(const std::string& key) const {
  auto rows = getRationalRows(key);
  if (rows.size() != 1) fail(key, "expected a single comma-separated list");
  return rows.front();
}

std::vector<std::vector<BigRat>> Config::getRationalRows(const std::string& key) const {
  try {
    std::vector<std::vector<BigRat>> out;
    for (const auto& v : parseRatRows(getString(key))) out.emplace_back(v.begin(), v.end());
    return out;
  } catch (const ValidationError& ex) {
    fail(key, ex.what());
  }
}

void Config::requireKnown(const std::set<std::string>& known) const {
  for (const auto& [k, v] : values_)
    if (!known.count(k)) fail(k, "unknown key");
}

}  // namespace dioph
