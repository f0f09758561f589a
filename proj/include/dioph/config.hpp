// Flat key = value configuration with [section] headers. Keys are addressed
// as "section.key"; keys before any header live in the root section.
#pragma once

#include "dioph/scalar.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dioph {

class ConfigParseError : public ValidationError {
 public:
  ConfigParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string getString(const std::string& key) const;
  std::string getString(const std::string& key, const std::string& fallback) const;
  long getInt(const std::string& key) const;
  long getInt(const std::string& key, long fallback) const;
  BigInt getBigInt(const std::string& key) const;
  BigRat getRational(const std::string& key) const;
  std::optional<BigRat> getOptionalRational(const std::string& key) const;
  // Comma-separated rationals.
  std::vector<BigRat> getRationalList(const std::string& key) const;
  // Rows separated by ';', entries by ','.
  std::vector<std::vector<BigRat>> getRationalRows(const std::string& key) const;

  // Throws on keys outside `known`, naming the first offender.
  void requireKnown(const std::set<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, std::pair<int, int>> positions_;  // key -> (line, value column)

  [[noreturn]] void fail(const std::string& key, const std::string& what) const;
};

}  // namespace dioph
