#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

/// %.17g, empty for NaN.
std::string fmt(double x);
std::string fmt(bool b);
std::string csv_escape(const std::string& s);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string str() const;
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Double in JSON; null for NaN or infinity.
nlohmann::ordered_json num(double x);

/// Files are first written next to their targets and renamed only after every one of them
/// was written, so a failed run leaves no partial output.
class OutputSet {
 public:
  void add(std::filesystem::path path, std::string content);
  void commit();

 private:
  std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

}  // namespace cli
