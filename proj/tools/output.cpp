#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cli {

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(bool b) { return b ? "true" : "false"; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

nlohmann::ordered_json CsvTable::to_json() const {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = i < r.size() ? r[i] : "";
    rows.push_back(std::move(obj));
  }
  return rows;
}

nlohmann::ordered_json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void OutputSet::add(std::filesystem::path path, std::string content) {
  files_.emplace_back(std::move(path), std::move(content));
}

void OutputSet::commit() {
  std::vector<std::filesystem::path> temps;
  try {
    for (const auto& [path, content] : files_) {
      auto tmp = path;
      tmp += ".tmp";
      temps.push_back(tmp);
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      os << content;
      os.close();
      if (!os) throw std::runtime_error("cannot write " + tmp.string());
    }
    for (std::size_t i = 0; i < files_.size(); ++i) std::filesystem::rename(temps[i], files_[i].first);
  } catch (...) {
    std::error_code ec;
    for (const auto& t : temps) std::filesystem::remove(t, ec);
    throw;
  }
}

}  // namespace cli
