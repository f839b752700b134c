#include "gpam/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "gpam/errors.hpp"
#include "gpam/field_io.hpp"

namespace gpam {
namespace fs = std::filesystem;

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  fail(ErrorCode::Io, "CSV has no column '" + name + "'");
}

const std::string& CsvTable::cell(std::size_t row,
                                  const std::string& name) const {
  const int c = column(name);
  require(row < rows.size() && static_cast<std::size_t>(c) < rows[row].size(),
          ErrorCode::Io, "CSV row " + std::to_string(row) + " is short");
  return rows[row][c];
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& s = cell(row, name);
  if (s.empty() || s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size(), ErrorCode::Io,
          "CSV cell '" + s + "' in column '" + name + "' is not a number");
  return v;
}

void CsvTable::add_row(std::vector<std::string> row) {
  require(row.size() == header.size(), ErrorCode::InvalidArgument,
          "CSV row width does not match the header");
  rows.push_back(std::move(row));
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += quote(cells[i]);
  }
  out += "\r\n";
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io,
          "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::Io,
          "cannot open '" + path.string() + "' for writing");
  out << text;
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  append_line(out, table.header);
  for (const auto& row : table.rows) append_line(out, row);
  return out;
}

CsvTable parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"' && field.empty()) {
      quoted = field_started = true;
    } else if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (field_started || !field.empty() || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      field_started = false;
    } else {
      field += ch;
      field_started = true;
    }
  }
  require(!quoted, ErrorCode::Io, "CSV ends inside a quoted field");
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  require(!records.empty(), ErrorCode::Io, "CSV has no header row");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    require(records[r].size() == table.header.size(), ErrorCode::Io,
            "CSV record " + std::to_string(r) + " has the wrong width");
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

void write_csv(const fs::path& path, const CsvTable& table) {
  spit(path, to_csv(table));
}

CsvTable read_csv(const fs::path& path) { return parse_csv(slurp(path)); }

bool Verdict::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string Verdict::to_text() const {
  std::string out = pass() ? "PASS\n" : "FAIL\n";
  for (const auto& c : checks)
    out += (c.pass ? "pass " : "FAIL ") + c.name + ": " + c.detail + "\n";
  return out;
}

std::string code_version() { return "gpam 1.0.0"; }

void write_report(const fs::path& dir, const ExperimentReport& report) {
  fs::create_directories(dir);
  write_csv(dir / "report.csv", report.table);
  spit(dir / "verdict.txt", report.verdict.to_text());
  Config manifest = report.params;
  manifest.set("meta.kind", "experiment");
  manifest.set("meta.experiment", report.name);
  manifest.set("meta.version", code_version());
  manifest.set("meta.partition_hash", report.partition_hash);
  manifest.set("meta.verdict", report.verdict.pass() ? "PASS" : "FAIL");
  manifest.set("meta.runtime_seconds", format_double(report.runtime_seconds));
  manifest.write(dir / "manifest.txt");
  if (!report.plots.empty()) {
    fs::create_directories(dir / "plots");
    for (const auto& p : report.plots) {
      std::string text = "# x y\n";
      for (std::size_t i = 0; i < p.x.size(); ++i)
        text += format_double(p.x[i]) + " " + format_double(p.y[i]) + "\n";
      spit(dir / "plots" / (p.name + ".dat"), text);
    }
  }
}

}  // namespace gpam
