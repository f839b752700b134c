#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gpam/config.hpp"

namespace gpam {

/// In-memory CSV table: header row plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // throws Io when absent
  double number(std::size_t row, const std::string& name) const;
  const std::string& cell(std::size_t row, const std::string& name) const;
  void add_row(std::vector<std::string> row);
};

// RFC-4180: comma separated, CRLF-tolerant, fields with commas, quotes or
// line breaks are quoted and inner quotes doubled.
std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Verdict {
  std::vector<Check> checks;
  bool pass() const;
  std::string to_text() const;
};

struct PlotSeries {
  std::string name;  // file stem under plots/
  std::vector<double> x, y;
};

struct ExperimentReport {
  std::string name;
  Config params;  // every effective parameter, defaults included
  CsvTable table;
  Verdict verdict;
  std::vector<PlotSeries> plots;
  std::string partition_hash;
  double runtime_seconds = 0.0;
};

std::string code_version();

// report.csv, verdict.txt, manifest.txt and plots/*.dat under dir.
void write_report(const std::filesystem::path& dir,
                  const ExperimentReport& report);

}  // namespace gpam
