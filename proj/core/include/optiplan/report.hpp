#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace optiplan {

/// One named result table; `slug` doubles as the output file stem.
struct Table {
  std::string name;
  std::string slug;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// A command's deterministic output: echo of what ran, digest of what it read,
/// result tables, and any computed-vs-published discrepancy notes.
struct Report {
  std::string command;
  std::string input_path;
  std::string input_digest;
  std::vector<Table> tables;
  std::vector<std::string> notes;
  std::string primary_slug;  // table emitted when the output format is csv

  const Table* primary_table() const;
};

std::string render_text(const Report& report);
std::string render_csv(const Table& table);

/// Write via a temp file in the same directory, then rename into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Formatting used across reports and CSV: period decimal separator, no
// locale; dB to 2 decimals, BER as 3-significant-digit scientific.
std::string fmt_db(double value);
std::string fmt_ber(double value);
std::string fmt_fixed(double value, int decimals);
std::string fmt_number(double value);  // shortest round-trip-ish, %g
std::string fmt_count(std::size_t value);

}  // namespace optiplan
