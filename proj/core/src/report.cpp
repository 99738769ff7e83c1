#include "optiplan/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "optiplan/errors.hpp"

namespace optiplan {

namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

bool looks_numeric(const std::string& cell) {
  if (cell.empty()) return false;
  char* end = nullptr;
  std::strtod(cell.c_str(), &end);
  return end != nullptr && *end == '\0';
}

}  // namespace

const Table* Report::primary_table() const {
  for (const auto& table : tables) {
    if (table.slug == primary_slug) return &table;
  }
  return tables.empty() ? nullptr : &tables.front();
}

std::string render_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << "# optiplan " << report.command << '\n';
  if (!report.input_path.empty()) {
    out << "input: " << report.input_path << " (fnv1a " << report.input_digest << ")\n";
  }
  for (const auto& table : report.tables) {
    out << "\n## " << table.name << '\n';
    if (table.rows.empty()) {
      out << "(empty)\n";
      continue;
    }
    std::vector<std::size_t> widths(table.columns.size());
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      widths[i] = table.columns[i].size();
    }
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
        widths[i] = std::max(widths[i], row[i].size());
      }
    }
    auto emit_row = [&](const std::vector<std::string>& cells, bool align_numeric) {
      for (std::size_t i = 0; i < widths.size(); ++i) {
        const std::string& cell = i < cells.size() ? cells[i] : std::string{};
        if (i) out << "  ";
        if (align_numeric && looks_numeric(cell)) {
          out << std::string(widths[i] - cell.size(), ' ') << cell;
        } else {
          out << cell << std::string(widths[i] - cell.size(), ' ');
        }
      }
      out << '\n';
    };
    emit_row(table.columns, false);
    for (const auto& row : table.rows) emit_row(row, true);
  }
  if (!report.notes.empty()) {
    out << "\nnotes:\n";
    for (const auto& note : report.notes) {
      out << "  - " << note << '\n';
    }
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ValidationError("cannot write '" + tmp.string() + "'");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw ValidationError("short write to '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string fmt_db(double value) { return fmt_fixed(value, 2); }

std::string fmt_ber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return buf;
}

std::string fmt_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string fmt_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

std::string fmt_count(std::size_t value) { return std::to_string(value); }

}  // namespace optiplan
