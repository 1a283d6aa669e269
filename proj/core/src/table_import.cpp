#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "dcbam/errors.hpp"
#include "dcbam/project_io.hpp"

namespace dcbam {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

struct CsvLines {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // data rows, blank lines dropped
};

CsvLines read_csv(std::string_view csv) {
  CsvLines out;
  bool have_header = false;
  std::size_t pos = 0;
  if (csv.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;  // UTF-8 BOM
  while (pos <= csv.size()) {
    auto nl = csv.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv.size();
    const auto line = trim(csv.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) continue;
    if (!have_header) {
      out.header = split_cells(line);
      have_header = true;
    } else {
      out.rows.push_back(split_cells(line));
    }
  }
  if (!have_header) throw ParseError("header", "table has no header row");
  return out;
}

std::string coordinates(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw ParseError(coordinates(row, col), "non-numeric cell '" + cell + "'");
  }
  return value;
}

void check_width(const std::vector<std::string>& row, std::size_t width, std::size_t row_no) {
  if (row.size() != width) {
    throw ParseError("row " + std::to_string(row_no),
                     "expected " + std::to_string(width) + " cells, found " +
                         std::to_string(row.size()));
  }
}

}  // namespace

ContribTable import_contrib_table(std::string_view csv) {
  const auto lines = read_csv(csv);
  const auto& h = lines.header;
  if (h.size() < 3 || h.front() != "dad_id" || h.back() != "cost") {
    throw ParseError("header", "expected dad_id,<quality attributes...>,cost");
  }
  ContribTable table;
  table.qa_names.assign(h.begin() + 1, h.end() - 1);
  for (std::size_t k = 0; k < table.qa_names.size(); ++k) {
    if (table.qa_names[k].empty()) {
      throw ParseError("header", "column " + std::to_string(k + 2) + " has no name");
    }
  }

  for (std::size_t i = 0; i < lines.rows.size(); ++i) {
    const auto& cells = lines.rows[i];
    const std::size_t row_no = i + 1;
    check_width(cells, h.size(), row_no);
    ContribRow row;
    row.dad_id = cells.front();
    if (row.dad_id.empty()) throw ParseError(coordinates(row_no, 1), "empty DAD id");
    for (std::size_t k = 0; k < table.qa_names.size(); ++k) {
      const double v = parse_cell(cells[k + 1], row_no, k + 2);
      if (v < -1.0 || v > 1.0) {
        throw ValidationError(coordinates(row_no, k + 2) + ": contribution " + cells[k + 1] +
                              " outside [-1, 1]");
      }
      row.contrib[table.qa_names[k]] = v;
    }
    row.raw_cost = parse_cell(cells.back(), row_no, cells.size());
    if (row.raw_cost < 1.0 || row.raw_cost > 100.0) {
      throw ValidationError(coordinates(row_no, cells.size()) + ": cost " + cells.back() +
                            " outside [1, 100]");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

RatingMatrix import_ratings_table(std::string_view csv) {
  const auto lines = read_csv(csv);
  const auto& h = lines.header;
  if (h.size() < 2 || h.front() != "rater") {
    throw ParseError("header", "expected rater,<items...>");
  }
  RatingMatrix m;
  m.items.assign(h.begin() + 1, h.end());
  for (std::size_t i = 0; i < lines.rows.size(); ++i) {
    const auto& cells = lines.rows[i];
    const std::size_t row_no = i + 1;
    check_width(cells, h.size(), row_no);
    m.raters.push_back(cells.front());
    std::vector<double> ranks;
    for (std::size_t k = 1; k < cells.size(); ++k) ranks.push_back(parse_cell(cells[k], row_no, k + 1));
    m.ranks.push_back(std::move(ranks));
  }
  return m;
}

ImportedTable import_table(std::string_view csv, TableKind kind) {
  if (kind == TableKind::contrib_matrix) return import_contrib_table(csv);
  return import_ratings_table(csv);
}

}  // namespace dcbam
