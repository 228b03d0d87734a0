#include "dualmeet/reference.hpp"

#include <sstream>

#include "dualmeet/rational.hpp"
#include "embedded_reference.hpp"

namespace dualmeet {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::size_t ReferenceTable::column(std::string_view wanted) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == wanted) return k;
  }
  throw InvalidInput("reference table " + name + " has no column '" + std::string(wanted) + "'");
}

ReferenceTable parse_reference_csv(std::string name, std::string_view content) {
  ReferenceTable table;
  table.name = std::move(name);
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view tag = "# reference:";
      if (line.rfind(tag, 0) == 0) {
        table.provenance = line.substr(tag.size());
        if (!table.provenance.empty() && table.provenance.front() == ' ') table.provenance.erase(0, 1);
      }
      continue;
    }
    if (table.header.empty()) {
      table.header = split(line);
      continue;
    }
    auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw InvalidInput("reference table " + table.name + ": row '" + line + "' has " + std::to_string(cells.size()) +
                         " cells, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw InvalidInput("reference table " + table.name + " has no header");
  return table;
}

std::vector<std::string> reference_table_names() {
  std::vector<std::string> names;
  for (const auto& file : detail::embedded_reference_files()) names.emplace_back(file.name);
  return names;
}

ReferenceTable reference_table(std::string_view name) {
  for (const auto& file : detail::embedded_reference_files()) {
    if (file.name == name) return parse_reference_csv(std::string(name), file.content);
  }
  throw InvalidInput("no reference table named '" + std::string(name) + "'");
}

int decimal_places(std::string_view cell) {
  const auto dot = cell.find('.');
  if (dot == std::string_view::npos) return 0;
  return static_cast<int>(cell.size() - dot - 1);
}

}  // namespace dualmeet
