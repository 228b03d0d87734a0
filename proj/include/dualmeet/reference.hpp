#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dualmeet {

// A published table transcribed into data/reference and compiled in.
struct ReferenceTable {
  std::string name;        // file stem, e.g. "iid_6_4_nodisp_first"
  std::string provenance;  // the "# reference:" line
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws InvalidInput if absent.
  [[nodiscard]] std::size_t column(std::string_view name) const;
};

// Parses "# reference: ..." followed by a comma-separated header and rows.
// Cells are kept verbatim (".0455" stays ".0455").
ReferenceTable parse_reference_csv(std::string name, std::string_view content);

std::vector<std::string> reference_table_names();
ReferenceTable reference_table(std::string_view name);

// Number of digits after the decimal point ("0" and "12" have none).
int decimal_places(std::string_view cell);

}  // namespace dualmeet
