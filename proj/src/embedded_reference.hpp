#pragma once

#include <string_view>
#include <vector>

namespace dualmeet::detail {

struct EmbeddedFile {
  std::string_view name;
  std::string_view content;
};

// data/reference/*.csv, sorted by name, compiled into the library.
const std::vector<EmbeddedFile>& embedded_reference_files();

}  // namespace dualmeet::detail
