#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "snawb/grid/grid.hpp"

namespace snawb::io {

// A grid run described on disk. Relative paths are resolved against the
// directory holding the spec file. Without `definitions` the preset library
// is used.
struct GridSpecFile {
  std::filesystem::path questionnaire;
  std::filesystem::path responses;
  std::optional<std::filesystem::path> definitions;
  grid::GridSpec spec;
};

// Throws snawb::Error naming the offending field.
GridSpecFile parse_gridspec(std::string_view text, const std::filesystem::path& base_dir);
std::string write_gridspec(const GridSpecFile& file);

}  // namespace snawb::io
