#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "snawb/io/dataset.hpp"
#include "snawb/io/diagnostics.hpp"

namespace snawb::io {

struct IngestResult {
  std::optional<Dataset> dataset;
  // Errors and warnings; the dataset is only present when there are no errors.
  std::vector<FileDiagnostic> diagnostics;
};

// All-or-nothing: a single hard validation error rejects the whole dataset.
IngestResult ingest(std::string_view questionnaire_text, std::string_view responses_text,
                    std::string questionnaire_name = "questionnaire", std::string responses_name = "responses");

IngestResult ingest_files(const std::filesystem::path& questionnaire, const std::filesystem::path& responses);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace snawb::io
