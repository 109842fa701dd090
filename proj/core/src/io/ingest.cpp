#include "snawb/io/ingest.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "snawb/error.hpp"
#include "snawb/io/questionnaire_file.hpp"
#include "snawb/io/responses_file.hpp"
#include "snawb/survey/validate.hpp"

namespace snawb::io {

namespace {

bool same_person(const survey::Individual& a, const survey::Individual& b) {
  return a.gender == b.gender && a.classroom_id == b.classroom_id && a.school_id == b.school_id &&
         a.display_name == b.display_name;
}

}  // namespace

IngestResult ingest(std::string_view questionnaire_text, std::string_view responses_text,
                    std::string questionnaire_name, std::string responses_name) {
  IngestResult result;
  auto q = parse_questionnaire(questionnaire_text, questionnaire_name);
  result.diagnostics = q.diagnostics;
  if (!q.questionnaire) return result;

  auto loaded = parse_responses(responses_text, *q.questionnaire, responses_name);
  result.diagnostics.insert(result.diagnostics.end(), loaded.diagnostics.begin(), loaded.diagnostics.end());

  auto error = [&](int row, std::string question, std::string message) {
    result.diagnostics.push_back({"error", responses_name, row, std::move(question), std::move(message)});
  };

  std::map<std::string, std::pair<survey::Individual, int>> people;
  std::map<std::pair<std::string, std::string>, int> seen_rows;
  std::vector<survey::Individual> individuals;
  for (const auto& row : loaded.rows) {
    const auto key = std::make_pair(row.individual.id, row.responses.timestamp);
    if (auto [it, fresh] = seen_rows.emplace(key, row.row); !fresh) {
      error(row.row, "",
            "individual '" + key.first + "' already has a response for wave '" + key.second + "' on row " +
                std::to_string(it->second));
      continue;
    }
    auto [it, fresh] = people.emplace(row.individual.id, std::make_pair(row.individual, row.row));
    if (fresh) {
      individuals.push_back(row.individual);
    } else if (!same_person(it->second.first, row.individual)) {
      error(row.row, "",
            "personal data for '" + row.individual.id + "' differs from row " + std::to_string(it->second.second));
    }
  }

  const survey::Roster roster(individuals);
  std::vector<survey::ResponseSet> responses;
  std::size_t unanswered = 0;
  std::size_t incomplete_rows = 0;
  for (const auto& row : loaded.rows) {
    const std::size_t before = unanswered;
    for (const auto& issue : survey::validate_response_set(row.responses, *q.questionnaire, roster)) {
      if (issue.severity == survey::Severity::error) {
        error(row.row, issue.question_id, issue.message);
      } else {
        ++unanswered;
      }
    }
    if (unanswered > before) ++incomplete_rows;
    responses.push_back(row.responses);
  }
  if (unanswered > 0) {
    result.diagnostics.push_back({"warning", responses_name, 0, "",
                                  std::to_string(unanswered) + " answer(s) left blank across " +
                                      std::to_string(incomplete_rows) + " row(s)"});
  }

  if (has_errors(result.diagnostics)) return result;
  if (individuals.empty()) {
    error(0, "", "no response rows");
    return result;
  }
  result.dataset.emplace(*q.questionnaire, std::move(individuals), std::move(responses), false);
  return result;
}

IngestResult ingest_files(const std::filesystem::path& questionnaire, const std::filesystem::path& responses) {
  return ingest(read_file(questionnaire), read_file(responses), questionnaire.filename().string(),
                responses.filename().string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace snawb::io
