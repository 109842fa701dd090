#include "snawb/io/responses_file.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

namespace snawb::io {

namespace {

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

enum class ColumnKind { choice, roster };

struct Column {
  std::string question_id;
  ColumnKind kind;
};

}  // namespace

bool is_valid_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
           c == '-';
  });
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      row_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      row_started = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_started = false;
    } else {
      field += c;
      row_started = true;
    }
  }
  if (row_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ResponsesLoad parse_responses(std::string_view text, const survey::Questionnaire& questionnaire,
                              std::string source_name) {
  ResponsesLoad result;
  auto error = [&](int row, std::string question, std::string message) {
    result.diagnostics.push_back({"error", source_name, row, std::move(question), std::move(message)});
  };

  const auto rows = parse_csv(text);
  if (rows.empty()) {
    error(0, "", "file is empty; expected a header row");
    return result;
  }

  const auto& header = rows.front();
  constexpr std::size_t kFixed = std::size(kResponseColumns);
  for (std::size_t i = 0; i < kFixed; ++i) {
    if (i >= header.size() || trim(header[i]) != kResponseColumns[i]) {
      error(1, "", "header column " + std::to_string(i + 1) + " must be '" + std::string(kResponseColumns[i]) + "'");
      return result;
    }
  }

  std::vector<Column> columns;
  std::set<std::string> seen;
  for (std::size_t i = kFixed; i < header.size(); ++i) {
    const std::string qid(trim(header[i]));
    if (!seen.insert(qid).second) {
      error(1, qid, "duplicate question column '" + qid + "'");
    } else if (questionnaire.find_choice(qid) != nullptr) {
      columns.push_back({qid, ColumnKind::choice});
    } else if (questionnaire.find_roster(qid) != nullptr) {
      columns.push_back({qid, ColumnKind::roster});
    } else {
      error(1, qid, "unknown question column '" + qid + "'");
    }
  }
  if (has_errors(result.diagnostics)) return result;

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    const int row_no = static_cast<int>(r) + 1;
    if (cells.size() == 1 && trim(cells[0]).empty()) continue;
    if (cells.size() != header.size()) {
      error(row_no, "",
            "expected " + std::to_string(header.size()) + " fields, found " + std::to_string(cells.size()));
      continue;
    }

    const std::size_t before = result.diagnostics.size();
    ResponseRow parsed;
    parsed.row = row_no;
    auto& ind = parsed.individual;
    ind.id = std::string(trim(cells[0]));
    ind.display_name = cells[1];
    ind.classroom_id = std::string(trim(cells[3]));
    ind.school_id = std::string(trim(cells[4]));
    if (!is_valid_id(ind.id)) error(row_no, "", "invalid individual id '" + ind.id + "'");
    if (auto g = survey::parse_gender(trim(cells[2]))) {
      ind.gender = *g;
    } else {
      error(row_no, "", "invalid gender '" + cells[2] + "'; expected male, female or unspecified");
    }
    if (ind.classroom_id.empty()) error(row_no, "", "classroom_id is empty");
    if (ind.school_id.empty()) error(row_no, "", "school_id is empty");

    auto& rs = parsed.responses;
    rs.individual_id = ind.id;
    rs.timestamp = std::string(trim(cells[5]));
    rs.questionnaire_id = std::string(trim(cells[6]));
    if (rs.timestamp.empty()) error(row_no, "", "wave is empty");
    if (rs.questionnaire_id != questionnaire.id()) {
      error(row_no, "", "questionnaire_id '" + rs.questionnaire_id + "' does not match '" + questionnaire.id() + "'");
    }

    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto cell = trim(cells[kFixed + c]);
      if (cell.empty()) continue;
      const auto& column = columns[c];
      if (column.kind == ColumnKind::choice) {
        const auto* q = questionnaire.find_choice(column.question_id);
        auto index = parse_int(cell);
        if (!index || *index < 0 || *index >= static_cast<int>(q->options.size())) {
          error(row_no, column.question_id,
                "option '" + std::string(cell) + "' is not an index between 0 and " +
                    std::to_string(q->options.size() - 1));
          continue;
        }
        rs.choice_answers[column.question_id] = *index;
        continue;
      }

      const auto* q = questionnaire.find_roster(column.question_id);
      auto& nominations = rs.roster_answers[column.question_id];
      for (auto entry : split(cell, ';')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        const auto colon = entry.rfind(':');
        if (colon == std::string_view::npos) {
          error(row_no, column.question_id, "nomination '" + std::string(entry) + "' must be 'peer:weight'");
          continue;
        }
        const std::string peer(trim(entry.substr(0, colon)));
        const auto weight = parse_int(trim(entry.substr(colon + 1)));
        if (!is_valid_id(peer)) {
          error(row_no, column.question_id, "invalid peer id '" + peer + "'");
          continue;
        }
        const auto& levels = q->contact_levels;
        auto level = std::find_if(levels.begin(), levels.end(),
                                  [&](const survey::ContactLevel& l) { return weight && l.weight == *weight; });
        if (level == levels.end()) {
          error(row_no, column.question_id,
                "weight '" + std::string(entry.substr(colon + 1)) + "' for peer '" + peer +
                    "' is not a contact level of this question");
          continue;
        }
        if (!nominations.emplace(peer, static_cast<int>(level - levels.begin())).second) {
          error(row_no, column.question_id, "peer '" + peer + "' is nominated more than once");
        }
      }
      if (nominations.empty()) rs.roster_answers.erase(column.question_id);
    }

    if (result.diagnostics.size() == before) result.rows.push_back(std::move(parsed));
  }
  return result;
}

std::string write_responses(const survey::Questionnaire& questionnaire,
                            const std::vector<survey::Individual>& individuals,
                            const std::vector<survey::ResponseSet>& responses) {
  std::map<std::string, const survey::Individual*> by_id;
  for (const auto& ind : individuals) by_id[ind.id] = &ind;

  std::string out;
  for (std::size_t i = 0; i < std::size(kResponseColumns); ++i) {
    if (i > 0) out += ',';
    out += kResponseColumns[i];
  }
  for (const auto& q : questionnaire.choice_questions()) out += ',' + csv_escape(q.question_id);
  for (const auto& q : questionnaire.roster_questions()) out += ',' + csv_escape(q.question_id);
  out += '\n';

  for (const auto& rs : responses) {
    auto it = by_id.find(rs.individual_id);
    if (it == by_id.end()) continue;
    const auto& ind = *it->second;
    out += csv_escape(ind.id) + ',' + csv_escape(ind.display_name) + ',' + std::string(survey::to_string(ind.gender)) +
           ',' + csv_escape(ind.classroom_id) + ',' + csv_escape(ind.school_id) + ',' + csv_escape(rs.timestamp) + ',' +
           csv_escape(rs.questionnaire_id);
    for (const auto& q : questionnaire.choice_questions()) {
      out += ',';
      auto a = rs.choice_answers.find(q.question_id);
      if (a != rs.choice_answers.end()) out += std::to_string(a->second);
    }
    for (const auto& q : questionnaire.roster_questions()) {
      out += ',';
      auto a = rs.roster_answers.find(q.question_id);
      if (a == rs.roster_answers.end()) continue;
      std::string cell;
      for (const auto& [peer, level] : a->second) {
        if (!cell.empty()) cell += ';';
        const bool in_range = level >= 0 && level < static_cast<int>(q.contact_levels.size());
        cell += peer + ':' + std::to_string(in_range ? q.contact_levels[static_cast<std::size_t>(level)].weight : level);
      }
      out += csv_escape(cell);
    }
    out += '\n';
  }
  return out;
}

}  // namespace snawb::io
