#include "snawb/io/questionnaire_file.hpp"

#include <json.hpp>

#include "snawb/error.hpp"

namespace snawb::io {

using nlohmann::json;

namespace {

struct SchemaProblem {
  std::string message;
};

const json& member(const json& object, const char* key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) {
    throw SchemaProblem{where + ": missing field '" + key + "'"};
  }
  return object.at(key);
}

std::string text_field(const json& object, const char* key, const std::string& where) {
  const json& v = member(object, key, where);
  if (!v.is_string()) throw SchemaProblem{where + ": field '" + key + "' must be a string"};
  return v.get<std::string>();
}

int int_field(const json& object, const char* key, const std::string& where) {
  const json& v = member(object, key, where);
  if (!v.is_number_integer()) throw SchemaProblem{where + ": field '" + key + "' must be an integer"};
  return v.get<int>();
}

const json& array_field(const json& object, const char* key, const std::string& where) {
  const json& v = member(object, key, where);
  if (!v.is_array()) throw SchemaProblem{where + ": field '" + key + "' must be an array"};
  return v;
}

std::vector<std::string> string_list(const json& array, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& item : array) {
    if (!item.is_string()) throw SchemaProblem{where + ": expected a list of strings"};
    out.push_back(item.get<std::string>());
  }
  return out;
}

survey::Questionnaire from_json(const json& doc) {
  const std::string id = text_field(doc, "questionnaire_id", "questionnaire");
  const std::string title = doc.contains("title") && doc["title"].is_string() ? doc["title"].get<std::string>() : "";

  std::vector<survey::ScoredChoiceQuestion> choices;
  if (doc.contains("choice_questions")) {
    for (const auto& q : array_field(doc, "choice_questions", "questionnaire")) {
      const std::string where = "choice question '" + (q.contains("id") ? q["id"].dump() : "?") + "'";
      survey::ScoredChoiceQuestion question{text_field(q, "id", where), text_field(q, "text", where), {}};
      for (const auto& option : array_field(q, "options", where)) {
        question.options.push_back({text_field(option, "label", where), int_field(option, "score", where)});
      }
      choices.push_back(std::move(question));
    }
  }

  std::vector<survey::RosterQuestion> rosters;
  if (doc.contains("roster_questions")) {
    for (const auto& q : array_field(doc, "roster_questions", "questionnaire")) {
      const std::string where = "roster question '" + (q.contains("id") ? q["id"].dump() : "?") + "'";
      survey::RosterQuestion question{text_field(q, "id", where), text_field(q, "text", where), {},
                                      survey::RosterScope::classroom};
      const std::string scope = text_field(q, "scope", where);
      auto parsed = survey::parse_roster_scope(scope);
      if (!parsed) throw SchemaProblem{where + ": scope must be 'classroom' or 'school'"};
      question.roster_scope = *parsed;
      for (const auto& level : array_field(q, "contact_levels", where)) {
        question.contact_levels.push_back({text_field(level, "label", where), int_field(level, "weight", where)});
      }
      rosters.push_back(std::move(question));
    }
  }

  std::vector<survey::Instrument> instruments;
  if (doc.contains("instruments")) {
    for (const auto& inst : array_field(doc, "instruments", "questionnaire")) {
      const std::string where = "instrument '" + (inst.contains("id") ? inst["id"].dump() : "?") + "'";
      survey::Instrument instrument;
      instrument.instrument_id = text_field(inst, "id", where);
      instrument.question_ids = string_list(array_field(inst, "questions", where), where);
      const std::string scoring = text_field(inst, "scoring", where);
      if (scoring == "sum_all") {
        instrument.scoring_rule = survey::ScoringRule::sum_all;
      } else if (scoring == "sum_subset") {
        instrument.scoring_rule = survey::ScoringRule::sum_subset;
        instrument.subset = string_list(array_field(inst, "subset", where), where);
      } else {
        throw SchemaProblem{where + ": scoring must be 'sum_all' or 'sum_subset'"};
      }
      instruments.push_back(std::move(instrument));
    }
  }
  return survey::Questionnaire(id, title, std::move(choices), std::move(rosters), std::move(instruments));
}

}  // namespace

QuestionnaireLoad parse_questionnaire(std::string_view text, std::string source_name) {
  QuestionnaireLoad result;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    result.diagnostics.push_back({"error", source_name, 0, "", std::string("malformed JSON: ") + e.what()});
    return result;
  }
  try {
    result.questionnaire = from_json(doc);
  } catch (const SchemaProblem& p) {
    result.diagnostics.push_back({"error", source_name, 0, "", p.message});
  } catch (const Error& e) {
    result.diagnostics.push_back({"error", source_name, 0, "", e.what()});
  }
  return result;
}

std::string write_questionnaire(const survey::Questionnaire& q) {
  json doc;
  doc["questionnaire_id"] = q.id();
  doc["title"] = q.title();
  doc["choice_questions"] = json::array();
  for (const auto& question : q.choice_questions()) {
    json options = json::array();
    for (const auto& option : question.options) options.push_back({{"label", option.label}, {"score", option.score}});
    doc["choice_questions"].push_back({{"id", question.question_id}, {"text", question.text}, {"options", options}});
  }
  doc["roster_questions"] = json::array();
  for (const auto& question : q.roster_questions()) {
    json levels = json::array();
    for (const auto& level : question.contact_levels) {
      levels.push_back({{"label", level.label}, {"weight", level.weight}});
    }
    doc["roster_questions"].push_back({{"id", question.question_id},
                                       {"text", question.text},
                                       {"scope", survey::to_string(question.roster_scope)},
                                       {"contact_levels", levels}});
  }
  doc["instruments"] = json::array();
  for (const auto& inst : q.instruments()) {
    json entry = {{"id", inst.instrument_id}, {"questions", inst.question_ids}};
    if (inst.scoring_rule == survey::ScoringRule::sum_all) {
      entry["scoring"] = "sum_all";
    } else {
      entry["scoring"] = "sum_subset";
      entry["subset"] = inst.subset;
    }
    doc["instruments"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace snawb::io
