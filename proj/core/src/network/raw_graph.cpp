#include "snawb/network/raw_graph.hpp"

#include <algorithm>

#include "snawb/error.hpp"
#include "snawb/hash.hpp"
#include "snawb/survey/scoring.hpp"

namespace snawb::net {

RawRosterGraph::RawRosterGraph(std::vector<std::string> population, std::map<ArcKey, int> arcs,
                               std::string question_id, std::string wave, std::vector<int> allowed_weights)
    : population_(std::move(population)),
      arcs_(std::move(arcs)),
      question_id_(std::move(question_id)),
      wave_(std::move(wave)),
      allowed_weights_(std::move(allowed_weights)) {
  std::sort(population_.begin(), population_.end());
  if (std::adjacent_find(population_.begin(), population_.end()) != population_.end()) {
    throw Error("raw graph population contains duplicate ids");
  }
  for (std::size_t i = 0; i < population_.size(); ++i) index_.emplace(population_[i], i);
  for (const auto& [key, weight] : arcs_) {
    if (key.first == key.second) throw Error("self-arc on '" + key.first + "'");
    if (!contains(key.first) || !contains(key.second)) {
      throw Error("arc (" + key.first + ", " + key.second + ") leaves the population");
    }
    if (std::find(allowed_weights_.begin(), allowed_weights_.end(), weight) == allowed_weights_.end()) {
      throw Error("arc (" + key.first + ", " + key.second + ") has undeclared weight " + std::to_string(weight));
    }
  }

  ContentHasher hasher;
  hasher.field("raw-roster-graph").field(question_id_).field(wave_);
  hasher.field(static_cast<long long>(population_.size()));
  for (const auto& id : population_) hasher.field(id);
  hasher.field(static_cast<long long>(arcs_.size()));
  for (const auto& [key, weight] : arcs_) hasher.field(key.first).field(key.second).field(weight);
  content_hash_ = hasher.hex();
}

std::optional<int> RawRosterGraph::weight(const std::string& from, const std::string& to) const {
  auto it = arcs_.find({from, to});
  if (it == arcs_.end()) return std::nullopt;
  return it->second;
}

std::size_t RawRosterGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw NotFoundError("'" + id + "' is not in the population");
  return it->second;
}

bool RawRosterGraph::contains(const std::string& id) const { return index_.contains(id); }

RawRosterGraph build_raw_graph(std::span<const survey::Individual> individuals,
                               std::span<const survey::ResponseSet> responses,
                               const survey::RosterQuestion& question, const std::string& wave) {
  std::vector<std::string> population;
  population.reserve(individuals.size());
  for (const auto& ind : individuals) population.push_back(ind.id);

  std::map<ArcKey, int> arcs;
  for (const auto& rs : responses) {
    if (rs.timestamp != wave) {
      throw InputMismatchError("response of '" + rs.individual_id + "' is from wave '" + rs.timestamp +
                               "', expected '" + wave + "'");
    }
    auto answers = rs.roster_answers.find(question.question_id);
    if (answers == rs.roster_answers.end()) continue;
    for (const auto& [peer, level] : answers->second) {
      if (level < 0 || static_cast<std::size_t>(level) >= question.contact_levels.size()) {
        throw Error("contact level " + std::to_string(level) + " out of range for '" + rs.individual_id + "'");
      }
      arcs[{rs.individual_id, peer}] = question.contact_levels[static_cast<std::size_t>(level)].weight;
    }
  }
  return RawRosterGraph(std::move(population), std::move(arcs), question.question_id, wave, question.weights());
}

}  // namespace snawb::net
