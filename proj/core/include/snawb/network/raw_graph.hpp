#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "snawb/survey/model.hpp"

namespace snawb::net {

using ArcKey = std::pair<std::string, std::string>;  // (from, to)

// Directed weighted nominations for one roster question in one wave.
// Population is sorted; isolates are kept.
class RawRosterGraph {
 public:
  RawRosterGraph(std::vector<std::string> population, std::map<ArcKey, int> arcs, std::string question_id,
                 std::string wave, std::vector<int> allowed_weights);

  const std::vector<std::string>& population() const { return population_; }
  const std::map<ArcKey, int>& arcs() const { return arcs_; }
  const std::string& question_id() const { return question_id_; }
  const std::string& wave() const { return wave_; }
  const std::vector<int>& allowed_weights() const { return allowed_weights_; }

  std::optional<int> weight(const std::string& from, const std::string& to) const;
  // Position of `id` in population(); throws NotFoundError.
  std::size_t index_of(const std::string& id) const;
  bool contains(const std::string& id) const;

  // SHA-256 over the canonical form (population, arcs, question, wave).
  const std::string& content_hash() const { return content_hash_; }

 private:
  std::vector<std::string> population_;
  std::map<ArcKey, int> arcs_;
  std::string question_id_;
  std::string wave_;
  std::vector<int> allowed_weights_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::string content_hash_;
};

// One arc per recorded roster choice, weighted by its contact level. Every
// individual appears as a node, answered or not. Throws InputMismatchError
// when a response belongs to another wave.
RawRosterGraph build_raw_graph(std::span<const survey::Individual> individuals,
                               std::span<const survey::ResponseSet> responses,
                               const survey::RosterQuestion& question, const std::string& wave);

}  // namespace snawb::net
