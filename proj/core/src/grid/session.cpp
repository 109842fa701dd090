#include "snawb/grid/session.hpp"

#include <algorithm>

#include "snawb/error.hpp"
#include "snawb/survey/scoring.hpp"

namespace snawb::grid {

namespace {

class IndividualEnvironment final : public dsl::AttributeEnvironment {
 public:
  IndividualEnvironment(const AnalysisSession& session, const survey::Individual& individual,
                        const survey::ResponseSet& responses)
      : session_(session), individual_(individual), responses_(responses) {}

  survey::Gender gender() const override { return individual_.gender; }

  survey::InstrumentScore score(std::string_view instrument_id) const override {
    const auto& q = session_.dataset().questionnaire();
    const auto* instrument = q.find_instrument(instrument_id);
    if (instrument == nullptr) throw NotFoundError("unknown instrument '" + std::string(instrument_id) + "'");
    return survey::score_instrument(responses_, *instrument, q);
  }

  std::optional<int> answer(std::string_view question_id) const override {
    const auto* question = session_.dataset().questionnaire().find_choice(question_id);
    if (question == nullptr) throw NotFoundError("unknown question '" + std::string(question_id) + "'");
    return survey::answer_score(responses_, *question);
  }

  MetricValue metric(std::string_view network, MetricKind kind) const override {
    const auto& materialized = session_.network(std::string(network));
    return materialized.nodes.at(individual_.id).value(kind);
  }

  dsl::AttributeValue attribute(std::string_view name) const override {
    return session_.attribute(std::string(name)).at(individual_.id);
  }

 private:
  const AnalysisSession& session_;
  const survey::Individual& individual_;
  const survey::ResponseSet& responses_;
};

}  // namespace

AnalysisSession::AnalysisSession(std::shared_ptr<const io::Dataset> dataset,
                                 std::shared_ptr<const dsl::DefinitionsLibrary> library, std::string wave,
                                 std::uint64_t layout_seed)
    : dataset_(std::move(dataset)), library_(std::move(library)), wave_(std::move(wave)), layout_seed_(layout_seed) {
  if (!dataset_ || !library_) throw Error("analysis session needs a dataset and a library");
  const auto waves = dataset_->waves();
  if (std::find(waves.begin(), waves.end(), wave_) == waves.end()) {
    throw NotFoundError("dataset " + dataset_->id() + " has no wave '" + wave_ + "'");
  }
  responses_ = dataset_->responses_for_wave(wave_);
  for (const auto& rs : responses_) response_index_[rs.individual_id] = &rs;
}

const net::RawRosterGraph& AnalysisSession::raw_graph(const std::string& question_id) const {
  return raw_graphs_.get(question_id, [&] {
    const auto* question = dataset_->questionnaire().find_roster(question_id);
    if (question == nullptr) throw NotFoundError("unknown roster question '" + question_id + "'");
    return net::build_raw_graph(dataset_->individuals(), responses_, *question, wave_);
  });
}

const net::Layout& AnalysisSession::layout(const std::string& question_id) const {
  return layouts_.get(question_id, [&] { return net::compute_layout(raw_graph(question_id), layout_seed_); });
}

const MaterializedNetwork& AnalysisSession::network(const std::string& relationship) const {
  return networks_.get(relationship, [&] {
    const auto* rel = library_->find_relationship(relationship);
    if (rel == nullptr) throw NotFoundError("unknown relationship '" + relationship + "'");
    const auto& raw = raw_graph(rel->definition.roster_question_id);
    MaterializedNetwork m{net::derive_network(raw, *rel), {}, {}};
    m.nodes = metrics::node_metrics(m.network, raw);
    m.summary = metrics::network_metrics(m.network);
    return m;
  });
}

const AttributeTable& AnalysisSession::attribute(const std::string& name) const {
  return attributes_.get(name, [&] {
    const auto* attr = library_->find_attribute(name);
    if (attr == nullptr) throw NotFoundError("unknown attribute '" + name + "'");
    // Materialize dependencies first so that a failure names the right input.
    for (const auto& ref : attr->attribute_refs) attribute(ref.name);
    for (const auto& net : attr->network_refs) network(net);

    static const survey::ResponseSet kNoAnswers{};
    AttributeTable table;
    for (const auto& ind : dataset_->individuals()) {
      const auto* rs = response(ind.id);
      IndividualEnvironment env(*this, ind, rs != nullptr ? *rs : kNoAnswers);
      table.emplace(ind.id, dsl::evaluate_attribute(*attr, env));
    }
    return table;
  });
}

const survey::Individual& AnalysisSession::individual(const std::string& id) const {
  const auto* ind = dataset_->find_individual(id);
  if (ind == nullptr) throw NotFoundError("unknown individual '" + id + "'");
  return *ind;
}

const survey::ResponseSet* AnalysisSession::response(const std::string& id) const {
  auto it = response_index_.find(id);
  return it == response_index_.end() ? nullptr : it->second;
}

}  // namespace snawb::grid
