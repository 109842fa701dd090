#pragma once

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "snawb/dsl/evaluate.hpp"
#include "snawb/dsl/library.hpp"
#include "snawb/io/dataset.hpp"
#include "snawb/metrics/metrics.hpp"
#include "snawb/network/derived.hpp"
#include "snawb/network/layout.hpp"

namespace snawb::grid {

struct MaterializedNetwork {
  net::DerivedNetwork network;
  metrics::NodeMetricsTable nodes;
  metrics::NetworkMetrics summary;
};

// individual id -> value, covering the whole population.
using AttributeTable = std::map<std::string, dsl::AttributeValue>;

namespace detail {

// Computes each key at most once, also under concurrent requests. Failures
// are cached like values and rethrown to every caller.
template <class V>
class OnceCache {
 public:
  template <class Make>
  const V& get(const std::string& key, Make&& make) const {
    std::promise<std::shared_ptr<const V>> promise;
    std::shared_future<std::shared_ptr<const V>> future;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      auto it = entries_.find(key);
      if (it == entries_.end()) {
        future = promise.get_future().share();
        entries_.emplace(key, future);
        owner = true;
      } else {
        future = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(std::make_shared<const V>(make()));
      } catch (...) {
        promise.set_exception(std::current_exception());
      }
    }
    return *future.get();
  }

 private:
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_future<std::shared_ptr<const V>>> entries_;
};

}  // namespace detail

// Lazily materializes raw graphs, layouts, derived networks with their
// metrics, and attribute tables for one (dataset, library, wave). Every
// product is computed once and shared; all accessors are thread-safe.
class AnalysisSession {
 public:
  AnalysisSession(std::shared_ptr<const io::Dataset> dataset, std::shared_ptr<const dsl::DefinitionsLibrary> library,
                  std::string wave, std::uint64_t layout_seed = 1);

  const io::Dataset& dataset() const { return *dataset_; }
  const dsl::DefinitionsLibrary& library() const { return *library_; }
  const std::string& wave() const { return wave_; }
  std::uint64_t layout_seed() const { return layout_seed_; }

  const net::RawRosterGraph& raw_graph(const std::string& question_id) const;
  const net::Layout& layout(const std::string& question_id) const;
  const MaterializedNetwork& network(const std::string& relationship) const;
  const AttributeTable& attribute(const std::string& name) const;

  // Throws NotFoundError for an unknown individual.
  const survey::Individual& individual(const std::string& id) const;
  // nullptr when the individual did not answer in this wave.
  const survey::ResponseSet* response(const std::string& id) const;

 private:
  std::shared_ptr<const io::Dataset> dataset_;
  std::shared_ptr<const dsl::DefinitionsLibrary> library_;
  std::string wave_;
  std::uint64_t layout_seed_;
  std::vector<survey::ResponseSet> responses_;
  std::map<std::string, const survey::ResponseSet*> response_index_;

  detail::OnceCache<net::RawRosterGraph> raw_graphs_;
  detail::OnceCache<net::Layout> layouts_;
  detail::OnceCache<MaterializedNetwork> networks_;
  detail::OnceCache<AttributeTable> attributes_;
};

}  // namespace snawb::grid
