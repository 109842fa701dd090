#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "snawb/io/dataset.hpp"

namespace snawb::service {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

// In-memory registry of datasets, definition libraries and grid runs behind
// the /api/v1 JSON interface. Transport-independent: the HTTP adapter and
// the tests both go through handle(). Safe for concurrent calls.
class Service {
 public:
  Service();
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(const Request& request);

  // Registers a dataset loaded elsewhere and returns its id.
  std::string add_dataset(io::Dataset dataset);
  // Creates a library bound to a dataset; throws snawb::Error listing the
  // diagnostics when the source does not check.
  std::string add_library(const std::string& dataset_id, std::string_view source);

  // Blocks until every launched grid run has finished.
  void wait_for_runs();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace snawb::service
