#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <thread>

#include "snawb/io/ingest.hpp"
#include "snawb/service/http.hpp"
#include "snawb/service/service.hpp"

namespace snawb::service {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
const fs::path kClassroom = fs::path(SNAWB_FIXTURES_DIR) / "classroom";

class ServiceTest : public ::testing::Test {
 protected:
  Service service;

  Response call(const std::string& method, const std::string& path, const json& body = nullptr,
                std::map<std::string, std::string> query = {}) {
    return service.handle({method, path, std::move(query), body.is_null() ? std::string() : body.dump()});
  }

  static json parse(const Response& r) { return json::parse(r.body); }

  static void expect_error(const Response& r, int status, const std::string& code) {
    EXPECT_EQ(r.status, status) << r.body;
    const auto doc = json::parse(r.body);
    ASSERT_TRUE(doc.contains("error")) << r.body;
    EXPECT_EQ(doc["error"]["code"], code) << r.body;
    EXPECT_TRUE(doc["error"]["message"].is_string());
  }

  json upload_body() const {
    return {{"questionnaire", io::read_file(kClassroom / "questionnaire.json")},
            {"responses", io::read_file(kClassroom / "responses.csv")}};
  }

  std::string upload() {
    const auto r = call("POST", "/api/v1/datasets", upload_body());
    EXPECT_EQ(r.status, 201) << r.body;
    return parse(r)["dataset"]["id"];
  }

  std::string presets_library(const std::string& dataset_id) {
    const auto r = call("POST", "/api/v1/libraries", {{"dataset_id", dataset_id}});
    EXPECT_EQ(r.status, 201) << r.body;
    return parse(r)["id"];
  }

  json wait_for(const std::string& run_id) {
    service.wait_for_runs();
    return parse(call("GET", "/api/v1/grid-runs/" + run_id));
  }
};

TEST_F(ServiceTest, DatasetUploadValidateAndList) {
  auto check = upload_body();
  check["validate_only"] = true;
  const auto v = call("POST", "/api/v1/datasets", check);
  EXPECT_EQ(v.status, 200);
  EXPECT_EQ(parse(v)["valid"], true);
  EXPECT_EQ(parse(v)["diagnostics"].size(), 1u);
  EXPECT_EQ(parse(call("GET", "/api/v1/datasets"))["datasets"].size(), 0u);

  const auto id = upload();
  const auto got = parse(call("GET", "/api/v1/datasets/" + id));
  EXPECT_EQ(got["individuals"], 8);
  EXPECT_EQ(got["waves"], json::array({"w1"}));
  EXPECT_EQ(got["anonymized"], false);
  EXPECT_EQ(parse(call("GET", "/api/v1/datasets"))["datasets"].size(), 1u);
  expect_error(call("GET", "/api/v1/datasets/ds-missing"), 404, "not_found");
}

TEST_F(ServiceTest, RejectedDatasetListsRowDiagnostics) {
  auto body = upload_body();
  body["responses"] = body["responses"].get<std::string>() + "s09,X,robot,c1,sch1,w1,adolescent_survey,,,,,,,,,,,\n";
  const auto r = call("POST", "/api/v1/datasets", body);
  expect_error(r, 422, "validation_failed");
  const auto diags = parse(r)["error"]["diagnostics"];
  bool row_ten = false;
  for (const auto& d : diags) row_ten = row_ten || (d["row"] == 10 && d["severity"] == "error");
  EXPECT_TRUE(row_ten) << diags.dump();

  const auto q = call("POST", "/api/v1/datasets", body, {{"validate_only", "true"}});
  EXPECT_EQ(q.status, 200);
  EXPECT_EQ(parse(q)["valid"], false);
  expect_error(call("POST", "/api/v1/datasets", json{{"responses", ""}}), 400, "bad_request");
  expect_error(service.handle({"POST", "/api/v1/datasets", {}, "{oops"}), 400, "bad_request");
}

TEST_F(ServiceTest, AnonymizeRegistersSeparateDataset) {
  const auto id = upload();
  const auto r = call("POST", "/api/v1/datasets/" + id + "/anonymize", {{"salt", "s"}});
  ASSERT_EQ(r.status, 201) << r.body;
  const auto doc = parse(r);
  EXPECT_EQ(doc["dataset"]["anonymized"], true);
  EXPECT_NE(doc["dataset"]["id"], id);
  EXPECT_EQ(doc["map"]["pseudonyms"].size(), 8u);
  const auto anon_lib = presets_library(doc["dataset"]["id"]);
  const auto person = call("GET", "/api/v1/libraries/" + anon_lib + "/individuals/s01");
  EXPECT_EQ(person.body.find("Aino"), std::string::npos);
}

TEST_F(ServiceTest, DefinitionLifecycle) {
  const auto lib = presets_library(upload());
  const auto base = "/api/v1/libraries/" + lib + "/definitions";
  EXPECT_EQ(parse(call("GET", base))["definitions"].size(), 15u);

  const auto created = call("POST", base, {{"source", "attr heavy: bool = score(audit_c) >= 9"}});
  EXPECT_EQ(created.status, 201) << created.body;
  EXPECT_EQ(parse(created)["text"], "attr heavy: bool = score(audit_c) >= 9");
  expect_error(call("POST", base, {{"source", "attr heavy: bool = true"}}), 409, "name_collision");

  const auto bad = call("POST", base, {{"source", "rel lop on q_time: reciprocal and w_ab > w_ba"}});
  expect_error(bad, 422, "validation_failed");
  EXPECT_EQ(parse(bad)["error"]["diagnostics"][0]["code"], "asymmetric-relationship");
  const auto syntax = call("POST", base, {{"source", "attr x: bool ="}});
  expect_error(syntax, 422, "validation_failed");
  EXPECT_EQ(parse(syntax)["error"]["diagnostics"][0]["code"], "syntax");
  EXPECT_TRUE(parse(syntax)["error"]["diagnostics"][0]["span"]["begin"].contains("line"));

  const auto put = call("PUT", base + "/heavy", {{"source", "attr heavy: bool = score(audit_c) >= 10"}});
  EXPECT_EQ(put.status, 200) << put.body;
  expect_error(call("PUT", base + "/heavy", {{"source", "attr other: bool = true"}}), 422, "validation_failed");
  expect_error(call("PUT", base + "/ghost", {{"source", "attr ghost: bool = true"}}), 404, "not_found");

  const auto in_use = call("DELETE", base + "/tomas_ge4");
  expect_error(in_use, 409, "in_use");
  EXPECT_EQ(parse(in_use)["error"]["diagnostics"][0]["name"], "bad_influence");
  EXPECT_EQ(call("DELETE", base + "/heavy").status, 200);
  expect_error(call("GET", base + "/heavy"), 404, "not_found");
  EXPECT_EQ(parse(call("GET", base + "/tomas_ge4"))["dependents"], json::array({"bad_influence"}));
}

TEST_F(ServiceTest, CheckEndpointNeverMutates) {
  const auto lib = presets_library(upload());
  const auto ok = call("POST", "/api/v1/libraries/" + lib + "/check", {{"source", "attr z: int = score(audit)"}});
  EXPECT_EQ(ok.status, 200);
  EXPECT_EQ(parse(ok)["ok"], true);
  EXPECT_EQ(parse(ok)["name"], "z");
  const auto no = call("POST", "/api/v1/libraries/" + lib + "/check", {{"source", "attr z: int = gender"}});
  EXPECT_EQ(no.status, 200);
  EXPECT_EQ(parse(no)["ok"], false);
  EXPECT_EQ(parse(no)["diagnostics"][0]["code"], "gender-uncovered");
  expect_error(call("GET", "/api/v1/libraries/" + lib + "/definitions/z"), 404, "not_found");
}

TEST_F(ServiceTest, NetworkPayloadIsCachedByProvenance) {
  const auto lib = presets_library(upload());
  const auto path = "/api/v1/libraries/" + lib + "/networks/mutual_any";
  const auto first = call("GET", path, nullptr, {{"seed", "3"}});
  ASSERT_EQ(first.status, 200) << first.body;
  EXPECT_EQ(first.headers.at("X-Cache"), "miss");
  const auto second = call("GET", path, nullptr, {{"seed", "3"}});
  EXPECT_EQ(second.headers.at("X-Cache"), "hit");
  EXPECT_EQ(second.body, first.body);
  EXPECT_EQ(second.headers.at("X-Cache-Key"), first.headers.at("X-Cache-Key"));
  const auto doc = parse(first);
  EXPECT_EQ(doc["summary"]["edge_count"], 5);
  EXPECT_EQ(doc["layout"]["coordinates"].size(), 8u);

  const auto other_seed = call("GET", path, nullptr, {{"seed", "4"}});
  EXPECT_EQ(other_seed.headers.at("X-Cache"), "miss");
  // Switching derivation keeps every node in place.
  const auto strong = parse(call("GET", "/api/v1/libraries/" + lib + "/networks/strong_friendship", nullptr,
                                 {{"seed", "3"}}));
  EXPECT_EQ(strong["layout"], doc["layout"]);
  expect_error(call("GET", "/api/v1/libraries/" + lib + "/networks/nope"), 404, "not_found");
}

TEST_F(ServiceTest, AttributeAndIndividualViews) {
  const auto lib = presets_library(upload());
  const auto attr = parse(call("GET", "/api/v1/libraries/" + lib + "/attributes/tomas_ge4/evaluate", nullptr,
                               {{"network", "mutual_any"}}));
  EXPECT_EQ(attr["classification"]["total"]["classified"], 5);
  EXPECT_EQ(attr["values"]["s08"], nullptr);
  EXPECT_EQ(attr["network"]["tie_mix"]["both"], 2);
  const auto person = parse(call("GET", "/api/v1/libraries/" + lib + "/individuals/s02"));
  EXPECT_EQ(person["instruments"]["audit_c"]["score"], 6);
  expect_error(call("GET", "/api/v1/libraries/" + lib + "/individuals/zz"), 404, "not_found");
}

TEST_F(ServiceTest, GridRunLifecycle) {
  const auto lib = presets_library(upload());
  const json spec = {{"library_id", lib},
                     {"roster_question", "q_time"},
                     {"relationships", {"mutual_any", "strong_friendship"}},
                     {"attributes", {"aalto_m7f5", "tomas_ge4", "audit_c_score"}},
                     {"layout_seed", 7}};
  const auto launched = call("POST", "/api/v1/grid-runs", spec);
  ASSERT_EQ(launched.status, 202) << launched.body;
  const std::string run_id = parse(launched)["run_id"];
  EXPECT_EQ(parse(launched)["cells"], 6);
  const auto status = wait_for(run_id);
  EXPECT_EQ(status["status"], "done");
  EXPECT_EQ(status["cells"].size(), 6u);
  EXPECT_EQ(status["counts"]["done"], 6);

  const auto cell = call("GET", "/api/v1/grid-runs/" + run_id + "/cells/4");
  ASSERT_EQ(cell.status, 200);
  EXPECT_EQ(parse(cell)["relationship"], "strong_friendship");
  EXPECT_EQ(parse(cell)["attribute"], "tomas_ge4");
  EXPECT_EQ(call("GET", "/api/v1/grid-runs/" + run_id + "/cells/4").body, cell.body);
  expect_error(call("GET", "/api/v1/grid-runs/" + run_id + "/cells/99"), 404, "not_found");

  const auto delta = call("GET", "/api/v1/grid-runs/" + run_id + "/delta", nullptr, {{"from", "0"}, {"to", "4"}});
  ASSERT_EQ(delta.status, 200) << delta.body;
  EXPECT_EQ(parse(delta)["newly_classified"], json::array({"s02", "s05"}));
  expect_error(call("GET", "/api/v1/grid-runs/" + run_id + "/delta"), 400, "bad_request");
  EXPECT_EQ(parse(call("GET", "/api/v1/grid-runs"))["runs"].size(), 1u);
}

TEST_F(ServiceTest, InvalidGridSpecIsRejectedUpFront) {
  const auto lib = presets_library(upload());
  const auto r = call("POST", "/api/v1/grid-runs",
                      {{"library_id", lib},
                       {"roster_question", "q_time"},
                       {"relationships", {"mutual_any", "ghost"}},
                       {"attributes", {"phantom"}}});
  expect_error(r, 422, "validation_failed");
  EXPECT_EQ(parse(r)["error"]["diagnostics"].size(), 2u);
  EXPECT_EQ(parse(call("GET", "/api/v1/grid-runs"))["runs"].size(), 0u);
}

TEST_F(ServiceTest, UnknownRoutesAndMethods) {
  expect_error(call("GET", "/api/v2/datasets"), 404, "not_found");
  expect_error(call("DELETE", "/api/v1/datasets"), 405, "method_not_allowed");
  expect_error(call("GET", "/api/v1/libraries/lib-404"), 404, "not_found");
  expect_error(call("GET", "/api/v1/grid-runs/run-404"), 404, "not_found");
}

TEST(HttpServer, ServesTheSameContractOverTheWire) {
  Service service;
  HttpServer server(service);
  const int port = server.start("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);

  const json body = {{"questionnaire", io::read_file(kClassroom / "questionnaire.json")},
                     {"responses", io::read_file(kClassroom / "responses.csv")}};
  auto up = client.Post("/api/v1/datasets", body.dump(), "application/json");
  ASSERT_TRUE(up);
  EXPECT_EQ(up->status, 201);
  EXPECT_NE(up->get_header_value("Content-Type").find("application/json"), std::string::npos);
  const std::string ds = json::parse(up->body)["dataset"]["id"];

  auto lib = client.Post("/api/v1/libraries", json{{"dataset_id", ds}}.dump(), "application/json");
  ASSERT_TRUE(lib);
  const std::string lib_id = json::parse(lib->body)["id"];

  auto net1 = client.Get("/api/v1/libraries/" + lib_id + "/networks/strong_friendship?seed=2");
  auto net2 = client.Get("/api/v1/libraries/" + lib_id + "/networks/strong_friendship?seed=2");
  ASSERT_TRUE(net1 && net2);
  EXPECT_EQ(net1->status, 200);
  EXPECT_EQ(net1->get_header_value("X-Cache"), "miss");
  EXPECT_EQ(net2->get_header_value("X-Cache"), "hit");
  EXPECT_EQ(net1->body, net2->body);

  auto del = client.Delete("/api/v1/libraries/" + lib_id + "/definitions/strong_friendship");
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 409);
  EXPECT_EQ(json::parse(del->body)["error"]["code"], "in_use");

  auto missing = client.Get("/api/v1/nowhere");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  server.stop();
}

}  // namespace
}  // namespace snawb::service
