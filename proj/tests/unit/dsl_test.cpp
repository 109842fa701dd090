#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "snawb/dsl/evaluate.hpp"
#include "snawb/dsl/library.hpp"
#include "snawb/dsl/parser.hpp"
#include "snawb/dsl/presets.hpp"
#include "snawb/dsl/printer.hpp"
#include "snawb/error.hpp"
#include "snawb/hash.hpp"
#include "support/fixtures.hpp"

namespace snawb::dsl {
namespace {

const survey::Questionnaire& schema() {
  static const survey::Questionnaire q = survey::catalog::core_questionnaire();
  return q;
}

std::vector<DiagnosticCode> codes_of(std::string_view source) {
  auto built = DefinitionsLibrary::from_source(source, schema());
  std::vector<DiagnosticCode> codes;
  for (const auto& d : built.diagnostics) codes.push_back(d.code);
  return codes;
}

TEST(Hash, KnownDigestsAndFieldFraming) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  ContentHasher a;
  ContentHasher b;
  EXPECT_NE(a.field("ab").field("c").hex(), b.field("a").field("bc").hex());
  ContentHasher c;
  ContentHasher d;
  EXPECT_EQ(c.field("x").field(42LL).hex(), d.field("x").field(42LL).hex());
}

TEST(Parser, ParsesRelationshipAndAttributeHeaders) {
  auto parsed = parse_definitions(
      "# comment line\n"
      "rel r on q_time: reciprocal and w_ab >= 2 and w_ba >= 2\n"
      "attr a: real = score(audit) / 2\n");
  ASSERT_TRUE(parsed.ok()) << parsed.diagnostics.front().message;
  ASSERT_EQ(parsed.definitions.size(), 2u);
  const auto& rel = std::get<RelationshipDefinition>(parsed.definitions[0]);
  EXPECT_EQ(rel.name, "r");
  EXPECT_EQ(rel.roster_question_id, "q_time");
  EXPECT_EQ(rel.span.begin.line, 2);
  const auto& attr = std::get<AttributeDefinition>(parsed.definitions[1]);
  EXPECT_EQ(attr.name, "a");
  EXPECT_EQ(attr.result_type, ResultType::real);
}

TEST(Parser, PrecedenceBindsComparisonTighterThanLogic) {
  auto parsed = parse_definition("attr x: bool = not 1 + 2 * 3 >= 7 or true and false");
  ASSERT_TRUE(parsed.definition.has_value());
  EXPECT_EQ(print(*parsed.definition), "attr x: bool = not 1 + 2 * 3 >= 7 or true and false");
  const auto& body = *std::get<AttributeDefinition>(*parsed.definition).body;
  const auto& top = std::get<Binary>(body.node);
  EXPECT_EQ(top.op, BinaryOp::logical_or);
  EXPECT_TRUE(std::holds_alternative<Unary>(top.lhs->node));
}

TEST(Parser, SyntaxErrorReportsPositionAndExpectedTokens) {
  auto parsed = parse_definitions("rel ok on q_time: reciprocal\nattr bad: bool = score(audit_c) >= >= 3\n");
  ASSERT_EQ(parsed.diagnostics.size(), 1u);
  const auto& d = parsed.diagnostics.front();
  EXPECT_EQ(d.code, DiagnosticCode::syntax);
  EXPECT_EQ(d.span.begin.line, 2);
  EXPECT_FALSE(d.expected.empty());
  EXPECT_EQ(parsed.definitions.size(), 1u);
  const std::string human = format_human(d, "x.defs");
  EXPECT_EQ(human.rfind("x.defs:2:", 0), 0u) << human;
  EXPECT_NE(human.find("error[syntax]"), std::string::npos);
}

TEST(Parser, RecoversAndReportsEveryBrokenBlock) {
  auto parsed = parse_definitions(
      "attr a: bool = (\n"
      "rel fine on q_time: reciprocal\n"
      "attr b: int = 1 +\n"
      "attr c: bool = true\n");
  EXPECT_EQ(parsed.diagnostics.size(), 2u);
  EXPECT_EQ(parsed.definitions.size(), 2u);
}

TEST(Parser, SingleDefinitionRejectsTrailingInput) {
  EXPECT_FALSE(parse_definition("attr a: bool = true attr b: bool = false").definition.has_value());
  EXPECT_FALSE(parse_definition("").definition.has_value());
}

TEST(Printer, PresetsRoundTripStructurally) {
  auto parsed = parse_definitions(preset_library_source());
  ASSERT_TRUE(parsed.ok());
  const std::string printed = print_library(parsed.definitions);
  auto reparsed = parse_definitions(printed);
  ASSERT_TRUE(reparsed.ok());
  ASSERT_EQ(reparsed.definitions.size(), parsed.definitions.size());
  for (std::size_t i = 0; i < parsed.definitions.size(); ++i) {
    EXPECT_TRUE(same_structure(parsed.definitions[i], reparsed.definitions[i])) << i;
  }
  EXPECT_EQ(print_library(reparsed.definitions), printed);
}

TEST(Printer, ParenthesizesOnlyWhereNeeded) {
  auto roundtrip = [](std::string_view src) { return print(*parse_definition(src).definition); };
  EXPECT_EQ(roundtrip("attr x: int = (1 + 2) * 3"), "attr x: int = (1 + 2) * 3");
  EXPECT_EQ(roundtrip("attr x: int = ((1 * 2)) + 3"), "attr x: int = 1 * 2 + 3");
  EXPECT_EQ(roundtrip("attr x: int = 1 - (2 - 3)"), "attr x: int = 1 - (2 - 3)");
  EXPECT_EQ(roundtrip("attr x: int = (1 - 2) - 3"), "attr x: int = 1 - 2 - 3");
  EXPECT_EQ(roundtrip("attr x: real = 2.5"), "attr x: real = 2.5");
}

// Random expression trees survive print -> parse unchanged.
TEST(Printer, RandomExpressionsRoundTrip) {
  std::mt19937_64 rng(7);
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    const auto pick = rng() % (depth <= 0 ? 2 : 6);
    switch (pick) {
      case 0: return std::to_string(rng() % 10);
      case 1: return "score(audit)";
      case 2: return "(" + gen(depth - 1) + (rng() % 2 ? " + " : " * ") + gen(depth - 1) + ")";
      case 3: return "(" + gen(depth - 1) + " - " + gen(depth - 1) + ")";
      case 4: return "-" + gen(depth - 1);
      default: return "max(" + gen(depth - 1) + ", " + gen(depth - 1) + ")";
    }
  };
  for (int i = 0; i < 200; ++i) {
    const std::string src = "attr x: int = " + gen(4);
    auto first = parse_definition(src);
    ASSERT_TRUE(first.definition.has_value()) << src;
    const std::string printed = print(*first.definition);
    auto second = parse_definition(printed);
    ASSERT_TRUE(second.definition.has_value()) << printed;
    EXPECT_TRUE(same_structure(*first.definition, *second.definition)) << src << " -> " << printed;
    EXPECT_EQ(print(*second.definition), printed);
  }
}

TEST(Library, PresetsCheckAgainstCoreQuestionnaire) {
  auto lib = testing::presets();
  EXPECT_EQ(lib->relationships().size(), 8u);
  EXPECT_EQ(lib->attributes().size(), 7u);
  const auto order = lib->evaluation_order();
  auto pos = [&](const std::string& n) { return std::find(order.begin(), order.end(), n) - order.begin(); };
  EXPECT_LT(pos("tomas_ge4"), pos("bad_influence"));
  EXPECT_EQ(lib->networks_for_attribute("bad_influence"), std::vector<std::string>{"strong_friendship"});
  EXPECT_EQ(lib->dependents_of("tomas_ge4"), std::vector<std::string>{"bad_influence"});
  const auto closure = lib->attribute_closure("bad_influence");
  EXPECT_EQ(closure, (std::vector<std::string>{"tomas_ge4", "bad_influence"}));
}

TEST(Library, HashIsOfCanonicalText) {
  auto a = testing::library_from("attr x: bool = score(audit_c)>=4   # spacing", schema());
  auto b = testing::library_from("attr x: bool = (score(audit_c) >= 4)", schema());
  EXPECT_EQ(a->find_attribute("x")->hash, b->find_attribute("x")->hash);
  EXPECT_EQ(a->find_attribute("x")->hash, sha256_hex(a->find_attribute("x")->canonical_text));
  EXPECT_EQ(a->canonical_text(), b->canonical_text());
}

struct CodeCase {
  const char* name;
  const char* source;
  DiagnosticCode code;
};

class DiagnosticCodes : public ::testing::TestWithParam<CodeCase> {};

TEST_P(DiagnosticCodes, ReportsExpectedCode) {
  const auto codes = codes_of(GetParam().source);
  ASSERT_FALSE(codes.empty()) << GetParam().source;
  EXPECT_EQ(codes.front(), GetParam().code) << GetParam().source;
}

INSTANTIATE_TEST_SUITE_P(
    AllCodes, DiagnosticCodes,
    ::testing::Values(
        CodeCase{"syntax", "rel r on q_time reciprocal", DiagnosticCode::syntax},
        CodeCase{"unknown_question", "rel r on q_nope: reciprocal", DiagnosticCode::unknown_identifier},
        CodeCase{"unknown_instrument", "attr a: int = score(phq9)", DiagnosticCode::unknown_identifier},
        CodeCase{"unknown_network", "attr a: int = metric(nope, degree)", DiagnosticCode::unknown_identifier},
        CodeCase{"unknown_metric", "rel r on q_time: reciprocal\nattr a: int = metric(r, pagerank)",
                 DiagnosticCode::unknown_identifier},
        CodeCase{"unknown_function", "attr a: int = foo(1)", DiagnosticCode::unknown_identifier},
        CodeCase{"declared_type", "attr a: bool = score(audit_c)", DiagnosticCode::type_mismatch},
        CodeCase{"int_from_real", "attr a: int = score(audit) / 2", DiagnosticCode::type_mismatch},
        CodeCase{"bool_plus", "attr a: int = true + 1", DiagnosticCode::type_mismatch},
        CodeCase{"rel_body", "rel r on q_time: is_present(w_ab) and w_ab", DiagnosticCode::type_mismatch},
        CodeCase{"cycle", "attr a: bool = attr(b)\nattr b: bool = attr(a)", DiagnosticCode::circular_reference},
        CodeCase{"self_cycle", "attr a: bool = attr(a)", DiagnosticCode::circular_reference},
        CodeCase{"unguarded", "rel r on q_time: w_ab >= 3 and w_ba >= 3", DiagnosticCode::unguarded_absent},
        CodeCase{"half_guarded", "rel r on q_time: is_present(w_ab) and w_ab + w_ba >= 3",
                 DiagnosticCode::unguarded_absent},
        CodeCase{"gender_bare", "attr a: bool = gender == male", DiagnosticCode::gender_uncovered},
        CodeCase{"gender_value", "attr a: bool = if gender then true else false", DiagnosticCode::gender_uncovered},
        CodeCase{"asymmetric", "rel r on q_time: reciprocal and w_ab > w_ba", DiagnosticCode::asymmetric_relationship},
        CodeCase{"asymmetric_presence", "rel r on q_time: is_present(w_ab)", DiagnosticCode::asymmetric_relationship},
        CodeCase{"duplicate", "attr a: bool = true\nrel a on q_time: reciprocal", DiagnosticCode::duplicate_name},
        CodeCase{"arity_score", "attr a: int = score(audit, audit_c)", DiagnosticCode::wrong_arity},
        CodeCase{"arity_min", "rel r on q_time: reciprocal and min() >= 1", DiagnosticCode::wrong_arity},
        CodeCase{"weight_in_attr", "attr a: bool = w_ab >= 1", DiagnosticCode::wrong_context},
        CodeCase{"score_in_rel", "rel r on q_time: score(audit) >= 1", DiagnosticCode::wrong_context},
        CodeCase{"gender_in_rel", "rel r on q_time: if gender == male then true else false",
                 DiagnosticCode::wrong_context}),
    [](const ::testing::TestParamInfo<CodeCase>& info) { return std::string(info.param.name); });

TEST(Library, GuardsAcceptReciprocalPresenceAndDisjunction) {
  EXPECT_TRUE(codes_of("rel a on q_time: reciprocal and w_ab + w_ba >= 6").empty());
  EXPECT_TRUE(codes_of("rel b on q_time: (is_present(w_ab) and w_ab >= 3) or (is_present(w_ba) and w_ba >= 3)").empty());
  EXPECT_TRUE(codes_of("rel c on q_time: not reciprocal or min(w_ab, w_ba) >= 2").empty());
  EXPECT_TRUE(codes_of("rel d on q_time: if reciprocal then w_ab * w_ba >= 9 else false").empty());
  EXPECT_TRUE(codes_of("attr g: bool = if gender != female then score(audit_c) >= 7 else score(audit_c) >= 5").empty());
}

TEST(Library, TypeCheckAgainstExistingLibrary) {
  auto lib = testing::presets();
  auto clash = parse_definition("attr tomas_ge4: bool = score(audit_c) >= 5");
  auto replaced = type_check(*clash.definition, *lib, schema());
  EXPECT_TRUE(replaced.diagnostics.empty());
  ASSERT_TRUE(replaced.definition.has_value());

  auto cyc = parse_definition("attr tomas_ge4: bool = attr(bad_influence)");
  auto cyclic = type_check(*cyc.definition, *lib, schema());
  ASSERT_FALSE(cyclic.diagnostics.empty());
  EXPECT_EQ(cyclic.diagnostics.front().code, DiagnosticCode::circular_reference);
}

// A fake individual for evaluation tests.
class Env : public AttributeEnvironment {
 public:
  survey::Gender g = survey::Gender::male;
  std::map<std::string, survey::InstrumentScore, std::less<>> scores;
  std::map<std::string, int, std::less<>> answers;
  std::map<std::string, MetricValue, std::less<>> metrics;
  std::map<std::string, AttributeValue, std::less<>> attrs;

  survey::Gender gender() const override { return g; }
  survey::InstrumentScore score(std::string_view id) const override {
    auto it = scores.find(id);
    return it == scores.end() ? survey::InstrumentScore{0, true} : it->second;
  }
  std::optional<int> answer(std::string_view id) const override {
    auto it = answers.find(id);
    if (it == answers.end()) return std::nullopt;
    return it->second;
  }
  MetricValue metric(std::string_view net, MetricKind kind) const override {
    auto it = metrics.find(std::string(net) + "/" + std::string(metric_name(kind)));
    if (it == metrics.end()) throw Error("network not materialized");
    return it->second;
  }
  AttributeValue attribute(std::string_view name) const override { return attrs.at(std::string(name)); }
};

TEST(Evaluate, PresetRelationshipsOnAllWeightPairs) {
  auto lib = testing::presets();
  const auto* strong = lib->find_relationship("strong_friendship");
  const auto* contact = lib->find_relationship("contact_ge3");
  const auto* mean = lib->find_relationship("friendship_mean35");
  EXPECT_TRUE(evaluate_relationship(*strong, 4, 5));
  EXPECT_FALSE(evaluate_relationship(*strong, 3, 5));
  EXPECT_FALSE(evaluate_relationship(*strong, 5, std::nullopt));
  EXPECT_TRUE(evaluate_relationship(*contact, std::nullopt, 3));
  EXPECT_FALSE(evaluate_relationship(*contact, 2, std::nullopt));
  EXPECT_FALSE(evaluate_relationship(*contact, std::nullopt, std::nullopt));
  EXPECT_TRUE(evaluate_relationship(*mean, 3, 4));
  EXPECT_FALSE(evaluate_relationship(*mean, 3, 3));
}

TEST(Evaluate, DivisionByZeroDisconnectsPair) {
  auto div = testing::library_from("rel r on q_time: reciprocal and 1 / (w_ab - w_ba) != 0", schema());
  EXPECT_FALSE(evaluate_relationship(*div->find_relationship("r"), 2, 2));
}

TEST(Evaluate, CutoffsByGender) {
  auto lib = testing::presets();
  Env env;
  env.scores["audit_c"] = {6, false};
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("aalto_m7f5"), env), AttributeValue{false});
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("tomas_ge4"), env), AttributeValue{true});
  env.g = survey::Gender::female;
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("aalto_m7f5"), env), AttributeValue{true});
  env.g = survey::Gender::unspecified;
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("aalto_m7f5"), env), AttributeValue{true});
  env.scores["audit_c"] = {4, false};
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("tomas_gt4"), env), AttributeValue{false});
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("audit_c_score"), env), AttributeValue{std::int64_t{4}});
}

TEST(Evaluate, MissingInputIsNotEvaluableUnlessGuarded) {
  auto lib = testing::library_from(
      "attr raw: bool = score(audit_c) >= 4\n"
      "attr guarded: bool = complete(audit_c) and score(audit_c) >= 4\n"
      "attr item: int = answer(audit_9)\n"
      "attr ratio: real = score(audit) / score(audit_c)\n",
      schema());
  Env env;
  env.scores["audit_c"] = {5, true};
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("raw"), env), AttributeValue{NotEvaluable{}});
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("guarded"), env), AttributeValue{false});
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("item"), env), AttributeValue{NotEvaluable{}});
  env.answers["audit_9"] = 4;
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("item"), env), AttributeValue{std::int64_t{4}});
  env.scores["audit"] = {3, false};
  env.scores["audit_c"] = {0, false};
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("ratio"), env), AttributeValue{NotEvaluable{}});
  env.scores["audit_c"] = {2, false};
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("ratio"), env), AttributeValue{1.5});
}

TEST(Evaluate, MetricAndAttrReferences) {
  auto lib = testing::presets();
  Env env;
  env.metrics["strong_friendship/degree"] = std::int64_t{3};
  env.attrs["tomas_ge4"] = true;
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("bad_influence"), env), AttributeValue{true});
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("popular"), env), AttributeValue{false});
  env.attrs["tomas_ge4"] = NotEvaluable{};
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("bad_influence"), env), AttributeValue{NotEvaluable{}});
  env.attrs["tomas_ge4"] = false;
  EXPECT_EQ(evaluate_attribute(*lib->find_attribute("bad_influence"), env), AttributeValue{false});
}

TEST(Evaluate, FormatValue) {
  EXPECT_EQ(format_value(AttributeValue{true}), "true");
  EXPECT_EQ(format_value(AttributeValue{std::int64_t{7}}), "7");
  EXPECT_FALSE(is_true(AttributeValue{NotEvaluable{}}));
}

}  // namespace
}  // namespace snawb::dsl
