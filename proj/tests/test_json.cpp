#include <gtest/gtest.h>

#include <fstream>

#include "lcx/json_io.hpp"

using namespace lcx;

TEST(JsonIo, FieldDescriptors) {
  EXPECT_EQ(parse_field("Q")->describe(), "Q");
  EXPECT_EQ(parse_field("QQ")->describe(), "Q");
  EXPECT_EQ(parse_field("F_11")->describe(), "F_11");
  EXPECT_EQ(parse_field("GF(7)")->describe(), "F_7");
  EXPECT_EQ(parse_field("F_3^2")->order(), 9u);
  EXPECT_EQ(parse_field("GF(5^3)")->order(), 125u);
  EXPECT_THROW(parse_field("R"), SchemaError);
  EXPECT_THROW(parse_field("F_"), SchemaError);
  EXPECT_THROW(parse_field("F_2"), PreconditionError);
  const json j = field_to_json(parse_field("F_3^2"));
  EXPECT_EQ(j["descriptor"], "F_3^2");
  EXPECT_EQ(j["modulus"].size(), 3u);
}

TEST(JsonIo, ScalarsRoundTrip) {
  const FieldPtr q = parse_field("Q"), f = parse_field("F_7"), e = parse_field("F_5^2");
  EXPECT_EQ(scalar_to_json(scalar_from_json(q, "-3/6")), "-1/2");
  EXPECT_EQ(scalar_to_json(scalar_from_json(q, 4)), 4);
  EXPECT_EQ(scalar_to_json(scalar_from_json(f, -1)), 6);
  EXPECT_EQ(scalar_to_json(scalar_from_json(e, json::array({7, -1}))), json::array({2, 4}));
  Rng rng(91);
  for (int t = 0; t < 50; ++t) {
    const Scalar x = Scalar::random(e, rng);
    EXPECT_EQ(scalar_from_json(e, scalar_to_json(x)), x);
  }
}

TEST(JsonIo, MalformedScalarsAreSchemaErrors) {
  const FieldPtr q = parse_field("Q"), e = parse_field("F_5^2");
  EXPECT_THROW(scalar_from_json(q, "x"), SchemaError);
  EXPECT_THROW(scalar_from_json(q, 1.5), SchemaError);
  EXPECT_THROW(scalar_from_json(q, json::array({1, 2})), SchemaError);
  EXPECT_THROW(scalar_from_json(e, json::array({1, 2, 3})), SchemaError);
  EXPECT_THROW(scalar_from_json(e, json::array({1, "a"})), SchemaError);
  EXPECT_THROW(vector_from_json(q, json::array({1, 2}), 3), SchemaError);
}

TEST(JsonIo, SkewInputValidation) {
  const FieldPtr f = parse_field("F_7");
  EXPECT_THROW(skew_matrix_from_json(f, json::parse("[[0,1],[1,0]]")), SchemaError);
  EXPECT_THROW(skew_matrix_from_json(f, json::parse("[[0,1,2],[-1,0,3]]")), SchemaError);
  EXPECT_THROW(skew_matrix_from_json(f, json::parse("[[1,0],[0,0]]")), SchemaError);
  EXPECT_NO_THROW(skew_matrix_from_json(f, json::parse("[[0,1],[6,0]]")));  // -1 = 6 in F_7
  EXPECT_THROW(complex_from_json(f, json::parse("{\"matrix\":[[0,1],[-1,0]]}")), SchemaError);
  EXPECT_THROW(complex_from_json(f, json::parse("{\"other\":1}")), SchemaError);
  EXPECT_THROW(net_from_json(f, json::array()), SchemaError);
  EXPECT_THROW(pencil_from_json(f, json::array({json::object()})), SchemaError);
}

TEST(JsonIo, ComplexRoundTrip) {
  const FieldPtr f = parse_field("F_101");
  Rng rng(92);
  for (int t = 0; t < 20; ++t) {
    const Complex c(SkewMatrix::random(f, 6, rng));
    EXPECT_EQ(complex_from_json(f, complex_to_json(c)), c);
    EXPECT_EQ(complex_from_json(f, json{{"matrix", matrix_to_json(c.matrix().matrix())}}), c);
  }
}

TEST(JsonIo, CorpusDocumentsLoad) {
  const std::string dir = std::string(LCX_SOURCE_DIR) + "/corpus/";
  for (const char* name : {"net_F7.json", "net_F11.json", "net_F101.json", "net_type2_F7.json", "net_fournets_F11.json"}) {
    std::ifstream in(dir + name);
    const json j = json::parse(in);
    const Net d = net_from_json(parse_field(j["field"]), j["net"]);
    EXPECT_EQ(net_to_json(d).size(), 3u) << name;
  }
  std::ifstream in(dir + "block_pencil.json");
  const json j = json::parse(in);
  const Pencil ph = pencil_from_json(parse_field(j["field"]), j["pencil"]);
  EXPECT_EQ(vector_to_json(binary_pfaffian_cubic(ph)), json::array({6, 11, 6, 1}));
}

TEST(JsonIo, CohomologyReportMarksConflicts) {
  const CohomologyTable t = en_table(5, 2, -2, 0);
  const json j = cohomology_to_json(t);
  const json& row = j["rows"][0];
  EXPECT_EQ(row["p"], -2);
  EXPECT_EQ(row["provenance"][3], "conflict");
  EXPECT_EQ(row["h"][3], 0);
  bool listed = false;
  for (const auto& c : row["conflicts"]) listed = listed || (c["i"] == 3 && c["predicted"] == 1 && c["oracle"] == 0);
  EXPECT_TRUE(listed);
  const std::string grid = cohomology_grid(t);
  EXPECT_NE(grid.find("0(1)!"), std::string::npos);
  EXPECT_EQ(std::count(grid.begin(), grid.end(), '\n'), 4);
}
