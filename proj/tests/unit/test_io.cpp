#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hyperpos/corpus.hpp"
#include "hyperpos/errors.hpp"
#include "hyperpos/io.hpp"
#include "test_support.hpp"

using namespace hyperpos;
using hyperpos::testing::Rng;

namespace {

ErrorKind parse_kind(const std::string& text) {
  try {
    realization_from_json(Json::parse(text));
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorKind::Io;
}

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(RealizationJson, RoundTripIsBitExact) {
  Rng rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.integer(0, 3), m = rng.integer(1, 2);
    Realization r(rng.matrix(n, n, true), rng.matrix(n, m, true), rng.matrix(m, n, true), rng.matrix(m, m, trial % 2 == 0));
    std::string text = realization_to_json(r).dump();
    EXPECT_EQ(realization_from_json(Json::parse(text)), r);
  }
}

TEST(RealizationJson, AcceptsBareRealsAndPairs) {
  Realization r = realization_from_json(Json::parse(R"({"n":1,"m":1,"A":[[-1]],"B":[[[0,1]]],"C":[[2]],"D":[[0.5]]})"));
  EXPECT_EQ(r.B(0, 0), cplx(0, 1));
  EXPECT_EQ(r.p(), 1);
}

TEST(RealizationJson, Rejections) {
  EXPECT_EQ(parse_kind(R"({"m":1,"A":[],"B":[],"C":[],"D":[[1]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"n":1,"m":1,"A":[[1,2]],"B":[[1]],"C":[[1]],"D":[[1]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"({"n":1,"m":1,"A":[["x"]],"B":[[1]],"C":[[1]],"D":[[1]]})"), ErrorKind::Parse);
  EXPECT_EQ(parse_kind(R"([1,2])"), ErrorKind::Parse);
}

TEST(PolytopeJson, DefaultWeights) {
  Json j{{"vertices", {realization_to_json(corpus::hull_vertex(1, 1, 1)), realization_to_json(corpus::hull_vertex(2, 1, 2))}}};
  RealizationPolytope p = polytope_from_json(j);
  ASSERT_EQ(p.weights.size(), 2u);
  EXPECT_EQ(p.weights[0], 0.5);
  RealizationPolytope back = polytope_from_json(polytope_to_json(p));
  EXPECT_EQ(back.vertices[1], p.vertices[1]);
}

TEST(CertificateJson, RoundTrip) {
  Certificate c{HermitianMatrix::scalar(2, 0.63), HermitianMatrix::scalar(1, 0.79), 0.024, CertificateMethod::Riccati};
  Certificate back = certificate_from_json(certificate_to_json(c));
  EXPECT_EQ(back.H.matrix(), c.H.matrix());
  EXPECT_EQ(back.T.matrix(), c.T.matrix());
  EXPECT_EQ(back.slack, c.slack);
  EXPECT_EQ(back.method, c.method);
}

TEST(TreeJson, Parses) {
  Json j = Json::parse(R"({"type":"series","children":[{"type":"R","value":1},
      {"type":"parallel","children":[{"type":"R","value":1},{"type":"C","value":1}]}]})");
  ImpedanceTree t = tree_from_json(j);
  EXPECT_EQ(t.kind, ImpedanceTree::Kind::Series);
  ASSERT_EQ(t.children.size(), 2u);
  EXPECT_EQ(t.children[1].children[1].kind, ImpedanceTree::Kind::Capacitor);
  EXPECT_THROW(tree_from_json(Json::parse(R"({"type":"diode","value":1})")), Error);
}

TEST(Files, MissingAndMalformed) {
  try {
    read_json_file(temp_path("hyperpos-missing.json").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
  auto bad = temp_path("hyperpos-bad.json");
  write_text_file(bad.string(), "{not json");
  try {
    read_json_file(bad.string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  std::filesystem::remove(bad);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.8), "0.8");
  double x = 0.5840062088409435;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Nyquist, StockValuesAtUnitFrequency) {
  FrequencyGrid grid{{1.0}, false};
  EXPECT_EQ(nyquist_csv(corpus::nyquist_f1(1.0), grid), "omega,re_1_1,im_1_1\n1,0.6,-0.8\n");
  FrequencyGrid mirrored{{-1.0}, false};
  std::string f2 = nyquist_csv(corpus::nyquist_f2(1.0), mirrored);
  EXPECT_NE(f2.find("2.7333333333333334,-0.8"), std::string::npos) << f2;
}

TEST(Nyquist, ConstantSystemRepeatsOnePoint) {
  Realization c = Realization::constant(Matrix::Constant(1, 1, 2.0));
  std::string csv = nyquist_csv(c, FrequencyGrid{{0.0, 1.0, 2.0}, false});
  EXPECT_EQ(csv, "omega,re_1_1,im_1_1\n0,2,0\n1,2,0\n2,2,0\n");
}

TEST(Nyquist, MultiPortHeaderAndFile) {
  auto path = temp_path("hyperpos-nyquist.csv");
  nyquist_emit(corpus::coupled_pair(1.0), FrequencyGrid{{0.5}, false}, path.string());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "omega,re_1_1,im_1_1,re_1_2,im_1_2,re_2_1,im_2_1,re_2_2,im_2_2");
  std::filesystem::remove(path);
}
