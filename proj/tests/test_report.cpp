#include <catch2/catch_amalgamated.hpp>

#include "lrsub/report.hpp"

using namespace lrsub;

TEST_CASE("textual forms") {
  const FieldDesc& F9 = make_field(3, 2);
  CHECK(to_string(F9.element(7)) == "GF(3^2):7");
  const FieldDesc& F5 = make_field(5, 1);
  CHECK(to_string(F5.element(3)) == "GF(5):3");
}

TEST_CASE("witness record is flat and stable") {
  const FieldDesc& F9 = make_field(3, 2);
  auto ws = search_nonstandard(F9.primitive(), 3);
  REQUIRE(!ws.empty());
  std::string line = format_witness(ws.front());
  CHECK(line.find("witness q=3 m=2 n=8 d=4 xi=") == 0);
  CHECK(line.find("L_images=") != std::string::npos);
  CHECK(line.find("perm=[0,") != std::string::npos);
  // identical inputs give identical records
  CHECK(format_witness(search_nonstandard(F9.primitive(), 3).front()) == line);

  auto j = witness_to_json(ws.front());
  CHECK(j["q"] == 3);
  CHECK(j["perm"].size() == 8);
}

TEST_CASE("survey row records") {
  auto rows = survey(9, 2);
  std::string all;
  for (auto& r : rows) all += format_survey_row(9, 2, r) + "\n";
  CHECK(all.find("row q=9 m=2 n=16 d=2 e=8 count=6 label=type_I") !=
        std::string::npos);
  CHECK(all.find("n=80 d=10 e=8 count=") != std::string::npos);
  CHECK(all.find("phi_primitive=1") != std::string::npos);
}

TEST_CASE("report header is versioned") {
  std::string h = report_header("survey --q 9 --m 2", 42);
  CHECK(h.find("# lrsub report v1\n") == 0);
  CHECK(h.find("# seed: 42") != std::string::npos);
}
