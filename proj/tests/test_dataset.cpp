#include <doctest.h>

#include <sstream>

#include "autonarm/error.hpp"
#include "support.hpp"

using namespace autonarm;

namespace {

TransactionDatabase from_csv(const std::string& text, bool header = true) {
  std::istringstream in(text);
  return parse_csv(in, header);
}

}  // namespace

TEST_CASE("schema inference: numeric and text columns") {
  const auto db = from_csv("A,B\n2,r\n5,r\n7,g\n9,b\n");
  REQUIRE(db.n_transactions() == 4);
  REQUIRE(db.n_attributes() == 2);
  CHECK(db.attribute(0).is_numeric());
  CHECK(db.attribute(0).min == 2.0);
  CHECK(db.attribute(0).max == 9.0);
  CHECK_FALSE(db.attribute(1).is_numeric());
  CHECK(db.attribute(1).categories == std::vector<std::string>{"r", "g", "b"});
}

TEST_CASE("mixed column falls back to categorical") {
  const auto db = from_csv("A\n1\n2\nx\n");
  CHECK_FALSE(db.attribute(0).is_numeric());
  CHECK(db.attribute(0).categories == std::vector<std::string>{"1", "2", "x"});
}

TEST_CASE("non-finite values are text") {
  const auto db = from_csv("A\n1\ninf\n");
  CHECK_FALSE(db.attribute(0).is_numeric());
}

TEST_CASE("attribute domains") {
  const auto db = from_csv("N,C,K\n2,r,3\n5,r,3\n7,g,3\n9,b,3\n");
  CHECK(std::get<NumericDomain>(attribute_domain(db, 0)) == NumericDomain{2, 9});
  CHECK(std::get<CategoricalDomain>(attribute_domain(db, 1)) == CategoricalDomain{"r", "g", "b"});
  CHECK(std::get<NumericDomain>(attribute_domain(db, 2)) == NumericDomain{3, 3});
  CHECK_THROWS_AS(attribute_domain(db, 3), IndexOutOfRange);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(from_csv("A,B\n1,2\n3\n"), RaggedRows);
  CHECK_THROWS_AS(from_csv("A,B\n"), EmptyDataset);
  CHECK_THROWS_AS(from_csv("A,B\n1,\n"), MissingCell);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", true), MissingFile);
  try {
    from_csv("A,B\n1,2\n3,4\n5\n");
    FAIL("expected RaggedRows");
  } catch (const RaggedRows& e) {
    CHECK(std::string(e.what()).find('2') != std::string::npos);
  }
}

TEST_CASE("headerless files get positional names") {
  const auto db = from_csv("1,a\n2,b\n", false);
  CHECK(db.attribute(0).name == "A0");
  CHECK(db.attribute(1).name == "A1");
  CHECK(db.n_transactions() == 2);
}

TEST_CASE("quoted fields and blank lines") {
  const auto db = from_csv("\"x, y\",B\n\"a,b\",1\n\n\"c\"\"d\",2\n");
  CHECK(db.attribute(0).name == "x, y");
  CHECK(db.attribute(0).categories == std::vector<std::string>{"a,b", "c\"d"});
  CHECK(db.n_transactions() == 2);
}

TEST_CASE("round trip through CSV") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto db = testing::random_db(gen, 1 + gen() % 12, 1 + gen() % 5);
    std::ostringstream out;
    write_csv(db, out, true);
    CHECK(from_csv(out.str()) == db);
  }
  // awkward reals survive the text form exactly
  const auto db = from_csv("A,B\n0.1,\"q,1\"\n1e-300,z\n3.141592653589793,q\n");
  std::ostringstream out;
  write_csv(db, out, true);
  CHECK(from_csv(out.str()) == db);
}

TEST_CASE("inference is deterministic") {
  const std::string text = "A,B,C\n1,x,2.5\n3,y,-1\n";
  CHECK(from_csv(text) == from_csv(text));
}

TEST_CASE("wine data file") {
  const auto db = load_csv(AUTONARM_DATA_DIR "/wine.csv", true);
  CHECK(db.n_transactions() == 178);
  CHECK(db.n_attributes() == 14);
}

TEST_CASE("drop columns") {
  const auto db = from_csv("A,B,C\n1,x,2\n3,y,4\n");
  const auto kept = drop_columns(db, {"B"});
  REQUIRE(kept.n_attributes() == 2);
  CHECK(kept.attribute(1).name == "C");
  CHECK(kept.value(1, 1) == 4.0);
  CHECK_THROWS_AS(drop_columns(db, {"Z"}), InvalidArgument);
  CHECK_THROWS_AS(drop_columns(db, {"A", "B", "C"}), InvalidArgument);
}

TEST_CASE("constructor rejects out-of-domain cells") {
  std::vector<Attribute> attrs{{"A", AttributeKind::Numeric, 0, 1, {}}};
  CHECK_THROWS_AS(TransactionDatabase(attrs, {2.0}), InvalidArgument);
  std::vector<Attribute> cats{{"B", AttributeKind::Categorical, 0, 0, {"r"}}};
  CHECK_THROWS_AS(TransactionDatabase(cats, {1.0}), InvalidArgument);
}
