#include <doctest.h>

#include <cmath>
#include <limits>

#include "taco/error.hpp"
#include "taco/table.hpp"

using namespace taco;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("make_table enforces the value invariants") {
  CHECK(code_of([] { make_table(Grid(0, 0)); }) == ErrorCode::EmptyTable);
  CHECK(code_of([] { make_table(Grid::from_rows({{1, 0}})); }) == ErrorCode::NonPositiveValue);
  CHECK(code_of([] { make_table(Grid::from_rows({{1, -2}})); }) == ErrorCode::NonPositiveValue);
  CHECK(code_of([] { make_table(Grid::from_rows({{1, std::nan("")}})); }) ==
        ErrorCode::NonNumericCell);
  CHECK(code_of([] { make_table(Grid(1, 2, 1.0), {"a", "b"}); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([] { Grid::from_rows({{1, 2}, {3}}); }) == ErrorCode::NonRectangular);
}

TEST_CASE("default labels and metadata") {
  const Table t = make_table(Grid(2, 3, 1.0));
  CHECK(t.row_labels == std::vector<std::string>{"r0", "r1"});
  CHECK(t.col_labels == std::vector<std::string>{"c0", "c1", "c2"});
  CHECK(t.row_kind == AxisKind::Ordinal);
  CHECK_FALSE(t.labels_provided);
}

TEST_CASE("normalize divides by the grand total") {
  const Table t = make_table(Grid::from_rows({{1, 2}, {3, 4}}));
  const NormalizedTable nt = normalize(t);
  CHECK(nt.sigma == 10.0);
  CHECK(nt.fractions(1, 0) == doctest::Approx(0.3));
  double sum = 0.0;
  for (double f : nt.fractions.data()) sum += f;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pads share the rectangle but not sigma") {
  Table t = make_table(Grid::from_rows({{2, 4}, {3, 3}}));
  t.pad_mask = {false, false, false, true};
  const NormalizedTable nt = normalize(t);
  CHECK(nt.sigma == 9.0);
  CHECK(nt.fractions(1, 1) == doctest::Approx(0.25));
}

TEST_CASE("transpose swaps values, labels and axis kinds") {
  const Table t = make_table(Grid::from_rows({{1, 2, 3}, {4, 5, 6}}), {"a", "b"}, {"x", "y", "z"},
                             AxisKind::Nominal, AxisKind::Ordinal);
  const Table u = transpose(t);
  CHECK(u.rows() == 3);
  CHECK(u(2, 1) == 6.0);
  CHECK(u.row_labels == t.col_labels);
  CHECK(u.row_kind == AxisKind::Ordinal);
  CHECK(u.col_kind == AxisKind::Nominal);
  CHECK(transpose(u) == t);
}

TEST_CASE("intervalize shifts values and marks interval scale") {
  const Table t = intervalize(Grid::from_rows({{0, 2}, {5, 1}}), 1.0);
  CHECK(t(0, 0) == 1.0);
  CHECK(t(1, 0) == 6.0);
  CHECK(t.scale_type == ScaleType::Interval);
  REQUIRE(t.interval_offset.has_value());
  CHECK(*t.interval_offset == 1.0);
  CHECK(code_of([] { intervalize(Grid::from_rows({{-1, 2}}), 1.0); }) == ErrorCode::NegativeValue);
}

TEST_CASE("axis kind and scale parsing") {
  CHECK(parse_axis_kind("sorted-nominal") == AxisKind::SortedNominal);
  CHECK(parse_axis_kind("Non_Axial") == AxisKind::NonAxial);
  CHECK(parse_scale_type("interval") == ScaleType::Interval);
  CHECK_THROWS_AS(parse_axis_kind("cyclic"), Error);
  CHECK(ZeroPolicy::parse("intervalize:0.5").offset == 0.5);
  CHECK(ZeroPolicy::parse("error").kind == ZeroPolicy::Kind::Error);
  CHECK_THROWS_AS(ZeroPolicy::parse("intervalize:-1"), Error);
}

TEST_CASE("CSV ingestion") {
  SUBCASE("plain numbers") {
    const Table t = ingest_csv("1,2\n3,4\n");
    CHECK(t.rows() == 2);
    CHECK(t(1, 1) == 4.0);
    CHECK_FALSE(t.labels_provided);
  }
  SUBCASE("headers and quoted fields") {
    const Table t = ingest_csv("name,\"a, b\",c\r\nrow \"1\",1.5,2e1\n", {true, true});
    CHECK(t.col_labels == std::vector<std::string>{"a, b", "c"});
    CHECK(t.row_labels == std::vector<std::string>{"row \"1\""});
    CHECK(t(0, 1) == 20.0);
    CHECK(t.labels_provided);
  }
  SUBCASE("ragged rows") {
    CHECK(code_of([] { ingest_csv("1,2\n3\n"); }) == ErrorCode::NonRectangular);
  }
  SUBCASE("non-numeric cell") {
    try {
      ingest_csv("1,2\n3,x\n");
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonNumericCell);
      REQUIRE(e.cell());
      CHECK(e.cell()->row == 1);
      CHECK(e.cell()->col == 1);
    }
  }
  SUBCASE("zeros") {
    CHECK(code_of([] { ingest_csv("1,0\n"); }) == ErrorCode::NonPositiveValue);
    IngestOptions o;
    o.zero_policy = ZeroPolicy::parse("intervalize:1");
    const Table t = ingest_csv("1,0\n", o);
    CHECK(t(0, 1) == 1.0);
    CHECK(t.scale_type == ScaleType::Interval);
  }
  SUBCASE("empty") { CHECK(code_of([] { ingest_csv("\n\n"); }) == ErrorCode::EmptyTable); }
}

TEST_CASE("JSON ingestion") {
  const Table t = ingest(R"({"values": [[1, 2], [3, 4]], "rowLabels": ["a", "b"],
                            "colKind": "nominal", "unit": "kg"})");
  CHECK(t(1, 0) == 3.0);
  CHECK(t.row_labels[1] == "b");
  CHECK(t.col_kind == AxisKind::Nominal);
  CHECK(t.unit == std::optional<std::string>("kg"));
  IngestOptions o;
  o.col_kind = AxisKind::Ordinal;
  CHECK(ingest(R"({"values": [[1]], "colKind": "nominal"})", o).col_kind == AxisKind::Ordinal);
  CHECK(code_of([] { ingest("{\"values\": [[1, 2], [3]]}"); }) == ErrorCode::NonRectangular);
  CHECK(code_of([] { ingest("{\"values\": 3}"); }) == ErrorCode::Parse);
}
