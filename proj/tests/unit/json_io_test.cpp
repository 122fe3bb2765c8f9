#include <doctest.h>

#include <random>

#include "random_tables.hpp"
#include "taco/error.hpp"
#include "taco/json_io.hpp"

using namespace taco;

TEST_CASE("mesh JSON round-trips exactly") {
  std::mt19937_64 rng(4);
  const Table t = testing::random_table(rng, std::size_t{3}, std::size_t{5});
  const LayoutResult r = layout_table(t, LayoutParams{});
  const Json j = to_json(r);
  CHECK(mesh_from_json(j) == r.mesh);
  CHECK(mesh_from_json(Json::parse(dump(j))) == r.mesh);
  CHECK(j.at("vertices").size() == 4);
  CHECK(j.at("vertices")[0].size() == 6);
  CHECK(j.at("converged").get<bool>() == r.converged);
}

TEST_CASE("malformed meshes are parse errors") {
  auto code = [](const Json& j) {
    try {
      mesh_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code(Json::object()) == ErrorCode::Parse);
  CHECK(code(Json{{"w", 1}, {"h", 1}, {"vertices", Json::array({Json::array({Json::array({0, 0})})})}}) ==
        ErrorCode::Parse);
  Json ragged = to_json(Mesh(1, 2, 10, 10));
  ragged["vertices"][1].erase(0);
  CHECK(code(ragged) == ErrorCode::Parse);
  Json text = to_json(Mesh(1, 1, 10, 10));
  text["vertices"][0][0][0] = "x";
  CHECK(code(text) == ErrorCode::Parse);
}

TEST_CASE("table and report keys") {
  Table t = make_table(Grid::from_rows({{1, 2}, {3, 4}}), {"a", "b"}, {"x", "y"});
  t.pad_mask = {false, true, false, false};
  const Json j = to_json(t);
  CHECK(j.at("values")[1][0] == 3.0);
  CHECK(j.at("rowLabels")[1] == "b");
  CHECK(j.at("padMask")[0][1] == true);
  CHECK_FALSE(j.contains("unit"));

  const SuiteReport s = run_suite(make_table(Grid::from_rows({{1, 2}, {3, 5}})), LayoutParams{},
                                  ProbeConfig{}, 3);
  const Json sj = to_json(s);
  std::size_t listed = 0;
  for (const char* key : {"hallucinators", "confusers", "commutes", "inconclusive"}) {
    listed += sj.at("summary").at(key).size();
  }
  CHECK(listed == s.reports.size());
  CHECK(sj.at("reports")[0].contains("verdict"));
  CHECK(sj.at("reports")[0].at("thresholds").contains("minCellAreaDeltaPx2"));

  const Json g = to_json(guide(t, true, 640, 360));
  CHECK(g.at("taskTable").size() == kTaskCount);
  CHECK(g.at("taskTable")[0].at("reasons")[0].contains("anchor"));
}
