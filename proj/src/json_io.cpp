#include "taco/json_io.hpp"

#include "taco/error.hpp"

namespace taco {

Json to_json(const Table& t) {
  Json values = Json::array();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < t.cols(); ++j) row.push_back(t(i, j));
    values.push_back(std::move(row));
  }
  Json j = {{"values", std::move(values)},
            {"rowLabels", t.row_labels},
            {"colLabels", t.col_labels},
            {"rowKind", to_string(t.row_kind)},
            {"colKind", to_string(t.col_kind)},
            {"scaleType", to_string(t.scale_type)}};
  if (t.unit) j["unit"] = *t.unit;
  if (t.interval_offset) j["intervalOffset"] = *t.interval_offset;
  if (!t.pad_mask.empty()) {
    Json pads = Json::array();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t c = 0; c < t.cols(); ++c) row.push_back(static_cast<bool>(t.pad_mask[i * t.cols() + c]));
      pads.push_back(std::move(row));
    }
    j["padMask"] = std::move(pads);
  }
  return j;
}

Json to_json(const Mesh& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i <= m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j <= m.cols(); ++j) {
      const Point p = m.vertex(i, j);
      row.push_back(Json::array({p.x, p.y}));
    }
    rows.push_back(std::move(row));
  }
  return {{"w", m.width()}, {"h", m.height()}, {"vertices", std::move(rows)}};
}

Json to_json(const LayoutParams& p) {
  return {{"w", p.width},         {"h", p.height},
          {"tolerance", p.tolerance}, {"maxIterations", p.max_iterations},
          {"seed", p.seed},       {"jitter", p.jitter},
          {"stepSize", p.step_size}, {"shrinkFactor", p.shrink_factor}};
}

Json to_json(const LayoutResult& r) {
  Json j = to_json(r.mesh);
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["maxRelativeAreaError"] = r.max_relative_area_error;
  j["stopReason"] = r.stop_reason;
  j["continuationStages"] = r.continuation_stages;
  j["concaveCells"] = r.concave_cells;
  j["objectiveTrace"] = r.objective_trace;
  return j;
}

Json to_json(const ProbeConfig& c) {
  return {{"dataSignificanceThreshold", c.data_significance},
          {"minMeanDisplacementFrac", c.min_mean_displacement_frac},
          {"minCellAreaDeltaPx2", c.min_cell_area_delta_px2}};
}

Json to_json(const ProbeReport& r) {
  Json j = {{"alpha", r.description},
            {"kind", to_string(r.alpha.kind)},
            {"semanticallyTrivial", r.semantically_trivial},
            {"dataDistanceRaw", r.data_distance_raw},
            {"dataDistanceNormalized", r.data_distance_normalized},
            {"applicableDistance", r.applicable_distance},
            {"dataTrivial", r.data_trivial},
            {"layoutDistance", r.layout_distance},
            {"maxCellAreaDeltaPx2", r.max_cell_area_delta_px2},
            {"maxCellAreaDeltaCell", Json::array({r.max_delta_row, r.max_delta_col})},
            {"visible", r.visible},
            {"verdict", to_string(r.verdict)},
            {"thresholds", to_json(r.thresholds)},
            {"beforeConverged", r.before_converged},
            {"afterConverged", r.after_converged},
            {"beforeMaxRelativeAreaError", r.before_error},
            {"afterMaxRelativeAreaError", r.after_error}};
  if (r.order_inverted) j["orderInverted"] = *r.order_inverted;
  j["notes"] = r.notes;
  return j;
}

Json suite_summary(const SuiteReport& s) {
  Json h = Json::array(), c = Json::array(), m = Json::array(), i = Json::array();
  for (const auto& r : s.reports) {
    switch (r.verdict) {
      case Verdict::Hallucinator: h.push_back(r.description); break;
      case Verdict::Confuser: c.push_back(r.description); break;
      case Verdict::Commutes: m.push_back(r.description); break;
      case Verdict::Inconclusive: i.push_back(r.description); break;
    }
  }
  return {{"hallucinators", std::move(h)},
          {"confusers", std::move(c)},
          {"commutes", std::move(m)},
          {"inconclusive", std::move(i)}};
}

Json to_json(const SuiteReport& s) {
  Json reports = Json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  Json skipped = Json::array();
  for (const auto& k : s.skipped) skipped.push_back({{"alpha", k.alpha}, {"reason", k.reason}});
  return {{"suiteSeed", s.suite_seed},
          {"summary", suite_summary(s)},
          {"reports", std::move(reports)},
          {"skipped", std::move(skipped)}};
}

Json to_json(const GuidanceReport& g) {
  Json range = {{"status", to_string(g.range.state)},
                {"minFraction", g.range.min_fraction},
                {"threshold", g.range.threshold},
                {"valueRatio", g.range.value_ratio}};
  Json card = {{"status", to_string(g.cardinality.state)}};
  if (g.cardinality.axis) {
    card["axis"] = to_string(*g.cardinality.axis);
    card["count"] = g.cardinality.count;
    card["limit"] = g.cardinality.limit;
  }
  Json axis = Json::array();
  for (const auto& w : g.axis_warnings) {
    axis.push_back({{"rule", w.rule}, {"axis", w.axis}, {"message", w.message}});
  }
  Json notes = Json::array();
  for (const auto& n : g.scale_notes) notes.push_back({{"rule", n.rule}, {"message", n.message}});
  Json tasks = Json::array();
  for (std::size_t k = 0; k < kTaskCount; ++k) {
    Json reasons = Json::array();
    for (const auto& r : g.tasks[k].reasons) {
      reasons.push_back({{"rule", r.rule}, {"anchor", rule_anchor(r.rule)}, {"text", r.text}});
    }
    tasks.push_back({{"task", to_string(static_cast<Task>(k))},
                     {"status", to_string(g.tasks[k].status)},
                     {"reasons", std::move(reasons)}});
  }
  return {{"rangeStatus", std::move(range)},
          {"cardinalityStatus", std::move(card)},
          {"axisWarnings", std::move(axis)},
          {"scaleTypeNotes", std::move(notes)},
          {"taskTable", std::move(tasks)}};
}

Mesh mesh_from_json(const Json& j) {
  try {
    const double w = j.at("w").get<double>();
    const double h = j.at("h").get<double>();
    const auto& rows = j.at("vertices");
    if (rows.size() < 2 || rows[0].size() < 2) throw Error(ErrorCode::Parse, "mesh needs at least 2x2 vertices");
    const std::size_t m = rows.size() - 1, n = rows[0].size() - 1;
    Mesh mesh(m, n, w, h);
    for (std::size_t i = 0; i <= m; ++i) {
      if (rows[i].size() != n + 1) throw Error(ErrorCode::Parse, "ragged vertex rows");
      for (std::size_t c = 0; c <= n; ++c) {
        const auto& p = rows[i][c];
        mesh.set_vertex(i, c, {p.at(0).get<double>(), p.at(1).get<double>()});
      }
    }
    return mesh;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("mesh JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace taco
