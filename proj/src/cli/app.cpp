#include "app.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "taco/algebra.hpp"
#include "taco/calendar.hpp"
#include "taco/error.hpp"
#include "taco/guidance.hpp"
#include "taco/json_io.hpp"
#include "taco/layout.hpp"
#include "taco/render.hpp"
#include "taco/waffle.hpp"

namespace taco::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string command;
  std::string in;
  std::string out = ".";
  std::string mesh;  // render: reuse a mesh instead of laying out
  LayoutParams layout;
  ProbeConfig probe;
  std::string alpha;
  std::string suite;
  std::uint64_t suite_seed = 1;
  unsigned threads = 1;
  std::string zero_policy = "error";
  std::string row_kind, col_kind, scale_type, unit;
  bool header_row = false, header_col = false;
  std::string color = "none";
  std::string labels = "none";
  std::string week_start = "sunday";
  std::size_t cols = 10;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw Error(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

IngestOptions ingest_options(const RunConfig& cfg) {
  IngestOptions o;
  o.header_row = cfg.header_row;
  o.header_col = cfg.header_col;
  if (!cfg.row_kind.empty()) o.row_kind = parse_axis_kind(cfg.row_kind);
  if (!cfg.col_kind.empty()) o.col_kind = parse_axis_kind(cfg.col_kind);
  if (!cfg.scale_type.empty()) o.scale_type = parse_scale_type(cfg.scale_type);
  if (!cfg.unit.empty()) o.unit = cfg.unit;
  o.zero_policy = ZeroPolicy::parse(cfg.zero_policy);
  return o;
}

Table load_table(const RunConfig& cfg) {
  if (cfg.in.empty()) throw Error(ErrorCode::InvalidArgument, "--in is required");
  return ingest(read_file(cfg.in), ingest_options(cfg));
}

RenderSpec render_spec(const RunConfig& cfg) {
  RenderSpec spec;
  if (cfg.color != "none") spec.color_ramp = cfg.color;
  spec.label_mode = parse_label_mode(cfg.labels);
  spec.validate();
  return spec;
}

// Resolved configuration embedded in every report.
Json config_json(const RunConfig& cfg) {
  return {{"command", cfg.command},
          {"in", cfg.in},
          {"layout", to_json(cfg.layout)},
          {"probe", to_json(cfg.probe)},
          {"alpha", cfg.alpha},
          {"suite", cfg.suite},
          {"suiteSeed", cfg.suite_seed},
          {"zeroPolicy", cfg.zero_policy},
          {"rowKind", cfg.row_kind},
          {"colKind", cfg.col_kind},
          {"scaleType", cfg.scale_type},
          {"headerRow", cfg.header_row},
          {"headerCol", cfg.header_col},
          {"color", cfg.color},
          {"labels", cfg.labels},
          {"weekStart", cfg.week_start},
          {"cols", cfg.cols}};
}

int cmd_layout(const RunConfig& cfg, std::ostream& out) {
  const Table t = load_table(cfg);
  const LayoutResult r = layout_table(t, cfg.layout);
  Json report = {{"config", config_json(cfg)}, {"table", to_json(t)}, {"result", to_json(r)}};
  if (t.interval_offset) report["intervalOffset"] = *t.interval_offset;
  report["topologyViolations"] = check_topology(r.mesh).size();
  write_file(fs::path(cfg.out) / "mesh.json", dump(to_json(r)));
  write_file(fs::path(cfg.out) / "layout-report.json", dump(report));
  out << (r.converged ? "converged" : "not converged") << " after " << r.iterations
      << " iterations, max relative area error " << r.max_relative_area_error << "\n";
  return r.converged ? kOk : kNotConverged;
}

int cmd_render(const RunConfig& cfg, std::ostream& out) {
  const Table t = load_table(cfg);
  const RenderSpec spec = render_spec(cfg);
  bool converged = true;
  Mesh mesh;
  if (!cfg.mesh.empty()) {
    mesh = mesh_from_json(Json::parse(read_file(cfg.mesh)));
  } else {
    const LayoutResult r = layout_table(t, cfg.layout);
    converged = r.converged;
    mesh = r.mesh;
    write_file(fs::path(cfg.out) / "mesh.json", dump(to_json(r)));
  }
  write_file(fs::path(cfg.out) / "cartogram.svg", render_svg(mesh, t, spec));
  out << "wrote " << (fs::path(cfg.out) / "cartogram.svg").string() << "\n";
  return converged ? kOk : kNotConverged;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Table t = load_table(cfg);
  Json report = {{"config", config_json(cfg)}};
  if (!cfg.suite.empty()) {
    if (cfg.suite != "standard") {
      throw Error(ErrorCode::InvalidArgument, "unknown suite '" + cfg.suite + "'");
    }
    const SuiteReport s = run_suite(t, cfg.layout, cfg.probe, cfg.suite_seed, cfg.threads);
    report["suite"] = to_json(s);
    for (const auto& r : s.reports) out << r.description << ": " << to_string(r.verdict) << "\n";
  } else if (!cfg.alpha.empty()) {
    const Alpha a = resolve_alpha(parse_alpha(cfg.alpha), t, cfg.suite_seed);
    const ProbeReport r = run_probe(t, a, cfg.layout, cfg.probe);
    report["report"] = to_json(r);
    out << r.description << ": " << to_string(r.verdict) << "\n";
  } else {
    throw Error(ErrorCode::InvalidArgument, "analyze needs --alpha or --suite");
  }
  write_file(fs::path(cfg.out) / "ava-report.json", dump(report));
  return kOk;
}

int cmd_guide(const RunConfig& cfg, std::ostream& out) {
  const Table t = load_table(cfg);
  const GuidanceReport g = guide(t, t.labels_provided, cfg.layout.width, cfg.layout.height);
  Json report = {{"config", config_json(cfg)}, {"guidance", to_json(g)}};
  write_file(fs::path(cfg.out) / "guidance.json", dump(report));
  out << render_text(g);
  return g.has_fail() ? kGuidanceFail : kOk;
}

int cmd_calendar(const RunConfig& cfg, std::ostream& out) {
  if (cfg.in.empty()) throw Error(ErrorCode::InvalidArgument, "--in is required");
  const auto series = parse_dated_series(read_file(cfg.in));
  CalendarSpec cal;
  cal.week_start = parse_weekday(cfg.week_start);
  const RenderSpec spec = render_spec(cfg);
  const auto months = months_in(series);
  if (months.empty()) throw Error(ErrorCode::EmptyMonth, "series has no dated values");

  std::vector<MonthLayout> laid;
  bool converged = true;
  Json summary = Json::array();
  for (const auto& ym : months) {
    Table t = build_month_table(series, ym, cal);
    const LayoutResult r = layout_table(t, cfg.layout);
    converged = converged && r.converged;
    write_file(fs::path(cfg.out) / ("mesh-" + ym.to_string() + ".json"), dump(to_json(r)));
    summary.push_back({{"month", ym.to_string()},
                       {"table", to_json(t)},
                       {"converged", r.converged},
                       {"iterations", r.iterations},
                       {"maxRelativeAreaError", r.max_relative_area_error}});
    laid.push_back({ym, r.mesh, std::move(t)});
  }
  write_file(fs::path(cfg.out) / "calendar.svg", compose_months(laid, cal, spec));
  write_file(fs::path(cfg.out) / "calendar-report.json",
             dump({{"config", config_json(cfg)}, {"months", std::move(summary)}}));
  out << "composed " << laid.size() << " month(s)\n";
  return converged ? kOk : kNotConverged;
}

int cmd_waffle(const RunConfig& cfg, std::ostream& out) {
  if (cfg.in.empty()) throw Error(ErrorCode::InvalidArgument, "--in is required");
  const auto entries = parse_waffle_csv(read_file(cfg.in));
  const auto max_rows = static_cast<std::size_t>(cfg.layout.height);
  const auto max_cols = static_cast<std::size_t>(cfg.layout.width);
  const Waffle w = build_waffle(entries, cfg.cols, max_rows, max_cols);
  const LayoutResult r = layout_table(w.table, cfg.layout);
  Json warnings = Json::array();
  for (const auto& a : axis_guidance(w.table)) {
    warnings.push_back({{"rule", a.rule}, {"axis", a.axis}, {"message", a.message}});
  }
  Json report = {{"config", config_json(cfg)},
                 {"table", to_json(w.table)},
                 {"categories", w.categories},
                 {"warnings", std::move(warnings)},
                 {"result", to_json(r)}};
  write_file(fs::path(cfg.out) / "mesh.json", dump(to_json(r)));
  write_file(fs::path(cfg.out) / "waffle-report.json", dump(report));
  write_file(fs::path(cfg.out) / "waffle.svg", render_svg(r.mesh, w.table, render_spec(cfg)));
  for (const auto& a : axis_guidance(w.table)) out << "warning [" << a.rule << "]: " << a.message << "\n";
  return r.converged ? kOk : kNotConverged;
}

// Binds a flag and remembers how to take its value from the config file
// when the flag itself is absent.
struct Binding {
  std::string command;
  CLI::Option* option;
  std::string key;
  std::function<void(const Json&)> from_config;
};

template <typename T>
void add(CLI::App& app, std::vector<Binding>& bindings, const std::string& name, T& field,
         const std::string& help) {
  CLI::Option* opt = app.add_option("--" + name, field, help);
  bindings.push_back({app.get_name(), opt, name, [&field](const Json& j) { field = j.get<T>(); }});
}

void add_flag(CLI::App& app, std::vector<Binding>& bindings, const std::string& name, bool& field,
              const std::string& help) {
  CLI::Option* opt = app.add_flag("--" + name, field, help);
  bindings.push_back({app.get_name(), opt, name, [&field](const Json& j) { field = j.get<bool>(); }});
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& config_text) {
  RunConfig cfg;
  CLI::App app{"Table cartogram layout, rendering and analysis"};
  app.require_subcommand(1);
  std::vector<Binding> bindings;

  const char* commands[][2] = {
      {"layout", "optimize a table cartogram and write mesh.json and layout-report.json"},
      {"render", "lay out (or load --mesh) and write cartogram.svg"},
      {"analyze", "run one probe (--alpha) or a suite (--suite standard); writes ava-report.json"},
      {"guide", "print usage guidance and write guidance.json; exit 1 on any Fail"},
      {"calendar", "lay out one month table per month of a date,value series; writes calendar.svg"},
      {"waffle", "arrange category,count units into a --cols wide grid; writes waffle.svg"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&cfg, n = std::string(name)] { cfg.command = n; });
  }

  // Flags are shared by every subcommand.
  for (CLI::App* sub : app.get_subcommands({})) {
    std::vector<Binding>& b = bindings;
    add(*sub, b, "in", cfg.in, "input table (CSV or JSON), series or waffle CSV");
    add(*sub, b, "out", cfg.out, "output directory");
    add(*sub, b, "mesh", cfg.mesh, "render: existing mesh.json");
    add(*sub, b, "width", cfg.layout.width, "rectangle width in px");
    add(*sub, b, "height", cfg.layout.height, "rectangle height in px");
    add(*sub, b, "tol", cfg.layout.tolerance, "max relative area error");
    add(*sub, b, "max-iters", cfg.layout.max_iterations, "iteration cap");
    add(*sub, b, "seed", cfg.layout.seed, "layout seed");
    add(*sub, b, "jitter", cfg.layout.jitter, "initial jitter, fraction of the smallest span");
    add(*sub, b, "step-size", cfg.layout.step_size, "first line-search trial");
    add(*sub, b, "shrink-factor", cfg.layout.shrink_factor, "line-search backtracking factor");
    add(*sub, b, "alpha", cfg.alpha, "probe alpha, e.g. scale:10, permute-rows, seed:2");
    add(*sub, b, "suite", cfg.suite, "probe battery (standard)");
    add(*sub, b, "suite-seed", cfg.suite_seed, "seed for every random probe choice");
    add(*sub, b, "threads", cfg.threads, "concurrent probes in a suite");
    add(*sub, b, "data-threshold", cfg.probe.data_significance, "data significance threshold");
    add(*sub, b, "min-displacement", cfg.probe.min_mean_displacement_frac,
        "visibility: mean displacement / diagonal");
    add(*sub, b, "min-area-delta", cfg.probe.min_cell_area_delta_px2, "visibility: px^2");
    add(*sub, b, "zero-policy", cfg.zero_policy, "error | intervalize:<offset>");
    add(*sub, b, "row-kind", cfg.row_kind, "nominal | sorted-nominal | ordinal | non-axial");
    add(*sub, b, "col-kind", cfg.col_kind, "nominal | sorted-nominal | ordinal | non-axial");
    add(*sub, b, "scale-type", cfg.scale_type, "ratio | interval");
    add(*sub, b, "unit", cfg.unit, "unit name");
    add_flag(*sub, b, "header-row", cfg.header_row, "first CSV row holds column labels");
    add_flag(*sub, b, "header-col", cfg.header_col, "first CSV column holds row labels");
    add(*sub, b, "color", cfg.color, "none | blues | greys | viridis");
    add(*sub, b, "labels", cfg.labels, "none | values | axis | both");
    add(*sub, b, "week-start", cfg.week_start, "first weekday of calendar rows");
    add(*sub, b, "cols", cfg.cols, "waffle grid width");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (config_text) {
      const Json conf = Json::parse(*config_text);
      if (!conf.is_object()) throw Error(ErrorCode::Parse, "TACO_CONFIG must hold a JSON object");
      for (const auto& b : bindings) {
        if (b.command != cfg.command || b.option->count() > 0) continue;
        if (auto it = conf.find(b.key); it != conf.end()) b.from_config(*it);
      }
      for (const auto& [key, _] : conf.items()) {
        const bool known = std::any_of(bindings.begin(), bindings.end(),
                                       [&](const Binding& b) { return b.key == key; });
        if (!known) throw Error(ErrorCode::InvalidArgument, "unknown TACO_CONFIG key '" + key + "'");
      }
    }
    cfg.layout.validate();
    cfg.probe.validate();

    if (cfg.command == "layout") return cmd_layout(cfg, out);
    if (cfg.command == "render") return cmd_render(cfg, out);
    if (cfg.command == "analyze") return cmd_analyze(cfg, out);
    if (cfg.command == "guide") return cmd_guide(cfg, out);
    if (cfg.command == "calendar") return cmd_calendar(cfg, out);
    if (cfg.command == "waffle") return cmd_waffle(cfg, out);
    throw Error(ErrorCode::InvalidArgument, "no command");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

int main_entry(int argc, const char* const* argv) {
  std::optional<std::string> config;
  if (const char* path = std::getenv("TACO_CONFIG"); path && *path) {
    try {
      config = read_file(path);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kError;
    }
  }
  return run(argc, argv, std::cout, std::cerr, config);
}

}  // namespace taco::cli
