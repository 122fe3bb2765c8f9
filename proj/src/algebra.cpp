#include "taco/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "taco/error.hpp"

namespace taco {

namespace {

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_num(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(ErrorCode::InvalidArgument, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_index(std::string_view s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(ErrorCode::InvalidArgument, "bad index '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? s.npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(v[k]);
  }
  return out;
}

void precondition(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::AlphaPrecondition, what);
}

void check_permutation(const std::vector<std::size_t>& perm, std::size_t n, const char* axis) {
  precondition(perm.size() == n, std::string(axis) + " permutation has " +
                                     std::to_string(perm.size()) + " entries, expected " +
                                     std::to_string(n));
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    precondition(p < n && !seen[p], std::string(axis) + " permutation is not a bijection");
    seen[p] = true;
  }
}

std::vector<std::size_t> shuffled(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::swap(perm[i - 1], perm[static_cast<std::size_t>(u * static_cast<double>(i))]);
  }
  return perm;
}

std::vector<std::size_t> non_identity_shuffle(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm = shuffled(n, rng);
  if (n < 2) return perm;
  while (std::is_sorted(perm.begin(), perm.end())) perm = shuffled(n, rng);
  return perm;
}

bool data_cell(const Table& t, std::size_t k) { return t.pad_mask.empty() || !t.pad_mask[k]; }

// Pad cells follow the mean-fill policy after any change to the data.
void refill_pads(Table& t) {
  if (t.pad_mask.empty()) return;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    if (!t.pad_mask[k]) {
      sum += t.values.data()[k];
      ++n;
    }
  }
  if (n == 0) return;
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    if (t.pad_mask[k]) t.values.data()[k] = sum / static_cast<double>(n);
  }
}

double max_relative_change(const std::vector<double>& before, const std::vector<double>& after,
                           const Table& a, const Table& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < before.size(); ++k) {
    if (!data_cell(a, k) || !data_cell(b, k)) continue;
    worst = std::max(worst, std::abs(after[k] - before[k]) / before[k]);
  }
  return worst;
}

}  // namespace

const char* to_string(AlphaKind kind) {
  switch (kind) {
    case AlphaKind::PermuteRows: return "PermuteRows";
    case AlphaKind::PermuteCols: return "PermuteCols";
    case AlphaKind::Transpose: return "Transpose";
    case AlphaKind::Reciprocal: return "Reciprocal";
    case AlphaKind::UniformScale: return "UniformScale";
    case AlphaKind::Affine: return "Affine";
    case AlphaKind::DoubleMin: return "DoubleMin";
    case AlphaKind::ReplaceOutliersWithRowMean: return "ReplaceOutliersWithRowMean";
    case AlphaKind::DecorrelateAxis: return "DecorrelateAxis";
    case AlphaKind::SetCell: return "SetCell";
    case AlphaKind::SeedChange: return "SeedChange";
  }
  return "Unknown";
}

const char* to_string(Axis axis) { return axis == Axis::Rows ? "rows" : "cols"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Commutes: return "Commutes";
    case Verdict::Confuser: return "Confuser";
    case Verdict::Hallucinator: return "Hallucinator";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

Alpha Alpha::permute_rows(std::vector<std::size_t> perm) {
  Alpha a;
  a.kind = AlphaKind::PermuteRows;
  a.perm = std::move(perm);
  return a;
}

Alpha Alpha::permute_cols(std::vector<std::size_t> perm) {
  Alpha a;
  a.kind = AlphaKind::PermuteCols;
  a.perm = std::move(perm);
  return a;
}

Alpha Alpha::transpose() {
  Alpha a;
  a.kind = AlphaKind::Transpose;
  return a;
}

Alpha Alpha::reciprocal() {
  Alpha a;
  a.kind = AlphaKind::Reciprocal;
  return a;
}

Alpha Alpha::uniform_scale(double k) {
  Alpha a;
  a.kind = AlphaKind::UniformScale;
  a.k = k;
  return a;
}

Alpha Alpha::affine(double mul, double add, std::optional<std::string> unit) {
  Alpha a;
  a.kind = AlphaKind::Affine;
  a.mul = mul;
  a.add = add;
  a.unit = std::move(unit);
  return a;
}

Alpha Alpha::double_min() {
  Alpha a;
  a.kind = AlphaKind::DoubleMin;
  return a;
}

Alpha Alpha::replace_outliers(double z_threshold) {
  Alpha a;
  a.kind = AlphaKind::ReplaceOutliersWithRowMean;
  a.z_threshold = z_threshold;
  return a;
}

Alpha Alpha::decorrelate(Axis axis) {
  Alpha a;
  a.kind = AlphaKind::DecorrelateAxis;
  a.axis = axis;
  return a;
}

Alpha Alpha::set_cell(std::size_t i, std::size_t j, double value) {
  Alpha a;
  a.kind = AlphaKind::SetCell;
  a.row = i;
  a.col = j;
  a.value = value;
  return a;
}

Alpha Alpha::seed_change(std::uint64_t seed) {
  Alpha a;
  a.kind = AlphaKind::SeedChange;
  a.seed = seed;
  return a;
}

std::string Alpha::describe() const {
  switch (kind) {
    case AlphaKind::PermuteRows: return perm.empty() ? "permute-rows" : "permute-rows:" + join(perm);
    case AlphaKind::PermuteCols: return perm.empty() ? "permute-cols" : "permute-cols:" + join(perm);
    case AlphaKind::Transpose: return "transpose";
    case AlphaKind::Reciprocal: return "reciprocal";
    case AlphaKind::UniformScale: return "scale:" + num(k);
    case AlphaKind::Affine: return "affine:" + num(mul) + "," + num(add);
    case AlphaKind::DoubleMin: return "double-min";
    case AlphaKind::ReplaceOutliersWithRowMean: return "outliers:" + num(z_threshold);
    case AlphaKind::DecorrelateAxis: return std::string("decorrelate:") + to_string(axis);
    case AlphaKind::SetCell:
      return "set-cell:" + std::to_string(row) + "," + std::to_string(col) + "," + num(value);
    case AlphaKind::SeedChange: return "seed:" + std::to_string(seed);
  }
  return "unknown";
}

Alpha parse_alpha(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw Error(ErrorCode::InvalidArgument, "alpha '" + std::string(name) + "' needs an argument");
  };
  auto indices = [&] {
    std::vector<std::size_t> perm;
    if (!arg.empty()) {
      for (auto part : split(arg, ',')) perm.push_back(parse_index(part));
    }
    return perm;
  };
  if (name == "permute-rows") return Alpha::permute_rows(indices());
  if (name == "permute-cols") return Alpha::permute_cols(indices());
  if (name == "transpose") return Alpha::transpose();
  if (name == "reciprocal") return Alpha::reciprocal();
  if (name == "scale") {
    need_arg();
    return Alpha::uniform_scale(parse_num(arg, "scale factor"));
  }
  if (name == "affine") {
    need_arg();
    const auto parts = split(arg, ',');
    if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "affine expects mul,add");
    return Alpha::affine(parse_num(parts[0], "multiplier"), parse_num(parts[1], "offset"));
  }
  if (name == "double-min") return Alpha::double_min();
  if (name == "outliers") return Alpha::replace_outliers(arg.empty() ? 2.0 : parse_num(arg, "z threshold"));
  if (name == "decorrelate") {
    if (arg.empty() || arg == "rows") return Alpha::decorrelate(Axis::Rows);
    if (arg == "cols") return Alpha::decorrelate(Axis::Cols);
    throw Error(ErrorCode::InvalidArgument, "decorrelate expects rows or cols");
  }
  if (name == "set-cell") {
    need_arg();
    const auto parts = split(arg, ',');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "set-cell expects i,j,value");
    return Alpha::set_cell(parse_index(parts[0]), parse_index(parts[1]), parse_num(parts[2], "value"));
  }
  if (name == "seed") {
    need_arg();
    std::uint64_t s = 0;
    const auto* end = arg.data() + arg.size();
    const auto res = std::from_chars(arg.data(), end, s);
    if (res.ec != std::errc() || res.ptr != end) throw Error(ErrorCode::InvalidArgument, "bad seed");
    return Alpha::seed_change(s);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown alpha '" + std::string(text) + "'");
}

Alpha resolve_alpha(const Alpha& a, const Table& t, std::uint64_t seed) {
  Alpha out = a;
  if (!out.perm.empty()) return out;
  std::mt19937_64 rng(seed);
  if (a.kind == AlphaKind::PermuteRows) out.perm = non_identity_shuffle(t.rows(), rng);
  if (a.kind == AlphaKind::PermuteCols) out.perm = non_identity_shuffle(t.cols(), rng);
  return out;
}

bool semantically_trivial(const Alpha& a, const Table& t) {
  switch (a.kind) {
    case AlphaKind::PermuteRows: return t.row_kind == AxisKind::Nominal;
    case AlphaKind::PermuteCols: return t.col_kind == AxisKind::Nominal;
    case AlphaKind::Affine: return t.scale_type == ScaleType::Interval;
    case AlphaKind::SeedChange:
    case AlphaKind::Transpose: return true;
    default: return false;
  }
}

Table apply_alpha(const Table& t, const Alpha& a) {
  validate(t);
  Table out = t;
  auto& v = out.values.data();
  switch (a.kind) {
    case AlphaKind::PermuteRows: {
      check_permutation(a.perm, t.rows(), "row");
      for (std::size_t i = 0; i < t.rows(); ++i) {
        out.row_labels[i] = t.row_labels[a.perm[i]];
        for (std::size_t j = 0; j < t.cols(); ++j) {
          out.values(i, j) = t(a.perm[i], j);
          if (!t.pad_mask.empty()) out.pad_mask[i * t.cols() + j] = t.pad_mask[a.perm[i] * t.cols() + j];
        }
      }
      break;
    }
    case AlphaKind::PermuteCols: {
      check_permutation(a.perm, t.cols(), "column");
      for (std::size_t j = 0; j < t.cols(); ++j) {
        out.col_labels[j] = t.col_labels[a.perm[j]];
        for (std::size_t i = 0; i < t.rows(); ++i) {
          out.values(i, j) = t(i, a.perm[j]);
          if (!t.pad_mask.empty()) out.pad_mask[i * t.cols() + j] = t.pad_mask[i * t.cols() + a.perm[j]];
        }
      }
      break;
    }
    case AlphaKind::Transpose: return transpose(t);
    case AlphaKind::Reciprocal:
      for (double& x : v) x = 1.0 / x;
      break;
    case AlphaKind::UniformScale:
      precondition(a.k > 0.0 && std::isfinite(a.k), "scale factor must be positive");
      for (double& x : v) x *= a.k;
      break;
    case AlphaKind::Affine: {
      precondition(t.scale_type == ScaleType::Interval,
                   "affine re-representation needs interval-scale data");
      precondition(std::isfinite(a.mul) && std::isfinite(a.add) && a.mul != 0.0,
                   "affine coefficients must be finite with a non-zero multiplier");
      for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = a.mul * v[k] + a.add;
        precondition(!data_cell(t, k) || v[k] > 0.0, "affine image has a non-positive value");
      }
      if (a.unit) out.unit = a.unit;
      break;
    }
    case AlphaKind::DoubleMin: {
      std::size_t best = v.size();
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (data_cell(t, k) && (best == v.size() || v[k] < v[best])) best = k;
      }
      precondition(best < v.size(), "table has no data cells");
      v[best] *= 2.0;
      break;
    }
    case AlphaKind::ReplaceOutliersWithRowMean: {
      precondition(a.z_threshold > 0.0, "outlier threshold must be positive");
      for (std::size_t i = 0; i < t.rows(); ++i) {
        double sum = 0.0, sq = 0.0;
        std::size_t n = 0;
        for (std::size_t j = 0; j < t.cols(); ++j) {
          if (t.is_pad(i, j)) continue;
          sum += t(i, j);
          ++n;
        }
        if (n == 0) continue;
        const double mean = sum / static_cast<double>(n);
        for (std::size_t j = 0; j < t.cols(); ++j) {
          if (!t.is_pad(i, j)) sq += (t(i, j) - mean) * (t(i, j) - mean);
        }
        const double sd = std::sqrt(sq / static_cast<double>(n));
        for (std::size_t j = 0; j < t.cols(); ++j) {
          if (!t.is_pad(i, j) && std::abs(t(i, j) - mean) > a.z_threshold * sd) out.values(i, j) = mean;
        }
      }
      break;
    }
    case AlphaKind::DecorrelateAxis: {
      // Rescale each slice along the axis so its marginal becomes uniform.
      const bool rows = a.axis == Axis::Rows;
      const std::size_t slices = rows ? t.rows() : t.cols();
      std::vector<double> sums(slices, 0.0);
      double total = 0.0;
      for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < t.cols(); ++j) {
          if (t.is_pad(i, j)) continue;
          sums[rows ? i : j] += t(i, j);
          total += t(i, j);
        }
      }
      const double share = total / static_cast<double>(slices);
      for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < t.cols(); ++j) {
          const double s = sums[rows ? i : j];
          if (s > 0.0) out.values(i, j) = t(i, j) * (share / s);
        }
      }
      break;
    }
    case AlphaKind::SetCell:
      precondition(a.row < t.rows() && a.col < t.cols(), "set-cell index out of range");
      precondition(a.value > 0.0 && std::isfinite(a.value), "set-cell value must be positive");
      precondition(!t.is_pad(a.row, a.col), "set-cell targets a pad cell");
      out.values(a.row, a.col) = a.value;
      break;
    case AlphaKind::SeedChange: return out;
  }
  refill_pads(out);
  validate(out);
  return out;
}

LayoutComparison compare_layouts(const Mesh& a, const Mesh& b) {
  if (!a.same_shape(b) || a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::ShapeMismatch, "layouts differ in grid or rectangle");
  }
  LayoutComparison out;
  double sum = 0.0;
  for (std::size_t k = 0; k < a.xs().size(); ++k) {
    sum += std::hypot(a.xs()[k] - b.xs()[k], a.ys()[k] - b.ys()[k]);
  }
  const double diag = std::hypot(a.width(), a.height());
  out.distance = sum / static_cast<double>(a.xs().size()) / diag;
  const auto aa = signed_cell_areas(a);
  const auto ba = signed_cell_areas(b);
  out.cell_area_delta.resize(aa.size());
  for (std::size_t c = 0; c < aa.size(); ++c) out.cell_area_delta[c] = std::abs(aa[c] - ba[c]);
  return out;
}

double layout_distance(const Mesh& a, const Mesh& b) { return compare_layouts(a, b).distance; }

Mesh untranspose_mesh(const Mesh& m) {
  const double w = m.width(), h = m.height();
  Mesh out(m.cols(), m.rows(), w, h);
  for (std::size_t i = 0; i <= m.cols(); ++i) {
    for (std::size_t j = 0; j <= m.rows(); ++j) {
      const Point p = m.vertex(j, i);
      out.set_vertex(i, j, {p.y * (w / h), p.x * (h / w)});
    }
  }
  return out;
}

void ProbeConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(data_significance) || !positive(min_mean_displacement_frac) ||
      !positive(min_cell_area_delta_px2)) {
    throw Error(ErrorCode::InvalidArgument, "probe thresholds must be positive");
  }
}

Verdict decide_verdict(bool data_trivial, bool visible, bool converged) {
  if (!converged) return Verdict::Inconclusive;
  if (data_trivial) return visible ? Verdict::Hallucinator : Verdict::Commutes;
  return visible ? Verdict::Commutes : Verdict::Confuser;
}

ProbeReport run_probe(const Table& t, const LayoutResult& before, const Alpha& alpha,
                      const LayoutParams& lp, const ProbeConfig& pc) {
  pc.validate();
  ProbeReport r;
  r.alpha = alpha;
  r.description = alpha.describe();
  r.thresholds = pc;
  r.semantically_trivial = semantically_trivial(alpha, t);

  const Table after_table = apply_alpha(t, alpha);
  LayoutParams after_lp = lp;
  if (alpha.kind == AlphaKind::SeedChange) after_lp.seed = alpha.seed;
  const LayoutResult after = layout_table(after_table, after_lp);

  // Compare in the original frame: a transposed table is mapped back.
  const bool transposed = alpha.kind == AlphaKind::Transpose;
  const Table aligned = transposed ? transpose(after_table) : after_table;
  const Mesh after_mesh = transposed ? untranspose_mesh(after.mesh) : after.mesh;

  const auto nb = normalize(t);
  const auto na = normalize(aligned);
  r.data_distance_raw = max_relative_change(t.values.data(), aligned.values.data(), t, aligned);
  r.data_distance_normalized =
      max_relative_change(nb.fractions.data(), na.fractions.data(), t, aligned);
  const bool raw = alpha.kind == AlphaKind::UniformScale;
  r.applicable_distance = raw ? "raw" : "normalized";
  const double applicable = raw ? r.data_distance_raw : r.data_distance_normalized;
  r.data_trivial = r.semantically_trivial || applicable < pc.data_significance;

  const LayoutComparison cmp = compare_layouts(before.mesh, after_mesh);
  r.layout_distance = cmp.distance;
  for (std::size_t c = 0; c < cmp.cell_area_delta.size(); ++c) {
    if (!data_cell(t, c) || !data_cell(aligned, c)) continue;
    if (cmp.cell_area_delta[c] > r.max_cell_area_delta_px2) {
      r.max_cell_area_delta_px2 = cmp.cell_area_delta[c];
      r.max_delta_row = c / t.cols();
      r.max_delta_col = c % t.cols();
    }
  }
  r.visible = r.layout_distance > pc.min_mean_displacement_frac ||
              r.max_cell_area_delta_px2 > pc.min_cell_area_delta_px2;

  r.before_converged = before.converged;
  r.after_converged = after.converged;
  r.before_error = before.max_relative_area_error;
  r.after_error = after.max_relative_area_error;
  r.verdict = decide_verdict(r.data_trivial, r.visible, before.converged && after.converged);
  if (r.verdict == Verdict::Inconclusive) {
    r.notes.push_back(std::string("layout did not converge (") +
                      (before.converged ? "after: " + after.stop_reason
                                        : "before: " + before.stop_reason) +
                      ")");
  }

  if (alpha.kind == AlphaKind::Reciprocal) {
    std::vector<std::size_t> cells;
    for (std::size_t c = 0; c < t.values.size(); ++c) {
      if (data_cell(t, c)) cells.push_back(c);
    }
    const auto areas = signed_cell_areas(after.mesh);
    std::vector<std::size_t> by_value = cells, by_area = cells;
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](std::size_t x, std::size_t y) { return t.values.data()[x] > t.values.data()[y]; });
    std::stable_sort(by_area.begin(), by_area.end(),
                     [&](std::size_t x, std::size_t y) { return areas[x] < areas[y]; });
    r.order_inverted = by_value == by_area;
  }
  if (transposed && lp.width != lp.height) {
    r.notes.push_back("rectangle is not square; transposition changes the aspect of every cell");
  }
  return r;
}

ProbeReport run_probe(const Table& t, const Alpha& a, const LayoutParams& lp,
                      const ProbeConfig& pc) {
  return run_probe(t, layout_table(t, lp), a, lp, pc);
}

SuiteReport run_suite(const Table& t, const LayoutParams& lp, const ProbeConfig& pc,
                      std::uint64_t suite_seed, unsigned threads) {
  validate(t);
  pc.validate();
  SuiteReport suite;
  suite.suite_seed = suite_seed;

  // Draw every random choice up front, in catalog order.
  std::mt19937_64 rng(suite_seed);
  std::vector<Alpha> catalog;
  auto skip = [&](const std::string& name, const std::string& why) {
    suite.skipped.push_back({name, why});
  };
  if (t.rows() >= 2) {
    catalog.push_back(Alpha::permute_rows(non_identity_shuffle(t.rows(), rng)));
  } else {
    skip("permute-rows", "table has a single row");
  }
  if (t.cols() >= 2) {
    catalog.push_back(Alpha::permute_cols(non_identity_shuffle(t.cols(), rng)));
  } else {
    skip("permute-cols", "table has a single column");
  }
  catalog.push_back(Alpha::transpose());
  catalog.push_back(Alpha::reciprocal());
  catalog.push_back(Alpha::uniform_scale(10.0));
  if (t.scale_type == ScaleType::Interval) {
    catalog.push_back(Alpha::affine(9.0 / 5.0, 32.0));
  } else {
    skip("affine:1.8,32", "ratio-scale data has no affine re-representation");
  }
  catalog.push_back(Alpha::double_min());
  catalog.push_back(Alpha::replace_outliers(2.0));
  if (t.rows() >= 2) {
    catalog.push_back(Alpha::decorrelate(Axis::Rows));
  } else {
    skip("decorrelate:rows", "table has a single row");
  }
  if (t.cols() >= 2) {
    catalog.push_back(Alpha::decorrelate(Axis::Cols));
  } else {
    skip("decorrelate:cols", "table has a single column");
  }
  {
    std::vector<std::size_t> data;
    for (std::size_t c = 0; c < t.values.size(); ++c) {
      if (data_cell(t, c)) data.push_back(c);
    }
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const std::size_t c = data[static_cast<std::size_t>(u * static_cast<double>(data.size()))];
    catalog.push_back(Alpha::set_cell(c / t.cols(), c % t.cols(), 2.0 * t.values.data()[c]));
  }
  {
    std::uint64_t s = rng();
    if (s == lp.seed) s = rng();
    catalog.push_back(Alpha::seed_change(s));
  }

  const LayoutResult before = layout_table(t, lp);
  std::vector<std::optional<ProbeReport>> slots(catalog.size());
  std::vector<std::string> failures(catalog.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < catalog.size(); k = next++) {
      try {
        slots[k] = run_probe(t, before, catalog[k], lp, pc);
      } catch (const Error& e) {
        failures[k] = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(catalog.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    if (slots[k]) {
      suite.reports.push_back(std::move(*slots[k]));
    } else {
      skip(catalog[k].describe(), failures[k]);
    }
  }
  return suite;
}

}  // namespace taco
