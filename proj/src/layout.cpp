#include "taco/layout.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "embedding.hpp"
#include "taco/error.hpp"
#include "taco/simd/kernels.hpp"

namespace taco {

namespace {

constexpr int kTargetBits = 24;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;
constexpr double kInitialDamping = 1e-3;
constexpr double kMinDamping = 1e-12;
constexpr double kMaxDamping = 1e8;
constexpr double kDampingUp = 4.0;
constexpr double kDampingDown = 0.25;
constexpr double kInitialStageStep = 0.125;
constexpr double kMaxStageStep = 0.5;
constexpr double kMinStageStep = 1.0 / 4096.0;
constexpr double kStageTolerance = 0.01;
constexpr std::size_t kStageIterations = 30;
constexpr double kPolishFactor = 1e-6;
constexpr int kPolishIterations = 8;
constexpr double kMetricRidge = 1e-4;
constexpr std::size_t kStallWindow = 200;
constexpr double kStallDecrease = 1e-6;

double snap(double f) {
  int exp = 0;
  const double mant = std::frexp(f, &exp);
  return std::ldexp(std::nearbyint(std::ldexp(mant, kTargetBits)), exp - kTargetBits);
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Residuals {
  double objective = 0.0;
  double max_error = 0.0;
};

Residuals evaluate(const std::vector<double>& areas, const std::vector<double>& targets) {
  Residuals r;
  for (std::size_t c = 0; c < areas.size(); ++c) {
    const double rel = (areas[c] - targets[c]) / targets[c];
    r.objective += rel * rel;
    r.max_error = std::max(r.max_error, std::abs(rel));
  }
  return r;
}

std::vector<double> cumulative_cuts(const std::vector<double>& sums, double extent) {
  double total = 0.0;
  for (double s : sums) total += s;
  std::vector<double> cuts(sums.size() + 1, 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < sums.size(); ++k) {
    acc += sums[k];
    cuts[k + 1] = extent * (acc / total);
  }
  cuts.back() = extent;
  return cuts;
}

}  // namespace

void LayoutParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(width) || !positive(height)) {
    throw Error(ErrorCode::InvalidArgument, "width and height must be positive");
  }
  if (!positive(tolerance)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (!(jitter >= 0.0) || !std::isfinite(jitter)) {
    throw Error(ErrorCode::InvalidArgument, "jitter must be non-negative");
  }
  if (!positive(step_size)) throw Error(ErrorCode::InvalidArgument, "step size must be positive");
  if (!(shrink_factor > 0.0 && shrink_factor < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "shrink factor must lie in (0, 1)");
  }
}

std::vector<double> area_targets(const NormalizedTable& nt, double width, double height) {
  std::vector<double> targets(nt.fractions.size());
  const double total = width * height;
  for (std::size_t c = 0; c < targets.size(); ++c) {
    const double t = total * snap(nt.fractions.data()[c]);
    if (!std::isnormal(t) || t <= 0.0) {
      throw Error(ErrorCode::DegenerateTarget,
                  "target area of cell " + std::to_string(c) + " underflows double precision",
                  CellRef{c / nt.cols(), c % nt.cols()}, t);
    }
    targets[c] = t;
  }
  return targets;
}

Mesh initial_layout(const NormalizedTable& nt, const LayoutParams& params) {
  params.validate();
  const std::size_t m = nt.rows();
  const std::size_t n = nt.cols();
  const auto targets = area_targets(nt, params.width, params.height);

  std::vector<double> row_sums(m, 0.0), col_sums(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      row_sums[i] += targets[i * n + j];
      col_sums[j] += targets[i * n + j];
    }
  }
  Mesh mesh = Mesh::rectilinear(cumulative_cuts(row_sums, params.height),
                                cumulative_cuts(col_sums, params.width));
  if (params.jitter == 0.0 || m < 2 || n < 2) return mesh;

  double min_span = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i)
    min_span = std::min(min_span, mesh.vertex(i + 1, 0).y - mesh.vertex(i, 0).y);
  for (std::size_t j = 0; j < n; ++j)
    min_span = std::min(min_span, mesh.vertex(0, j + 1).x - mesh.vertex(0, j).x);
  const double magnitude = params.jitter * min_span;

  std::mt19937_64 rng(params.seed);
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      Point p = mesh.vertex(i, j);
      p.x += (2.0 * unit_uniform(rng) - 1.0) * magnitude;
      p.y += (2.0 * unit_uniform(rng) - 1.0) * magnitude;
      mesh.set_vertex(i, j, p);
    }
  }
  if (!cells_valid(mesh)) {
    throw Error(ErrorCode::InvalidArgument, "jitter is large enough to fold the initial mesh");
  }
  return mesh;
}

namespace {

// Damped Gauss-Newton descent on sum(((a - t) / t)^2) over the parameters of a
// convex-combination embedding. Every parameter vector gives convex cells, so
// the line search only has to enforce the Armijo test; cells_valid() stays as a
// guard against rounding.
//
// Steps start out as the least vertex displacement that fixes the linearized
// residuals (metric G^T G, G = d vertices / d parameters, plus a small ridge).
// The first step that needs backtracking switches to plain parameter-space
// steps until the next restore().
class EmbeddingDescent {
 public:
  EmbeddingDescent(std::size_t rows, std::size_t cols, double width, double height, double first_step,
                   double shrink)
      : shape_{rows, cols}, first_step_(first_step), shrink_(shrink),
        embedding_(rows, cols, width, height),
        kernels_(simd::active_kernels()) {
    areas_.resize(shape_.cell_count());
    trial_areas_.resize(shape_.cell_count());
  }

  Residuals reset(const Mesh& mesh, const std::vector<double>& targets) {
    return restore(embedding_.fit(mesh), targets);
  }

  // Restarts from saved parameters; avoids refitting, which a convex
  // combination does not always survive.
  Residuals restore(const Eigen::VectorXd& u, const std::vector<double>& targets) {
    targets_ = &targets;
    u_ = u;
    mesh_ = embedding_.realize(u_);
    kernels_.cell_areas(shape_, mesh_.xs().data(), mesh_.ys().data(), areas_.data());
    current_ = evaluate(areas_, targets);
    damping_ = kInitialDamping;
    vertex_metric_ = true;
    return current_;
  }

  const Eigen::VectorXd& parameters() const { return u_; }
  const Mesh& mesh() const { return mesh_; }
  const Residuals& current() const { return current_; }
  const std::vector<double>& areas() const { return areas_; }

  bool step() {
    const auto& targets = *targets_;
    const long cells = static_cast<long>(areas_.size());
    Eigen::MatrixXd jac = embedding_.area_jacobian(u_, mesh_);
    Eigen::VectorXd rho(cells);
    for (long c = 0; c < cells; ++c) {
      jac.row(c) /= targets[static_cast<std::size_t>(c)];
      rho[c] = (areas_[static_cast<std::size_t>(c)] - targets[static_cast<std::size_t>(c)]) /
               targets[static_cast<std::size_t>(c)];
    }
    const Eigen::VectorXd grad = 2.0 * jac.transpose() * rho;
    Eigen::MatrixXd pre;
    if (vertex_metric_) {
      const Eigen::MatrixXd g = embedding_.vertex_jacobian(u_, mesh_);
      Eigen::MatrixXd metric = g.transpose() * g;
      const double mscale = std::max(metric.diagonal().mean(), DBL_MIN);
      metric.diagonal().array() += kMetricRidge * mscale;
      pre = metric.ldlt().solve(jac.transpose());
    } else {
      pre = jac.transpose();
    }
    const Eigen::MatrixXd normal = jac * pre;
    const double scale = std::max(normal.diagonal().maxCoeff(), DBL_MIN);

    while (damping_ <= kMaxDamping) {
      Eigen::MatrixXd system = normal;
      system.diagonal().array() += damping_ * scale;
      const Eigen::LDLT<Eigen::MatrixXd> solver(system);
      if (solver.info() != Eigen::Success) {
        damping_ *= kDampingUp;
        continue;
      }
      const Eigen::VectorXd delta = -(pre * solver.solve(rho));
      const double slope = grad.dot(delta);
      if (!(slope < 0.0)) {
        damping_ *= kDampingUp;
        continue;
      }
      for (double alpha = first_step_; alpha >= kMinStep; alpha *= shrink_) {
        const Eigen::VectorXd trial_u = u_ + alpha * delta;
        Mesh trial;
        try {
          trial = embedding_.realize(trial_u);
        } catch (const Error&) {
          continue;
        }
        if (!cells_valid(trial)) continue;
        kernels_.cell_areas(shape_, trial.xs().data(), trial.ys().data(), trial_areas_.data());
        const Residuals next = evaluate(trial_areas_, targets);
        if (next.objective <= current_.objective + kArmijo * alpha * slope) {
          damping_ = alpha == first_step_ ? std::max(damping_ * kDampingDown, kMinDamping)
                                  : std::min(damping_ * kDampingUp, kMaxDamping);
          if (alpha != first_step_) vertex_metric_ = false;
          u_ = trial_u;
          mesh_ = std::move(trial);
          std::swap(areas_, trial_areas_);
          current_ = next;
          return true;
        }
      }
      damping_ *= kDampingUp;
    }
    damping_ = kInitialDamping;
    if (vertex_metric_) {
      vertex_metric_ = false;
      return step();
    }
    // Leave the embedding consistent with the current mesh.
    mesh_ = embedding_.realize(u_);
    return false;
  }

 private:
  simd::GridShape shape_;
  double first_step_, shrink_;
  detail::ConvexEmbedding embedding_;
  const simd::KernelTable& kernels_;
  const std::vector<double>* targets_ = nullptr;
  Eigen::VectorXd u_;
  Mesh mesh_{1, 1, 1.0, 1.0};
  std::vector<double> areas_, trial_areas_;
  Residuals current_;
  double damping_ = kInitialDamping;
  bool vertex_metric_ = true;
};

// Targets on the geometric path from `start` (s = 0) to `goal` (s = 1),
// rescaled to the same total.
void blend_targets(const std::vector<double>& start, const std::vector<double>& goal, double s,
                   double total, std::vector<double>& out) {
  double sum = 0.0;
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = std::exp((1.0 - s) * std::log(start[c]) + s * std::log(goal[c]));
    sum += out[c];
  }
  for (double& v : out) v *= total / sum;
}

}  // namespace

LayoutResult optimize(const NormalizedTable& nt, const LayoutParams& params) {
  params.validate();
  const std::size_t m = nt.rows();
  const std::size_t n = nt.cols();
  const auto targets = area_targets(nt, params.width, params.height);

  LayoutResult result;
  result.mesh = initial_layout(nt, params);
  EmbeddingDescent descent(m, n, params.width, params.height, params.step_size,
                           params.shrink_factor);
  std::size_t iter = 0;

  // Continuation: walk the targets from the start mesh's own areas towards the
  // real ones so each solve starts close to a solution. The last stage is the
  // real problem; when it fails the walk backs off and retries in smaller steps.
  Residuals current = descent.reset(result.mesh, targets);
  Eigen::VectorXd saved = descent.parameters();
  bool done = current.max_error <= params.tolerance;
  std::vector<double> stage(targets.size());  // outlives the descent's view of it
  if (!done) {
    const std::vector<double> origin = descent.areas();
    std::vector<double> trace;
    double s = 0.0;
    double ds = kInitialStageStep;
    while (iter < params.max_iterations) {
      const double next_s = std::min(1.0, s + ds);
      const bool last = next_s >= 1.0;
      const double tol = last ? params.tolerance : std::max(params.tolerance, kStageTolerance);
      if (last) {
        stage = targets;
      } else {
        blend_targets(origin, targets, next_s, params.width * params.height, stage);
      }
      Residuals r = descent.restore(saved, stage);
      trace.assign(1, r.objective);
      std::size_t used = 0;
      while (r.max_error > tol && used < kStageIterations && iter < params.max_iterations) {
        if (!descent.step()) break;
        r = descent.current();
        trace.push_back(r.objective);
        ++used;
        ++iter;
      }
      if (r.max_error <= tol) {
        s = next_s;
        saved = descent.parameters();
        ds = std::min(ds * 2.0, kMaxStageStep);
        ++result.continuation_stages;
        if (last) {
          current = r;
          result.objective_trace = std::move(trace);
          done = true;
          break;
        }
      } else {
        ds *= 0.5;
        if (ds < kMinStageStep) break;
      }
    }
  }

  if (!done) {
    // Continuation gave up: descend on the real targets from the furthest
    // stage reached until convergence, a stall or the iteration cap.
    current = descent.restore(saved, targets);
    result.objective_trace.assign(1, current.objective);
    for (; iter < params.max_iterations; ++iter) {
      if (current.max_error <= params.tolerance) break;
      if (!descent.step()) {
        result.stop_reason = "line search stalled";
        break;
      }
      current = descent.current();
      result.objective_trace.push_back(current.objective);
      const auto& trace = result.objective_trace;
      if (trace.size() > kStallWindow &&
          trace.back() > trace[trace.size() - 1 - kStallWindow] * (1.0 - kStallDecrease)) {
        ++iter;
        result.stop_reason = "objective stalled";
        break;
      }
    }
  } else if (result.objective_trace.empty()) {
    result.objective_trace.push_back(current.objective);
  }

  // Shrink the slack left inside the tolerance, down to the targets' own
  // rounding.
  if (current.max_error <= params.tolerance) {
    const double floor = std::max(params.tolerance * kPolishFactor, std::ldexp(1.0, -kTargetBits));
    for (int k = 0; k < kPolishIterations && iter < params.max_iterations; ++k) {
      if (current.max_error <= floor || !descent.step()) break;
      current = descent.current();
      result.objective_trace.push_back(current.objective);
      ++iter;
    }
  }
  result.mesh = descent.mesh();

  result.iterations = iter;
  result.max_relative_area_error = current.max_error;
  result.converged = current.max_error <= params.tolerance;
  if (result.converged) {
    result.stop_reason = "converged";
  } else if (result.stop_reason.empty()) {
    result.stop_reason = "iteration limit";
  }
  result.concave_cells = concave_cell_count(result.mesh);
  return result;
}

double max_relative_area_error(const Mesh& mesh, const NormalizedTable& nt) {
  if (mesh.rows() != nt.rows() || mesh.cols() != nt.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "mesh and table shapes differ");
  }
  const auto targets = area_targets(nt, mesh.width(), mesh.height());
  const auto areas = signed_cell_areas(mesh);
  double worst = 0.0;
  for (std::size_t c = 0; c < areas.size(); ++c) {
    worst = std::max(worst, std::abs(std::abs(areas[c]) - targets[c]) / targets[c]);
  }
  return worst;
}

LayoutResult layout_table(const Table& table, const LayoutParams& params) {
  return optimize(normalize(table), params);
}

}  // namespace taco
