// Copyright 2026 The su2mon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace su2mon {

// --- fit families ------------------------------------------------------------

enum class FitFamily { Linear, Log, Sqrt, PowerLaw };

std::string_view to_string(FitFamily family);
/// Accepts "linear", "log", "sqrt", "powerlaw".
FitFamily parse_fit_family(std::string_view name);

/// Linear/Log/Sqrt: y = slope * g(x) + intercept with g = x, log x, sqrt x.
/// PowerLaw: log y = slope * log x + intercept, so slope is the exponent and
/// exp(intercept) the amplitude; rss and r_squared are then on log-log axes.
struct FitResult {
  FitFamily family = FitFamily::Linear;
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
  double r_squared = 0.0;
  std::size_t n = 0;
};

/// Ordinary least squares on the transformed predictor. Needs >= 3 points,
/// positive xs for Log/Sqrt/PowerLaw and positive ys for PowerLaw. Throws
/// std::invalid_argument on a degenerate predictor.
FitResult fit_family(const std::vector<double>& xs, const std::vector<double>& ys, FitFamily family);

/// log I = a log L + b; needs >= 2 strictly positive pairs.
FitResult powerlaw_exponent(const std::vector<double>& Ls, const std::vector<double>& values);

// --- finite-size-scaling collapse ------------------------------------------------

struct CollapsePoint {
  int L = 0;
  double p = 0.0;
  double value = 0.0;
  double error = 0.0;
};

/// How the collapse ordinate is formed from `value`.
enum class CollapseForm { Log, Identity };

struct CollapseOptions {
  double p_min = 0.0;
  double p_max = 1.0;
  double p_step = 0.01;
  double nu_min = 0.5;
  double nu_max = 6.0;
  double nu_step = 0.1;
  double tolerance = 1e-6;
  int max_iterations = 200;
  /// Fraction of points that must have a bracketing master curve; below it the
  /// objective is +inf.
  double min_coverage = 0.5;
  bool keep_grid_trace = false;
};

struct CollapseTraceEntry {
  std::string stage;  // "grid" or "simplex"
  double p_c = 0.0;
  double nu = 0.0;
  double objective = 0.0;
};

struct CollapseResult {
  double p_c = 0.0;
  double nu = 0.0;
  double objective = 0.0;
  bool degenerate = false;  ///< single L: every (p_c, nu) collapses trivially
  std::size_t points_used = 0;
  int simplex_iterations = 0;
  std::vector<CollapseTraceEntry> trace;
};

/// Weighted mean squared deviation of each point from the piecewise-linear
/// master curve through the points of the other sizes, at x = (p - p_c) L^(1/nu).
/// Points with no bracketing pair of neighbours are skipped. Weights are
/// 1/(sigma_i^2 + sigma_interp^2), normalized; all-zero errors give unit weights.
/// Returns +inf when p_c is outside [0,1], nu <= 0 or coverage is too low, and
/// 0 when only one L is present.
double collapse_objective(const std::vector<CollapsePoint>& points, double p_c, double nu,
                          CollapseForm form = CollapseForm::Log, double min_coverage = 0.5);

/// Grid search then Nelder-Mead. Throws std::invalid_argument when a size has
/// fewer than 4 p values, on nonpositive values under CollapseForm::Log and on
/// mixed zero and nonzero errors.
CollapseResult collapse_fit(const std::vector<CollapsePoint>& points, CollapseForm form = CollapseForm::Log,
                            const CollapseOptions& options = {});

struct BootstrapSummary {
  std::vector<double> p_c;
  std::vector<double> nu;
  double p_c_mean = 0.0;
  double p_c_sd = 0.0;
  double nu_mean = 0.0;
  double nu_sd = 0.0;
};

/// Refits after perturbing each value by Gaussian noise of its error. Under
/// CollapseForm::Log perturbed values are clamped to stay positive.
BootstrapSummary bootstrap_collapse(const std::vector<CollapsePoint>& points, std::size_t resamples,
                                    std::uint64_t seed, CollapseForm form = CollapseForm::Log,
                                    const CollapseOptions& options = {});

// --- crossings -----------------------------------------------------------------

struct Curve {
  int L = 0;
  std::vector<double> p;      ///< ascending
  std::vector<double> value;
};

struct PairCrossing {
  int L_small = 0;
  int L_large = 0;
  double p = 0.0;
};

struct CrossingEstimate {
  std::vector<PairCrossing> pairs;
  double mean = 0.0;
  /// Least-squares slope of crossing p against the pair's mean L; 0 with one pair.
  double drift = 0.0;
};

class NoCrossing : public std::runtime_error {
 public:
  NoCrossing() : std::runtime_error("no crossing in window") {}
};

/// For every pair of sizes, the first sign change of value_small - value_large
/// on their shared p grid, located by linear interpolation. An exact zero on a
/// grid point counts as the crossing. Pairs without one are left out; throws
/// NoCrossing when no pair crosses.
CrossingEstimate find_crossing(const std::vector<Curve>& curves);

}  // namespace su2mon
