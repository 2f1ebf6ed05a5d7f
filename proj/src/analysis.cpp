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

#include "su2mon/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "su2mon/optimize.hpp"
#include "su2mon/rng.hpp"

namespace su2mon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LineFit {
  double slope, intercept, rss, r_squared;
};

// Centred normal equations; avoids cancellation when xs sit far from 0.
LineFit least_squares(const std::vector<double>& u, const std::vector<double>& v) {
  const auto n = static_cast<double>(u.size());
  double mu = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suu = 0.0;
  double suv = 0.0;
  double svv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
    svv += (v[i] - mv) * (v[i] - mv);
  }
  const double scale = std::max(1.0, std::abs(mu));
  if (!(suu > 1e-24 * scale * scale * n)) {
    throw std::invalid_argument("degenerate predictor: all x values are equal");
  }
  LineFit f{};
  f.slope = suv / suu;
  f.intercept = mv - f.slope * mu;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = v[i] - (f.slope * u[i] + f.intercept);
    f.rss += r * r;
  }
  f.r_squared = svv > 0.0 ? 1.0 - f.rss / svv : 1.0;
  return f;
}

double collapse_ordinate(double value, CollapseForm form) {
  return form == CollapseForm::Log ? std::log(value) : value;
}

double collapse_sigma(const CollapsePoint& pt, CollapseForm form) {
  return form == CollapseForm::Log ? pt.error / pt.value : pt.error;
}

void validate_collapse_input(const std::vector<CollapsePoint>& points, CollapseForm form) {
  if (points.empty()) throw std::invalid_argument("collapse: no points");
  std::map<int, std::set<double>> per_L;
  bool any_zero = false;
  bool any_nonzero = false;
  for (const CollapsePoint& pt : points) {
    if (pt.L <= 0) throw std::invalid_argument(fmt::format("collapse: L = {} must be positive", pt.L));
    if (!std::isfinite(pt.value) || !std::isfinite(pt.error) || pt.error < 0.0) {
      throw std::invalid_argument("collapse: values and errors must be finite, errors nonnegative");
    }
    if (form == CollapseForm::Log && !(pt.value > 0.0)) {
      throw std::invalid_argument(fmt::format("collapse: value {} at L = {}, p = {} is not positive", pt.value,
                                              pt.L, pt.p));
    }
    (pt.error == 0.0 ? any_zero : any_nonzero) = true;
    per_L[pt.L].insert(pt.p);
  }
  if (any_zero && any_nonzero) throw std::invalid_argument("collapse: errors must be all zero or all positive");
  for (const auto& [L, ps] : per_L) {
    if (ps.size() < 4) {
      throw std::invalid_argument(
          fmt::format("insufficient curves: L = {} has {} p values, need at least 4", L, ps.size()));
    }
  }
}

struct Mapped {
  double x, y, var;
  int L;
  double p;
};

}  // namespace

std::string_view to_string(FitFamily family) {
  switch (family) {
    case FitFamily::Linear: return "linear";
    case FitFamily::Log: return "log";
    case FitFamily::Sqrt: return "sqrt";
    case FitFamily::PowerLaw: return "powerlaw";
  }
  return "?";
}

FitFamily parse_fit_family(std::string_view name) {
  if (name == "linear") return FitFamily::Linear;
  if (name == "log") return FitFamily::Log;
  if (name == "sqrt") return FitFamily::Sqrt;
  if (name == "powerlaw") return FitFamily::PowerLaw;
  throw std::invalid_argument(fmt::format("unknown fit family '{}'", name));
}

FitResult fit_family(const std::vector<double>& xs, const std::vector<double>& ys, FitFamily family) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_family: xs and ys differ in length");
  if (xs.size() < 3) throw std::invalid_argument("fit_family: need at least 3 points");
  std::vector<double> u(xs.size());
  std::vector<double> v(ys.begin(), ys.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (!std::isfinite(x) || !std::isfinite(ys[i])) throw std::invalid_argument("fit_family: non-finite input");
    if (family != FitFamily::Linear && !(x > 0.0)) {
      throw std::invalid_argument(fmt::format("fit_family: x = {} must be positive for {}", x, to_string(family)));
    }
    switch (family) {
      case FitFamily::Linear: u[i] = x; break;
      case FitFamily::Log: u[i] = std::log(x); break;
      case FitFamily::Sqrt: u[i] = std::sqrt(x); break;
      case FitFamily::PowerLaw:
        if (!(ys[i] > 0.0)) throw std::invalid_argument("fit_family: powerlaw needs positive y");
        u[i] = std::log(x);
        v[i] = std::log(ys[i]);
        break;
    }
  }
  const LineFit f = least_squares(u, v);
  return FitResult{family, f.slope, f.intercept, f.rss, f.r_squared, xs.size()};
}

FitResult powerlaw_exponent(const std::vector<double>& Ls, const std::vector<double>& values) {
  if (Ls.size() != values.size()) throw std::invalid_argument("powerlaw_exponent: length mismatch");
  if (Ls.size() < 2) throw std::invalid_argument("powerlaw_exponent: need at least 2 points");
  std::vector<double> u;
  std::vector<double> v;
  for (std::size_t i = 0; i < Ls.size(); ++i) {
    if (!(Ls[i] > 0.0) || !(values[i] > 0.0)) {
      throw std::invalid_argument("powerlaw_exponent: inputs must be positive");
    }
    u.push_back(std::log(Ls[i]));
    v.push_back(std::log(values[i]));
  }
  const LineFit f = least_squares(u, v);
  return FitResult{FitFamily::PowerLaw, f.slope, f.intercept, f.rss, f.r_squared, Ls.size()};
}

namespace {

struct ObjectiveValue {
  double value = kInf;
  std::size_t used = 0;
};

ObjectiveValue evaluate_collapse(const std::vector<CollapsePoint>& points, double p_c, double nu, CollapseForm form,
                                 double min_coverage) {
  if (!(p_c >= 0.0 && p_c <= 1.0) || !(nu > 0.0) || !std::isfinite(nu)) return {};
  if (points.empty()) return {};
  std::set<int> sizes;
  for (const CollapsePoint& pt : points) sizes.insert(pt.L);
  if (sizes.size() < 2) return {0.0, 0};

  bool weighted = false;
  std::vector<Mapped> m;
  m.reserve(points.size());
  for (const CollapsePoint& pt : points) {
    const double s = collapse_sigma(pt, form);
    weighted = weighted || s > 0.0;
    m.push_back({(pt.p - p_c) * std::pow(static_cast<double>(pt.L), 1.0 / nu), collapse_ordinate(pt.value, form),
                 s * s, pt.L, pt.p});
  }
  // A total order keeps the result independent of input order.
  std::sort(m.begin(), m.end(), [](const Mapped& a, const Mapped& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.L != b.L) return a.L < b.L;
    if (a.p != b.p) return a.p < b.p;
    return a.y < b.y;
  });

  double sum_w = 0.0;
  double sum_wr2 = 0.0;
  std::size_t used = 0;
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(m.size());
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Mapped& pt = m[static_cast<std::size_t>(i)];
    std::ptrdiff_t lo = i - 1;
    while (lo >= 0 && m[static_cast<std::size_t>(lo)].L == pt.L) --lo;
    std::ptrdiff_t hi = i + 1;
    while (hi < count && m[static_cast<std::size_t>(hi)].L == pt.L) ++hi;
    if (lo < 0 || hi >= count) continue;
    const Mapped& a = m[static_cast<std::size_t>(lo)];
    const Mapped& b = m[static_cast<std::size_t>(hi)];
    const double t = b.x > a.x ? (pt.x - a.x) / (b.x - a.x) : 0.5;
    const double y_hat = (1.0 - t) * a.y + t * b.y;
    const double var_hat = (1.0 - t) * (1.0 - t) * a.var + t * t * b.var;
    const double w = weighted ? 1.0 / (pt.var + var_hat) : 1.0;
    const double r = pt.y - y_hat;
    sum_w += w;
    sum_wr2 += w * r * r;
    ++used;
  }
  if (used == 0 || static_cast<double>(used) < min_coverage * static_cast<double>(m.size())) return {kInf, used};
  return {sum_wr2 / sum_w, used};
}

}  // namespace

double collapse_objective(const std::vector<CollapsePoint>& points, double p_c, double nu, CollapseForm form,
                          double min_coverage) {
  return evaluate_collapse(points, p_c, nu, form, min_coverage).value;
}

CollapseResult collapse_fit(const std::vector<CollapsePoint>& points, CollapseForm form,
                            const CollapseOptions& options) {
  validate_collapse_input(points, form);
  if (!(options.p_step > 0.0) || !(options.nu_step > 0.0) || options.p_max < options.p_min ||
      options.nu_max < options.nu_min || !(options.nu_min > 0.0)) {
    throw std::invalid_argument("collapse: bad search grid");
  }
  std::set<int> sizes;
  for (const CollapsePoint& pt : points) sizes.insert(pt.L);

  CollapseResult out;
  out.p_c = options.p_min;
  out.nu = options.nu_min;
  if (sizes.size() < 2) {
    out.degenerate = true;
    out.objective = 0.0;
    return out;
  }

  const int np = static_cast<int>(std::floor((options.p_max - options.p_min) / options.p_step + 1e-9)) + 1;
  const int nn = static_cast<int>(std::floor((options.nu_max - options.nu_min) / options.nu_step + 1e-9)) + 1;
  double best = kInf;
  for (int ip = 0; ip < np; ++ip) {
    const double p = options.p_min + ip * options.p_step;
    for (int in = 0; in < nn; ++in) {
      const double nu = options.nu_min + in * options.nu_step;
      const double obj = collapse_objective(points, p, nu, form, options.min_coverage);
      if (options.keep_grid_trace) out.trace.push_back({"grid", p, nu, obj});
      // Strict comparison: ties keep the lowest p, then the lowest nu.
      if (obj < best) {
        best = obj;
        out.p_c = p;
        out.nu = nu;
      }
    }
  }
  if (!std::isfinite(best)) throw std::runtime_error("collapse: no grid point gives a finite objective");
  if (!options.keep_grid_trace) out.trace.push_back({"grid", out.p_c, out.nu, best});

  NelderMeadOptions nm;
  nm.tolerance = options.tolerance;
  nm.max_iterations = options.max_iterations;
  const NelderMeadResult refined = nelder_mead(
      [&](const std::vector<double>& x) { return collapse_objective(points, x[0], x[1], form, options.min_coverage); },
      {out.p_c, out.nu}, {options.p_step, options.nu_step}, nm);
  out.simplex_iterations = refined.iterations;
  if (refined.value <= best) {
    out.p_c = refined.x[0];
    out.nu = refined.x[1];
    best = refined.value;
  }
  out.objective = best;
  out.trace.push_back({"simplex", out.p_c, out.nu, best});

  out.points_used = evaluate_collapse(points, out.p_c, out.nu, form, options.min_coverage).used;
  return out;
}

BootstrapSummary bootstrap_collapse(const std::vector<CollapsePoint>& points, std::size_t resamples,
                                    std::uint64_t seed, CollapseForm form, const CollapseOptions& options) {
  if (resamples < 2) throw std::invalid_argument("bootstrap_collapse: need at least 2 resamples");
  validate_collapse_input(points, form);
  BootstrapSummary out;
  for (std::size_t r = 0; r < resamples; ++r) {
    TrajectoryRng rng(seed, r);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CollapsePoint> sample = points;
    for (CollapsePoint& pt : sample) {
      double v = pt.value + pt.error * gauss(rng);
      if (form == CollapseForm::Log) v = std::max(v, 1e-3 * pt.value);
      pt.value = v;
    }
    const CollapseResult fit = collapse_fit(sample, form, options);
    out.p_c.push_back(fit.p_c);
    out.nu.push_back(fit.nu);
  }
  auto moments = [](const std::vector<double>& xs, double& mean, double& sd) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  };
  moments(out.p_c, out.p_c_mean, out.p_c_sd);
  moments(out.nu, out.nu_mean, out.nu_sd);
  return out;
}

CrossingEstimate find_crossing(const std::vector<Curve>& curves) {
  if (curves.size() < 2) throw std::invalid_argument("find_crossing: need at least 2 curves");
  std::vector<const Curve*> sorted;
  for (const Curve& c : curves) {
    if (c.p.size() != c.value.size()) throw std::invalid_argument("find_crossing: p and value lengths differ");
    if (!std::is_sorted(c.p.begin(), c.p.end())) throw std::invalid_argument("find_crossing: p must ascend");
    sorted.push_back(&c);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Curve* a, const Curve* b) { return a->L < b->L; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->L == sorted[i - 1]->L) throw std::invalid_argument("find_crossing: duplicate L");
  }

  CrossingEstimate out;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      const Curve& s = *sorted[a];
      const Curve& l = *sorted[b];
      std::vector<double> ps;
      std::vector<double> diff;
      for (std::size_t i = 0, j = 0; i < s.p.size() && j < l.p.size();) {
        if (std::abs(s.p[i] - l.p[j]) <= 1e-12) {
          ps.push_back(s.p[i]);
          diff.push_back(s.value[i] - l.value[j]);
          ++i;
          ++j;
        } else if (s.p[i] < l.p[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      if (ps.size() < 2) throw std::invalid_argument("find_crossing: curves share fewer than 2 p values");

      std::ptrdiff_t prev = -1;  // last index with a nonzero difference
      for (std::size_t i = 0; i < diff.size(); ++i) {
        if (diff[i] == 0.0) continue;
        if (prev >= 0 && (diff[static_cast<std::size_t>(prev)] > 0.0) != (diff[i] > 0.0)) {
          const auto k = static_cast<std::size_t>(prev);
          double p;
          if (i == k + 1) {
            p = ps[k] + (ps[i] - ps[k]) * diff[k] / (diff[k] - diff[i]);
          } else {
            p = 0.5 * (ps[k + 1] + ps[i - 1]);  // run of exact zeros
          }
          out.pairs.push_back({s.L, l.L, p});
          break;
        }
        prev = static_cast<std::ptrdiff_t>(i);
      }
    }
  }
  if (out.pairs.empty()) throw NoCrossing();

  double sx = 0.0;
  double sy = 0.0;
  for (const PairCrossing& c : out.pairs) {
    sx += 0.5 * (c.L_small + c.L_large);
    sy += c.p;
  }
  const auto n = static_cast<double>(out.pairs.size());
  out.mean = sy / n;
  sx /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const PairCrossing& c : out.pairs) {
    const double x = 0.5 * (c.L_small + c.L_large) - sx;
    sxx += x * x;
    sxy += x * (c.p - out.mean);
  }
  out.drift = sxx > 0.0 ? sxy / sxx : 0.0;
  return out;
}

}  // namespace su2mon
