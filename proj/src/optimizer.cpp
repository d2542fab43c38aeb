#include "sivnuc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sivnuc/types.hpp"

namespace sivnuc {

void Box::validate() const {
  if (lower.empty() || lower.size() != upper.size()) throw ConfigError("optimizer bounds have mismatched sizes");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(upper[i] > lower[i])) {
      throw ConfigError("optimizer bounds must be finite with upper > lower");
    }
  }
}

void Box::clamp(std::span<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Uniform double in [0, 1) from raw engine output; independent of the
// standard library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(unit(rng) * n); }

double reflect(double v, double lo, double hi) {
  const double width = hi - lo;
  for (int k = 0; k < 4 && (v < lo || v > hi); ++k) v = v < lo ? 2 * lo - v : 2 * hi - v;
  if (v < lo || v > hi) v = lo + std::fmod(std::abs(v - lo), width);
  return v;
}

}  // namespace

OptimizeResult differential_evolution(const ObjectiveFn& f, const Box& box, const DEOptions& opt) {
  box.validate();
  const std::size_t dim = box.dim();
  const std::size_t np = std::max<std::size_t>(4, opt.population ? opt.population : 12 * dim);
  std::mt19937_64 rng(opt.seed);

  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  std::vector<double> value(np);
  OptimizeResult best;
  best.value = std::numeric_limits<double>::infinity();

  const auto evaluate = [&](const std::vector<double>& x) {
    ++best.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  const auto consider = [&](const std::vector<double>& x, double v) {
    if (v < best.value) {
      best.value = v;
      best.x = x;
    }
  };

  for (std::size_t i = 0; i < np && best.evaluations < opt.max_evaluations; ++i) {
    for (std::size_t d = 0; d < dim; ++d) pop[i][d] = box.lower[d] + unit(rng) * (box.upper[d] - box.lower[d]);
    value[i] = evaluate(pop[i]);
    consider(pop[i], value[i]);
  }

  std::vector<double> trial(dim);
  while (best.evaluations < opt.max_evaluations && best.value > opt.target) {
    for (std::size_t i = 0; i < np && best.evaluations < opt.max_evaluations; ++i) {
      std::size_t a, b, c;
      do a = pick(rng, np); while (a == i);
      do b = pick(rng, np); while (b == i || b == a);
      do c = pick(rng, np); while (c == i || c == a || c == b);
      const std::size_t forced = pick(rng, dim);
      for (std::size_t d = 0; d < dim; ++d) {
        if (d == forced || unit(rng) < opt.crossover) {
          trial[d] = reflect(pop[a][d] + opt.weight * (pop[b][d] - pop[c][d]), box.lower[d], box.upper[d]);
        } else {
          trial[d] = pop[i][d];
        }
      }
      const double v = evaluate(trial);
      if (v <= value[i]) {
        pop[i] = trial;
        value[i] = v;
        consider(trial, v);
      }
    }
  }
  return best;
}

OptimizeResult nelder_mead(const ObjectiveFn& f, std::vector<double> start, const Box& box,
                           std::size_t max_evaluations, double step, double tolerance) {
  box.validate();
  const std::size_t n = box.dim();
  if (start.size() != n) throw ConfigError("Nelder-Mead start point has wrong dimension");
  box.clamp(start);

  OptimizeResult out;
  const auto evaluate = [&](std::vector<double>& x) {
    box.clamp(x);
    ++out.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> value(n + 1);
  value[0] = evaluate(simplex[0]);
  for (std::size_t i = 0; i < n; ++i) {
    const double width = box.upper[i] - box.lower[i];
    double& coord = simplex[i + 1][i];
    coord += step * width;
    if (coord > box.upper[i]) coord = start[i] - step * width;
    value[i + 1] = evaluate(simplex[i + 1]);
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (out.evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return value[a] < value[b]; });
    const auto lo = order.front();
    const auto hi = order.back();
    const auto second = order[n - 1];
    if (std::abs(value[hi] - value[lo]) <= tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k <= n; ++k)
      if (k != hi)
        for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[k][d] / n;

    for (std::size_t d = 0; d < n; ++d) xr[d] = centroid[d] + (centroid[d] - simplex[hi][d]);
    const double fr = evaluate(xr);
    if (fr < value[lo]) {
      for (std::size_t d = 0; d < n; ++d) xe[d] = centroid[d] + 2.0 * (centroid[d] - simplex[hi][d]);
      const double fe = evaluate(xe);
      if (fe < fr) {
        simplex[hi] = xe;
        value[hi] = fe;
      } else {
        simplex[hi] = xr;
        value[hi] = fr;
      }
      continue;
    }
    if (fr < value[second]) {
      simplex[hi] = xr;
      value[hi] = fr;
      continue;
    }
    const bool outside = fr < value[hi];
    for (std::size_t d = 0; d < n; ++d) {
      xc[d] = outside ? centroid[d] + 0.5 * (xr[d] - centroid[d]) : centroid[d] + 0.5 * (simplex[hi][d] - centroid[d]);
    }
    const double fc = evaluate(xc);
    if (fc < std::min(fr, value[hi])) {
      simplex[hi] = xc;
      value[hi] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == lo) continue;
      for (std::size_t d = 0; d < n; ++d) simplex[k][d] = simplex[lo][d] + 0.5 * (simplex[k][d] - simplex[lo][d]);
      value[k] = evaluate(simplex[k]);
    }
  }

  const auto best = std::min_element(value.begin(), value.end()) - value.begin();
  out.x = simplex[best];
  out.value = value[best];
  return out;
}

}  // namespace sivnuc
