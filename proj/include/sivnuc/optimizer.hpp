#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace sivnuc {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const { return lower.size(); }
  void validate() const;
  void clamp(std::span<double> x) const;
};

struct DEOptions {
  std::size_t max_evaluations = 20000;
  std::size_t population = 0;  // 0: 12 * dim
  double weight = 0.7;         // differential weight F
  double crossover = 0.9;      // CR
  std::uint64_t seed = 0;
  /// Stop once the best value is at or below this.
  double target = -std::numeric_limits<double>::infinity();
};

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// DE/rand/1/bin inside a box. Trial vectors leaving the box are reflected
/// back. Fully deterministic for a given seed.
OptimizeResult differential_evolution(const ObjectiveFn& f, const Box& box, const DEOptions& options);

/// Bounded Nelder-Mead (points are clamped into the box). `step` is the
/// initial simplex edge per coordinate as a fraction of the box width.
OptimizeResult nelder_mead(const ObjectiveFn& f, std::vector<double> start, const Box& box,
                           std::size_t max_evaluations, double step = 0.05, double tolerance = 1e-12);

/// splitmix64, used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace sivnuc
