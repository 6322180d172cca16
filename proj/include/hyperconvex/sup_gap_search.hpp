#pragma once

#include "hyperconvex/types.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

namespace hyperconvex {

/// Distance from a query point to a closed convex set and the nearest point
/// realising it.
struct DistanceSample {
  double dist = 0.0;
  Vector nearest;
};

using DistanceOracle = std::function<DistanceSample(const Vector&)>;

/// For two flats F = a + V and G = b + W with complement projectors P, Q:
/// |d(z, F) - d(z, G)| <= ||(P - Q) z - (P a - Q b)||.
struct FlatPairBound {
  Matrix diff;
  Vector offset;
  /// Spectral norm of `diff`.
  double diff_norm = 0.0;
  /// Added to the bound, for oracles that differ slightly from the flats.
  double slack = 0.0;
};

struct SupGapOptions {
  double radius = 1.0;
  std::size_t max_evaluations = 1'000'000;
  /// Any a-priori upper bound on the supremum over the ball.
  double global_upper = std::numeric_limits<double>::infinity();
  std::optional<FlatPairBound> flat_bound;
};

/// Branch and bound for sup over the closed ball rB of |d(x, A) - d(x, B)|.
///
/// Cells are axis-aligned cubes. Each cell is sampled at the point of the
/// ball nearest its centre, and its upper bound combines
///   - d(., A) <= ||. - pi_A(s)||, expanded to second order around s,
///   - d(., B) >= d(s, B) + <g_B, . - s>, the subgradient inequality,
///   - the linear term maximised exactly over ball(s, rho) ∩ rB,
///   - d(., B) >= 0, so the bound on d(., A) alone also bounds the gap,
///   - the 2-Lipschitz bound as a fallback, and the flat-pair bound if any.
/// Sampled values give the lower bound, so [lower(), upper()] always
/// encloses the supremum. Whenever the best sample improves, a short
/// projected subgradient ascent from it sharpens the lower bound.
class SupGapSearch {
 public:
  SupGapSearch(DistanceOracle a, DistanceOracle b, Eigen::Index dim, SupGapOptions options);

  double lower() const { return lower_; }
  double upper() const;
  std::size_t evaluations() const { return evaluations_; }
  bool exhausted() const { return evaluations_ >= options_.max_evaluations; }
  const Vector& argmax() const { return argmax_; }

  /// Splits up to `steps` cells. Cells whose bound is at or below `floor`
  /// are retired without splitting.
  void refine(std::size_t steps, double floor = -std::numeric_limits<double>::infinity());

  /// Refines until upper() - lower() <= width, or lower() >= stop_above, or
  /// upper() <= stop_below, or the evaluation budget runs out.
  void run(double width, double stop_above = std::numeric_limits<double>::infinity(),
           double stop_below = -std::numeric_limits<double>::infinity());

 private:
  struct Cell {
    Vector center;
    double half = 0.0;
    double bound = 0.0;
    bool operator<(const Cell& other) const { return bound < other.bound; }
  };

  struct Probe {
    double value = 0.0;
    /// Ascent direction of |d(., A) - d(., B)| at the probed point.
    Vector slope;
    DistanceSample a;
    DistanceSample b;
  };

  Vector unit_normal(const Vector& x, const DistanceSample& sample) const;
  Probe probe(const Vector& x);
  void polish(Vector x, Probe at);
  Cell make_cell(Vector center, double half);
  double linear_max(const Vector& g, const Vector& s, double rho) const;

  DistanceOracle a_;
  DistanceOracle b_;
  Eigen::Index dim_;
  SupGapOptions options_;
  std::priority_queue<Cell> queue_;
  double lower_ = 0.0;
  double retired_ = 0.0;
  Vector argmax_;
  std::size_t evaluations_ = 0;
};

}  // namespace hyperconvex
