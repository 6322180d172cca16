#include "hyperconvex/sup_gap_search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyperconvex {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRoundoff = 8.0 * std::numeric_limits<double>::epsilon();
constexpr double kNormalCutoff = 1e-9;
}  // namespace

SupGapSearch::SupGapSearch(DistanceOracle a, DistanceOracle b, Eigen::Index dim, SupGapOptions options)
    : a_(std::move(a)), b_(std::move(b)), dim_(dim), options_(std::move(options)) {
  if (!(options_.radius > 0.0) || !std::isfinite(options_.radius)) {
    throw PreconditionError("sup_distance_gap: radius must be positive and finite");
  }
  if (dim_ < 1) throw PreconditionError("sup_distance_gap: ambient dimension must be positive");
  argmax_ = Vector::Zero(dim_);
  Cell root = make_cell(Vector::Zero(dim_), options_.radius);

  // Multi-start ascent from points on the sphere: the grid alone finds the
  // top of a narrow ridge slowly in higher dimensions.
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> normal;
  const Eigen::Index starts = 6 * dim_;
  for (Eigen::Index i = 0; i < starts && !exhausted(); ++i) {
    Vector x = Vector::Zero(dim_);
    if (i < 2 * dim_) {
      x(i / 2) = i % 2 == 0 ? 1.0 : -1.0;
    } else {
      for (Eigen::Index c = 0; c < dim_; ++c) x(c) = normal(rng);
      if (x.norm() == 0.0) continue;
      x.normalize();
    }
    x *= options_.radius;
    polish(x, probe(x));
  }
  if (root.bound > lower_) queue_.push(std::move(root));
}

double SupGapSearch::upper() const {
  double bound = retired_;
  if (!queue_.empty()) bound = std::max(bound, queue_.top().bound);
  return std::max(lower_, std::min(bound, options_.global_upper));
}

// max <g, h> over the lens {||h|| <= rho, ||s + h|| <= r}.
double SupGapSearch::linear_max(const Vector& g, const Vector& s, double rho) const {
  const double gn = g.norm();
  if (gn == 0.0 || rho == 0.0) return 0.0;
  const double r = options_.radius;
  const Vector ghat = g / gn;

  if ((s + rho * ghat).norm() <= r) return rho * gn;
  const Vector z = r * ghat;
  if ((z - s).norm() <= rho) return std::min(rho * gn, r * gn - g.dot(s));

  // Both constraints active: the maximiser lies on the intersection of the
  // two spheres, a sphere in the hyperplane <h, s_hat> = beta.
  const double sn = s.norm();
  if (sn == 0.0) return rho * gn;
  const double beta = std::clamp((r * r - rho * rho - sn * sn) / (2.0 * sn), -rho, rho);
  const double g_par = g.dot(s) / sn;
  const double g_perp = std::sqrt(std::max(0.0, gn * gn - g_par * g_par));
  const double value = beta * g_par + std::sqrt(std::max(0.0, rho * rho - beta * beta)) * g_perp;
  return std::min(rho * gn, value);
}

Vector SupGapSearch::unit_normal(const Vector& x, const DistanceSample& sample) const {
  // Below this distance, x - nearest is dominated by rounding in the oracle.
  if (!(sample.dist > kNormalCutoff * std::max(1.0, x.norm()))) return Vector::Zero(dim_);
  return (x - sample.nearest) / sample.dist;
}

SupGapSearch::Probe SupGapSearch::probe(const Vector& x) {
  Probe p{0.0, Vector(), a_(x), b_(x)};
  ++evaluations_;
  const double da = p.a.dist;
  const double db = p.b.dist;
  p.value = std::abs(da - db);
  if (p.value > lower_) {
    lower_ = p.value;
    argmax_ = x;
  }
  const Vector ga = unit_normal(x, p.a);
  const Vector gb = unit_normal(x, p.b);
  p.slope = da >= db ? Vector(ga - gb) : Vector(gb - ga);
  return p;
}

void SupGapSearch::polish(Vector x, Probe at) {
  const double r = options_.radius;
  double step = 0.1 * r;
  for (int it = 0; it < 40 && step > 1e-9 * r && !exhausted(); ++it) {
    Vector dir = at.slope;
    const double xn = x.norm();
    if (xn >= r * (1.0 - 1e-12) && dir.dot(x) > 0.0) dir -= (dir.dot(x) / (xn * xn)) * x;
    const double dn = dir.norm();
    if (dn <= 1e-14) return;
    Vector y = x + (step / dn) * dir;
    const double yn = y.norm();
    if (yn > r) y *= r / yn;
    Probe next = probe(y);
    // Maximisers often sit on the closer set, where its distance has a kink;
    // also try that set's nearest point pushed out to the sphere.
    const Vector& near = next.a.dist <= next.b.dist ? next.a.nearest : next.b.nearest;
    const double zn = near.norm();
    if (zn > 0.0 && !exhausted()) {
      Vector z = near * (r / zn);
      Probe snapped = probe(z);
      if (snapped.value > next.value) {
        y = std::move(z);
        next = std::move(snapped);
      }
    }
    if (next.value > at.value) {
      x = std::move(y);
      at = std::move(next);
      step *= 1.5;
    } else {
      step *= 0.25;
    }
  }
}

SupGapSearch::Cell SupGapSearch::make_cell(Vector center, double half) {
  const double r = options_.radius;
  const double cn = center.norm();
  Vector s = cn > r ? Vector(center * (r / cn)) : center;
  const double rho = half * std::sqrt(static_cast<double>(dim_)) + std::max(0.0, cn - r);

  const double before = lower_;
  const Probe p = probe(s);
  const DistanceSample& sa = p.a;
  const DistanceSample& sb = p.b;
  const double da = sa.dist;
  const double db = sb.dist;
  const double value = p.value;

  const Vector ga = unit_normal(s, sa);
  const Vector gb = unit_normal(s, sb);

  // d(., A) - d(., B) over the cell, then the reverse orientation. A zero
  // normal marks a distance too small for its direction to be trusted; the
  // lower side then falls back to d >= 0 and the upper side to Lipschitz.
  auto directed = [&](double d_up, double d_down, const Vector& g_up, const Vector& g_down) {
    const bool up_smooth = g_up.squaredNorm() > 0.0;
    const double down_floor = g_down.squaredNorm() > 0.0 ? d_down : 0.0;
    double slack = rho + linear_max(-g_down, s, rho);
    double up_alone = d_up + rho;
    if (up_smooth) {
      slack = std::min(slack, linear_max(g_up - g_down, s, rho) + rho * rho / (2.0 * d_up));
      up_alone = std::min(up_alone, d_up + linear_max(g_up, s, rho) + rho * rho / (2.0 * d_up));
    }
    // The lower distance is nonnegative, so the upper one alone also bounds the gap.
    return std::min(d_up - down_floor + slack, up_alone);
  };
  double bound = std::max(directed(da, db, ga, gb), directed(db, da, gb, ga));
  bound = std::min(bound, value + 2.0 * rho);

  if (options_.flat_bound) {
    const FlatPairBound& fb = *options_.flat_bound;
    bound = std::min(bound, (fb.diff * s - fb.offset).norm() + fb.diff_norm * rho + fb.slack);
  }
  bound = std::min(bound, options_.global_upper);
  bound += kRoundoff * (1.0 + da + db + rho);
  bound = std::max(bound, value);

  if (value > before && value > 0.0) polish(s, p);
  return Cell{std::move(center), half, bound};
}

void SupGapSearch::refine(std::size_t steps, double floor) {
  const double min_half = 1e-12 * options_.radius;
  const Eigen::Index children = Eigen::Index(1) << dim_;

  for (std::size_t step = 0; step < steps && !queue_.empty() && !exhausted(); ++step) {
    if (queue_.top().bound <= lower_) {
      queue_ = {};
      break;
    }
    if (queue_.top().bound <= floor) {
      retired_ = std::max(retired_, queue_.top().bound);
      queue_ = {};
      break;
    }

    Cell cell = queue_.top();
    queue_.pop();
    if (cell.half <= min_half) {
      retired_ = std::max(retired_, cell.bound);
      continue;
    }

    const double child_half = 0.5 * cell.half;
    const double r2 = options_.radius * options_.radius;
    for (Eigen::Index mask = 0; mask < children; ++mask) {
      Vector c = cell.center;
      for (Eigen::Index i = 0; i < dim_; ++i) c(i) += ((mask >> i) & 1) ? child_half : -child_half;
      double gap2 = 0.0;
      for (Eigen::Index i = 0; i < dim_; ++i) {
        const double d = std::max(0.0, std::abs(c(i)) - child_half);
        gap2 += d * d;
      }
      if (gap2 > r2) continue;
      Cell child = make_cell(std::move(c), child_half);
      if (child.bound > lower_) queue_.push(std::move(child));
    }
  }
}

void SupGapSearch::run(double width, double stop_above, double stop_below) {
  while (!queue_.empty() && !exhausted()) {
    const double hi = upper();
    if (hi - lower_ <= width || lower_ >= stop_above || hi <= stop_below) break;
    refine(1);
  }
}

}  // namespace hyperconvex
