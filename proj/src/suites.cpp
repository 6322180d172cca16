#include "hyperconvex/suites.hpp"

#include "hyperconvex/bundle_charts.hpp"
#include "hyperconvex/convex_core.hpp"
#include "hyperconvex/grassmann.hpp"
#include "hyperconvex/hypermetrics.hpp"
#include "hyperconvex/independence.hpp"
#include "hyperconvex/random_instances.hpp"
#include "hyperconvex/serialization.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

namespace hyperconvex {

namespace {

using nlohmann::json;

struct TrialContext {
  Rng& rng;
  Eigen::Index n;
  int index;
  const SuiteOptions& options;
};

struct TrialResult {
  std::vector<Failure> failures;
  bool inconclusive = false;
  double worst = 0.0;
  std::vector<double> values;

  void check(double residual, double threshold, const std::function<json()>& inputs, const std::string& note) {
    if (std::isfinite(residual)) worst = std::max(worst, residual);
    if (!(residual <= threshold)) failures.push_back(Failure{inputs(), residual, threshold, note});
  }
};

using TrialFn = std::function<TrialResult(TrialContext&)>;

struct SuiteDef {
  std::string name;
  bool exact_dim;
  std::function<Report(const SuiteDef&, const SuiteOptions&)> run;
};

std::vector<TrialResult> run_trials(const SuiteDef& def, const SuiteOptions& options, const TrialFn& fn) {
  const int trials = std::max(options.trials, 0);
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < trials; i = next++) {
      Rng rng(substream_key(options.seed, def.name, static_cast<std::uint64_t>(i)));
      const Eigen::Index n =
          def.exact_dim ? options.dim : std::uniform_int_distribution<Eigen::Index>(1, options.dim)(rng);
      TrialContext ctx{rng, n, i, options};
      TrialResult& out = results[static_cast<std::size_t>(i)];
      try {
        out = fn(ctx);
      } catch (const std::exception& e) {
        out.failures.push_back(Failure{json{{"trial", i}, {"n", n}}, std::nan(""), 0.0,
                                       std::string("exception: ") + e.what()});
      }
    }
  };
  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(trials, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

Report aggregate(const SuiteDef& def, const SuiteOptions& options, const std::vector<TrialResult>& results) {
  Report report;
  report.suite = def.name;
  report.seed = options.seed;
  report.trials = static_cast<int>(results.size());
  for (const TrialResult& r : results) {
    report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
    if (r.inconclusive) ++report.inconclusive;
    report.worst_residual = std::max(report.worst_residual, r.worst);
  }
  return report;
}

Report simple_suite(const SuiteDef& def, const SuiteOptions& options, const TrialFn& fn) {
  return aggregate(def, options, run_trials(def, options, fn));
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Polytope random_polytope(Rng& rng, Eigen::Index n) {
  if (uniform_int(rng, 0, 1) == 0) {
    const auto k = static_cast<Eigen::Index>(uniform_int(rng, 0, static_cast<int>(n)));
    return std::get<Polytope>(random_instance("gaussian-polytope", n, k, rng));
  }
  const int m = uniform_int(rng, 1, 2 * static_cast<int>(n) + 3);
  return Polytope(Matrix(2.0 * gaussian_matrix(rng, n, m)));
}

ConvexSet random_set(Rng& rng, Eigen::Index n, int variant) {
  const auto k = static_cast<Eigen::Index>(uniform_int(rng, 0, static_cast<int>(n)));
  switch (variant) {
    case 0:
      return random_polytope(rng, n);
    case 1:
      return random_instance("random-flat", n, k, rng);
    default:
      return random_instance("uniform-subspace", n, k, rng);
  }
}

// Subspace spanned by the basis of v moved by a Gaussian matrix of scale s.
Subspace tilt(Rng& rng, const Subspace& v, double s) {
  if (v.dim() == 0) return v;
  const Matrix moved = v.basis() + s * gaussian_matrix(rng, v.ambient_dim(), v.dim()) / std::sqrt(v.dim());
  std::vector<Vector> cols;
  for (Eigen::Index j = 0; j < moved.cols(); ++j) cols.emplace_back(moved.col(j));
  Subspace out = orthonormal_basis(cols);
  return out.dim() == v.dim() ? out : v;
}

Vector random_direction(Rng& rng, Eigen::Index n, double length) {
  Vector g = gaussian_vector(rng, n);
  while (g.norm() == 0.0) g = gaussian_vector(rng, n);
  return g * (length / g.norm());
}

// A set of the same kind within roughly `s` of the input.
ConvexSet perturb(Rng& rng, const ConvexSet& set, double s) {
  if (const auto* p = std::get_if<Polytope>(&set)) {
    Matrix pts = p->points();
    for (Eigen::Index j = 0; j < pts.cols(); ++j) pts.col(j) += random_direction(rng, pts.rows(), s);
    return Polytope(std::move(pts));
  }
  if (const auto* f = std::get_if<Flat>(&set)) {
    return Flat(f->base() + random_direction(rng, f->ambient_dim(), s), tilt(rng, f->direction(), s));
  }
  return tilt(rng, std::get<Subspace>(set), s);
}

json sets_json(std::initializer_list<const ConvexSet*> sets) {
  json out = json::array();
  for (const ConvexSet* s : sets) out.push_back(serialize(*s));
  return out;
}

// ---------------------------------------------------------------- convex-core

Report projection_laws(const SuiteDef& def, const SuiteOptions& options) {
  constexpr double kThreshold = 1e-8;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    for (int variant = 0; variant < 3; ++variant) {
      const ConvexSet set = random_set(ctx.rng, ctx.n, variant);
      const Vector x = 3.0 * gaussian_vector(ctx.rng, ctx.n);
      const Vector y = uniform_int(ctx.rng, 0, 1) == 0 ? Vector(3.0 * gaussian_vector(ctx.rng, ctx.n))
                                                       : Vector(x + 0.01 * gaussian_vector(ctx.rng, ctx.n));
      const Projection px = metric_projection(set, x, options.tol);
      const Projection py = metric_projection(set, y, options.tol);
      auto inputs = [&] { return json{{"set", serialize(set)}, {"x", to_json(x)}, {"y", to_json(y)}}; };

      r.check((px.point - py.point).norm() - (x - y).norm(), kThreshold, inputs, "non-expansiveness");

      double vi = 0.0;
      if (const auto* p = std::get_if<Polytope>(&set)) {
        for (Eigen::Index i = 0; i < p->size(); ++i) {
          vi = std::max(vi, (x - px.point).dot(p->generator(i) - px.point));
        }
      } else {
        const Subspace& dir = std::holds_alternative<Flat>(set) ? std::get<Flat>(set).direction()
                                                                 : std::get<Subspace>(set);
        if (dir.dim() > 0) vi = (dir.basis().transpose() * (x - px.point)).cwiseAbs().maxCoeff();
      }
      r.check(vi, kThreshold, inputs, "variational inequality");

      const Projection again = metric_projection(set, px.point, options.tol);
      r.check((again.point - px.point).norm(), kThreshold, inputs, "fixed point");
    }

    Vector a = gaussian_vector(ctx.rng, ctx.n);
    while (a.norm() < 1e-3) a = gaussian_vector(ctx.rng, ctx.n);
    const Vector x = 3.0 * gaussian_vector(ctx.rng, ctx.n);
    const Vector w = project_hyperplane(a, x);
    Vector z = w + gaussian_vector(ctx.rng, ctx.n);
    z -= ((z - a).dot(a) / a.squaredNorm()) * a;
    auto inputs = [&] { return json{{"a", to_json(a)}, {"x", to_json(x)}}; };
    const double scale = std::max(1.0, a.norm() * std::max(a.norm(), x.norm()));
    r.check(std::abs((w - a).dot(a)) / scale, kThreshold, inputs, "hyperplane membership");
    r.check(std::abs((x - w).dot(z - w)) / std::max(1.0, (x - w).norm() * (z - w).norm()), kThreshold, inputs,
            "hyperplane orthogonality");
    return r;
  });
}

Report truncation_lemma(const SuiteDef& def, const SuiteOptions& options) {
  constexpr double kThreshold = 1e-7;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const ConvexSet set = random_set(ctx.rng, ctx.n, ctx.index % 3);
    const double nu = nearest_point(set, options.tol).nu;
    for (int j = 1; j <= 3; ++j) {
      const double big = 2.0 * j + nu + 1.0;
      for (int s = 0; s < 20; ++s) {
        const Vector x = uniform_in_ball(ctx.rng, ctx.n, j * (1.0 - 1e-12));
        const double free = metric_projection(set, x, options.tol).dist;
        const double cut = truncated_distance(set, x, big, options.tol);
        auto inputs = [&] { return json{{"set", serialize(set)}, {"x", to_json(x)}, {"L", big}, {"j", j}}; };
        r.check(std::abs(cut - free), kThreshold, inputs, "truncation identity");

        // An active truncation can only move the nearest point away.
        const double tight = nu + 0.25;
        const TruncatedProjection t = truncated_projection(set, x, tight, options.tol);
        r.check(free - t.dist, kThreshold, inputs, "truncated distance below the free distance");
        r.check(t.point.norm() - tight, kThreshold, inputs, "truncated point outside the ball");
        r.check(metric_projection(set, t.point, options.tol).dist, kThreshold, inputs,
                "truncated point outside the set");
      }
    }
    return r;
  });
}

// ---------------------------------------------------------------- hypermetrics

// Truth value of "value < eps" from an enclosure: 1 true, 0 false, -1 unknown.
int below(const Interval& i, double eps) {
  if (i.hi < eps) return 1;
  if (i.lo >= eps) return 0;
  return -1;
}

Report aw_metric(const SuiteDef& def, const SuiteOptions& options) {
  AWParams params;
  params.max_evaluations = 200'000;
  constexpr double kSlack = 1e-9;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const int family = ctx.index % 3;
    ConvexSet a = random_set(ctx.rng, ctx.n, family == 0 ? 0 : 1);
    const double scale_b = std::pow(10.0, uniform_real(ctx.rng, -2.0, 0.0));
    const double scale_c = std::pow(10.0, uniform_real(ctx.rng, -2.0, 0.0));
    ConvexSet b = family == 2 ? random_set(ctx.rng, ctx.n, 0) : perturb(ctx.rng, a, scale_b);
    ConvexSet c = perturb(ctx.rng, b, scale_c);
    auto inputs = [&] { return json{{"sets", sets_json({&a, &b, &c})}}; };

    const Interval ab = attouch_wets(a, b, params, options.tol);
    const Interval ba = attouch_wets(b, a, params, options.tol);
    const Interval bc = attouch_wets(b, c, params, options.tol);
    const Interval ac = attouch_wets(a, c, params, options.tol);
    const Interval aa = attouch_wets(a, a, params, options.tol);
    if (!(ab.certified && ba.certified && bc.certified && ac.certified)) r.inconclusive = true;

    r.check(aa.hi, 1e-6, inputs, "identity pair");
    r.check(ab.overlaps(ba, kSlack) ? 0.0 : std::max(ab.lo - ba.hi, ba.lo - ab.hi), 0.0, inputs, "symmetry");
    r.check(ac.lo - (ab.hi + bc.hi), kSlack, inputs, "triangle inequality");

    // d_AW < eps <= 1/j implies the j-th distance-gap supremum is below eps.
    if (ab.hi < 1.0) {
      const double eps = std::min(1.0, ab.hi * 1.5 + 1e-3);
      const int j = static_cast<int>(std::floor(1.0 / eps));
      if (below(ab, eps) == 1 && j >= 1) {
        const Interval s = sup_distance_gap(a, b, j, 1e-3, 200'000, options.tol);
        const int verdict = below(s, eps);
        if (verdict == -1) r.inconclusive = true;
        r.check(verdict == 0 ? s.lo - eps : 0.0, 0.0, inputs, "threshold rule");
      }
    }
    return r;
  });
}

Polytope origin_polytope(Rng& rng, Eigen::Index n) {
  const Polytope p = random_polytope(rng, n);
  Vector weights(p.size());
  for (Eigen::Index i = 0; i < weights.size(); ++i) weights(i) = -std::log(uniform_real(rng, 1e-12, 1.0));
  weights /= weights.sum();
  return p.translated(-(p.points() * weights));
}

ConvexSet origin_set(Rng& rng, Eigen::Index n, int variant) {
  if (variant == 0) return origin_polytope(rng, n);
  return uniform_subspace(rng, n, uniform_int(rng, 0, static_cast<int>(n)));
}

Report aw_origin_equivalence(const SuiteDef& def, const SuiteOptions& options) {
  AWParams params;
  params.max_evaluations = 400'000;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const int pairing = ctx.index % 4;
    const ConvexSet a = origin_set(ctx.rng, ctx.n, pairing == 3 ? 1 : 0);
    ConvexSet b = a;
    if (pairing == 0) {
      // Nearby pair: shrink or stretch A about the origin.
      const auto& p = std::get<Polytope>(a);
      b = Polytope(Matrix(p.points() * uniform_real(ctx.rng, 0.5, 2.0)));
    } else if (pairing == 1) {
      b = origin_set(ctx.rng, ctx.n, 0);
    } else if (pairing == 2) {
      b = origin_set(ctx.rng, ctx.n, 1);
    } else {
      b = tilt(ctx.rng, std::get<Subspace>(a), std::pow(10.0, uniform_real(ctx.rng, -2.0, 0.0)));
    }
    auto inputs = [&] { return json{{"sets", sets_json({&a, &b})}}; };

    const Interval aw = attouch_wets(a, b, params, options.tol);
    const Interval ao = aw_origin(a, b, params, options.tol);
    bool unknown = !aw.certified || !ao.certified;
    r.check(aw.overlaps(ao, 1e-9) ? 0.0 : std::max(aw.lo - ao.hi, ao.lo - aw.hi), 0.0, inputs,
            "attouch_wets and aw_origin disagree");

    const int j = uniform_int(ctx.rng, 1, 3);
    const double eps = uniform_real(ctx.rng, 1.0 / (j + 1), 1.0 / j);
    const Interval h = truncated_hausdorff(a, b, j, 1e-3, 400'000, options.tol);
    const int lhs = below(aw, eps);
    const int rhs = below(h, eps);
    if (lhs == -1 || rhs == -1 || !h.certified) unknown = true;
    r.check(lhs != -1 && rhs != -1 && lhs != rhs ? 1.0 : 0.0, 0.0,
            [&] {
              json in = inputs();
              in["eps"] = eps;
              in["j"] = j;
              return in;
            },
            "d_AW < eps and truncated Hausdorff < eps disagree");
    r.inconclusive = unknown;
    return r;
  });
}

// ---------------------------------------------------------------- grassmann

std::pair<Subspace, Subspace> random_subspace_pair(Rng& rng, Eigen::Index n, double same_dim_probability) {
  const int kv = uniform_int(rng, 0, static_cast<int>(n));
  const int kw = uniform_real(rng, 0.0, 1.0) < same_dim_probability ? kv : uniform_int(rng, 0, static_cast<int>(n));
  return {uniform_subspace(rng, n, kv), uniform_subspace(rng, n, kw)};
}

Report gap_oracle(const SuiteDef& def, const SuiteOptions& options) {
  constexpr double kEps = 1e-3;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const auto [v, w] = random_subspace_pair(ctx.rng, ctx.n, 0.75);
    auto inputs = [&, &v = v, &w = w] { return json{{"V", serialize(v)}, {"W", serialize(w)}}; };
    const double g = gap(v, w);
    const Interval direct = gap_direct(v, w, kEps);
    if (!direct.certified) r.inconclusive = true;
    r.check(std::max(direct.lo - g, g - direct.hi), 1e-9, inputs, "gap outside the direct enclosure");
    if (direct.certified) r.check(std::abs(g - direct.mid()), 2.0 * kEps, inputs, "gap differs from gap_direct");
    return r;
  });
}

Report gap_complement(const SuiteDef& def, const SuiteOptions& options) {
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const auto [v, w] = random_subspace_pair(ctx.rng, ctx.n, 0.5);
    const Subspace u = uniform_subspace(ctx.rng, ctx.n, uniform_int(ctx.rng, 0, static_cast<int>(ctx.n)));
    auto inputs = [&, &v = v, &w = w] { return json{{"V", serialize(v)}, {"W", serialize(w)}, {"U", serialize(u)}}; };
    const double g = gap(v, w);
    r.check(std::abs(g - gap(orthogonal_complement(v), orthogonal_complement(w))), options.tol.geom, inputs,
            "complement isometry");
    r.check(std::abs(g - gap(w, v)), 0.0, inputs, "symmetry");
    r.check(g - gap(v, u) - gap(u, w), options.tol.geom, inputs, "triangle inequality");

    const ProjectionOperator pv(v);
    const ProjectionOperator pc(orthogonal_complement(v));
    r.check(pv.law_residual(), options.tol.orth, inputs, "projector symmetry and idempotency");
    const Matrix id = Matrix::Identity(ctx.n, ctx.n);
    r.check((pv.matrix() + pc.matrix() - id).cwiseAbs().maxCoeff(), options.tol.orth, inputs,
            "complementary projectors sum to the identity");
    return r;
  });
}

Report gap_sandwich(const SuiteDef& def, const SuiteOptions& options) {
  constexpr double kEps = 1e-3;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const auto [v, w] = random_subspace_pair(ctx.rng, ctx.n, 0.75);
    const double theta = gap(v, w);
    for (int j = 1; j <= 3; ++j) {
      auto inputs = [&, &v = v, &w = w] { return json{{"V", serialize(v)}, {"W", serialize(w)}, {"j", j}}; };
      const Interval h = truncated_hausdorff(v, w, j, kEps, 1'000'000, options.tol);
      if (!h.certified) r.inconclusive = true;
      r.check(theta - kEps - h.lo, 0.0, inputs, "below the gap");
      r.check(h.hi - (j * theta + kEps), 0.0, inputs, "above j times the gap");
    }
    return r;
  });
}

Subspace tilde_member(Rng& rng, const Subspace& w) {
  for (;;) {
    Subspace v = uniform_subspace(rng, w.ambient_dim(), w.dim());
    if (in_tilde(w, v)) return v;
  }
}

Report flat_charts(const SuiteDef& def, const SuiteOptions& options) {
  constexpr double kThreshold = 1e-7;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const Eigen::Index k = uniform_int(ctx.rng, 0, static_cast<int>(ctx.n));
    const Subspace w = uniform_subspace(ctx.rng, ctx.n, k);
    const Subspace v = tilde_member(ctx.rng, w);
    const Vector omega = 2.0 * gaussian_in_complement(ctx.rng, w);
    auto inputs = [&] { return json{{"W", serialize(w)}, {"V", serialize(v)}, {"omega", to_json(omega)}}; };

    const Flat f = chart_flat(w, v, omega, options.tol);
    const auto [v2, omega2] = chart_flat_inv(w, f, options.tol);
    r.check(gap(v, v2), kThreshold, inputs, "inverse after chart: subspace");
    r.check((omega - omega2).norm(), kThreshold, inputs, "inverse after chart: offset");
    r.check(gap(parallel_subspace(f).first, v), kThreshold, inputs, "q of the chart is V");

    const Flat g(2.0 * gaussian_vector(ctx.rng, ctx.n), tilde_member(ctx.rng, w));
    auto g_inputs = [&] { return json{{"W", serialize(w)}, {"F", serialize(g)}}; };
    const auto [v3, omega3] = chart_flat_inv(w, g, options.tol);
    r.check(w.project(omega3).norm(), kThreshold, g_inputs, "offset outside W-perp");
    const Flat g2 = chart_flat(w, v3, omega3, options.tol);
    r.check(gap(g.direction(), g2.direction()), kThreshold, g_inputs, "chart after inverse: direction");
    r.check(metric_projection(g, g2.base()).dist, kThreshold, g_inputs, "chart after inverse: base off F");

    const Vector w1 = w.project(gaussian_vector(ctx.rng, ctx.n));
    const Vector w2 = w.project(gaussian_vector(ctx.rng, ctx.n));
    const double alpha = uniform_real(ctx.rng, -2.0, 2.0);
    const Vector l1 = lift_point(w, v, w1, options.tol);
    const Vector l2 = lift_point(w, v, w2, options.tol);
    const Vector l12 = lift_point(w, v, Vector(w1 + alpha * w2), options.tol);
    r.check((w.project(l1) - w1).norm(), kThreshold, inputs, "lift section property");
    r.check((l12 - l1 - alpha * l2).norm() / std::max(1.0, l12.norm()), kThreshold, inputs, "lift linearity");
    r.check((v.project(l1) - l1).norm(), kThreshold, inputs, "lift leaves V");
    return r;
  });
}

// ---------------------------------------------------------------- bundlecharts

Report convex_charts(const SuiteDef& def, const SuiteOptions& options) {
  constexpr double kHausdorff = 1e-6;
  constexpr double kGap = 1e-7;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const Eigen::Index k = uniform_int(ctx.rng, 0, static_cast<int>(std::min<Eigen::Index>(3, ctx.n)));
    const Subspace w = uniform_subspace(ctx.rng, ctx.n, k);
    Polytope a({{0.0}});
    for (;;) {
      a = Polytope(Matrix(w.basis() * gaussian_matrix(ctx.rng, k, k + 1 + uniform_int(ctx.rng, 0, 3))));
      if (k == 0) a = Polytope(Matrix(Matrix::Zero(ctx.n, 1)));
      if (dimension(a) == k) break;
    }
    const ChartTriple t{tilde_member(ctx.rng, w), Vector(2.0 * gaussian_in_complement(ctx.rng, w)), a};
    auto inputs = [&] { return json{{"W", serialize(w)}, {"triple", to_json(t)}}; };

    const Polytope b = chart_convex(w, t, options.tol);
    const ChartTriple back = chart_convex_inv(w, b, options.tol);
    r.check(gap(back.v, t.v), kGap, inputs, "inverse after chart: V");
    r.check((back.omega - t.omega).norm(), kHausdorff, inputs, "inverse after chart: omega");
    r.check(hausdorff(back.a, t.a, options.tol), kHausdorff, inputs, "inverse after chart: fiber");
    r.check(hausdorff(chart_convex(w, back, options.tol), b, options.tol), kHausdorff, inputs,
            "chart after inverse");
    r.check(gap(base_map(b, options.tol), t.v), kGap, inputs, "base equivariance");
    r.check(dimension(b, options.tol) == k ? 0.0 : 1.0, 0.0, inputs, "dimension preservation");

    const Polytope lifted = lift_set(w, t.v, t.a, options.tol);
    r.check(hausdorff(Polytope(Matrix(w.projector() * lifted.points())), t.a, options.tol), kHausdorff, inputs,
            "section property");

    // A generically different offset must give a different polytope.
    Vector shift = gaussian_in_complement(ctx.rng, w);
    if (shift.norm() > 1e-6) {
      shift *= 1e-3 / shift.norm();
      const ChartTriple other{t.v, Vector(t.omega + shift), t.a};
      const double sep = hausdorff(chart_convex(w, other, options.tol), b, options.tol);
      r.check(10.0 * options.tol.geom - sep, 0.0, inputs, "distinct triples collide");
    }
    return r;
  });
}

// ---------------------------------------------------------------- independence

Report independence(const SuiteDef& def, const SuiteOptions& options) {
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const Eigen::Index n = std::min<Eigen::Index>(ctx.n, 5);
    const Eigen::Index k = uniform_int(ctx.rng, 1, static_cast<int>(n));
    Matrix pts;
    do {
      pts = gaussian_matrix(ctx.rng, n, k + 1);
    } while (!is_affinely_independent(PointFamily(pts), options.tol.rank));
    const PointFamily fam(pts);
    const double delta = independence_radius(fam, options.tol);
    auto inputs = [&] { return json{{"family", to_json(pts)}, {"delta", delta}}; };

    const Report adversarial =
        adversarial_independence_check(fam, delta, options.selections, ctx.rng(), options.tol);
    for (const Failure& f : adversarial.failures) r.failures.push_back(f);

    const double c = std::pow(10.0, uniform_real(ctx.rng, -1.0, 1.0));
    const double scaled = independence_radius(PointFamily(Matrix(c * pts)), options.tol);
    r.check(std::abs(scaled - c * delta), options.tol.geom * std::max(1.0, c), inputs, "radius scaling");
    return r;
  });
}

Report simplex_stability(const SuiteDef& def, const SuiteOptions& options) {
  constexpr double kTol = 1e-10;
  return simple_suite(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const Eigen::Index k = uniform_int(ctx.rng, 1, static_cast<int>(ctx.n));
    const Subspace dir = uniform_subspace(ctx.rng, ctx.n, k);
    const Vector base = gaussian_vector(ctx.rng, ctx.n);
    Matrix a_pts;
    do {
      a_pts = (dir.basis() * (2.0 * gaussian_matrix(ctx.rng, k, k + 1))).colwise() + base;
    } while (!is_affinely_independent(PointFamily(a_pts), 1e-3));

    Vector mu(k + 1);
    for (Eigen::Index i = 0; i <= k; ++i) mu(i) = -std::log(uniform_real(ctx.rng, 1e-12, 1.0));
    mu /= mu.sum();
    const Vector a = a_pts * mu;

    // Distance from a to facet i inside F is lambda_i(a) / |grad lambda_i|.
    const Matrix d = a_pts.rightCols(k).colwise() - a_pts.col(0);
    const Matrix pinv = d.completeOrthogonalDecomposition().pseudoInverse();
    double facet = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i <= k; ++i) {
      const Vector grad = i == 0 ? Vector(-pinv.colwise().sum().transpose()) : Vector(pinv.row(i - 1).transpose());
      facet = std::min(facet, mu(i) / grad.norm());
    }
    const double m = 0.99 * facet / 3.0;

    Matrix b_pts = a_pts;
    for (Eigen::Index i = 0; i <= k; ++i) b_pts.col(i) += uniform_in_ball(ctx.rng, ctx.n, m * (1.0 - 1e-9));
    const PointFamily simplex(b_pts);
    std::vector<Vector> diffs;
    for (Eigen::Index i = 1; i <= k; ++i) diffs.emplace_back(b_pts.col(i) - b_pts.col(0));
    const Subspace g_dir = orthonormal_basis(diffs);
    auto inputs = [&] { return json{{"a_points", to_json(a_pts)}, {"b_points", to_json(b_pts)}, {"M", m}}; };
    r.check(g_dir.dim() == k ? 0.0 : 1.0, 0.0, inputs, "selection spans a lower-dimensional flat");
    if (g_dir.dim() != k) return r;

    // b in B(a, M) ∩ conv{b_i}: the weights of a, or random weights when admissible.
    Vector b = b_pts * mu;
    if (uniform_int(ctx.rng, 0, 1) == 1) {
      Vector nu(k + 1);
      for (Eigen::Index i = 0; i <= k; ++i) nu(i) = -std::log(uniform_real(ctx.rng, 1e-12, 1.0));
      const Vector candidate = b_pts * (nu / nu.sum());
      if ((candidate - a).norm() < m) b = candidate;
    }

    for (int s = 0; s < options.samples; ++s) {
      const double radius = m * (1.0 - 1e-9);
      Vector coords = uniform_in_ball(ctx.rng, k, radius);
      if (s % 2 == 1 && coords.norm() > 0.0) coords *= radius / coords.norm();
      const Vector y = b + g_dir.basis() * coords;
      const bool inside = in_relative_interior(simplex, y, kTol);
      const Vector lambda = barycentric_coordinates(simplex, y);
      auto y_inputs = [&] {
        json in = inputs();
        in["y"] = to_json(y);
        return in;
      };
      r.check(inside ? 0.0 : -lambda.minCoeff(), 0.0, y_inputs, "sample outside the relative interior");
      r.check((b_pts * lambda - y).norm(), options.tol.geom * std::max(1.0, y.norm()), y_inputs,
              "barycentric reconstruction");
    }
    return r;
  });
}

// ---------------------------------------------------------------- continuity

Report continuity_probes(const SuiteDef& def, const SuiteOptions& options) {
  const std::vector<double> scales = {1e-1, 1e-2, 1e-3, 1e-4};
  AWParams params;
  params.max_evaluations = 200'000;
  const auto results = run_trials(def, options, [&](TrialContext& ctx) {
    TrialResult r;
    const ConvexSet a = random_set(ctx.rng, ctx.n, ctx.index % 3);
    const Vector p = nearest_point(a, options.tol).p;
    std::vector<double> p_moves;
    std::vector<double> aw_moves;
    for (double t : scales) {
      const ConvexSet at = perturb(ctx.rng, a, t);
      p_moves.push_back((nearest_point(at, options.tol).p - p).norm());
      const ConvexSet shifted = minkowski_sum(a, Polytope(std::vector<Vector>{random_direction(ctx.rng, ctx.n, t)}));
      const Interval aw = attouch_wets(shifted, a, params, options.tol);
      if (!aw.certified) r.inconclusive = true;
      aw_moves.push_back(aw.hi);
    }
    r.values = p_moves;
    r.values.insert(r.values.end(), aw_moves.begin(), aw_moves.end());
    return r;
  });

  Report report = aggregate(def, options, results);
  const std::size_t count = scales.size();
  for (int curve = 0; curve < 2 && !results.empty(); ++curve) {
    const char* label = curve == 0 ? "nearest point" : "d_AW of translate";
    std::vector<double> worst(count, 0.0);
    for (const TrialResult& r : results) {
      if (r.values.size() != 2 * count) continue;
      for (std::size_t i = 0; i < count; ++i) worst[i] = std::max(worst[i], r.values[curve * count + i]);
    }
    json curve_json = json::array();
    for (std::size_t i = 0; i < count; ++i) curve_json.push_back({{"t", scales[i]}, {"max", worst[i]}});
    for (std::size_t i = 1; i < count; ++i) {
      if (worst[i] > worst[i - 1]) {
        report.failures.push_back(Failure{json{{"curve", curve_json}}, worst[i], worst[i - 1],
                                          std::string(label) + ": not monotone in t"});
      }
    }
    if (!(worst.back() < 1e-2)) {
      report.failures.push_back(
          Failure{json{{"curve", curve_json}}, worst.back(), 1e-2, std::string(label) + ": too large at smallest t"});
    }
    report.worst_residual = std::max(report.worst_residual, worst.back());
  }
  return report;
}

const std::vector<SuiteDef>& suite_table() {
  static const std::vector<SuiteDef> table = {
      {"projection-laws", false, projection_laws},
      {"truncation-lemma", false, truncation_lemma},
      {"aw-metric", false, aw_metric},
      {"aw-origin-equivalence", true, aw_origin_equivalence},
      {"gap-oracle", false, gap_oracle},
      {"gap-complement", false, gap_complement},
      {"gap-sandwich", false, gap_sandwich},
      {"flat-charts", false, flat_charts},
      {"convex-charts", false, convex_charts},
      {"independence", false, independence},
      {"simplex-stability", false, simplex_stability},
      {"continuity-probes", false, continuity_probes},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const SuiteDef& def : suite_table()) out.push_back(def.name);
    out.emplace_back("all");
    return out;
  }();
  return names;
}

Report run_suite(const std::string& name, const SuiteOptions& options) {
  if (options.dim < 1) throw PreconditionError("run_suite: dim must be at least 1");
  options.tol.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  if (name == "all") {
    report.suite = "all";
    report.seed = options.seed;
    for (const SuiteDef& def : suite_table()) {
      Report child = run_suite(def.name, options);
      report.absorb(child);
      report.children.push_back(std::move(child));
    }
  } else {
    const auto& table = suite_table();
    auto it = std::find_if(table.begin(), table.end(), [&](const SuiteDef& d) { return d.name == name; });
    if (it == table.end()) throw PreconditionError("run_suite: unknown suite '" + name + "'");
    report = it->run(*it, options);
  }
  report.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace hyperconvex
