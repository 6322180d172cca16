#include "hyperconvex/convex_core.hpp"
#include "hyperconvex/grassmann.hpp"
#include "hyperconvex/hypermetrics.hpp"
#include "hyperconvex/random_instances.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace hyperconvex;

namespace {

Subspace axis(Eigen::Index n, Eigen::Index i) {
  Matrix b = Matrix::Zero(n, 1);
  b(i, 0) = 1.0;
  return Subspace(b);
}

Subspace line(double x, double y) { return Subspace(Matrix(make_vector({x, y}).normalized())); }

}  // namespace

TEST_CASE("hausdorff distance of polytopes") {
  const Polytope a{{0, 0}, {1, 0}};
  const Polytope b{{0, 0}, {0, 1}};
  CHECK(hausdorff(a, b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hausdorff(a, a) == 0.0);

  const Polytope square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK(hausdorff(square, square.translated(make_vector({0.5, 0}))) == doctest::Approx(0.5).epsilon(1e-12));

  // Oracle: sup over a dense sample of each segment of the distance to the other.
  double brute = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    brute = std::max(brute, oracle::segment_distance(b.generator(0), b.generator(1), make_vector({t, 0})));
    brute = std::max(brute, oracle::segment_distance(a.generator(0), a.generator(1), make_vector({0, t})));
  }
  CHECK(hausdorff(a, b) == doctest::Approx(brute).epsilon(1e-12));

  CHECK_THROWS_AS(hausdorff(a, Polytope{{0, 0, 0}}), DimensionMismatch);
}

TEST_CASE("sup distance gap on worked examples") {
  const Polytope a{{0, 0}, {1, 0}, {0, 1}};
  const Interval same = sup_distance_gap(a, a, 2.0, 1e-3);
  CHECK(same.certified);
  CHECK(same.lo == 0.0);
  CHECK(same.hi <= 1e-9);

  const Interval points = sup_distance_gap(Polytope{{0, 0}}, Polytope{{1, 0}}, 1.0, 1e-3);
  CHECK(points.certified);
  CHECK(points.width() <= 1e-3);
  CHECK(points.contains(1.0, 1e-9));

  const Interval axes = sup_distance_gap(axis(2, 0), axis(2, 1), 1.0, 1e-3);
  CHECK(axes.certified);
  CHECK(axes.contains(1.0, 1e-9));
  CHECK(axes.contains(gap(axis(2, 0), axis(2, 1)), 1e-9));

  CHECK_THROWS_AS(sup_distance_gap(a, a, 0.0, 1e-3), PreconditionError);
  CHECK_THROWS_AS(sup_distance_gap(a, a, 1.0, 0.0), PreconditionError);
}

TEST_CASE("sup distance gap agrees with a dense 2-d grid") {
  Rng rng(41);
  for (int t = 0; t < 12; ++t) {
    const ConvexSet a = random_instance(instance_kinds()[static_cast<std::size_t>(t % 3)], 2, t % 3, rng);
    const ConvexSet b = random_instance("gaussian-polytope", 2, 1 + t % 2, rng);
    const double r = 1.0 + t % 3;
    const Interval i = sup_distance_gap(a, b, r, 1e-3);
    const oracle::GridResult grid = oracle::grid_sup_gap_2d([&](const Vector& x) { return metric_projection(a, x).dist; },
                                                            [&](const Vector& x) { return metric_projection(b, x).dist; },
                                                            r, 0.005);
    CHECK(i.certified);
    // Both enclose the same supremum, so the two ranges must overlap.
    CHECK(i.lo <= grid.value + grid.error + 1e-9);
    CHECK(grid.value <= i.hi + 1e-9);
  }
}

TEST_CASE("attouch-wets worked value for nested segments") {
  const Polytope a{{0, 0}, {10, 0}};
  const Polytope b{{0, 0}, {20, 0}};

  // Hand oracle: the j-th inner sup is max(0, j - 10) clipped at 10, so the
  // terms min(1/j, .) peak at j = 11 with value 1/11.
  double reference = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double inner = std::clamp(static_cast<double>(j) - 10.0, 0.0, 10.0);
    reference = std::max(reference, std::min(1.0 / j, inner));
  }
  CHECK(reference == doctest::Approx(1.0 / 11.0));

  const Interval aw = attouch_wets(a, b);
  CHECK(aw.certified);
  CHECK(aw.width() <= 1e-3);
  CHECK(aw.contains(1.0 / 11.0, 1e-9));

  const Interval origin = aw_origin(a, b);
  CHECK(origin.contains(1.0 / 11.0, 1e-9));
  CHECK(origin.overlaps(aw));
}

TEST_CASE("attouch-wets identity and singleton translations") {
  const Polytope a{{0, 0}, {1, 0}, {0, 2}};
  const Interval same = attouch_wets(a, a);
  CHECK(same.lo == 0.0);
  CHECK(same.hi <= 1e-6);

  const Interval line_same = aw_origin(axis(2, 0), axis(2, 0));
  CHECK(line_same.lo == 0.0);
  CHECK(line_same.hi <= 1e-6);

  double previous = std::numeric_limits<double>::infinity();
  for (double t : {0.5, 0.1, 0.01, 0.001}) {
    const Interval i = attouch_wets(Polytope{{0, 0}}, Polytope{{t, 0}});
    CHECK(i.hi <= t + 1e-3);
    CHECK(i.hi <= previous + 1e-12);
    previous = i.hi;
  }
}

TEST_CASE("aw_origin for two lines through the origin sits above min(1, theta)") {
  const Interval i = aw_origin(axis(2, 0), line(1, 1));
  const double theta = std::sin(M_PI / 4);
  CHECK(i.lo >= std::min(1.0, theta) - 1e-3);
  CHECK(i.hi <= 1.0 + 1e-9);
  CHECK_THROWS_AS(aw_origin(Polytope{{1, 1}}, axis(2, 0)), PreconditionError);
}

TEST_CASE("truncated hausdorff of subspaces lies between theta and j theta") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 2 + t % 2;
    const Eigen::Index k = 1 + t % (n - 1);
    const Subspace v = uniform_subspace(rng, n, k);
    const Subspace w = uniform_subspace(rng, n, k);
    const double theta = oracle::principal_gap(v.basis(), w.basis());
    for (int j = 1; j <= 3; ++j) {
      const Interval h = truncated_hausdorff(v, w, j, 1e-3);
      CHECK(h.certified);
      CHECK(h.lo >= theta - 1e-3 - 1e-9);
      CHECK(h.hi <= j * theta + 1e-3 + 1e-9);
    }
  }
}

TEST_CASE("truncated hausdorff of nested segments") {
  // Segments from the origin of lengths 10 and 20, truncated at radius 3, are
  // both [0, 3] on the axis; at radius 15 they are [0, 10] and [0, 15].
  const Polytope a{{0, 0}, {10, 0}};
  const Polytope b{{0, 0}, {20, 0}};
  const Interval small = truncated_hausdorff(a, b, 3.0, 1e-3);
  CHECK(small.hi <= 1e-3);
  const Interval large = truncated_hausdorff(a, b, 15.0, 1e-3);
  CHECK(large.contains(5.0, 1e-3));
}

TEST_CASE("attouch-wets is a metric on sampled triples") {
  Rng rng(77);
  AWParams params;
  for (int t = 0; t < 6; ++t) {
    const ConvexSet a = random_instance("gaussian-polytope", 2, 1, rng);
    const ConvexSet b = random_instance("gaussian-polytope", 2, 2, rng);
    const ConvexSet c = random_instance("random-flat", 2, 1, rng);
    const Interval ab = attouch_wets(a, b, params);
    const Interval ba = attouch_wets(b, a, params);
    const Interval bc = attouch_wets(b, c, params);
    const Interval ac = attouch_wets(a, c, params);
    CHECK(ab.overlaps(ba));
    CHECK(ac.lo <= ab.hi + bc.hi + 1e-9);
    CHECK(ab.hi <= 1.0 + 1e-12);
  }
}

TEST_CASE("parameter validation") {
  AWParams bad;
  bad.eps_sup = 0.0;
  CHECK_THROWS(bad.validate());
  AWParams cap;
  cap.j_cap = 0;
  CHECK_THROWS(cap.validate());
}
