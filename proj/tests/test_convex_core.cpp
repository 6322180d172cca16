#include "hyperconvex/convex_core.hpp"
#include "hyperconvex/random_instances.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace hyperconvex;

namespace {

Subspace line(double x, double y) { return Subspace(Matrix(make_vector({x, y}).normalized())); }

Subspace coordinate_span(Eigen::Index n, std::initializer_list<Eigen::Index> axes) {
  Matrix b = Matrix::Zero(n, static_cast<Eigen::Index>(axes.size()));
  Eigen::Index j = 0;
  for (Eigen::Index a : axes) b(a, j++) = 1.0;
  return Subspace(b);
}

}  // namespace

TEST_CASE("metric projection onto a triangle matches brute force and the variational inequality") {
  const Polytope tri{{1, 1}, {2, 1}, {1, 2}};
  const Vector x = make_vector({0, 0});
  const Projection p = metric_projection(tri, x);
  CHECK((p.point - make_vector({1, 1})).norm() < 1e-9);
  CHECK(p.dist == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  for (Eigen::Index i = 0; i < tri.size(); ++i) {
    CHECK((x - p.point).dot(tri.generator(i) - p.point) <= 1e-9);
  }
  const oracle::GridResult grid = oracle::grid_polytope_distance(tri.points(), x, 200);
  CHECK(p.dist <= grid.value + 1e-12);
  CHECK(p.dist >= grid.value - grid.error);
}

TEST_CASE("metric projection onto flats and subspaces uses the closed forms") {
  const Flat horizontal(make_vector({0, 1}), coordinate_span(2, {0}));
  const Projection pf = metric_projection(horizontal, make_vector({5, 7}));
  CHECK((pf.point - make_vector({5, 1})).norm() < 1e-12);
  CHECK(pf.dist == doctest::Approx(6.0));

  const Subspace diag = line(1, 1);
  const Projection ps = metric_projection(diag, make_vector({2, 0}));
  const Vector u = make_vector({1, 1}).normalized();
  CHECK((ps.point - make_vector({2, 0}).dot(u) * u).norm() < 1e-12);
  CHECK((ps.point - make_vector({1, 1})).norm() < 1e-12);
  CHECK(ps.dist == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("random polytope projections agree with the weight-grid oracle") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index n = 2 + t % 2;
    const Matrix gens = gaussian_matrix(rng, n, 3);
    const Polytope p(gens);
    const Vector x = gaussian_vector(rng, n) * 2.0;
    const Projection pr = metric_projection(p, x);
    const oracle::GridResult grid = oracle::grid_polytope_distance(gens, x, 300);
    CHECK(pr.dist <= grid.value + 1e-9);
    CHECK(pr.dist >= grid.value - grid.error - 1e-9);
    CHECK(contains(p, pr.point, 1e-9));
  }
}

TEST_CASE("projection laws hold on random instances") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 1 + t % 5;
    const Eigen::Index k = t % (n + 1);
    const std::string kind = instance_kinds()[static_cast<std::size_t>(t % 3)];
    const ConvexSet s = random_instance(kind, n, k, rng);
    const Vector x = gaussian_vector(rng, n) * 3.0;
    const Vector y = gaussian_vector(rng, n) * 3.0;
    const Projection px = metric_projection(s, x);
    const Projection py = metric_projection(s, y);
    CHECK((px.point - py.point).norm() <= (x - y).norm() + 1e-9);
    CHECK((metric_projection(s, px.point).point - px.point).norm() <= 1e-9);
    if (const auto* f = std::get_if<Flat>(&s); f != nullptr && f->dim() > 0) {
      const Vector r = x - px.point;
      CHECK((f->direction().basis().transpose() * r).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("nearest point to the origin") {
  const NearestPoint sub = nearest_point(coordinate_span(3, {0, 1}));
  CHECK(sub.p.norm() == 0.0);
  CHECK(sub.nu == 0.0);

  const NearestPoint tri = nearest_point(Polytope{{1, 1}, {2, 1}, {1, 2}});
  CHECK((tri.p - make_vector({1, 1})).norm() < 1e-9);
  CHECK(tri.nu == doctest::Approx(std::sqrt(2.0)));

  const NearestPoint flat = nearest_point(Flat(make_vector({0, 3}), coordinate_span(2, {0})));
  CHECK((flat.p - make_vector({0, 3})).norm() < 1e-12);
  CHECK(flat.nu == doctest::Approx(3.0));
}

TEST_CASE("truncated distance") {
  const Flat high(make_vector({0, 5}), coordinate_span(2, {0}));
  CHECK(truncated_distance(high, make_vector({0.5, 0}), 8.0) == doctest::Approx(5.0).epsilon(1e-12));

  const Polytope segment{{0, 0}, {10, 0}};
  CHECK(truncated_distance(segment, make_vector({11, 0}), 4.0) == doctest::Approx(7.0).epsilon(1e-9));
  // The truncated set is the segment [0, 4] on the axis.
  CHECK(oracle::segment_distance(make_vector({0, 0}), make_vector({4, 0}), make_vector({11, 0})) ==
        doctest::Approx(7.0));

  CHECK(truncated_distance(coordinate_span(2, {0}), make_vector({0, 0}), 1.0) == 0.0);

  CHECK_THROWS_AS(truncated_distance(high, make_vector({0, 0}), 4.0), EmptyIntersection);
  CHECK_THROWS_AS(truncated_distance(high, make_vector({0, 0}), -1.0), PreconditionError);
}

TEST_CASE("truncated distance agrees with Dykstra's alternating projections") {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index n = 2 + t % 3;
    const Eigen::Index k = 1 + t % (n - 1);
    const std::string kind = instance_kinds()[static_cast<std::size_t>(t % 3)];
    const ConvexSet s = random_instance(kind, n, k, rng);
    const double nu = nearest_point(s).nu;
    const double radius = nu + 0.5 + (t % 4) * 0.5;
    const Vector x = gaussian_vector(rng, n) * 4.0;

    const TruncatedProjection tp = truncated_projection(s, x, radius);
    const Vector ref = oracle::dykstra_ball([&](const Vector& z) { return metric_projection(s, z).point; }, x,
                                            radius, 20000);
    CHECK(tp.lower <= tp.dist + 1e-12);
    CHECK(tp.dist == doctest::Approx((x - ref).norm()).epsilon(1e-6));
    CHECK(tp.point.norm() <= radius + 1e-9);
  }
}

TEST_CASE("truncation is inactive for radii beyond 2j + d(0, S)") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 1 + t % 4;
    const ConvexSet s = random_instance("gaussian-polytope", n, t % (n + 1), rng);
    const int j = 1 + t % 3;
    const double big = 2.0 * j + nearest_point(s).nu + 1.0;
    const Vector x = uniform_in_ball(rng, n, j * 0.999);
    CHECK(std::abs(truncated_distance(s, x, big) - metric_projection(s, x).dist) <= 1e-9);
  }
}

TEST_CASE("affine hull and dimension") {
  const Flat seg = affine_hull(Polytope{{0, 0}, {1, 0}});
  CHECK(seg.base().isApprox(make_vector({0, 0})));
  REQUIRE(seg.dim() == 1);
  CHECK(std::abs(seg.direction().basis()(0, 0)) == doctest::Approx(1.0));

  const Flat point = affine_hull(Polytope{{3, 4}});
  CHECK(point.dim() == 0);
  CHECK(point.base().isApprox(make_vector({3, 4})));

  const Polytope tri3{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
  const Flat plane = affine_hull(tri3);
  REQUIRE(plane.dim() == 2);
  CHECK(std::abs(plane.direction().basis().row(2).norm()) < 1e-12);
  for (Eigen::Index i = 0; i < tri3.size(); ++i) CHECK(tri3.generator(i)(2) == doctest::Approx(1.0));

  CHECK(dimension(Polytope{{5, 5}}) == 0);
  CHECK(dimension(Polytope{{0, 0}, {1, 0}}) == 1);
  CHECK(dimension(Polytope{{0, 0}, {1, 0}, {0, 1}}) == 2);
  CHECK(dimension(coordinate_span(3, {0, 2})) == 2);
}

TEST_CASE("minkowski sums") {
  const ConvexSet square = minkowski_sum(Polytope{{0, 0}, {1, 0}}, Polytope{{0, 0}, {0, 1}});
  const auto& sq = std::get<Polytope>(square);
  Rng rng(2);
  std::uniform_real_distribution<double> unit(-0.5, 1.5);
  for (int t = 0; t < 500; ++t) {
    const Vector x = make_vector({unit(rng), unit(rng)});
    const bool inside = x(0) >= 0 && x(0) <= 1 && x(1) >= 0 && x(1) <= 1;
    const double margin = std::min({std::abs(x(0)), std::abs(x(0) - 1), std::abs(x(1)), std::abs(x(1) - 1)});
    if (margin < 1e-6) continue;
    CHECK(contains(sq, x, 1e-9) == inside);
  }

  const ConvexSet same = minkowski_sum(Polytope{{1, 1}, {2, 1}}, Polytope{{0, 0}});
  CHECK(std::get<Polytope>(same).points().isApprox(Polytope{{1, 1}, {2, 1}}.points()));

  const ConvexSet shifted = minkowski_sum(Flat(make_vector({0, 1}), coordinate_span(2, {0})), Polytope{{0, 2}});
  const auto& f = std::get<Flat>(shifted);
  CHECK(metric_projection(f, make_vector({0, 0})).point.isApprox(make_vector({0, 3})));
  CHECK(f.dim() == 1);

  CHECK_THROWS_AS(minkowski_sum(coordinate_span(2, {0}), Polytope{{0, 0}, {1, 1}}), UnsupportedOperation);
  CHECK_THROWS_AS(minkowski_sum(Polytope{{0, 0}}, Polytope{{0, 0, 0}}), DimensionMismatch);
}

TEST_CASE("hyperplane projection") {
  const Vector w1 = project_hyperplane(make_vector({0, 1}), make_vector({2, 3}));
  CHECK(w1.isApprox(make_vector({2, 1})));
  CHECK(project_hyperplane(make_vector({1, 0}), make_vector({1, 5})).isApprox(make_vector({1, 5})));
  CHECK(project_hyperplane(make_vector({0, 2}), make_vector({0, 0})).isApprox(make_vector({0, 2})));
  CHECK_THROWS(project_hyperplane(make_vector({0, 0}), make_vector({1, 1})));

  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const Vector a = gaussian_vector(rng, 4);
    const Vector x = gaussian_vector(rng, 4);
    const Vector w = project_hyperplane(a, x);
    CHECK(std::abs((w - a).dot(a)) < 1e-9);
    // Any direction inside H_a is orthogonal to x - w.
    const Vector g = gaussian_vector(rng, 4);
    const Vector dir = g - a * (g.dot(a) / a.squaredNorm());
    CHECK(std::abs((x - w).dot(dir)) < 1e-9);
  }
}

TEST_CASE("containment") {
  const Polytope seg{{0, 0}, {2, 0}};
  CHECK(contains(seg, make_vector({1, 0}), 1e-9));
  CHECK_FALSE(contains(seg, make_vector({1, 1}), 1e-9));
  CHECK(contains(coordinate_span(2, {0}), make_vector({5, 0}), 1e-9));
}

TEST_CASE("errors and convex-combination bound") {
  CHECK_THROWS_AS(metric_projection(Polytope{{0, 0}}, make_vector({1, 2, 3})), DimensionMismatch);
  CHECK_THROWS_AS(Polytope(Matrix(2, 0)), std::invalid_argument);

  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const Matrix a = gaussian_matrix(rng, 3, 4);
    const double r = 0.3;
    Matrix b = a;
    for (Eigen::Index i = 0; i < 4; ++i) b.col(i) += uniform_in_ball(rng, 3, r * 0.999);
    Vector lambda = (gaussian_vector(rng, 4).cwiseAbs().array() + 1e-3).matrix();
    lambda /= lambda.sum();
    CHECK((a * lambda - b * lambda).norm() < r);
  }
}
