#include "hyperconvex/convex_core.hpp"
#include "hyperconvex/grassmann.hpp"
#include "hyperconvex/random_instances.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace hyperconvex;

namespace {

Subspace span(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Vector> vs;
  for (const auto& r : rows) vs.push_back(make_vector(r));
  return Subspace(oracle::gram_schmidt(vs));
}

Subspace axis(Eigen::Index n, Eigen::Index i) {
  Matrix b = Matrix::Zero(n, 1);
  b(i, 0) = 1.0;
  return Subspace(b);
}

Subspace tilde_member(Rng& rng, const Subspace& w) {
  for (;;) {
    Subspace v = uniform_subspace(rng, w.ambient_dim(), w.dim());
    if (in_tilde(w, v)) return v;
  }
}

}  // namespace

TEST_CASE("orthonormal bases") {
  const Subspace a = orthonormal_basis({make_vector({2, 0})});
  CHECK(a.dim() == 1);
  CHECK(gap(a, axis(2, 0)) < 1e-12);

  const Subspace b = orthonormal_basis({make_vector({1, 1}), make_vector({2, 2})});
  CHECK(b.dim() == 1);
  CHECK(gap(b, span({{1, 1}})) < 1e-12);

  const Subspace c = orthonormal_basis({make_vector({1, 0, 0}), make_vector({1, 1, 0})});
  CHECK(c.dim() == 2);
  CHECK(gap(c, span({{1, 0, 0}, {0, 1, 0}})) < 1e-12);
  CHECK((c.basis().transpose() * c.basis() - Matrix::Identity(2, 2)).norm() < 1e-12);

  CHECK_THROWS_AS(orthonormal_basis({}), PreconditionError);
  CHECK_THROWS_AS(orthonormal_basis({make_vector({0, 0})}), PreconditionError);
}

TEST_CASE("orthogonal complements") {
  const Subspace c1 = orthogonal_complement(axis(3, 0));
  CHECK(c1.dim() == 2);
  CHECK(gap(c1, span({{0, 1, 0}, {0, 0, 1}})) < 1e-12);

  CHECK(orthogonal_complement(Subspace::full(2)).dim() == 0);
  CHECK(orthogonal_complement(Subspace::zero(3)).dim() == 3);

  const Subspace c3 = orthogonal_complement(span({{1, 1}}));
  CHECK(gap(c3, span({{1, -1}})) < 1e-12);

  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 1 + t % 6;
    const Subspace v = uniform_subspace(rng, n, t % (n + 1));
    const Subspace c = orthogonal_complement(v);
    CHECK(c.dim() == n - v.dim());
    if (v.dim() > 0 && c.dim() > 0) CHECK((v.basis().transpose() * c.basis()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("gap on worked examples and against principal angles") {
  const Subspace e1 = axis(2, 0);
  CHECK(gap(e1, e1) < 1e-12);
  CHECK(gap(e1, axis(2, 1)) == doctest::Approx(1.0));
  const double c30 = std::cos(M_PI / 6);
  const double s30 = std::sin(M_PI / 6);
  const Subspace tilted = span({{c30, s30}});
  CHECK(gap(e1, tilted) == doctest::Approx(0.5).epsilon(1e-12));

  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 1 + t % 6;
    const Eigen::Index kv = t % (n + 1);
    const Eigen::Index kw = t % 4 == 0 ? (t / 4) % (n + 1) : kv;
    const Subspace v = uniform_subspace(rng, n, kv);
    const Subspace w = uniform_subspace(rng, n, kw);
    const double g = gap(v, w);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
    CHECK(std::abs(g - gap(w, v)) <= 1e-12);
    CHECK(std::abs(g - oracle::principal_gap(v.basis(), w.basis())) < 1e-9);
    CHECK(std::abs(g - gap(orthogonal_complement(v), orthogonal_complement(w))) < 1e-9);

    const Subspace u = uniform_subspace(rng, n, kv);
    CHECK(gap(v, u) <= g + gap(w, u) + 1e-9);
  }
}

TEST_CASE("gap_direct encloses the gap") {
  const Subspace e1 = axis(2, 0);
  const Interval same = gap_direct(e1, e1, 1e-3);
  CHECK(same.lo == 0.0);
  CHECK(same.hi <= 1e-3);

  CHECK(gap_direct(e1, axis(2, 1), 1e-3).contains(1.0, 1e-9));

  const Subspace tilted = span({{std::cos(M_PI / 6), std::sin(M_PI / 6)}});
  const Interval half = gap_direct(e1, tilted, 1e-3);
  CHECK(half.contains(0.5, 1e-9));
  CHECK(std::abs(half.mid() - gap(e1, tilted)) <= 1e-3);

  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index n = 1 + t % 6;
    const Subspace v = uniform_subspace(rng, n, t % (n + 1));
    const Subspace w = uniform_subspace(rng, n, t % (n + 1));
    const Interval i = gap_direct(v, w, 1e-3);
    CHECK(i.certified);
    CHECK(i.contains(oracle::principal_gap(v.basis(), w.basis()), 1e-9));
  }
}

TEST_CASE("projection operator laws") {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 1 + t % 6;
    const Subspace v = uniform_subspace(rng, n, t % (n + 1));
    const ProjectionOperator p(v);
    const ProjectionOperator q(orthogonal_complement(v));
    CHECK(p.law_residual() < 1e-10);
    CHECK((p.matrix() * p.matrix() - p.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((p.matrix() + q.matrix() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(p.matrix().trace() == doctest::Approx(static_cast<double>(v.dim())).epsilon(1e-8));
  }
}

TEST_CASE("membership in the chart domain") {
  const Subspace w = axis(2, 0);
  CHECK(in_tilde(w, span({{1, 1}})));
  CHECK_FALSE(in_tilde(w, axis(2, 1)));
  CHECK(in_tilde(w, w));
  CHECK_THROWS_AS(in_tilde(w, Subspace::full(2)), DimensionMismatch);
}

TEST_CASE("lifting points from W to V") {
  const Subspace w = axis(2, 0);
  const Subspace v = span({{1, 1}});
  CHECK(lift_point(w, v, make_vector({3, 0})).isApprox(make_vector({3, 3})));
  CHECK(lift_point(w, w, make_vector({3, 0})).isApprox(make_vector({3, 0})));
  CHECK(lift_point(w, v, make_vector({0, 0})).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(lift_point(w, axis(2, 1), make_vector({1, 0})), PreconditionError);
  CHECK_THROWS_AS(lift_point(w, v, make_vector({1, 1})), PreconditionError);

  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const Subspace ws = uniform_subspace(rng, n, 1 + t % (n - 1));
    const Subspace vs = tilde_member(rng, ws);
    const Vector a = ws.project(gaussian_vector(rng, n));
    const Vector b = ws.project(gaussian_vector(rng, n));
    const Vector la = lift_point(ws, vs, a);
    const Vector lb = lift_point(ws, vs, b);
    // Section property and membership in V.
    const double scale = std::max(1.0, la.norm());
    CHECK((ws.project(la) - a).norm() <= 1e-9 * scale);
    CHECK((vs.project(la) - la).norm() <= 1e-9 * scale);
    // Linearity.
    CHECK((lift_point(ws, vs, Vector(a + b)) - la - lb).norm() <= 1e-9 * std::max(1.0, la.norm() + lb.norm()));
    CHECK((lift_point(ws, vs, Vector(2.5 * a)) - 2.5 * la).norm() <= 1e-9 * scale * 2.5);
  }
}

TEST_CASE("parallel subspace of flats") {
  const auto [v1, p1] = parallel_subspace(Flat(make_vector({0, 1}), axis(2, 0)));
  CHECK(gap(v1, axis(2, 0)) < 1e-12);
  CHECK(p1.isApprox(make_vector({0, 1})));

  const auto [v2, p2] = parallel_subspace(Flat::through_origin(axis(2, 0)));
  CHECK(gap(v2, axis(2, 0)) < 1e-12);
  CHECK(p2.norm() == 0.0);

  const auto [v3, p3] = parallel_subspace(Flat(make_vector({0, 1}), span({{1, 1}})));
  CHECK(gap(v3, span({{1, 1}})) < 1e-12);
  CHECK((p3 - make_vector({-0.5, 0.5})).norm() < 1e-12);
}

TEST_CASE("flat charts on worked examples") {
  const Subspace w = axis(2, 0);
  const Subspace v = span({{1, 1}});

  const Flat f = chart_flat(w, v, make_vector({0, 2}));
  CHECK(f.base().isApprox(make_vector({0, 2})));
  CHECK(gap(f.direction(), v) < 1e-12);

  const Flat same = chart_flat(w, w, make_vector({0, 0}));
  CHECK(gap(same.direction(), w) < 1e-12);
  CHECK(same.base().norm() == 0.0);

  const Flat g = chart_flat(w, v, make_vector({0, 1}));
  CHECK((parallel_subspace(g).second - make_vector({-0.5, 0.5})).norm() < 1e-12);

  const auto [iv, omega] = chart_flat_inv(w, Flat(make_vector({0, 1}), v));
  CHECK(gap(iv, v) < 1e-12);
  CHECK((omega - make_vector({0, 1})).norm() < 1e-12);

  const auto [wv, zero] = chart_flat_inv(w, Flat::through_origin(w));
  CHECK(gap(wv, w) < 1e-12);
  CHECK(zero.norm() < 1e-12);

  const auto [hv, high] = chart_flat_inv(w, Flat(make_vector({0, 3}), w));
  CHECK(gap(hv, w) < 1e-12);
  CHECK((high - make_vector({0, 3})).norm() < 1e-12);

  CHECK_THROWS_AS(chart_flat(w, v, make_vector({1, 1})), PreconditionError);
  CHECK_THROWS_AS(chart_flat_inv(w, Flat(make_vector({0, 0}), axis(2, 1))), PreconditionError);
}

TEST_CASE("flat chart round trips on random inputs") {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 1 + t % 6;
    const Subspace w = uniform_subspace(rng, n, t % (n + 1));
    const Subspace v = tilde_member(rng, w);
    const Vector omega = gaussian_in_complement(rng, w);
    const Flat f = chart_flat(w, v, omega);
    const auto [v2, omega2] = chart_flat_inv(w, f);
    CHECK(gap(v, v2) <= 1e-7);
    CHECK((omega - omega2).norm() <= 1e-7);
    // The chart's flat and the original meet at the base point.
    CHECK(metric_projection(f, omega2).dist <= 1e-7);
  }
}
