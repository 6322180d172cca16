#pragma once

#include "hyperconvex/convex_set.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hyperconvex {

using Rng = std::mt19937_64;

/// Names accepted by random_instance.
const std::vector<std::string>& instance_kinds();

/// Deterministic random set of the given kind:
///   gaussian-polytope  hull of k + 3 standard normal points in a random k-flat
///                      (redrawn until its dimension is exactly k),
///   uniform-subspace   orthonormalized n x k Gaussian matrix,
///   random-flat        uniform subspace plus a standard normal offset.
/// Throws PreconditionError for an unknown kind or k outside [0, n].
ConvexSet random_instance(std::string_view kind, Eigen::Index n, Eigen::Index k, std::uint64_t seed);
ConvexSet random_instance(std::string_view kind, Eigen::Index n, Eigen::Index k, Rng& rng);

Vector gaussian_vector(Rng& rng, Eigen::Index n);
Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed k-dimensional subspace of R^n.
Subspace uniform_subspace(Rng& rng, Eigen::Index n, Eigen::Index k);

/// Uniform point of the closed ball of the given radius.
Vector uniform_in_ball(Rng& rng, Eigen::Index n, double radius);

/// Point of W^perp with standard normal coordinates in an orthonormal basis.
Vector gaussian_in_complement(Rng& rng, const Subspace& w);

}  // namespace hyperconvex
