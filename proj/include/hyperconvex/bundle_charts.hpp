#pragma once

#include "hyperconvex/convex_set.hpp"

namespace hyperconvex {

/// A point of the local trivialization over the chart domain of W:
/// a base subspace V, an offset omega in W^perp, and a fiber polytope A in W.
struct ChartTriple {
  Subspace v;
  Vector omega;
  Polytope a;
};

/// Generator-wise lift of A subset W into V. The projection of the result
/// onto W is A again.
Polytope lift_set(const Subspace& w, const Subspace& v, const Polytope& a, const Tolerances& tol = {});

/// Direction of the affine hull. A Subspace maps to itself.
Subspace base_map(const ConvexSet& a, const Tolerances& tol = {});

/// lift_set(W, V, A) + omega. Requires V in the chart domain of W, omega in
/// W^perp, A inside W with dimension at most dim W.
Polytope chart_convex(const Subspace& w, const ChartTriple& t, const Tolerances& tol = {});

/// Inverse of chart_convex for a polytope B whose affine hull has dimension
/// dim W and a direction in the chart domain of W.
ChartTriple chart_convex_inv(const Subspace& w, const Polytope& b, const Tolerances& tol = {});

}  // namespace hyperconvex
