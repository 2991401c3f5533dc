#pragma once

// Order-2 curves with θ_2 = a θ_1, sampled through the projection (x', y', z')
// next to the plain polyspherical point (x, y, z) = (cos θ cos aθ, sin θ cos aθ, sin aθ).

#include <Eigen/Core>

#include <vector>

namespace lgfib {

struct CurveParams {
  int a = 1;
  int samples = 3600;
};

/// Throws DomainError unless a >= 1 and samples >= 2.
void validate(const CurveParams& params);

struct CurvePoint {
  double theta = 0.0;
  Eigen::Vector3d projected = Eigen::Vector3d::Zero();
  Eigen::Vector3d plain = Eigen::Vector3d::Zero();
};

/// Samples θ_i = 2π i / samples, i = 0..samples-1.
std::vector<CurvePoint> sample_curve(const CurveParams& params);

/// Number of distinct lobes of the projected XY trace. The trace is split into
/// arcs where the signed radius x' cos θ + y' sin θ changes sign; arcs whose mean
/// directions lie within 0.1 rad of each other are the same petal.
int count_petals(const std::vector<CurvePoint>& curve);

struct Kink {
  /// Sample parameter where the derivative jump was largest.
  double theta = 0.0;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
};

/// Points where the numerical derivative of z' jumps by more than ten times its
/// median jump. Runs of adjacent flagged samples form one kink, and kinks that
/// land on the same point of the projected curve are reported once.
std::vector<Kink> non_differentiable_points(const std::vector<CurvePoint>& curve);

}  // namespace lgfib
