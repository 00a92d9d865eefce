// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "symtax/common.hpp"

namespace symtax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Points handed to the hyperbolic routines live strictly inside the unit
/// ball; projection keeps them at most 1 - kBallEpsilon from the origin.
inline constexpr double kBallEpsilon = 1e-5;

enum class GeometryMode {
  kPaperAtan,  // 2 atan(||(-c) (+) q||)
  kArtanh,     // 2 artanh(||(-c) (+) q||), the Poincare-ball distance
  kEuclidean,  // ||q - c||, no projection
};

GeometryMode parse_geometry_mode(const std::string& s);
const char* to_string(GeometryMode mode) noexcept;
inline bool is_hyperbolic(GeometryMode m) noexcept { return m != GeometryMode::kEuclidean; }

/// Mobius addition on the unit ball (curvature -1):
///   a (+) b = ((1 + 2<a,b> + |b|^2) a + (1 - |a|^2) b) / (1 + 2<a,b> + |a|^2 |b|^2)
/// Throws NumericError when the denominator magnitude is below 1e-12.
Vector mobius_add(const Vector& a, const Vector& b);

/// Gradients of mobius_add w.r.t. a and b given the upstream gradient g.
std::pair<Vector, Vector> mobius_add_backward(const Vector& a, const Vector& b, const Vector& g);

/// Separation between a query point and a candidate point. Hyperbolic modes
/// expect both points already inside the ball.
double separation(const Vector& query, const Vector& candidate, GeometryMode mode);

/// d separation / d query and d separation / d candidate, scaled by `upstream`.
/// At coincident points the (sub)gradient is taken to be zero.
std::pair<Vector, Vector> separation_backward(const Vector& query, const Vector& candidate,
                                              GeometryMode mode, double upstream);

/// Rescales v onto the sphere of radius 1 - eps when it lies outside it.
Vector project_to_ball(const Vector& v, double eps = kBallEpsilon);

/// Vector-Jacobian product of project_to_ball at v.
Vector project_to_ball_backward(const Vector& v, const Vector& upstream, double eps = kBallEpsilon);

/// Two-layer feed-forward map R^D -> R^d:  w2 tanh(w1 x + b1) + b2.
struct ProjectionNet {
  Matrix w1;  // hidden x input
  Vector b1;
  Matrix w2;  // output x hidden
  Vector b2;

  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(w1.cols()); }
  std::size_t hidden_dim() const noexcept { return static_cast<std::size_t>(w1.rows()); }
  std::size_t output_dim() const noexcept { return static_cast<std::size_t>(w2.rows()); }

  /// Weights uniform in +-1/sqrt(fan_in), biases zero.
  static ProjectionNet initialize(std::size_t input, std::size_t hidden, std::size_t output, Rng& rng);
  static ProjectionNet zeros(std::size_t input, std::size_t hidden, std::size_t output);

  /// Throws ValidationError on an input of the wrong dimension.
  Vector forward(const Vector& x) const;

  /// Hidden activation tanh(w1 x + b1), reused by backward().
  Vector hidden(const Vector& x) const;

  /// Accumulates parameter gradients for one input given d loss / d output.
  void backward(const Vector& x, const Vector& hidden_act, const Vector& upstream,
                ProjectionNet& grad) const;

  bool operator==(const ProjectionNet& o) const {
    return w1 == o.w1 && b1 == o.b1 && w2 == o.w2 && b2 == o.b2;
  }
};

}  // namespace symtax
