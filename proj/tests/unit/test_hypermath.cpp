// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"
#include "symtax/hypermath.hpp"
#include "test_util.hpp"

namespace symtax {
namespace {

using testing::random_ball_point;
using testing::random_vector;

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Central-difference gradient of a scalar function.
Vector numeric_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-6) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

TEST(Mobius, OneDimensionalAddition) {
  // In one dimension a (+) b = (a + b) / (1 + ab).
  EXPECT_NEAR(mobius_add(vec({0.3}), vec({0.4}))[0], 0.7 / 1.12, 1e-15);
  EXPECT_NEAR(mobius_add(vec({0.3}), vec({0.4}))[0], 0.625, 1e-15);
}

TEST(Mobius, Identities) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vector a = random_ball_point(rng, 6, 0.95);
    const Vector zero = Vector::Zero(6);
    EXPECT_LE((mobius_add(zero, a) - a).norm(), 1e-14);
    EXPECT_LE((mobius_add(a, zero) - a).norm(), 1e-14);
    EXPECT_LE(mobius_add(-a, a).norm(), 1e-12);
    EXPECT_LT(mobius_add(a, random_ball_point(rng, 6, 0.95)).norm(), 1.0);
  }
}

TEST(Mobius, MatchesScalarOracle) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Vector a = random_ball_point(rng, 4, 0.9), b = random_ball_point(rng, 4, 0.9);
    const auto want = oracle::mobius(std::vector<double>(a.data(), a.data() + 4), std::vector<double>(b.data(), b.data() + 4));
    const Vector got = mobius_add(a, b);
    for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(got[k], want[static_cast<std::size_t>(k)], 1e-14);
  }
}

TEST(Mobius, DegenerateDenominatorThrows) {
  // 1 + 2<a,b> + |a|^2|b|^2 = 0 for a = e1, b = -e1.
  EXPECT_THROW(mobius_add(vec({1.0, 0.0}), vec({-1.0, 0.0})), NumericError);
  EXPECT_THROW(mobius_add(vec({0.1}), vec({0.1, 0.2})), ValidationError);
}

TEST(Separation, KnownValues) {
  const Vector zero = Vector::Zero(1);
  EXPECT_NEAR(separation(vec({0.5}), zero, GeometryMode::kArtanh), std::log(3.0), 1e-14);
  EXPECT_NEAR(separation(vec({0.5}), zero, GeometryMode::kPaperAtan), 2.0 * std::atan(0.5), 1e-15);
  EXPECT_NEAR(separation(vec({0.3, 0.4}), vec({0.0, 0.0}), GeometryMode::kEuclidean), 0.5, 1e-15);
  // (-0.4) (+) 0.3 = -0.1 / 0.88.
  EXPECT_NEAR(separation(vec({0.3}), vec({0.4}), GeometryMode::kPaperAtan), 2.0 * std::atan(0.1 / 0.88), 1e-15);
}

TEST(Separation, SymmetricAndZeroOnDiagonal) {
  Rng rng(3);
  for (auto mode : {GeometryMode::kPaperAtan, GeometryMode::kArtanh, GeometryMode::kEuclidean}) {
    for (int i = 0; i < 50; ++i) {
      const Vector q = random_ball_point(rng, 5, 0.9), c = random_ball_point(rng, 5, 0.9);
      EXPECT_NEAR(separation(q, c, mode), separation(c, q, mode), 1e-12);
      EXPECT_NEAR(separation(q, q, mode), 0.0, 1e-12);
      EXPECT_GE(separation(q, c, mode), 0.0);
    }
  }
}

TEST(Separation, ArtanhSatisfiesTriangleInequality) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const Vector x = random_ball_point(rng, 3, 0.9), y = random_ball_point(rng, 3, 0.9),
                 z = random_ball_point(rng, 3, 0.9);
    const auto d = [](const Vector& a, const Vector& b) { return separation(a, b, GeometryMode::kArtanh); };
    EXPECT_LE(d(x, z), d(x, y) + d(y, z) + 1e-10);
  }
}

TEST(Separation, AtanStaysBelowHalfPi) {
  // Antipodal points near the boundary: the Mobius sum approaches the sphere.
  const Vector q = vec({1.0 - 1e-5, 0.0}), c = vec({-(1.0 - 1e-5), 0.0});
  const double s = separation(q, c, GeometryMode::kPaperAtan);
  EXPECT_LE(s, M_PI / 2.0);
  EXPECT_GT(s, M_PI / 2.0 - 1e-6);
  EXPECT_GT(separation(q, c, GeometryMode::kArtanh), 20.0);
}

TEST(Projection, RescalesOnlyOutsideRadius) {
  const Vector inside = vec({0.3, 0.4});
  EXPECT_EQ(project_to_ball(inside), inside);
  const Vector outside = vec({3.0, 4.0});
  const Vector p = project_to_ball(outside);
  EXPECT_NEAR(p.norm(), 1.0 - kBallEpsilon, 1e-15);
  EXPECT_NEAR(p[0] / p[1], 0.75, 1e-15);
}

TEST(Gradients, MobiusBackwardMatchesFiniteDifferences) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector a = random_ball_point(rng, 4, 0.8), b = random_ball_point(rng, 4, 0.8);
    const Vector g = random_vector(rng, 4);
    const auto [ga, gb] = mobius_add_backward(a, b, g);
    const Vector na = numeric_gradient([&](const Vector& x) { return g.dot(mobius_add(x, b)); }, a);
    const Vector nb = numeric_gradient([&](const Vector& x) { return g.dot(mobius_add(a, x)); }, b);
    EXPECT_LE((ga - na).norm(), 1e-7 * std::max(1.0, na.norm()));
    EXPECT_LE((gb - nb).norm(), 1e-7 * std::max(1.0, nb.norm()));
  }
}

TEST(Gradients, SeparationBackwardMatchesFiniteDifferences) {
  Rng rng(7);
  for (auto mode : {GeometryMode::kPaperAtan, GeometryMode::kArtanh, GeometryMode::kEuclidean}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Vector q = random_ball_point(rng, 5, 0.8), c = random_ball_point(rng, 5, 0.8);
      const double up = rng.uniform(-2.0, 2.0);
      const auto [gq, gc] = separation_backward(q, c, mode, up);
      const Vector nq = numeric_gradient([&](const Vector& x) { return up * separation(x, c, mode); }, q);
      const Vector nc = numeric_gradient([&](const Vector& x) { return up * separation(q, x, mode); }, c);
      EXPECT_LE((gq - nq).norm(), 1e-6 * std::max(1.0, nq.norm())) << to_string(mode);
      EXPECT_LE((gc - nc).norm(), 1e-6 * std::max(1.0, nc.norm())) << to_string(mode);
    }
  }
  const Vector q = vec({0.2, 0.1});
  const auto [gq, gc] = separation_backward(q, q, GeometryMode::kPaperAtan, 1.0);
  EXPECT_EQ(gq.norm(), 0.0);
  EXPECT_EQ(gc.norm(), 0.0);
}

TEST(Gradients, ProjectionBackwardMatchesFiniteDifferences) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector v = random_vector(rng, 4, trial % 2 == 0 ? 0.3 : 3.0);
    const Vector up = random_vector(rng, 4);
    const Vector got = project_to_ball_backward(v, up);
    const Vector want = numeric_gradient([&](const Vector& x) { return up.dot(project_to_ball(x)); }, v);
    EXPECT_LE((got - want).norm(), 1e-7 * std::max(1.0, want.norm()));
  }
}

TEST(ProjectionNet, ForwardMatchesScalarOracleAndBackwardMatchesFiniteDifferences) {
  Rng rng(9);
  const ProjectionNet net = ProjectionNet::initialize(6, 5, 3, rng);
  const Vector x = random_vector(rng, 6);
  const auto want = oracle::mlp(net.w1, net.b1, net.w2, net.b2, std::vector<double>(x.data(), x.data() + 6));
  const Vector got = net.forward(x);
  for (Eigen::Index k = 0; k < 3; ++k) EXPECT_NEAR(got[k], want[static_cast<std::size_t>(k)], 1e-14);
  EXPECT_THROW(net.forward(Vector::Zero(4)), ValidationError);

  const Vector up = random_vector(rng, 3);
  ProjectionNet grad = ProjectionNet::zeros(6, 5, 3);
  net.backward(x, net.hidden(x), up, grad);
  const double h = 1e-6;
  for (Eigen::Index r = 0; r < net.w1.rows(); ++r) {
    for (Eigen::Index c = 0; c < net.w1.cols(); ++c) {
      ProjectionNet p = net, m = net;
      p.w1(r, c) += h;
      m.w1(r, c) -= h;
      const double fd = (up.dot(p.forward(x)) - up.dot(m.forward(x))) / (2 * h);
      EXPECT_NEAR(grad.w1(r, c), fd, 1e-8);
    }
  }
  for (Eigen::Index r = 0; r < net.w2.rows(); ++r) {
    for (Eigen::Index c = 0; c < net.w2.cols(); ++c) {
      ProjectionNet p = net, m = net;
      p.w2(r, c) += h;
      m.w2(r, c) -= h;
      const double fd = (up.dot(p.forward(x)) - up.dot(m.forward(x))) / (2 * h);
      EXPECT_NEAR(grad.w2(r, c), fd, 1e-8);
    }
  }
  EXPECT_LE((grad.b2 - up).norm(), 1e-15);
}

TEST(ProjectionNet, InitializationIsDeterministic) {
  Rng a(3), b(3);
  EXPECT_EQ(ProjectionNet::initialize(8, 4, 2, a), ProjectionNet::initialize(8, 4, 2, b));
}

TEST(Geometry, ModeNames) {
  EXPECT_EQ(parse_geometry_mode("paper-atan"), GeometryMode::kPaperAtan);
  EXPECT_EQ(parse_geometry_mode("artanh"), GeometryMode::kArtanh);
  EXPECT_EQ(parse_geometry_mode("euclidean"), GeometryMode::kEuclidean);
  EXPECT_THROW(parse_geometry_mode("lorentz"), ValidationError);
  EXPECT_STREQ(to_string(GeometryMode::kArtanh), "artanh");
}

}  // namespace
}  // namespace symtax
