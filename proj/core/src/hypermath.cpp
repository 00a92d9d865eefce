// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/hypermath.hpp"

#include <cmath>

namespace symtax {

GeometryMode parse_geometry_mode(const std::string& s) {
  if (s == "paper-atan" || s == "atan") return GeometryMode::kPaperAtan;
  if (s == "artanh") return GeometryMode::kArtanh;
  if (s == "euclidean") return GeometryMode::kEuclidean;
  throw ValidationError("unknown geometry mode '" + s + "' (expected paper-atan|artanh|euclidean)");
}

const char* to_string(GeometryMode mode) noexcept {
  switch (mode) {
    case GeometryMode::kPaperAtan:
      return "paper-atan";
    case GeometryMode::kArtanh:
      return "artanh";
    case GeometryMode::kEuclidean:
      return "euclidean";
  }
  return "?";
}

namespace {

void check_same_size(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ValidationError("vector dimensions differ");
}

double mobius_denominator(double ab, double aa, double bb) {
  const double den = 1.0 + 2.0 * ab + aa * bb;
  if (std::abs(den) < 1e-12) throw NumericError("degenerate Mobius addition (denominator ~ 0)");
  return den;
}

}  // namespace

Vector mobius_add(const Vector& a, const Vector& b) {
  check_same_size(a, b);
  const double ab = a.dot(b);
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  const double den = mobius_denominator(ab, aa, bb);
  return ((1.0 + 2.0 * ab + bb) * a + (1.0 - aa) * b) / den;
}

std::pair<Vector, Vector> mobius_add_backward(const Vector& a, const Vector& b, const Vector& g) {
  check_same_size(a, b);
  const double ab = a.dot(b);
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  const double den = mobius_denominator(ab, aa, bb);
  const double alpha = 1.0 + 2.0 * ab + bb;
  const double beta = 1.0 - aa;
  const Vector num = alpha * a + beta * b;
  // w = num / den
  const Vector g_num = g / den;
  const double g_den = -g.dot(num) / (den * den);
  const double gn_a = g_num.dot(a);
  const double gn_b = g_num.dot(b);

  Vector ga = alpha * g_num + (2.0 * gn_a) * b - (2.0 * gn_b) * a + g_den * (2.0 * b + (2.0 * bb) * a);
  Vector gb = (2.0 * gn_a) * (a + b) + beta * g_num + g_den * (2.0 * a + (2.0 * aa) * b);
  return {std::move(ga), std::move(gb)};
}

double separation(const Vector& query, const Vector& candidate, GeometryMode mode) {
  check_same_size(query, candidate);
  if (mode == GeometryMode::kEuclidean) return (query - candidate).norm();
  const double n = mobius_add(-candidate, query).norm();
  if (mode == GeometryMode::kPaperAtan) return 2.0 * std::atan(n);
  if (n >= 1.0) throw NumericError("artanh separation argument >= 1");
  return 2.0 * std::atanh(n);
}

std::pair<Vector, Vector> separation_backward(const Vector& query, const Vector& candidate,
                                              GeometryMode mode, double upstream) {
  check_same_size(query, candidate);
  const auto dim = query.size();
  if (query == candidate) return {Vector::Zero(dim), Vector::Zero(dim)};
  if (mode == GeometryMode::kEuclidean) {
    const Vector diff = query - candidate;
    const double n = diff.norm();
    if (n == 0.0) return {Vector::Zero(dim), Vector::Zero(dim)};
    Vector gq = (upstream / n) * diff;
    Vector gc = -gq;
    return {std::move(gq), std::move(gc)};
  }
  const Vector neg_c = -candidate;
  const Vector w = mobius_add(neg_c, query);
  const double n = w.norm();
  if (n == 0.0) return {Vector::Zero(dim), Vector::Zero(dim)};
  double ds_dn = 0.0;
  if (mode == GeometryMode::kPaperAtan) {
    ds_dn = 2.0 / (1.0 + n * n);
  } else {
    if (n >= 1.0) throw NumericError("artanh separation argument >= 1");
    ds_dn = 2.0 / (1.0 - n * n);
  }
  const Vector gw = (upstream * ds_dn / n) * w;
  auto [g_negc, g_q] = mobius_add_backward(neg_c, query, gw);
  return {std::move(g_q), -g_negc};
}

Vector project_to_ball(const Vector& v, double eps) {
  const double n = v.norm();
  const double radius = 1.0 - eps;
  if (n <= radius) return v;
  return v * (radius / n);
}

Vector project_to_ball_backward(const Vector& v, const Vector& upstream, double eps) {
  const double n = v.norm();
  const double radius = 1.0 - eps;
  if (n <= radius) return upstream;
  const Vector u = v / n;
  return (radius / n) * (upstream - u * u.dot(upstream));
}

ProjectionNet ProjectionNet::initialize(std::size_t input, std::size_t hidden, std::size_t output,
                                        Rng& rng) {
  ProjectionNet net = zeros(input, hidden, output);
  const double s1 = 1.0 / std::sqrt(static_cast<double>(input));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden));
  // Row-major fill order keeps initialization independent of Eigen storage.
  for (Eigen::Index r = 0; r < net.w1.rows(); ++r)
    for (Eigen::Index c = 0; c < net.w1.cols(); ++c) net.w1(r, c) = rng.uniform(-s1, s1);
  for (Eigen::Index r = 0; r < net.w2.rows(); ++r)
    for (Eigen::Index c = 0; c < net.w2.cols(); ++c) net.w2(r, c) = rng.uniform(-s2, s2);
  return net;
}

ProjectionNet ProjectionNet::zeros(std::size_t input, std::size_t hidden, std::size_t output) {
  const auto i = static_cast<Eigen::Index>(input);
  const auto h = static_cast<Eigen::Index>(hidden);
  const auto o = static_cast<Eigen::Index>(output);
  return ProjectionNet{Matrix::Zero(h, i), Vector::Zero(h), Matrix::Zero(o, h), Vector::Zero(o)};
}

Vector ProjectionNet::hidden(const Vector& x) const {
  if (x.size() != w1.cols()) {
    throw ValidationError("projection input has dimension " + std::to_string(x.size()) +
                          ", expected " + std::to_string(w1.cols()));
  }
  return (w1 * x + b1).array().tanh().matrix();
}

Vector ProjectionNet::forward(const Vector& x) const { return w2 * hidden(x) + b2; }

void ProjectionNet::backward(const Vector& x, const Vector& hidden_act, const Vector& upstream,
                             ProjectionNet& grad) const {
  grad.w2.noalias() += upstream * hidden_act.transpose();
  grad.b2 += upstream;
  const Vector g_pre = ((w2.transpose() * upstream).array() * (1.0 - hidden_act.array().square())).matrix();
  grad.w1.noalias() += g_pre * x.transpose();
  grad.b1 += g_pre;
}

}  // namespace symtax
