#pragma once

// Random inputs shared by the unit tests and the acceptance binary.

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "signrank/geometry.hpp"
#include "signrank/realize.hpp"

namespace gen {

using namespace signrank;

inline QuadElem rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return QuadElem::from_rational(q, 1);
}

/// Planar configuration with small rational coordinates and non-vertical
/// lines. With avoid_origin no point is the origin or on the x-axis and no
/// line passes through the origin (so the dual exists and is non-vertical).
inline Configuration random_planar(std::mt19937_64& rng, std::size_t m, std::size_t n, bool avoid_origin) {
  std::uniform_int_distribution<long> v(-6, 6), den(1, 3);
  Configuration c;
  c.dim = 2;
  for (std::size_t i = 0; i < m; ++i) {
    Point p{{rational(v(rng), den(rng)), rational(v(rng), den(rng))}};
    if (avoid_origin && quad_sign(p.coords[1]) == Sign::Zero) p.coords[1] = rational(1, 2);
    c.points.push_back(p);
  }
  for (std::size_t j = 0; j < n; ++j) {
    OrientedHyperplane h{{rational(v(rng), den(rng)), rational(v(rng), den(rng)), rational(rng() % 2 ? 1 : -1)}};
    if (avoid_origin && quad_sign(h.coeffs[0]) == Sign::Zero) h.coeffs[0] = rational(3);
    c.hyperplanes.push_back(h);
  }
  return c;
}

/// Planar configuration whose lines are drawn through zero, one or two of
/// the points, chosen before the line.
inline Configuration sparse_incidence_config(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<long> v(-12, 12), den(1, 4);
  Configuration c;
  c.dim = 2;
  for (std::size_t i = 0; i < m; ++i)
    c.points.push_back(Point{{rational(v(rng), den(rng)), rational(v(rng), den(rng))}});
  for (std::size_t j = 0; j < n; ++j) {
    const int through = static_cast<int>(rng() % 3);
    const auto& pa = c.points[rng() % m].coords;
    const auto& pb = c.points[rng() % m].coords;
    OrientedHyperplane h;
    if (through == 2 && !(pa[0] == pb[0])) {
      const QuadElem k = (pb[1] - pa[1]) / (pb[0] - pa[0]);
      h.coeffs = {k * pa[0] - pa[1], -k, rational(1)};
    } else if (through >= 1) {
      const QuadElem k = rational(v(rng), den(rng));
      h.coeffs = {k * pa[0] - pa[1], -k, rational(1)};
    } else {
      h.coeffs = {rational(v(rng), den(rng)), rational(v(rng), den(rng)), rational(1)};
    }
    c.hyperplanes.push_back(h);
  }
  return c;
}

inline bool at_most_two_per_line(const SignPattern& a) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::size_t z = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) z += a(i, j) == Sign::Zero;
    if (z > 2) return false;
  }
  return true;
}

/// B = D1 A D2 for some signatures, by trying all of them.
inline bool signature_equivalent(const SignPattern& a, const SignPattern& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const std::size_t m = a.rows(), n = a.cols();
  for (std::uint32_t rs = 0; rs < (1u << m); ++rs)
    for (std::uint32_t cs = 0; cs < (1u << n); ++cs) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) {
          const int s = ((rs >> i & 1) ? -1 : 1) * ((cs >> j & 1) ? -1 : 1);
          ok = to_int(b(i, j)) == s * to_int(a(i, j));
        }
      if (ok) return true;
    }
  return false;
}

/// Random normal-form integer factors with entries in [-2, 2].
inline std::pair<RationalMatrix, RationalMatrix> normal_form_pair(std::mt19937_64& rng, std::size_t m, std::size_t r,
                                                                  std::size_t n) {
  std::uniform_int_distribution<long> v(-2, 2);
  RationalMatrix u(m, r), w(r, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j) u(i, j) = j == 0 ? 1 : v(rng);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = i + 1 == r ? 1 : v(rng);
  return {u, w};
}

/// Relative error between the analytic penalty gradient and central
/// differences with step 1e-6.
inline double gradient_error(const SignPattern& t, const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                             double margin) {
  const PenaltyGradient g = sign_penalty_gradient(t, u, v, margin);
  const double h = 1e-6;
  double err2 = 0;
  auto probe = [&](Eigen::MatrixXd& x, const Eigen::MatrixXd& analytic, bool is_u) {
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double x0 = x(i, j);
        x(i, j) = x0 + h;
        const double fp = is_u ? sign_penalty(t, x, v, margin) : sign_penalty(t, u, x, margin);
        x(i, j) = x0 - h;
        const double fm = is_u ? sign_penalty(t, x, v, margin) : sign_penalty(t, u, x, margin);
        x(i, j) = x0;
        const double d = (fp - fm) / (2 * h) - analytic(i, j);
        err2 += d * d;
      }
  };
  Eigen::MatrixXd uu = u, vv = v;
  probe(uu, g.du, true);
  probe(vv, g.dv, false);
  const double norm = std::sqrt(g.du.squaredNorm() + g.dv.squaredNorm());
  return std::sqrt(err2) / std::max(norm, 1e-12);
}

}  // namespace gen
