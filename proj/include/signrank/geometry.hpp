#pragma once

// Exact point / oriented-hyperplane configurations in R^d over Q(sqrt q).
//
// A hyperplane with coefficients (c0, c1, ..., cd) is the zero set of
// c0 + c1 x1 + ... + cd xd; a point is on its positive side when that value
// is positive. With cd > 0 the positive side is "above" (larger xd), which is
// the orientation used when encoding a configuration as a sign pattern.

#include <cstdint>
#include <vector>

#include "signrank/exactnum.hpp"
#include "signrank/pattern.hpp"

namespace signrank {

struct Point {
  std::vector<QuadElem> coords;
};

struct OrientedHyperplane {
  std::vector<QuadElem> coeffs;  // c0, c1, ..., cd

  std::size_t dim() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  QuadElem evaluate(const Point& p) const;
  /// Parallel to the xd-axis: cd = 0.
  bool is_vertical() const;
};

struct Configuration {
  std::size_t dim = 2;
  std::int64_t field_d = 1;
  std::vector<Point> points;
  std::vector<OrientedHyperplane> hyperplanes;

  /// Dimensions, field and non-degeneracy (some c1..cd nonzero); throws DomainError.
  void validate() const;
  QuadElem scalar(const Rational& q) const { return QuadElem::from_rational(q, field_d); }
};

/// Exact sign of h at p (stored orientation).
Sign side(const Point& p, const OrientedHyperplane& h);

struct NormalizedHyperplane {
  OrientedHyperplane plane;
  bool flipped = false;
};
/// Scales to cd = 1; negative cd flips the orientation (reported). Vertical
/// hyperplanes are returned unchanged.
NormalizedHyperplane normalize(const OrientedHyperplane& h);

/// Signs of every point against every hyperplane in stored orientation.
/// Vertical hyperplanes are allowed.
SignPattern side_pattern(const Configuration& c);

/// Sign pattern with every hyperplane normalized to cd = 1 (entry + means
/// the point is above). Throws VerticalHyperplane.
SignPattern encode_configuration(const Configuration& c);

/// Same configuration with all hyperplanes normalized; flips[j] = - where the
/// stored orientation of hyperplane j was reversed.
struct NormalizedConfiguration {
  Configuration config;
  std::vector<Sign> flips;
};
NormalizedConfiguration normalize_configuration(const Configuration& c);

/// Point i = (U(i,1), ..., U(i,r-1)); hyperplane j = (V(0,j), ..., V(r-2,j), 1).
/// Requires U(:,0) = 1 and V(r-1,:) = 1 exactly, r >= 2.
Configuration from_factorization(const RationalMatrix& u, const RationalMatrix& v,
                                 std::int64_t field_d = 1);

enum class SimplicityCondition : int {
  DistinctPoints = 1,  // no two points with identical or opposite sides
  DistinctLines = 2,   // no two hyperplanes with identical or opposite sides
  PointOnAllLines = 3,
  LineThroughAllPoints = 4,
};

struct SimplicityViolation {
  SimplicityCondition condition;
  std::vector<std::size_t> indices;  // 0-based point or hyperplane indices
};

struct SimplicityReport {
  bool simple = true;
  std::vector<SimplicityViolation> violations;
};

SimplicityReport is_simple(const Configuration& c);

struct PlanarRotation {
  Rational t;    // circle parameter
  Rational cos;  // (1 - t^2) / (1 + t^2)
  Rational sin;  // 2t / (1 + t^2)
};
PlanarRotation rotation_from_parameter(const Rational& t);

struct RotationResult {
  Configuration config;
  PlanarRotation rotation;
  /// side_pattern(result) = side_pattern(input) * diag(flips); the result's
  /// hyperplanes are stored normalized.
  std::vector<Sign> flips;
};

/// Rotates a planar configuration about the origin by an exact rational
/// rotation. Point-hyperplane values are preserved exactly.
RotationResult rotate(const Configuration& c, const Rational& t);
/// Rotation (smallest admissible parameter in a fixed enumeration, starting
/// with t = 0) after which no hyperplane is vertical. Planar only.
RotationResult avoid_vertical(const Configuration& c);

/// Shifts points by v and adjusts c0 so every point-hyperplane value is
/// unchanged.
Configuration translate(const Configuration& c, const std::vector<QuadElem>& v);

struct DualResult {
  Configuration config;
  /// Orientation reversals applied to the input hyperplanes so the origin is
  /// on their negative side:
  /// side_pattern(dual) = transpose(side_pattern(input) * diag(line_flips)).
  std::vector<Sign> line_flips;
};

/// Point a becomes the hyperplane <a, x> = 1 (origin on the negative side);
/// hyperplane h not through the origin becomes its pole. Throws DomainError
/// when a point is the origin or a hyperplane passes through it.
DualResult dualize(const Configuration& c);

/// Places c1 above c2 so that the encoded pattern is [[A1, +], [-, A2]].
/// The lower-dimensional input is padded with leading zero coordinates.
Configuration stack(const Configuration& c1, const Configuration& c2);

struct IncidenceStructure {
  std::size_t points = 0;
  std::size_t lines = 0;
  std::vector<std::vector<std::size_t>> points_on_line;  // per column
  std::vector<std::vector<std::size_t>> lines_through_point;  // per row
  std::size_t incidence_count() const;
};

/// Point i lies on line j iff entry (i, j) is zero.
IncidenceStructure incidence_structure(const SignPattern& a);

}  // namespace signrank
