#include "signrank/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace signrank {

QuadElem OrientedHyperplane::evaluate(const Point& p) const {
  if (p.coords.size() + 1 != coeffs.size())
    throw DomainError("point and hyperplane dimensions differ");
  QuadElem v = coeffs[0];
  for (std::size_t k = 0; k < p.coords.size(); ++k) v += coeffs[k + 1] * p.coords[k];
  return v;
}

bool OrientedHyperplane::is_vertical() const { return coeffs.back().is_zero(); }

void Configuration::validate() const {
  if (dim < 1) throw DomainError("configuration dimension must be at least 1");
  auto check = [&](const QuadElem& x) {
    if (x.field() != field_d)
      throw DomainError("scalar from Q(sqrt " + std::to_string(x.field()) +
                        ") in a configuration over Q(sqrt " + std::to_string(field_d) + ")");
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].coords.size() != dim)
      throw DomainError("point " + std::to_string(i + 1) + " has the wrong dimension");
    for (const auto& x : points[i].coords) check(x);
  }
  for (std::size_t j = 0; j < hyperplanes.size(); ++j) {
    const auto& h = hyperplanes[j];
    if (h.coeffs.size() != dim + 1)
      throw DomainError("hyperplane " + std::to_string(j + 1) + " has the wrong dimension");
    for (const auto& x : h.coeffs) check(x);
    if (std::all_of(h.coeffs.begin() + 1, h.coeffs.end(), [](const QuadElem& x) { return x.is_zero(); }))
      throw DomainError("hyperplane " + std::to_string(j + 1) + " has no linear part");
  }
}

Sign side(const Point& p, const OrientedHyperplane& h) { return quad_sign(h.evaluate(p)); }

NormalizedHyperplane normalize(const OrientedHyperplane& h) {
  if (h.is_vertical()) return {h, false};
  const QuadElem lead = h.coeffs.back();
  NormalizedHyperplane out{h, quad_sign(lead) == Sign::Negative};
  for (auto& c : out.plane.coeffs) c /= lead;
  return out;
}

SignPattern side_pattern(const Configuration& c) {
  c.validate();
  SignPattern p(c.points.size(), c.hyperplanes.size());
  for (std::size_t i = 0; i < c.points.size(); ++i)
    for (std::size_t j = 0; j < c.hyperplanes.size(); ++j) p.set(i, j, side(c.points[i], c.hyperplanes[j]));
  return p;
}

SignPattern encode_configuration(const Configuration& c) {
  c.validate();
  std::vector<Sign> orient(c.hyperplanes.size());
  for (std::size_t j = 0; j < c.hyperplanes.size(); ++j) {
    if (c.hyperplanes[j].is_vertical()) throw VerticalHyperplane(j);
    orient[j] = quad_sign(c.hyperplanes[j].coeffs.back());
  }
  SignPattern p(c.points.size(), c.hyperplanes.size());
  for (std::size_t i = 0; i < c.points.size(); ++i)
    for (std::size_t j = 0; j < c.hyperplanes.size(); ++j)
      p.set(i, j, side(c.points[i], c.hyperplanes[j]) * orient[j]);
  return p;
}

NormalizedConfiguration normalize_configuration(const Configuration& c) {
  c.validate();
  NormalizedConfiguration out{c, std::vector<Sign>(c.hyperplanes.size(), Sign::Positive)};
  for (std::size_t j = 0; j < c.hyperplanes.size(); ++j) {
    auto n = normalize(c.hyperplanes[j]);
    out.config.hyperplanes[j] = std::move(n.plane);
    if (n.flipped) out.flips[j] = Sign::Negative;
  }
  return out;
}

Configuration from_factorization(const RationalMatrix& u, const RationalMatrix& v, std::int64_t field_d) {
  const std::size_t r = u.cols();
  if (r < 2) throw DomainError("from_factorization: rank must be at least 2");
  if (v.rows() != r) throw DomainError("from_factorization: U is m x r but V is not r x n");
  for (std::size_t i = 0; i < u.rows(); ++i)
    if (u(i, 0) != 1) throw DomainError("from_factorization: U(" + std::to_string(i + 1) + ",1) is not 1");
  for (std::size_t j = 0; j < v.cols(); ++j)
    if (v(r - 1, j) != 1)
      throw DomainError("from_factorization: last entry of V column " + std::to_string(j + 1) + " is not 1");
  Configuration c;
  c.dim = r - 1;
  c.field_d = field_d;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    Point p;
    for (std::size_t k = 1; k < r; ++k) p.coords.push_back(c.scalar(u(i, k)));
    c.points.push_back(std::move(p));
  }
  for (std::size_t j = 0; j < v.cols(); ++j) {
    OrientedHyperplane h;
    for (std::size_t k = 0; k < r; ++k) h.coeffs.push_back(c.scalar(v(k, j)));
    c.hyperplanes.push_back(std::move(h));
  }
  return c;
}

SimplicityReport is_simple(const Configuration& c) {
  const SignPattern a = encode_configuration(c);
  SimplicityReport rep;
  const auto cond = condense(a);
  for (const auto& ev : cond.log) {
    SimplicityViolation v;
    if (ev.kind == DeletionKind::Zero) {
      v.condition = ev.axis == Axis::Row ? SimplicityCondition::PointOnAllLines
                                         : SimplicityCondition::LineThroughAllPoints;
      v.indices = {ev.removed};
    } else {
      v.condition = ev.axis == Axis::Row ? SimplicityCondition::DistinctPoints
                                         : SimplicityCondition::DistinctLines;
      v.indices = {ev.survivor, ev.removed};
    }
    rep.violations.push_back(std::move(v));
  }
  // A zero row only shows up as a row deletion, but such a point also puts
  // every hyperplane through it; record both conditions from the raw pattern.
  for (std::size_t j = 0; j < a.cols(); ++j) {
    bool all = a.rows() > 0;
    for (std::size_t i = 0; i < a.rows() && all; ++i) all = a(i, j) == Sign::Zero;
    const bool listed = std::any_of(rep.violations.begin(), rep.violations.end(), [&](const auto& v) {
      return v.condition == SimplicityCondition::LineThroughAllPoints && v.indices == std::vector{j};
    });
    if (all && !listed) rep.violations.push_back({SimplicityCondition::LineThroughAllPoints, {j}});
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool all = a.cols() > 0;
    for (std::size_t j = 0; j < a.cols() && all; ++j) all = a(i, j) == Sign::Zero;
    const bool listed = std::any_of(rep.violations.begin(), rep.violations.end(), [&](const auto& v) {
      return v.condition == SimplicityCondition::PointOnAllLines && v.indices == std::vector{i};
    });
    if (all && !listed) rep.violations.push_back({SimplicityCondition::PointOnAllLines, {i}});
  }
  rep.simple = rep.violations.empty();
  return rep;
}

PlanarRotation rotation_from_parameter(const Rational& t) {
  const Rational t2 = t * t;
  return {t, Rational((1 - t2) / (1 + t2)), Rational(2 * t / (1 + t2))};
}

RotationResult rotate(const Configuration& c, const Rational& t) {
  c.validate();
  if (c.dim != 2) throw DomainError("exact rotations are implemented for planar configurations only");
  RotationResult out{c, rotation_from_parameter(t), std::vector<Sign>(c.hyperplanes.size(), Sign::Positive)};
  const QuadElem cs = c.scalar(out.rotation.cos), sn = c.scalar(out.rotation.sin);
  // x' = R x with R = [[cos, -sin], [sin, cos]]; linear parts rotate the same way
  auto turn = [&](const QuadElem& x, const QuadElem& y) {
    return std::pair{cs * x - sn * y, sn * x + cs * y};
  };
  for (auto& p : out.config.points) {
    auto [x, y] = turn(p.coords[0], p.coords[1]);
    p.coords = {x, y};
  }
  for (std::size_t j = 0; j < out.config.hyperplanes.size(); ++j) {
    auto& h = out.config.hyperplanes[j];
    auto [a, b] = turn(h.coeffs[1], h.coeffs[2]);
    h.coeffs = {h.coeffs[0], a, b};
    auto n = normalize(h);
    if (n.flipped) out.flips[j] = Sign::Negative;
    h = std::move(n.plane);
  }
  return out;
}

RotationResult avoid_vertical(const Configuration& c) {
  c.validate();
  if (c.dim != 2) throw DomainError("avoid_vertical: planar configurations only");
  // t = 0, then p/q in (0, 1) by increasing q; each hyperplane excludes at
  // most two parameters, so this terminates.
  auto admissible = [&](const Rational& t) {
    const auto rot = rotation_from_parameter(t);
    for (const auto& h : c.hyperplanes) {
      const QuadElem lead = c.scalar(rot.sin) * h.coeffs[1] + c.scalar(rot.cos) * h.coeffs[2];
      if (lead.is_zero()) return false;
    }
    return true;
  };
  if (admissible(0)) return rotate(c, 0);
  for (long q = 2;; ++q)
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational t = make_rational(p, q);
      if (admissible(t)) return rotate(c, t);
    }
}

Configuration translate(const Configuration& c, const std::vector<QuadElem>& v) {
  c.validate();
  if (v.size() != c.dim) throw DomainError("translation vector has the wrong dimension");
  Configuration out = c;
  for (auto& p : out.points)
    for (std::size_t k = 0; k < c.dim; ++k) p.coords[k] += v[k];
  for (auto& h : out.hyperplanes)
    for (std::size_t k = 0; k < c.dim; ++k) h.coeffs[0] -= h.coeffs[k + 1] * v[k];
  return out;
}

DualResult dualize(const Configuration& c) {
  c.validate();
  DualResult out;
  out.config.dim = c.dim;
  out.config.field_d = c.field_d;
  const QuadElem minus_one = c.scalar(-1);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto& p = c.points[i];
    if (std::all_of(p.coords.begin(), p.coords.end(), [](const QuadElem& x) { return x.is_zero(); }))
      throw DomainError("dualize: point " + std::to_string(i + 1) + " is the origin; translate first");
    OrientedHyperplane h;
    h.coeffs.push_back(minus_one);
    h.coeffs.insert(h.coeffs.end(), p.coords.begin(), p.coords.end());
    out.config.hyperplanes.push_back(std::move(h));
  }
  for (std::size_t j = 0; j < c.hyperplanes.size(); ++j) {
    const auto& h = c.hyperplanes[j];
    const QuadElem& c0 = h.coeffs[0];
    if (c0.is_zero())
      throw DomainError("dualize: hyperplane " + std::to_string(j + 1) +
                        " passes through the origin; translate first");
    // c0 + <c, x> = 0  <=>  <-c/c0, x> = 1
    Point pole;
    for (std::size_t k = 1; k < h.coeffs.size(); ++k) pole.coords.push_back(-h.coeffs[k] / c0);
    out.config.points.push_back(std::move(pole));
    out.line_flips.push_back(-quad_sign(c0));
  }
  return out;
}

namespace {

// Inserts `extra` zero coordinates in front of the point coordinates and
// after c0 in the hyperplane coefficients.
Configuration pad(const Configuration& c, std::size_t extra) {
  if (extra == 0) return c;
  Configuration out = c;
  out.dim += extra;
  const QuadElem zero = c.scalar(0);
  for (auto& p : out.points) p.coords.insert(p.coords.begin(), extra, zero);
  for (auto& h : out.hyperplanes) h.coeffs.insert(h.coeffs.begin() + 1, extra, zero);
  return out;
}

}  // namespace

Configuration stack(const Configuration& c1, const Configuration& c2) {
  if (c1.field_d != c2.field_d) throw DomainError("stack: configurations use different fields");
  const SignPattern a1 = encode_configuration(c1);
  const SignPattern a2 = encode_configuration(c2);
  if (!is_condensed(a1) || !is_condensed(a2))
    throw DomainError("stack: both configurations must encode condensed patterns");
  const std::size_t d = std::max(c1.dim, c2.dim);
  Configuration top = normalize_configuration(pad(c1, d - c1.dim)).config;
  const Configuration bottom = normalize_configuration(pad(c2, d - c2.dim)).config;

  // Shift top by delta along xd: top points gain delta against bottom
  // hyperplanes, bottom points lose delta against top hyperplanes.
  QuadElem need = top.scalar(0);
  for (const auto& p : top.points)
    for (const auto& h : bottom.hyperplanes) need = std::max(need, -h.evaluate(p));
  for (const auto& q : bottom.points)
    for (const auto& h : top.hyperplanes) need = std::max(need, h.evaluate(q));
  const QuadElem delta = need + top.scalar(1);
  std::vector<QuadElem> shift(d, top.scalar(0));
  shift[d - 1] = delta;
  top = translate(top, shift);

  Configuration out = top;
  out.points.insert(out.points.end(), bottom.points.begin(), bottom.points.end());
  out.hyperplanes.insert(out.hyperplanes.end(), bottom.hyperplanes.begin(), bottom.hyperplanes.end());
  return out;
}

std::size_t IncidenceStructure::incidence_count() const {
  std::size_t n = 0;
  for (const auto& l : points_on_line) n += l.size();
  return n;
}

IncidenceStructure incidence_structure(const SignPattern& a) {
  IncidenceStructure s;
  s.points = a.rows();
  s.lines = a.cols();
  s.points_on_line.resize(a.cols());
  s.lines_through_point.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) == Sign::Zero) {
        s.points_on_line[j].push_back(i);
        s.lines_through_point[i].push_back(j);
      }
  return s;
}

}  // namespace signrank
