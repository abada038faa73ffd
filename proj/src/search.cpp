#include <omp.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "signrank/realize.hpp"

namespace signrank {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Maps the free entries of (U, V) to a parameter vector. In normal form the
// ones in U(:, 0) and V(r-1, :) are fixed.
struct Layout {
  std::size_t m, n, r;
  bool normal;

  std::size_t u_cols() const { return normal ? r - 1 : r; }
  std::size_t v_rows() const { return normal ? r - 1 : r; }
  std::size_t size() const { return m * u_cols() + v_rows() * n; }
  std::size_t u_first() const { return normal ? 1 : 0; }

  VectorXd pack(const MatrixXd& u, const MatrixXd& v) const {
    VectorXd x(size());
    std::size_t p = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = u_first(); k < r; ++k) x[p++] = u(i, k);
    for (std::size_t k = 0; k < v_rows(); ++k)
      for (std::size_t j = 0; j < n; ++j) x[p++] = v(k, j);
    return x;
  }

  void unpack(const VectorXd& x, MatrixXd& u, MatrixXd& v) const {
    u.resize(m, r);
    v.resize(r, n);
    std::size_t p = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (normal) u(i, 0) = 1;
      for (std::size_t k = u_first(); k < r; ++k) u(i, k) = x[p++];
    }
    for (std::size_t k = 0; k < v_rows(); ++k)
      for (std::size_t j = 0; j < n; ++j) v(k, j) = x[p++];
    if (normal)
      for (std::size_t j = 0; j < n; ++j) v(r - 1, j) = 1;
  }

  std::size_t u_index(std::size_t i, std::size_t k) const { return i * u_cols() + (k - u_first()); }
  std::size_t v_index(std::size_t k, std::size_t j) const { return m * u_cols() + k * n + j; }
};

// Residual whose square is the penalty contribution of one entry, and its
// derivative with respect to b.
std::pair<double, double> entry_residual(Sign s, double b, double margin) {
  switch (s) {
    case Sign::Positive:
      return b < margin ? std::pair{margin - b, -1.0} : std::pair{0.0, 0.0};
    case Sign::Negative:
      return b > -margin ? std::pair{b + margin, 1.0} : std::pair{0.0, 0.0};
    case Sign::Zero:
      break;
  }
  return {b, 1.0};
}

struct Fit {
  MatrixXd u, v;
  double cost = 0;
};

// Levenberg-Marquardt on the entry residuals with the exact bilinear Jacobian.
Fit levenberg_marquardt(const SignPattern& target, MatrixXd u, MatrixXd v, bool normal, double margin,
                        int iters, double stop_cost) {
  const Layout lay{target.rows(), target.cols(), static_cast<std::size_t>(u.cols()), normal};
  const std::size_t m = lay.m, n = lay.n, r = lay.r, dim = lay.size();
  VectorXd x = lay.pack(u, v);
  VectorXd res(m * n);
  MatrixXd jac(m * n, dim);

  auto evaluate = [&](const VectorXd& at, bool with_jacobian) {
    MatrixXd uu, vv;
    lay.unpack(at, uu, vv);
    const MatrixXd b = uu * vv;
    if (with_jacobian) jac.setZero();
    double cost = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto [rv, d] = entry_residual(target(i, j), b(i, j), margin);
        const std::size_t e = i * n + j;
        res[e] = rv;
        cost += rv * rv;
        if (!with_jacobian || d == 0) continue;
        for (std::size_t k = lay.u_first(); k < r; ++k) jac(e, lay.u_index(i, k)) = d * vv(k, j);
        for (std::size_t k = 0; k < lay.v_rows(); ++k) jac(e, lay.v_index(k, j)) = d * uu(i, k);
      }
    return cost;
  };

  double cost = evaluate(x, true);
  double lambda = 1e-3;
  for (int it = 0; it < iters && cost > stop_cost; ++it) {
    const MatrixXd h = jac.transpose() * jac;
    const VectorXd g = jac.transpose() * res;
    bool improved = false;
    while (lambda < 1e12) {
      MatrixXd damped = h;
      damped.diagonal().array() += lambda * (1.0 + h.diagonal().array());
      const VectorXd step = damped.ldlt().solve(-g);
      const VectorXd trial = x + step;
      const double trial_cost = evaluate(trial, false);
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        x = trial;
        lambda = std::max(lambda / 3, 1e-12);
        improved = true;
        break;
      }
      lambda *= 4;
    }
    cost = evaluate(x, true);
    if (!improved) break;
  }
  Fit f;
  lay.unpack(x, f.u, f.v);
  f.cost = cost;
  return f;
}

MatrixXd random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = normal(rng);
  return out;
}

bool satisfies(const SignPattern& target, const MatrixXd& b, double margin, double zero_tol) {
  for (std::size_t i = 0; i < target.rows(); ++i)
    for (std::size_t j = 0; j < target.cols(); ++j) {
      const double x = b(i, j);
      switch (target(i, j)) {
        case Sign::Positive:
          if (!(x >= margin)) return false;
          break;
        case Sign::Negative:
          if (!(x <= -margin)) return false;
          break;
        case Sign::Zero:
          if (!(std::abs(x) <= zero_tol)) return false;
          break;
      }
    }
  return true;
}

double min_nonzero_magnitude(const SignPattern& target, const MatrixXd& b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < target.rows(); ++i)
    for (std::size_t j = 0; j < target.cols(); ++j)
      if (target(i, j) != Sign::Zero) best = std::min(best, std::abs(b(i, j)));
  return std::isfinite(best) ? best : 0.0;
}

// Re-solves the dependent entries of every column with at most r-1 zeros so
// those zeros hold to rounding error.
void enforce_zero_columns(const SignPattern& target, const MatrixXd& u, MatrixXd& v) {
  const std::size_t r = static_cast<std::size_t>(u.cols());
  for (std::size_t j = 0; j < target.cols(); ++j) {
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < target.rows(); ++i)
      if (target(i, j) == Sign::Zero) zeros.push_back(i);
    if (zeros.empty() || zeros.size() > r - 1) continue;
    std::vector<double> col(r);
    for (std::size_t k = 0; k < r; ++k) col[k] = v(k, j);
    try {
      const auto dep = solve_zero_column(u, zeros, col);
      for (std::size_t k = 0; k < dep.size(); ++k) v(k, j) = dep[k];
    } catch (const SingularSystem&) {
    }
  }
}

std::vector<Sign> all_positive(std::size_t n) { return std::vector<Sign>(n, Sign::Positive); }

// Patterns whose condensation is empty or 1 x 1 need no search.
std::optional<Realization> trivial_realization(const SignPattern& ac, std::size_t r, bool direct) {
  Realization real;
  real.rank = r;
  real.U = MatrixXd::Ones(ac.rows(), r);
  real.V = MatrixXd::Zero(r, ac.cols());
  real.V.row(r - 1).setOnes();
  real.row_signs = all_positive(ac.rows());
  real.col_signs = all_positive(ac.cols());
  if (ac.rows() == 1 && ac.cols() == 1) {
    real.margin = 1;
    if (ac(0, 0) == Sign::Negative) {
      if (!direct) {
        real.col_signs[0] = Sign::Negative;
      } else if (r >= 2) {
        real.V(0, 0) = -2;
      } else {
        return std::nullopt;
      }
    }
  }
  return real;
}

std::optional<Realization> attempt(const SignPattern& ac, std::size_t r, const SearchParams& params,
                                   std::uint64_t restart) {
  std::mt19937_64 rng(params.seed ^ restart);
  const std::size_t m = ac.rows(), n = ac.cols();
  MatrixXd u, v;
  std::vector<Sign> row_signs = all_positive(m), col_signs = all_positive(n);
  if (!params.direct) {
    // Unconstrained factors with unit margin, then the normal form.
    Fit f = levenberg_marquardt(ac, random_matrix(m, r, rng), random_matrix(r, n, rng), false, 1.0,
                                params.iters, 1e-24);
    if (!satisfies(ac, f.u * f.v, 0.5, 1e-6)) return std::nullopt;
    try {
      auto nf = normalize_factors(f.u, f.v, rng());
      u = std::move(nf.U);
      v = std::move(nf.V);
      row_signs = std::move(nf.row_signs);
      col_signs = std::move(nf.col_signs);
    } catch (const NumericalDegeneracy&) {
      return std::nullopt;
    }
  } else {
    u = random_matrix(m, r, rng);
    u.col(0).setOnes();
    v = random_matrix(r, n, rng);
    v.row(r - 1).setOnes();
  }
  const SignPattern target = ac.signed_by(row_signs, col_signs);
  Fit f = levenberg_marquardt(target, std::move(u), std::move(v), true, params.margin, params.iters,
                              params.zero_tol * params.zero_tol * 1e-6);
  enforce_zero_columns(target, f.u, f.v);
  const MatrixXd b = f.u * f.v;
  if (!satisfies(target, b, params.margin / 2, params.zero_tol)) return std::nullopt;
  Realization real;
  real.rank = r;
  real.U = std::move(f.u);
  real.V = std::move(f.v);
  real.row_signs = std::move(row_signs);
  real.col_signs = std::move(col_signs);
  real.margin = min_nonzero_magnitude(target, b);
  return real;
}

void check_rank(std::size_t r) {
  if (r < 1) throw DomainError("search_realization: rank must be at least 1");
}

}  // namespace

double sign_penalty(const SignPattern& target, const MatrixXd& u, const MatrixXd& v, double margin) {
  const MatrixXd b = u * v;
  double total = 0;
  for (std::size_t i = 0; i < target.rows(); ++i)
    for (std::size_t j = 0; j < target.cols(); ++j) {
      const double rv = entry_residual(target(i, j), b(i, j), margin).first;
      total += rv * rv;
    }
  return total;
}

PenaltyGradient sign_penalty_gradient(const SignPattern& target, const MatrixXd& u, const MatrixXd& v,
                                      double margin) {
  const MatrixXd b = u * v;
  // d penalty / d b = 2 res * d res / d b
  MatrixXd g(b.rows(), b.cols());
  for (std::size_t i = 0; i < target.rows(); ++i)
    for (std::size_t j = 0; j < target.cols(); ++j) {
      const auto [rv, d] = entry_residual(target(i, j), b(i, j), margin);
      g(i, j) = 2 * rv * d;
    }
  return {g * v.transpose(), u.transpose() * g};
}

NormalizedFactorization normalize_factors(const MatrixXd& u, const MatrixXd& v, std::uint64_t seed) {
  const Eigen::Index m = u.rows(), n = v.cols(), r = u.cols();
  if (r < 1 || v.rows() != r) throw DomainError("normalize_factors: factor shapes do not match");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  for (int tries = 0; tries < 64; ++tries) {
    MatrixXd rot = MatrixXd::Identity(r, r);
    if (tries > 0) {
      // Givens rotations in the planes (0, k), then (k, r-1).
      auto givens = [&](Eigen::Index p, Eigen::Index q) {
        const double th = angle(rng);
        MatrixXd g = MatrixXd::Identity(r, r);
        g(p, p) = g(q, q) = std::cos(th);
        g(p, q) = -std::sin(th);
        g(q, p) = std::sin(th);
        rot = rot * g;
      };
      for (Eigen::Index k = 1; k < r; ++k) givens(0, k);
      for (Eigen::Index k = 1; k + 1 < r; ++k) givens(k, r - 1);
    }
    const MatrixXd ur = u * rot;
    const MatrixXd vr = rot.transpose() * v;
    bool ok = true;
    for (Eigen::Index i = 0; i < m && ok; ++i) ok = std::abs(ur(i, 0)) >= 1e-3 * ur.row(i).norm() && ur(i, 0) != 0;
    for (Eigen::Index j = 0; j < n && ok; ++j)
      ok = std::abs(vr(r - 1, j)) >= 1e-3 * vr.col(j).norm() && vr(r - 1, j) != 0;
    if (!ok) continue;
    NormalizedFactorization out;
    out.U = ur;
    out.V = vr;
    out.row_scale.resize(m);
    out.col_scale.resize(n);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double lead = ur(i, 0);
      out.row_signs.push_back(sign_of(lead));
      out.row_scale[i] = 1 / std::abs(lead);
      out.U.row(i) /= lead;
      out.U(i, 0) = 1;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double last = vr(r - 1, j);
      out.col_signs.push_back(sign_of(last));
      out.col_scale[j] = 1 / std::abs(last);
      out.V.col(j) /= last;
      out.V(r - 1, j) = 1;
    }
    return out;
  }
  throw NumericalDegeneracy("normalize_factors: no rotation makes all leading entries nonzero");
}

NormalizedFactorization normalize_factorization(const MatrixXd& b, std::size_t r, std::uint64_t seed) {
  if (r < 1) throw DomainError("normalize_factorization: rank must be at least 1");
  const Eigen::JacobiSVD<MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  const double tol = 1e-9 * (s.size() ? s[0] : 0.0);
  std::size_t numeric_rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) numeric_rank += s[k] > tol;
  if (numeric_rank != r)
    throw RankMismatch("normalize_factorization: numerical rank is " + std::to_string(numeric_rank) +
                       ", expected " + std::to_string(r));
  const Eigen::Index rr = static_cast<Eigen::Index>(r);
  const VectorXd root = s.head(rr).cwiseSqrt();
  const MatrixXd u = svd.matrixU().leftCols(rr) * root.asDiagonal();
  const MatrixXd v = root.asDiagonal() * svd.matrixV().leftCols(rr).transpose();
  return normalize_factors(u, v, seed);
}

bool check_realization(const SignPattern& a, const Realization& real, double margin, double zero_tol) {
  const SignPattern ac = condense(a).condensed;
  if (static_cast<std::size_t>(real.U.rows()) != ac.rows() ||
      static_cast<std::size_t>(real.V.cols()) != ac.cols() || real.row_signs.size() != ac.rows() ||
      real.col_signs.size() != ac.cols())
    return false;
  if (real.U.cols() != static_cast<Eigen::Index>(real.rank) || real.V.rows() != real.U.cols()) return false;
  for (Eigen::Index i = 0; i < real.U.rows(); ++i)
    if (real.U(i, 0) != 1) return false;
  for (Eigen::Index j = 0; j < real.V.cols(); ++j)
    if (real.V(real.V.rows() - 1, j) != 1) return false;
  return satisfies(ac.signed_by(real.row_signs, real.col_signs), real.product(), margin, zero_tol);
}

std::optional<Realization> search_realization_serial(const SignPattern& a, std::size_t r,
                                                     const SearchParams& params) {
  check_rank(r);
  const SignPattern ac = condense(a).condensed;
  if (ac.rows() <= 1 && ac.cols() <= 1) return trivial_realization(ac, r, params.direct);
  if (r == 1) return std::nullopt;
  for (int k = 0; k < params.restarts; ++k)
    if (auto real = attempt(ac, r, params, static_cast<std::uint64_t>(k))) return real;
  return std::nullopt;
}

std::optional<Realization> search_realization(const SignPattern& a, std::size_t r, const SearchParams& params) {
  check_rank(r);
  const SignPattern ac = condense(a).condensed;
  if (ac.rows() <= 1 && ac.cols() <= 1) return trivial_realization(ac, r, params.direct);
  if (r == 1 || params.restarts <= 0) return std::nullopt;
  const int total = params.restarts;
  std::vector<std::optional<Realization>> found(total);
  std::atomic<int> first_success{total};
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < total; ++k) {
    if (k > first_success.load(std::memory_order_relaxed)) continue;
    found[k] = attempt(ac, r, params, static_cast<std::uint64_t>(k));
    if (found[k]) {
      int cur = first_success.load();
      while (k < cur && !first_success.compare_exchange_weak(cur, k)) {
      }
    }
  }
  const int best = first_success.load();
  if (best < total) return std::move(found[best]);
  return std::nullopt;
}

}  // namespace signrank
