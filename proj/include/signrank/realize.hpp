#pragma once

// Sign realizations UV of a pattern in the normal form (first column of U and
// last row of V all ones), the numerical search for them, and their exact
// rationalization.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "signrank/exactnum.hpp"
#include "signrank/pattern.hpp"

namespace signrank {

/// A realization of the condensed pattern A_c of some A: with
/// T = diag(row_signs) A_c diag(col_signs), sgn(UV) = T on nonzero entries
/// (|UV| >= margin there) and |UV| <= zero tolerance where T is zero.
struct Realization {
  std::size_t rank = 0;
  Eigen::MatrixXd U;  // m x r, U(:, 0) = 1
  Eigen::MatrixXd V;  // r x n, V(r-1, :) = 1
  std::vector<Sign> row_signs;
  std::vector<Sign> col_signs;
  double margin = 0;

  Eigen::MatrixXd product() const { return U * V; }
};

/// Penalty of B = UV against a target pattern:
///   sum over + of max(0, margin - b)^2, over - of max(0, b + margin)^2,
///   over 0 of b^2.
double sign_penalty(const SignPattern& target, const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                    double margin);

struct PenaltyGradient {
  Eigen::MatrixXd du;
  Eigen::MatrixXd dv;
};
/// Gradient of sign_penalty with respect to every entry of U and V.
PenaltyGradient sign_penalty_gradient(const SignPattern& target, const Eigen::MatrixXd& u,
                                      const Eigen::MatrixXd& v, double margin);

struct NormalizedFactorization {
  std::vector<Sign> row_signs;
  Eigen::MatrixXd U;
  Eigen::MatrixXd V;
  std::vector<Sign> col_signs;
  /// Positive factors with UV = diag(row_scale) D1 B D2 diag(col_scale).
  Eigen::VectorXd row_scale;
  Eigen::VectorXd col_scale;
};

/// Brings an arbitrary factorization B = UV (U m x r, V r x n) to normal
/// form: a rotation makes every first U entry and last V entry nonzero, then
/// rows of U and columns of V are scaled to make them 1. Throws
/// NumericalDegeneracy when no admissible rotation is found.
NormalizedFactorization normalize_factors(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                                          std::uint64_t seed = 1);
/// Same, starting from B itself; throws RankMismatch unless the numerical
/// rank of B is exactly r (r >= 2).
NormalizedFactorization normalize_factorization(const Eigen::MatrixXd& b, std::size_t r,
                                                std::uint64_t seed = 1);

struct SearchParams {
  double margin = 1e-2;
  int restarts = 64;
  int iters = 5000;
  std::uint64_t seed = 0x5151;
  double zero_tol = 1e-9;
  /// Identity signatures only (direct representations).
  bool direct = false;
};

/// Searches for a rank-r realization of condense(a). Restart k uses seed ^ k;
/// the successful restart of smallest index is returned, so the result does
/// not depend on the thread count. Nothing is returned when no restart
/// succeeds; that is inconclusive, not evidence that mr > r.
std::optional<Realization> search_realization(const SignPattern& a, std::size_t r,
                                              const SearchParams& params = {});
/// Single-threaded reference with identical results.
std::optional<Realization> search_realization_serial(const SignPattern& a, std::size_t r,
                                                     const SearchParams& params = {});

/// True when every sign and zero condition of `real` holds for the condensed
/// pattern of `a` with the given tolerances.
bool check_realization(const SignPattern& a, const Realization& real, double margin, double zero_tol);

/// Dependent entries V(0..s-1, j) for a column whose zero rows are
/// `zero_rows` (s of them, 1 <= s <= r-1), given the other entries of
/// column j of V. Throws SingularSystem when the s x s coefficient matrix
/// U(zero_rows, 0..s-1) is singular (exactly, or numerically for doubles).
std::vector<Rational> solve_zero_column(const RationalMatrix& u, const std::vector<std::size_t>& zero_rows,
                                        const std::vector<Rational>& v_column);
std::vector<double> solve_zero_column(const Eigen::MatrixXd& u, const std::vector<std::size_t>& zero_rows,
                                      const std::vector<double>& v_column);

/// Exact rank by fraction-free elimination.
std::size_t rational_rank(const RationalMatrix& m);

struct RationalCertificate {
  RationalMatrix matrix;
  std::size_t rank = 0;
  SignPattern target;
};

struct RationalizeOptions {
  std::vector<int> precision_bits{16, 32, 64};
  /// Re-perturbations allowed per precision when a coefficient matrix is singular.
  int retries = 32;
  std::uint64_t seed = 7;
};

/// Rounds the free entries of `real` to rationals, solves the entries that
/// enforce zeros exactly, and expands the result to a rational matrix whose
/// sign pattern is exactly `a`. Throws Overdetermined when a column of
/// condense(a) has more than r-1 zeros, PrecisionExhausted when no precision
/// preserves the signs. The returned certificate is verified.
RationalCertificate rationalize(const SignPattern& a, const Realization& real,
                                const RationalizeOptions& options = {});
/// Row-wise variant: the zero count limit applies to rows of condense(a).
/// `real` is a realization of a as for rationalize.
RationalCertificate rationalize_by_rows(const SignPattern& a, const Realization& real,
                                        const RationalizeOptions& options = {});

/// Sign agreement with the target and the stored rank, both recomputed exactly.
bool verify_certificate(const RationalCertificate& cert);

enum class DirectStatus { Yes, No, Unknown };

struct DirectRepresentation {
  DirectStatus status = DirectStatus::Unknown;
  /// Normal-form factors with sgn(UV) = A exactly (r = 2 only).
  std::optional<std::pair<RationalMatrix, RationalMatrix>> exact;
  /// Numerical witness from the search (r >= 3).
  std::optional<Realization> witness;
};

/// Whether A = sgn(UV) for normal-form U, V of rank r with identity
/// signatures. Exact for r = 2; for r >= 3 a failed search gives Unknown.
DirectRepresentation has_direct_representation(const SignPattern& a, std::size_t r,
                                               const SearchParams& params = {});

}  // namespace signrank
