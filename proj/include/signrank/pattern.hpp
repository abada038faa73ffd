#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "signrank/exactnum.hpp"

namespace signrank {

/// An m x n grid over {+, -, 0}.
class SignPattern {
 public:
  SignPattern() = default;
  SignPattern(std::size_t rows, std::size_t cols, Sign fill = Sign::Zero);
  /// Rows given as strings over "+-0"; all rows must have equal length.
  static SignPattern from_rows(std::span<const std::string> rows);
  static SignPattern from_rows(std::initializer_list<std::string_view> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Sign operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Sign s) { data_[i * cols_ + j] = s; }
  std::span<const Sign> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::size_t zero_count() const;
  bool is_zero() const;

  SignPattern transposed() const;
  SignPattern negated() const;
  SignPattern submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  /// Multiplies row i by row_signs[i] and column j by col_signs[j].
  SignPattern signed_by(std::span<const Sign> row_signs, std::span<const Sign> col_signs) const;

  /// One line per row, characters from "+-0".
  std::string to_string() const;

  bool operator==(const SignPattern&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Sign> data_;
};

template <class T>
SignPattern sign_pattern_of(const Matrix<T>& m) {
  SignPattern p(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) p.set(i, j, sign_of(m(i, j)));
  return p;
}

// ---------------------------------------------------------------------------
// Condensation

enum class Axis : std::uint8_t { Row, Column };
enum class DeletionKind : std::uint8_t { Zero, Duplicate, Opposite };

/// Indices refer to the original pattern. `survivor` is meaningless for Zero.
struct DeletionEvent {
  Axis axis;
  DeletionKind kind;
  std::size_t removed;
  std::size_t survivor;
  bool operator==(const DeletionEvent&) const = default;
};

struct CondensationReport {
  SignPattern condensed;
  std::vector<std::size_t> kept_rows;
  std::vector<std::size_t> kept_cols;
  std::vector<DeletionEvent> log;
};

/// Deletes zero lines and the lower (rows) or right (columns) member of every
/// identical or opposite pair, rows before columns, until nothing changes.
/// The zero pattern condenses to the 0 x 0 pattern.
CondensationReport condense(const SignPattern& a);
/// Applies a deletion log to `original`.
SignPattern replay_condensation(const SignPattern& original, std::span<const DeletionEvent> log);
bool is_condensed(const SignPattern& a);

// ---------------------------------------------------------------------------
// Equivalence

/// B(i, j) = row_signs[i] * col_signs[j] * A(row_perm[i], col_perm[j]).
struct EquivalenceWitness {
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
  std::vector<Sign> row_signs;
  std::vector<Sign> col_signs;
};

SignPattern apply_equivalence(const SignPattern& a, const EquivalenceWitness& w);

struct EquivalenceOptions {
  /// Search nodes allowed per top-level branch.
  std::uint64_t node_budget = 20'000'000;
};

/// Finds permutation and signature patterns with B = P1 D1 A D2 P2. Returns
/// nothing when none exist (including size mismatch). Throws
/// ResourceExhausted when a branch exceeds its node budget. Top-level branches
/// run in parallel; the result does not depend on the thread count.
std::optional<EquivalenceWitness> is_equivalent(const SignPattern& a, const SignPattern& b,
                                                const EquivalenceOptions& options = {});
/// Single-threaded reference with identical results.
std::optional<EquivalenceWitness> is_equivalent_serial(const SignPattern& a, const SignPattern& b,
                                                       const EquivalenceOptions& options = {});

// ---------------------------------------------------------------------------
// Ranks

/// Maximum number of nonzero entries with no two in a row or column
/// (equals the maximum rank MR over the qualitative class).
std::size_t term_rank(const SignPattern& a);

inline constexpr std::size_t kSnsSizeCap = 10;
/// True iff the determinant expansion has a nonzero term and all nonzero
/// terms share one sign. DomainError if not square or empty,
/// ResourceExhausted beyond kSnsSizeCap.
bool is_sns(const SignPattern& a);

struct SnsSubmatrix {
  std::size_t size = 0;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

inline constexpr std::size_t kMaxSnsSearchCap = 8;
/// Largest k <= cap with a sign-nonsingular k x k submatrix; the witness is
/// the lexicographically first (rows, then columns). Parallel over row subsets.
SnsSubmatrix max_sns_submatrix(const SignPattern& a, std::size_t cap);
SnsSubmatrix max_sns_submatrix_serial(const SignPattern& a, std::size_t cap);

/// mr(A) = 1.
bool is_mr1(const SignPattern& a);

/// Signatures and orderings that make every row and column of the condensed
/// pattern nondecreasing (- before 0 before +).
struct Mr2Witness {
  CondensationReport condensation;
  std::vector<Sign> row_signs;          // indexed by condensed row
  std::vector<Sign> col_signs;          // indexed by condensed column
  std::vector<std::size_t> row_order;   // condensed row indices, top to bottom
  std::vector<std::size_t> col_order;   // condensed column indices, left to right
  SignPattern arranged;
};

struct Mr2Options {
  /// Largest condensed dimension searched over signatures.
  std::size_t search_limit = 24;
  /// When set, signatures are fixed to the identity (permutations only).
  bool identity_signatures = false;
};

struct Mr2Result {
  bool value = false;
  /// Which condition failed when value is false: 1, 2 or 3.
  int failed_condition = 0;
  std::optional<Mr2Witness> witness;
};

/// Exact decision of mr(A) = 2 via the condensed-pattern characterization:
/// at least two rows and columns, at most one zero per line, and signatures
/// plus permutations making all lines nondecreasing.
Mr2Result is_mr2(const SignPattern& a, const Mr2Options& options = {});

/// True iff every row and every column of `a` is nondecreasing.
bool is_nondecreasing(const SignPattern& a);

}  // namespace signrank
