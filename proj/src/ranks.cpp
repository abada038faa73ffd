#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>

#include "signrank/pattern.hpp"

namespace signrank {

namespace {

bool augment(const SignPattern& a, std::size_t i, std::vector<std::size_t>& row_of_col,
             std::vector<bool>& seen) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (a(i, j) == Sign::Zero || seen[j]) continue;
    seen[j] = true;
    if (row_of_col[j] == SIZE_MAX || augment(a, row_of_col[j], row_of_col, seen)) {
      row_of_col[j] = i;
      return true;
    }
  }
  return false;
}

// Sign of each nonzero term of the determinant expansion, row by row. Stops
// as soon as two opposite signs are seen.
struct TermScan {
  const SignPattern& a;
  std::span<const std::size_t> rows;
  std::span<const std::size_t> cols;
  int first = 0;  // sign of the first nonzero term, 0 when none yet
  bool mixed = false;

  void scan(std::size_t level, std::uint32_t used, int sign) {
    const std::size_t n = rows.size();
    if (level == n) {
      if (first == 0)
        first = sign;
      else if (first != sign)
        mixed = true;
      return;
    }
    for (std::size_t k = 0; k < n && !mixed; ++k) {
      if (used & (1u << k)) continue;
      const Sign s = a(rows[level], cols[k]);
      if (s == Sign::Zero) continue;
      // inversions added: already used positions to the right of k
      const int inv = std::popcount(used >> (k + 1));
      const int term = sign * to_int(s) * ((inv & 1) ? -1 : 1);
      scan(level + 1, used | (1u << k), term);
    }
  }
};

bool sns_on(const SignPattern& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  TermScan t{a, rows, cols};
  t.scan(0, 0, 1);
  return t.first != 0 && !t.mixed;
}

// Lexicographic k-subsets of {0..n-1}.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<std::size_t>> all_combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  do out.push_back(c);
  while (next_combination(c, n));
  return out;
}

// First column subset (lexicographically) giving an SNS block with `rows`.
std::optional<std::vector<std::size_t>> sns_columns_for(const SignPattern& a,
                                                        const std::vector<std::size_t>& rows) {
  const std::size_t k = rows.size();
  // every chosen row needs a nonzero among the chosen columns; cheap filter
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  do {
    bool ok = true;
    for (std::size_t r : rows) {
      ok = std::any_of(c.begin(), c.end(), [&](std::size_t j) { return a(r, j) != Sign::Zero; });
      if (!ok) break;
    }
    if (ok && sns_on(a, rows, c)) return c;
  } while (next_combination(c, a.cols()));
  return std::nullopt;
}

void check_cap(std::size_t cap) {
  if (cap > kMaxSnsSearchCap)
    throw DomainError("max_sns_submatrix: cap " + std::to_string(cap) + " exceeds " +
                      std::to_string(kMaxSnsSearchCap));
}

std::size_t top_size(const SignPattern& a, std::size_t cap) {
  return std::min({cap, a.rows(), a.cols(), term_rank(a)});
}

}  // namespace

std::size_t term_rank(const SignPattern& a) {
  std::vector<std::size_t> row_of_col(a.cols(), SIZE_MAX);
  std::size_t matched = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<bool> seen(a.cols(), false);
    if (augment(a, i, row_of_col, seen)) ++matched;
  }
  return matched;
}

bool is_sns(const SignPattern& a) {
  if (a.rows() != a.cols()) throw DomainError("is_sns: pattern is not square");
  if (a.rows() == 0) throw DomainError("is_sns: empty pattern");
  if (a.rows() > kSnsSizeCap)
    throw ResourceExhausted("is_sns: order " + std::to_string(a.rows()) + " exceeds cap " +
                            std::to_string(kSnsSizeCap));
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return sns_on(a, idx, idx);
}

SnsSubmatrix max_sns_submatrix_serial(const SignPattern& a, std::size_t cap) {
  check_cap(cap);
  for (std::size_t k = top_size(a, cap); k >= 1; --k) {
    std::vector<std::size_t> rows(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = i;
    do {
      if (auto cols = sns_columns_for(a, rows)) return {k, rows, *cols};
    } while (next_combination(rows, a.rows()));
  }
  return {};
}

SnsSubmatrix max_sns_submatrix(const SignPattern& a, std::size_t cap) {
  check_cap(cap);
  for (std::size_t k = top_size(a, cap); k >= 1; --k) {
    const auto row_sets = all_combinations(a.rows(), k);
    const std::size_t total = row_sets.size();
    std::vector<std::optional<std::vector<std::size_t>>> hits(total);
    std::atomic<std::size_t> first_hit{total};
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t r = 0; r < total; ++r) {
      if (r > first_hit.load(std::memory_order_relaxed)) continue;
      hits[r] = sns_columns_for(a, row_sets[r]);
      if (hits[r]) {
        std::size_t cur = first_hit.load();
        while (r < cur && !first_hit.compare_exchange_weak(cur, r)) {
        }
      }
    }
    const std::size_t best = first_hit.load();
    if (best < total) return {k, row_sets[best], *hits[best]};
  }
  return {};
}

}  // namespace signrank
