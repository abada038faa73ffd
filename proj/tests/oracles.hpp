#pragma once

// Slow, direct reference computations used to check the library. None of
// these call into the code under test except for plain data types.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "signrank/exactnum.hpp"
#include "signrank/pattern.hpp"

namespace oracle {

using signrank::Integer;
using signrank::Rational;
using signrank::Sign;
using signrank::SignPattern;

/// Closest p/q to x over every q <= max_den (ties: smaller q first).
inline Rational best_rational(double x, long max_den) {
  const Rational exact(x);
  Rational best;
  Rational best_err = -1;
  for (long q = 1; q <= max_den; ++q) {
    const Rational scaled = exact * q;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    for (Integer p : {Integer(fl), Integer(fl + 1)}) {
      Rational cand(p, q);
      cand.canonicalize();
      const Rational err = abs(cand - exact);
      if (best_err < 0 || err < best_err) {
        best = cand;
        best_err = err;
      }
    }
  }
  return best;
}

/// Sign of r + s*sqrt(d) evaluated with ~230-bit floating point.
inline int high_precision_sign(const Rational& r, const Rational& s, long d) {
  mpf_class root(d, 768), value(0, 768), rf(r, 768), sf(s, 768);
  mpf_sqrt(root.get_mpf_t(), root.get_mpf_t());
  value = rf + sf * root;
  return sgn(value);
}

inline int permutation_parity(const std::vector<std::size_t>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return (inv & 1) ? -1 : 1;
}

/// Sign-nonsingularity by enumerating all n! permutations.
inline bool sns(const SignPattern& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  int seen = 0;
  do {
    int term = permutation_parity(p);
    for (std::size_t i = 0; i < n && term; ++i) term *= signrank::to_int(a(i, p[i]));
    if (!term) continue;
    if (seen && seen != term) return false;
    seen = term;
  } while (std::next_permutation(p.begin(), p.end()));
  return seen != 0;
}

/// Largest k with some k x k nonzero-diagonal arrangement, by trying every
/// injection of rows into columns (rows may be skipped).
inline std::size_t term_rank(const SignPattern& a) {
  std::size_t best = 0;
  std::vector<bool> used(a.cols(), false);
  auto rec = [&](auto&& self, std::size_t i, std::size_t count) -> void {
    if (count + (a.rows() - i) <= best) return;
    if (i == a.rows()) {
      best = std::max(best, count);
      return;
    }
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!used[j] && a(i, j) != Sign::Zero) {
        used[j] = true;
        self(self, i + 1, count + 1);
        used[j] = false;
      }
    self(self, i + 1, count);
  };
  rec(rec, 0, 0);
  return best;
}

/// Term rank over n x n patterns: n! permutations checking for a nonzero diagonal.
inline bool has_nonzero_diagonal(const SignPattern& a) {
  std::vector<std::size_t> p(a.rows());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i) ok = a(i, p[i]) != Sign::Zero;
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

/// Largest SNS k x k submatrix, k <= cap, over all row and column subsets.
inline std::size_t max_sns(const SignPattern& a, std::size_t cap) {
  for (std::size_t k = std::min({cap, a.rows(), a.cols()}); k >= 1; --k)
    for (const auto& r : subsets(a.rows(), k))
      for (const auto& c : subsets(a.cols(), k))
        if (sns(a.submatrix(r, c))) return k;
  return 0;
}

/// A = sgn(x y^T) for some sign vectors x, y (rank at most 1).
inline bool rank_one_signs(const SignPattern& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<int> x(m), y(n);
  // y from the first nonzero row, x from the first nonzero column; every
  // nonzero rank-1 sign pattern has this form up to a global sign.
  std::size_t r0 = m, c0 = n;
  for (std::size_t i = 0; i < m && r0 == m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) != Sign::Zero) {
        r0 = i;
        c0 = j;
        break;
      }
  if (r0 == m) return true;
  for (std::size_t j = 0; j < n; ++j) y[j] = signrank::to_int(a(r0, j));
  for (std::size_t i = 0; i < m; ++i) x[i] = signrank::to_int(a(i, c0)) * y[c0];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (signrank::to_int(a(i, j)) != x[i] * y[j]) return false;
  return true;
}

/// Exact mr of a 3 x 3 pattern: 0 if zero, 1 if a sign rank-one product,
/// 3 if sign nonsingular, else 2.
inline int mr_3x3(const SignPattern& a) {
  if (a.is_zero()) return 0;
  if (rank_one_signs(a)) return 1;
  if (sns(a)) return 3;
  return 2;
}

/// Condition (iii) by brute force: every pair of signatures and every pair of
/// permutations. Small patterns only.
inline bool staircase_exists(const SignPattern& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::size_t> rp(m), cp(n);
  for (std::uint32_t rs = 0; rs < (1u << m); ++rs)
    for (std::uint32_t cs = 0; cs < (1u << n); ++cs) {
      std::vector<Sign> r(m), c(n);
      for (std::size_t i = 0; i < m; ++i) r[i] = (rs >> i & 1) ? Sign::Negative : Sign::Positive;
      for (std::size_t j = 0; j < n; ++j) c[j] = (cs >> j & 1) ? Sign::Negative : Sign::Positive;
      const SignPattern s = a.signed_by(r, c);
      std::iota(rp.begin(), rp.end(), 0);
      do {
        std::iota(cp.begin(), cp.end(), 0);
        do {
          bool ok = true;
          for (std::size_t i = 0; i < m && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
              const int v = signrank::to_int(s(rp[i], cp[j]));
              if (i + 1 < m && v > signrank::to_int(s(rp[i + 1], cp[j]))) ok = false;
              if (j + 1 < n && v > signrank::to_int(s(rp[i], cp[j + 1]))) ok = false;
            }
          if (ok) return true;
        } while (std::next_permutation(cp.begin(), cp.end()));
      } while (std::next_permutation(rp.begin(), rp.end()));
    }
  return false;
}

/// Rank by plain Gaussian elimination over Q.
inline std::size_t rank(signrank::RationalMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return r;
}

inline SignPattern random_pattern(std::mt19937_64& rng, std::size_t m, std::size_t n, double zero_prob = 0.25) {
  std::uniform_real_distribution<double> u(0, 1);
  SignPattern a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = u(rng);
      a.set(i, j, x < zero_prob ? Sign::Zero : (x < (1 + zero_prob) / 2 ? Sign::Positive : Sign::Negative));
    }
  return a;
}

/// Random permutation / signature transform as a witness.
inline signrank::EquivalenceWitness random_transform(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  signrank::EquivalenceWitness w;
  w.row_perm.resize(m);
  w.col_perm.resize(n);
  std::iota(w.row_perm.begin(), w.row_perm.end(), 0);
  std::iota(w.col_perm.begin(), w.col_perm.end(), 0);
  std::shuffle(w.row_perm.begin(), w.row_perm.end(), rng);
  std::shuffle(w.col_perm.begin(), w.col_perm.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < m; ++i) w.row_signs.push_back(coin(rng) ? Sign::Positive : Sign::Negative);
  for (std::size_t j = 0; j < n; ++j) w.col_signs.push_back(coin(rng) ? Sign::Positive : Sign::Negative);
  return w;
}

/// B(i, j) = r_i c_j A(P(i), Q(j)), written out directly.
inline SignPattern transform(const SignPattern& a, const signrank::EquivalenceWitness& w) {
  SignPattern b(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      b.set(i, j, w.row_signs[i] * w.col_signs[j] * a(w.row_perm[i], w.col_perm[j]));
  return b;
}

}  // namespace oracle
