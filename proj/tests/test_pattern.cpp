#include <doctest.h>

#include <omp.h>

#include <random>

#include "oracles.hpp"
#include "signrank/bounds.hpp"
#include "signrank/fixtures.hpp"
#include "signrank/pattern.hpp"

using namespace signrank;

namespace {

SignPattern P(std::initializer_list<std::string_view> rows) { return SignPattern::from_rows(rows); }

std::vector<std::size_t> idx(std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> v;
  for (auto i : one_based) v.push_back(i - 1);
  return v;
}

// All 3^(m n) patterns of the given shape, or all 2^(m n) zero-free ones.
SignPattern pattern_from_code(std::size_t m, std::size_t n, std::uint64_t code, bool zero_free) {
  SignPattern a(m, n);
  for (std::size_t k = 0; k < m * n; ++k) {
    Sign s;
    if (zero_free) {
      s = (code & 1) ? Sign::Negative : Sign::Positive;
      code >>= 1;
    } else {
      s = static_cast<Sign>(static_cast<int>(code % 3) - 1);
      code /= 3;
    }
    a.set(k / n, k % n, s);
  }
  return a;
}

}  // namespace

TEST_CASE("pattern construction") {
  const SignPattern a = P({"+-0", "00+"});
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a(0, 1) == Sign::Negative);
  CHECK(a.zero_count() == 3);
  CHECK(a.transposed().transposed() == a);
  CHECK_THROWS_AS(P({"+-", "+"}), DomainError);
  CHECK_THROWS_AS(P({"+x"}), DomainError);
}

TEST_CASE("condense examples") {
  CHECK(condense(P({"++", "++"})).condensed == P({"+"}));
  const CondensationReport r = condense(P({"+-", "-+", "00"}));
  CHECK(r.condensed == P({"+"}));
  CHECK(r.kept_rows == std::vector<std::size_t>{0});
  CHECK(r.kept_cols == std::vector<std::size_t>{0});
  const SignPattern a0 = fixture_pattern("A0");
  CHECK(condense(a0).condensed == a0);
  CHECK(condense(a0).log.empty());
  CHECK(is_condensed(a0));
  const CondensationReport z = condense(SignPattern(3, 2));
  CHECK(z.condensed.rows() == 0);
  CHECK(z.condensed.cols() == 0);
}

TEST_CASE("condense follows the deletion convention") {
  // row 3 duplicates row 1, row 2 is opposite to row 1; the lower ones go
  const CondensationReport r = condense(P({"+0-", "-0+", "+0-"}));
  REQUIRE(r.log.size() >= 3);
  CHECK(r.log[0] == DeletionEvent{Axis::Row, DeletionKind::Opposite, 1, 0});
  CHECK(r.log[1] == DeletionEvent{Axis::Row, DeletionKind::Duplicate, 2, 0});
  CHECK(r.kept_rows == std::vector<std::size_t>{0});
  CHECK(r.condensed == P({"+"}));
}

TEST_CASE("condense is idempotent and its log replays") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 500; ++k) {
    const SignPattern a = oracle::random_pattern(rng, 1 + rng() % 7, 1 + rng() % 7, 0.4);
    const CondensationReport r = condense(a);
    CHECK(condense(r.condensed).condensed == r.condensed);
    CHECK(replay_condensation(a, r.log) == r.condensed);
    CHECK(is_condensed(r.condensed));
    CHECK(a.submatrix(r.kept_rows, r.kept_cols) == r.condensed);
  }
}

TEST_CASE("equivalence examples") {
  const SignPattern a1 = fixture_pattern("A1");
  const auto id = is_equivalent(a1, a1);
  REQUIRE(id);
  CHECK(apply_equivalence(a1, *id) == a1);

  const auto neg = is_equivalent(a1, a1.negated());
  REQUIRE(neg);
  CHECK(apply_equivalence(a1, *neg) == a1.negated());

  EquivalenceWitness w{{1, 0, 2}, {0, 1, 2}, {Sign::Positive, Sign::Positive, Sign::Positive},
                       {Sign::Positive, Sign::Negative, Sign::Positive}};
  const SignPattern b = oracle::transform(a1, w);
  const auto found = is_equivalent(a1, b);
  REQUIRE(found);
  CHECK(apply_equivalence(a1, *found) == b);

  CHECK_FALSE(is_equivalent(a1, P({"++", "+-"})));
  CHECK_FALSE(is_equivalent(P({"+0"}), P({"++"})));
  // A2 is A1 with its last row negated
  CHECK(is_equivalent(a1, fixture_pattern("A2")));
  CHECK_FALSE(is_equivalent(a1, fixture_pattern("fig21_pattern")));
}

TEST_CASE("equivalence recovers random transforms, serial and parallel agree") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 150; ++k) {
    const std::size_t m = 2 + rng() % 6, n = 2 + rng() % 6;
    const SignPattern a = oracle::random_pattern(rng, m, n, 0.3);
    const auto w = oracle::random_transform(rng, m, n);
    const SignPattern b = oracle::transform(a, w);
    CHECK(apply_equivalence(a, w) == b);
    const auto par = is_equivalent(a, b);
    const auto ser = is_equivalent_serial(a, b);
    REQUIRE(par);
    REQUIRE(ser);
    CHECK(apply_equivalence(a, *par) == b);
    CHECK(par->row_perm == ser->row_perm);
    CHECK(par->col_perm == ser->col_perm);
    CHECK(par->row_signs == ser->row_signs);
    CHECK(par->col_signs == ser->col_signs);
  }
}

TEST_CASE("equivalence node budget") {
  const SignPattern a = P({"++++++", "++++++", "++++++", "++++++", "++++++", "+++++-"});
  const SignPattern b = P({"++++++", "++++++", "++++++", "++++++", "++++++", "++++++"});
  EquivalenceOptions tight;
  tight.node_budget = 1;
  CHECK_THROWS_AS(is_equivalent(a, b, tight), ResourceExhausted);
}

TEST_CASE("term_rank examples") {
  CHECK(term_rank(SignPattern(2, 3)) == 0);
  CHECK(term_rank(P({"+0", "00"})) == 1);
  const SignPattern a0 = fixture_pattern("A0");
  CHECK(oracle::has_nonzero_diagonal(a0));
  CHECK(term_rank(a0) == 9);
  CHECK(term_rank(P({"+00", "+00", "++0"})) == 2);
}

TEST_CASE("term_rank against brute force") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
    const SignPattern a = oracle::random_pattern(rng, m, n, 0.6);
    REQUIRE(term_rank(a) == oracle::term_rank(a));
  }
}

TEST_CASE("is_sns examples") {
  const SignPattern a0 = fixture_pattern("A0");
  const SignPattern block = a0.submatrix(idx({4, 5, 6}), idx({7, 8, 9}));
  CHECK(is_sns(block));
  CHECK(oracle::sns(block));
  CHECK(is_sns(P({"+0", "0+"})));
  CHECK_FALSE(is_sns(P({"++", "++"})));
  CHECK_FALSE(is_sns(P({"00", "0+"})));
  CHECK_THROWS_AS(is_sns(P({"++"})), DomainError);
  CHECK_THROWS_AS(is_sns(SignPattern(kSnsSizeCap + 1, kSnsSizeCap + 1, Sign::Positive)), ResourceExhausted);
}

TEST_CASE("is_sns against the determinant expansion") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 1 + rng() % 6;
    const SignPattern a = oracle::random_pattern(rng, n, n, 0.5);
    REQUIRE(is_sns(a) == oracle::sns(a));
  }
}

TEST_CASE("max_sns_submatrix examples") {
  CHECK(max_sns_submatrix(SignPattern(4, 5, Sign::Positive), 4).size == 1);
  CHECK(max_sns_submatrix(P({"+00", "0+0", "00+"}), 4).size == 3);
  const SignPattern a0 = fixture_pattern("A0");
  const SnsSubmatrix s = max_sns_submatrix(a0, 4);
  CHECK(s.size == 3);
  CHECK(oracle::max_sns(a0, 4) == 3);
  CHECK(is_sns(a0.submatrix(s.rows, s.cols)));
  CHECK(s.rows == idx({1, 2, 3}));
  CHECK(s.cols == idx({1, 2, 4}));
  CHECK(max_sns_submatrix(SignPattern(3, 3), 3).size == 0);
}

TEST_CASE("max_sns_submatrix against brute force, serial and parallel agree") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const SignPattern a = oracle::random_pattern(rng, 2 + rng() % 5, 2 + rng() % 5, 0.4);
    const SnsSubmatrix par = max_sns_submatrix(a, 4);
    const SnsSubmatrix ser = max_sns_submatrix_serial(a, 4);
    REQUIRE(par.size == oracle::max_sns(a, 4));
    CHECK(par.rows == ser.rows);
    CHECK(par.cols == ser.cols);
  }
}

TEST_CASE("is_mr1 examples") {
  CHECK(is_mr1(P({"+"})));
  CHECK(is_mr1(P({"++", "++"})));
  CHECK_FALSE(is_mr1(fixture_pattern("A1")));
  CHECK_FALSE(is_mr1(SignPattern(2, 2)));
  CHECK(is_mr1(P({"+0-", "000", "-0+"})));
}

TEST_CASE("is_mr2 examples") {
  CHECK(is_mr2(fixture_pattern("A1")).value);
  CHECK(is_mr2(fixture_pattern("A2")).value);
  const Mr2Result a0 = is_mr2(fixture_pattern("A0"));
  CHECK_FALSE(a0.value);
  CHECK(a0.failed_condition == 2);
  const Mr2Result one = is_mr2(P({"+"}));
  CHECK_FALSE(one.value);
  CHECK(one.failed_condition == 1);
  CHECK(is_mr2(P({"+0", "0+"})).value);
  CHECK_FALSE(is_mr2(P({"+00", "0+0", "00+"})).value);
}

TEST_CASE("is_mr2 witness arranges the condensed pattern") {
  const Mr2Result r = is_mr2(fixture_pattern("A2"));
  REQUIRE(r.witness);
  const Mr2Witness& w = *r.witness;
  const SignPattern ac = w.condensation.condensed;
  const SignPattern signed_ac = ac.signed_by(w.row_signs, w.col_signs);
  CHECK(signed_ac.submatrix(w.row_order, w.col_order) == w.arranged);
  CHECK(is_nondecreasing(w.arranged));
}

TEST_CASE("is_mr2 search limit") {
  Mr2Options opt;
  opt.search_limit = 2;
  CHECK_THROWS_AS(is_mr2(fixture_pattern("A1"), opt), ResourceExhausted);
}

TEST_CASE("is_mr2 agrees with the exact 3x3 oracle on every 3x3 pattern") {
  int agree = 0, total = 0;
  for (std::uint64_t code = 0; code < 19683; ++code) {
    const SignPattern a = pattern_from_code(3, 3, code, false);
    const int mr = oracle::mr_3x3(a);
    const bool mr1 = is_mr1(a), mr2 = is_mr2(a).value;
    CHECK_FALSE((mr1 && mr2));
    agree += (mr1 == (mr == 1)) && (mr2 == (mr == 2));
    ++total;
  }
  CHECK(agree == total);
}

TEST_CASE("is_mr2 condition (iii) against brute force over signatures and orders") {
  std::mt19937_64 rng(12);
  int tested = 0;
  for (int k = 0; k < 3000 && tested < 150; ++k) {
    const SignPattern a = oracle::random_pattern(rng, 2 + rng() % 3, 2 + rng() % 3, 0.15);
    const SignPattern ac = condense(a).condensed;
    if (ac.rows() < 2 || ac.cols() < 2) continue;
    bool one_zero = true;
    for (std::size_t i = 0; i < ac.rows(); ++i) {
      std::size_t z = 0;
      for (std::size_t j = 0; j < ac.cols(); ++j) z += ac(i, j) == Sign::Zero;
      one_zero = one_zero && z <= 1;
    }
    for (std::size_t j = 0; j < ac.cols(); ++j) {
      std::size_t z = 0;
      for (std::size_t i = 0; i < ac.rows(); ++i) z += ac(i, j) == Sign::Zero;
      one_zero = one_zero && z <= 1;
    }
    if (!one_zero) continue;
    ++tested;
    CHECK(is_mr2(a).value == oracle::staircase_exists(ac));
  }
  CHECK(tested >= 100);
}

TEST_CASE("identity-signature mode") {
  Mr2Options id;
  id.identity_signatures = true;
  CHECK(is_mr2(fixture_pattern("A1"), id).value);
  CHECK_FALSE(is_mr2(fixture_pattern("A2"), id).value);
}

TEST_CASE("rank statistics are invariant under equivalence") {
  std::mt19937_64 rng(77);
  MrBoundsOptions opt;
  opt.auto_search = false;
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 2 + rng() % 4, n = 2 + rng() % 4;
    const SignPattern a = oracle::random_pattern(rng, m, n, 0.3);
    const SignPattern b = oracle::transform(a, oracle::random_transform(rng, m, n));
    CHECK(is_mr1(a) == is_mr1(b));
    CHECK(is_mr2(a).value == is_mr2(b).value);
    CHECK(term_rank(a) == term_rank(b));
    CHECK(max_sns_submatrix(a, 4).size == max_sns_submatrix(b, 4).size);
    const MrBounds ba = mr_bounds(a, opt), bb = mr_bounds(b, opt);
    CHECK(ba.lower == bb.lower);
    CHECK(ba.upper == bb.upper);
  }
}

TEST_CASE("mr_bounds examples") {
  const MrBounds a0 = mr_bounds(fixture_pattern("A0"));
  CHECK(a0.lower == 3);
  CHECK(a0.upper == 3);
  CHECK(a0.realization);
  const MrBounds z = mr_bounds(SignPattern(3, 4));
  CHECK(z.lower == 0);
  CHECK(z.upper == 0);
  const MrBounds d = mr_bounds(P({"+0", "0+"}));
  CHECK(d.lower == 2);
  CHECK(d.upper == 2);
  const MrBounds a1 = mr_bounds(fixture_pattern("A1"));
  CHECK(a1.lower == 2);
  CHECK(a1.upper == 2);
}

TEST_CASE("mr_bounds is consistent with the 3-row oracle") {
  std::mt19937_64 rng(90);
  MrBoundsOptions opt;
  opt.auto_search = false;
  for (int k = 0; k < 400; ++k) {
    const SignPattern a = oracle::random_pattern(rng, 3, 3, 0.35);
    const MrBounds b = mr_bounds(a, opt);
    const int mr = oracle::mr_3x3(a);
    CHECK(b.lower <= b.upper);
    CHECK(b.lower <= static_cast<std::size_t>(mr));
    CHECK(static_cast<std::size_t>(mr) <= b.upper);
    CHECK(b.exact());
    const SnsSubmatrix s = max_sns_submatrix(a, 4);
    CHECK(b.lower >= s.size);
  }
}

TEST_CASE("parallel kernels do not depend on the thread count") {
  const SignPattern a0 = fixture_pattern("A0");
  std::mt19937_64 rng(2);
  const SignPattern b = oracle::transform(a0, oracle::random_transform(rng, 9, 9));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto w1 = is_equivalent(a0, b);
  const SnsSubmatrix s1 = max_sns_submatrix(a0, 4);
  omp_set_num_threads(4);
  const auto w4 = is_equivalent(a0, b);
  const SnsSubmatrix s4 = max_sns_submatrix(a0, 4);
  omp_set_num_threads(saved);
  REQUIRE(w1);
  REQUIRE(w4);
  CHECK(w1->row_perm == w4->row_perm);
  CHECK(w1->col_signs == w4->col_signs);
  CHECK(s1.rows == s4.rows);
  CHECK(s1.cols == s4.cols);
}
