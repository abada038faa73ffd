#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <numeric>

#include "signrank/pattern.hpp"

namespace signrank {

namespace {

using Mask = std::uint64_t;

constexpr Mask pair_bit(std::size_t col, Sign t) {
  return Mask{1} << (2 * col + (t == Sign::Negative ? 1 : 0));
}

std::vector<std::size_t> zero_counts_by_row(const SignPattern& p) {
  std::vector<std::size_t> z(p.rows(), 0);
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) z[i] += p(i, j) == Sign::Zero;
  return z;
}

struct BudgetExceeded {};

// Backtracking assignment of B's rows to A's rows. Column candidates are
// (A column, sign) pairs kept as bitmasks, one per B column.
class EquivalenceSearch {
 public:
  EquivalenceSearch(const SignPattern& a, const SignPattern& b, std::uint64_t budget)
      : a_(a), b_(b), m_(a.rows()), n_(a.cols()), budget_(budget) {
    const auto za = zero_counts_by_row(a), zb = zero_counts_by_row(b);
    const auto zca = zero_counts_by_row(a.transposed()), zcb = zero_counts_by_row(b.transposed());
    compatible_ = multiset_equal(za, zb) && multiset_equal(zca, zcb);
    row_candidates_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t r = 0; r < m_; ++r)
        if (za[r] == zb[i]) row_candidates_[i].push_back(r);
    order_.resize(m_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return row_candidates_[x].size() < row_candidates_[y].size();
    });
    initial_.assign(n_, 0);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t c = 0; c < n_; ++c)
        if (zca[c] == zcb[j]) initial_[j] |= pair_bit(c, Sign::Positive) | pair_bit(c, Sign::Negative);
  }

  bool compatible() const { return compatible_; }

  /// Number of top-level branches: candidate A rows for the first B row.
  std::size_t branch_count() const { return m_ == 0 ? 0 : row_candidates_[order_[0]].size(); }

  /// Explores one top-level branch. Throws BudgetExceeded.
  std::optional<EquivalenceWitness> run_branch(std::size_t branch) {
    nodes_ = 0;
    row_perm_.assign(m_, 0);
    row_signs_.assign(m_, Sign::Positive);
    used_.assign(m_, false);
    const std::size_t i = order_[0];
    const std::size_t r = row_candidates_[i][branch];
    // The pair (D1, D2) ~ (-D1, -D2) is fixed by taking + on the first row.
    std::vector<Mask> cand = initial_;
    if (!restrict(cand, i, r, Sign::Positive)) return std::nullopt;
    row_perm_[i] = r;
    row_signs_[i] = Sign::Positive;
    used_[r] = true;
    if (dfs(1, cand)) return witness_;
    return std::nullopt;
  }

  /// Trivial cases (no rows).
  std::optional<EquivalenceWitness> run_empty() {
    if (!compatible_) return std::nullopt;
    std::vector<Mask> cand = initial_;
    if (!match(cand)) return std::nullopt;
    build_witness(cand);
    return witness_;
  }

 private:
  static bool multiset_equal(std::vector<std::size_t> x, std::vector<std::size_t> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }

  bool restrict(std::vector<Mask>& cand, std::size_t bi, std::size_t ar, Sign s) const {
    for (std::size_t j = 0; j < n_; ++j) {
      Mask keep = 0;
      for (Mask rest = cand[j]; rest; rest &= rest - 1) {
        const int bit = std::countr_zero(rest);
        const std::size_t c = static_cast<std::size_t>(bit) / 2;
        const Sign t = (bit & 1) ? Sign::Negative : Sign::Positive;
        if (b_(bi, j) == s * t * a_(ar, c)) keep |= Mask{1} << bit;
      }
      if (!keep) return false;
      cand[j] = keep;
    }
    return true;
  }

  // Perfect matching of B columns onto A columns using the candidate masks.
  bool match(const std::vector<Mask>& cand) {
    match_of_a_.assign(n_, kNone);
    for (std::size_t j = 0; j < n_; ++j) {
      seen_.assign(n_, false);
      if (!augment(cand, j)) return false;
    }
    return true;
  }

  bool augment(const std::vector<Mask>& cand, std::size_t j) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (!(cand[j] & (pair_bit(c, Sign::Positive) | pair_bit(c, Sign::Negative))) || seen_[c]) continue;
      seen_[c] = true;
      if (match_of_a_[c] == kNone || augment(cand, match_of_a_[c])) {
        match_of_a_[c] = j;
        return true;
      }
    }
    return false;
  }

  void build_witness(const std::vector<Mask>& cand) {
    EquivalenceWitness w;
    w.row_perm = row_perm_;
    w.row_signs = row_signs_;
    w.col_perm.assign(n_, 0);
    w.col_signs.assign(n_, Sign::Positive);
    for (std::size_t c = 0; c < n_; ++c) {
      const std::size_t j = match_of_a_[c];
      w.col_perm[j] = c;
      w.col_signs[j] = (cand[j] & pair_bit(c, Sign::Positive)) ? Sign::Positive : Sign::Negative;
    }
    if (n_ > 0 && w.col_signs[0] == Sign::Negative) {
      for (auto& s : w.row_signs) s = -s;
      for (auto& s : w.col_signs) s = -s;
    }
    witness_ = std::move(w);
  }

  bool dfs(std::size_t level, const std::vector<Mask>& cand) {
    if (++nodes_ > budget_) throw BudgetExceeded{};
    if (level == m_) {
      if (!match(cand)) return false;
      build_witness(cand);
      return true;
    }
    const std::size_t i = order_[level];
    for (std::size_t r : row_candidates_[i]) {
      if (used_[r]) continue;
      for (Sign s : {Sign::Positive, Sign::Negative}) {
        std::vector<Mask> next = cand;
        if (!restrict(next, i, r, s) || !match(next)) continue;
        used_[r] = true;
        row_perm_[i] = r;
        row_signs_[i] = s;
        if (dfs(level + 1, next)) return true;
        used_[r] = false;
      }
    }
    return false;
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  const SignPattern& a_;
  const SignPattern& b_;
  std::size_t m_, n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool compatible_ = true;
  std::vector<std::vector<std::size_t>> row_candidates_;
  std::vector<std::size_t> order_;
  std::vector<Mask> initial_;
  std::vector<std::size_t> row_perm_;
  std::vector<Sign> row_signs_;
  std::vector<bool> used_;
  std::vector<std::size_t> match_of_a_;
  std::vector<bool> seen_;
  EquivalenceWitness witness_;
};

enum class BranchState : std::uint8_t { Pending, Failed, Found, Exhausted };

bool precheck(const SignPattern& a, const SignPattern& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.cols() > 32 || a.rows() > 64)
    throw ResourceExhausted("equivalence search supports at most 64 rows and 32 columns");
  return true;
}

std::optional<EquivalenceWitness> resolve(std::vector<BranchState>& state,
                                          std::vector<std::optional<EquivalenceWitness>>& found) {
  for (std::size_t k = 0; k < state.size(); ++k) {
    if (state[k] == BranchState::Exhausted)
      throw ResourceExhausted("equivalence search exceeded its node budget in branch " +
                              std::to_string(k + 1));
    if (state[k] == BranchState::Found) return std::move(found[k]);
  }
  return std::nullopt;
}

}  // namespace

std::optional<EquivalenceWitness> is_equivalent_serial(const SignPattern& a, const SignPattern& b,
                                                       const EquivalenceOptions& options) {
  if (!precheck(a, b)) return std::nullopt;
  EquivalenceSearch search(a, b, options.node_budget);
  if (!search.compatible()) return std::nullopt;
  if (a.rows() == 0) return search.run_empty();
  const std::size_t branches = search.branch_count();
  std::vector<BranchState> state(branches, BranchState::Pending);
  std::vector<std::optional<EquivalenceWitness>> found(branches);
  for (std::size_t k = 0; k < branches; ++k) {
    try {
      found[k] = search.run_branch(k);
      state[k] = found[k] ? BranchState::Found : BranchState::Failed;
    } catch (const BudgetExceeded&) {
      state[k] = BranchState::Exhausted;
    }
    if (state[k] != BranchState::Failed) break;
  }
  return resolve(state, found);
}

std::optional<EquivalenceWitness> is_equivalent(const SignPattern& a, const SignPattern& b,
                                                const EquivalenceOptions& options) {
  if (!precheck(a, b)) return std::nullopt;
  EquivalenceSearch probe(a, b, options.node_budget);
  if (!probe.compatible()) return std::nullopt;
  if (a.rows() == 0) return probe.run_empty();
  const std::size_t branches = probe.branch_count();
  std::vector<BranchState> state(branches, BranchState::Pending);
  std::vector<std::optional<EquivalenceWitness>> found(branches);
  // Branches after the first decisive one (found or exhausted) are not needed.
  std::atomic<std::size_t> first_decisive{branches};

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < branches; ++k) {
    if (k > first_decisive.load(std::memory_order_relaxed)) continue;
    EquivalenceSearch search(a, b, options.node_budget);
    try {
      found[k] = search.run_branch(k);
      state[k] = found[k] ? BranchState::Found : BranchState::Failed;
    } catch (const BudgetExceeded&) {
      state[k] = BranchState::Exhausted;
    }
    if (state[k] != BranchState::Failed) {
      std::size_t cur = first_decisive.load();
      while (k < cur && !first_decisive.compare_exchange_weak(cur, k)) {
      }
    }
  }
  return resolve(state, found);
}

}  // namespace signrank
