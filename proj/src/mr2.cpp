#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "signrank/pattern.hpp"

// Rows of D1 A D2 can be permuted to be column-wise nondecreasing iff they
// form a chain under entrywise <=, and likewise for columns. For rows i, k
// with rho = r_i r_k, comparability depends only on rho and the column signs:
// c_j * cmp(A_ij, rho A_kj) must be constant over the columns where it is
// nonzero. Once all column signs are fixed, every remaining requirement is a
// parity constraint on products of row signs, solved by union-find.

namespace signrank {

namespace {

int cmp_sign(Sign x, Sign y) {
  const int d = to_int(x) - to_int(y);
  return (d > 0) - (d < 0);
}

struct Entry {
  std::size_t index;
  int delta;  // +1 or -1
};

class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::pair<std::size_t, int> find(std::size_t x) {
    int p = 0;
    while (parent_[x] != x) {
      p ^= parity_[x];
      x = parent_[x];
    }
    return {x, p};
  }
  /// Requires value(x) * value(y) = product (+1 / -1). False on conflict.
  bool unite(std::size_t x, std::size_t y, int product) {
    const int want = product < 0 ? 1 : 0;
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) return (px ^ py) == want;
    parent_[ry] = rx;
    parity_[ry] = px ^ py ^ want;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> parity_;
};

class SignatureSearch {
 public:
  explicit SignatureSearch(const SignPattern& w) : w_(w), p_(w.rows()), q_(w.cols()) {
    for (std::size_t i = 0; i < p_; ++i)
      for (std::size_t k = i + 1; k < p_; ++k) {
        RowPair rp{i, k, {}};
        for (std::size_t j = 0; j < q_; ++j) {
          if (int d = cmp_sign(w(i, j), w(k, j))) rp.support[0].push_back({j, d});
          if (int d = cmp_sign(w(i, j), -w(k, j))) rp.support[1].push_back({j, d});
        }
        pairs_.push_back(std::move(rp));
      }
  }

  /// Column and row signs (+1/-1) making both chain conditions hold.
  bool solve(std::vector<int>& col_signs, std::vector<int>& row_signs) {
    std::vector<int> c(q_, 0);
    if (q_ > 0) c[0] = 1;
    if (!dfs(c, row_signs)) return false;
    col_signs = found_cols_;
    return true;
  }

 private:
  struct RowPair {
    std::size_t i, k;
    std::vector<Entry> support[2];  // [0]: rho = +1, [1]: rho = -1
  };

  // Common value of c_j * delta_j over assigned support columns; 0 if none
  // assigned, 2 on conflict.
  static int common_value(const std::vector<Entry>& sup, const std::vector<int>& c) {
    int val = 0;
    for (const auto& e : sup) {
      if (!c[e.index]) continue;
      const int v = c[e.index] * e.delta;
      if (val == 0)
        val = v;
      else if (val != v)
        return 2;
    }
    return val;
  }

  bool propagate(std::vector<int>& c) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& rp : pairs_) {
        const int v0 = common_value(rp.support[0], c);
        const int v1 = common_value(rp.support[1], c);
        const bool f0 = v0 != 2, f1 = v1 != 2;
        if (!f0 && !f1) return false;
        if (f0 != f1) {
          const int rho = f0 ? 0 : 1;
          const int val = f0 ? v0 : v1;
          if (val == 0) continue;
          for (const auto& e : rp.support[rho])
            if (!c[e.index]) {
              c[e.index] = val * e.delta;
              changed = true;
            }
        }
      }
    }
    return true;
  }

  bool dfs(std::vector<int>& c, std::vector<int>& row_signs) {
    if (!propagate(c)) return false;
    const auto it = std::find(c.begin(), c.end(), 0);
    if (it == c.end()) {
      if (!leaf(c, row_signs)) return false;
      found_cols_ = c;
      return true;
    }
    const std::size_t j = static_cast<std::size_t>(it - c.begin());
    for (int s : {1, -1}) {
      std::vector<int> next = c;
      next[j] = s;
      if (dfs(next, row_signs)) return true;
    }
    return false;
  }

  bool leaf(const std::vector<int>& c, std::vector<int>& row_signs) const {
    ParityUnionFind uf(p_);
    for (const auto& rp : pairs_) {
      const bool f0 = common_value(rp.support[0], c) != 2;
      const bool f1 = common_value(rp.support[1], c) != 2;
      if (!f0 && !f1) return false;
      if (f0 != f1 && !uf.unite(rp.i, rp.k, f0 ? 1 : -1)) return false;
    }
    for (std::size_t j = 0; j < q_; ++j)
      for (std::size_t l = j + 1; l < q_; ++l) {
        const int sigma = c[j] * c[l];
        std::size_t anchor = p_;
        int anchor_eps = 0;
        for (std::size_t i = 0; i < p_; ++i) {
          const Sign scaled = sigma > 0 ? w_(i, l) : -w_(i, l);
          const int eps = cmp_sign(w_(i, j), scaled);
          if (!eps) continue;
          if (anchor == p_) {
            anchor = i;
            anchor_eps = eps;
          } else if (!uf.unite(anchor, i, eps * anchor_eps)) {
            return false;
          }
        }
      }
    row_signs.assign(p_, 1);
    for (std::size_t i = 0; i < p_; ++i) row_signs[i] = uf.find(i).second ? -1 : 1;
    return true;
  }

  const SignPattern& w_;
  std::size_t p_, q_;
  std::vector<RowPair> pairs_;
  std::vector<int> found_cols_;
};

std::vector<Sign> to_signs(const std::vector<int>& v) {
  std::vector<Sign> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] < 0 ? Sign::Negative : Sign::Positive;
  return out;
}

std::vector<std::size_t> order_by_sum(const SignPattern& m, Axis axis) {
  const std::size_t count = axis == Axis::Row ? m.rows() : m.cols();
  std::vector<int> sum(count, 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) sum[axis == Axis::Row ? i : j] += to_int(m(i, j));
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sum[a] < sum[b]; });
  return order;
}

}  // namespace

Mr2Result is_mr2(const SignPattern& a, const Mr2Options& options) {
  Mr2Result result;
  CondensationReport rep = condense(a);
  const SignPattern& ac = rep.condensed;
  if (ac.rows() < 2 || ac.cols() < 2) {
    result.failed_condition = 1;
    return result;
  }
  for (std::size_t i = 0; i < ac.rows(); ++i) {
    std::size_t z = 0;
    for (std::size_t j = 0; j < ac.cols(); ++j) z += ac(i, j) == Sign::Zero;
    if (z > 1) {
      result.failed_condition = 2;
      return result;
    }
  }
  for (std::size_t j = 0; j < ac.cols(); ++j) {
    std::size_t z = 0;
    for (std::size_t i = 0; i < ac.rows(); ++i) z += ac(i, j) == Sign::Zero;
    if (z > 1) {
      result.failed_condition = 2;
      return result;
    }
  }

  // search over signs of the shorter side
  const bool transpose = ac.cols() > ac.rows();
  const SignPattern work = transpose ? ac.transposed() : ac;
  std::vector<int> col_signs, row_signs;
  SignatureSearch search(work);
  bool ok;
  if (options.identity_signatures) {
    // rows (columns) form a chain iff sorting by their sums arranges them
    col_signs.assign(work.cols(), 1);
    row_signs.assign(work.rows(), 1);
    ok = is_nondecreasing(work.submatrix(order_by_sum(work, Axis::Row), order_by_sum(work, Axis::Column)));
  } else {
    if (work.cols() > options.search_limit)
      throw ResourceExhausted("is_mr2: condensed pattern has " + std::to_string(work.cols()) +
                              " lines on its shorter side, limit is " +
                              std::to_string(options.search_limit));
    ok = search.solve(col_signs, row_signs);
  }
  if (!ok) {
    result.failed_condition = 3;
    return result;
  }
  if (transpose) std::swap(col_signs, row_signs);

  Mr2Witness w;
  w.row_signs = to_signs(row_signs);
  w.col_signs = to_signs(col_signs);
  const SignPattern signed_ac = ac.signed_by(w.row_signs, w.col_signs);
  w.row_order = order_by_sum(signed_ac, Axis::Row);
  w.col_order = order_by_sum(signed_ac, Axis::Column);
  w.arranged = signed_ac.submatrix(w.row_order, w.col_order);
  if (!is_nondecreasing(w.arranged))
    throw std::logic_error("is_mr2: signature solution does not arrange into a staircase");
  w.condensation = std::move(rep);
  result.value = true;
  result.witness = std::move(w);
  return result;
}

}  // namespace signrank
