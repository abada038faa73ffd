#include "signrank/pattern.hpp"

#include <algorithm>
#include <numeric>

namespace signrank {

namespace {

Sign sign_from_char(char c) {
  switch (c) {
    case '+': return Sign::Positive;
    case '-': return Sign::Negative;
    case '0': return Sign::Zero;
    default: throw DomainError(std::string("invalid sign character '") + c + "'");
  }
}

}  // namespace

SignPattern::SignPattern(std::size_t rows, std::size_t cols, Sign fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

SignPattern SignPattern::from_rows(std::span<const std::string> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m ? rows[0].size() : 0;
  SignPattern p(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) throw DomainError("rows of a sign pattern must have equal length");
    for (std::size_t j = 0; j < n; ++j) p.set(i, j, sign_from_char(rows[i][j]));
  }
  return p;
}

SignPattern SignPattern::from_rows(std::initializer_list<std::string_view> rows) {
  std::vector<std::string> v(rows.begin(), rows.end());
  return from_rows(std::span<const std::string>(v));
}

std::size_t SignPattern::zero_count() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), Sign::Zero));
}

bool SignPattern::is_zero() const { return zero_count() == data_.size(); }

SignPattern SignPattern::transposed() const {
  SignPattern t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
  return t;
}

SignPattern SignPattern::negated() const {
  SignPattern n = *this;
  for (auto& s : n.data_) s = -s;
  return n;
}

SignPattern SignPattern::submatrix(std::span<const std::size_t> rows,
                                   std::span<const std::size_t> cols) const {
  SignPattern s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s.set(i, j, (*this)(rows[i], cols[j]));
  return s;
}

SignPattern SignPattern::signed_by(std::span<const Sign> row_signs,
                                   std::span<const Sign> col_signs) const {
  if (row_signs.size() != rows_ || col_signs.size() != cols_)
    throw DomainError("signature sizes do not match the pattern");
  SignPattern s(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s.set(i, j, row_signs[i] * (*this)(i, j) * col_signs[j]);
  return s;
}

std::string SignPattern::to_string() const {
  std::string out;
  out.reserve(rows_ * (cols_ + 1));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out += to_char((*this)(i, j));
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Relation between two lines restricted to the active cross indices:
// +1 identical, -1 opposite, 0 neither.
template <class Get>
int line_relation(Get get, std::size_t a, std::size_t b, const std::vector<std::size_t>& cross) {
  bool same = true, opposite = true;
  for (std::size_t k : cross) {
    const Sign x = get(a, k), y = get(b, k);
    if (x != y) same = false;
    if (x != -y) opposite = false;
    if (!same && !opposite) return 0;
  }
  return same ? 1 : (opposite ? -1 : 0);
}

// One top-to-bottom (or left-to-right) sweep over the lines of `axis`.
template <class Get>
bool sweep(Axis axis, Get get, std::vector<std::size_t>& lines, const std::vector<std::size_t>& cross,
           std::vector<DeletionEvent>& log) {
  bool changed = false;
  std::vector<std::size_t> kept;
  for (std::size_t line : lines) {
    const bool zero = std::all_of(cross.begin(), cross.end(),
                                  [&](std::size_t k) { return get(line, k) == Sign::Zero; });
    if (zero) {
      log.push_back({axis, DeletionKind::Zero, line, line});
      changed = true;
      continue;
    }
    bool removed = false;
    for (std::size_t survivor : kept) {
      const int rel = line_relation(get, survivor, line, cross);
      if (rel != 0) {
        log.push_back({axis, rel > 0 ? DeletionKind::Duplicate : DeletionKind::Opposite, line, survivor});
        removed = changed = true;
        break;
      }
    }
    if (!removed) kept.push_back(line);
  }
  lines = std::move(kept);
  return changed;
}

}  // namespace

CondensationReport condense(const SignPattern& a) {
  CondensationReport rep;
  std::vector<std::size_t> rows(a.rows()), cols(a.cols());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  auto by_row = [&](std::size_t i, std::size_t j) { return a(i, j); };
  auto by_col = [&](std::size_t j, std::size_t i) { return a(i, j); };
  for (;;) {
    const bool rows_changed = sweep(Axis::Row, by_row, rows, cols, rep.log);
    const bool cols_changed = sweep(Axis::Column, by_col, cols, rows, rep.log);
    if (!rows_changed && !cols_changed) break;
  }
  if (rows.empty() || cols.empty()) {
    rows.clear();
    cols.clear();
  }
  rep.condensed = a.submatrix(rows, cols);
  rep.kept_rows = std::move(rows);
  rep.kept_cols = std::move(cols);
  return rep;
}

SignPattern replay_condensation(const SignPattern& original, std::span<const DeletionEvent> log) {
  std::vector<bool> row_alive(original.rows(), true), col_alive(original.cols(), true);
  for (const auto& ev : log) {
    auto& alive = ev.axis == Axis::Row ? row_alive : col_alive;
    if (ev.removed >= alive.size() || !alive[ev.removed])
      throw DomainError("condensation log does not match the pattern");
    alive[ev.removed] = false;
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < row_alive.size(); ++i)
    if (row_alive[i]) rows.push_back(i);
  for (std::size_t j = 0; j < col_alive.size(); ++j)
    if (col_alive[j]) cols.push_back(j);
  if (rows.empty() || cols.empty()) return SignPattern();
  return original.submatrix(rows, cols);
}

bool is_condensed(const SignPattern& a) {
  if (a.empty()) return a.rows() == 0 && a.cols() == 0;
  return condense(a).log.empty();
}

SignPattern apply_equivalence(const SignPattern& a, const EquivalenceWitness& w) {
  SignPattern b(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      b.set(i, j, w.row_signs[i] * w.col_signs[j] * a(w.row_perm[i], w.col_perm[j]));
  return b;
}

bool is_nondecreasing(const SignPattern& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 1; j < a.cols(); ++j)
      if (to_int(a(i, j - 1)) > to_int(a(i, j))) return false;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 1; i < a.rows(); ++i)
      if (to_int(a(i - 1, j)) > to_int(a(i, j))) return false;
  return true;
}

bool is_mr1(const SignPattern& a) {
  const auto rep = condense(a);
  return rep.condensed.rows() == 1 && rep.condensed.cols() == 1;
}

}  // namespace signrank
