#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "signrank/realize.hpp"

namespace signrank {

namespace {

// Gaussian elimination over Q for a small square system.
std::vector<Rational> solve_exact(RationalMatrix a, std::vector<Rational> rhs) {
  const std::size_t s = a.rows();
  for (std::size_t c = 0; c < s; ++c) {
    std::size_t p = c;
    while (p < s && sgn(a(p, c)) == 0) ++p;
    if (p == s) throw SingularSystem("zero-entry system is singular");
    if (p != c) {
      a.swap_rows(p, c);
      std::swap(rhs[p], rhs[c]);
    }
    for (std::size_t i = c + 1; i < s; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (std::size_t k = c; k < s; ++k) a(i, k) -= f * a(c, k);
      rhs[i] -= f * rhs[c];
    }
  }
  std::vector<Rational> x(s);
  for (std::size_t c = s; c-- > 0;) {
    Rational acc = rhs[c];
    for (std::size_t k = c + 1; k < s; ++k) acc -= a(c, k) * x[k];
    x[c] = acc / a(c, c);
  }
  return x;
}

void check_zero_rows(std::size_t count, std::size_t r) {
  if (count == 0 || count > r - 1)
    throw DomainError("solve_zero_column: need between 1 and r-1 zero rows, got " + std::to_string(count));
}

// Zero rows of each column of a pattern.
std::vector<std::vector<std::size_t>> column_zeros(const SignPattern& t) {
  std::vector<std::vector<std::size_t>> z(t.cols());
  for (std::size_t j = 0; j < t.cols(); ++j)
    for (std::size_t i = 0; i < t.rows(); ++i)
      if (t(i, j) == Sign::Zero) z[j].push_back(i);
  return z;
}

Rational random_perturbation(std::mt19937_64& rng, int bits) {
  // uniform in [-2^-bits, 2^-bits] with denominator 2^(bits + 16)
  std::uniform_int_distribution<long> num(-(1L << 16), 1L << 16);
  Integer den = 1;
  den <<= static_cast<unsigned long>(bits + 16);
  return make_rational(Integer(num(rng)), den);
}

// Exact matrix T-signed-equal to UV for the condensed, signed target.
// `line_labels` maps columns of the target to indices used in errors.
RationalMatrix rationalize_condensed(const SignPattern& target, const Eigen::MatrixXd& u_f,
                                     const Eigen::MatrixXd& v_f, const RationalizeOptions& options,
                                     bool by_rows, const std::vector<std::size_t>& line_labels) {
  const std::size_t m = target.rows(), n = target.cols(), r = static_cast<std::size_t>(u_f.cols());
  const auto zeros = column_zeros(target);
  for (std::size_t j = 0; j < n; ++j)
    if (zeros[j].size() > r - 1) throw Overdetermined(line_labels[j], zeros[j].size(), r - 1, by_rows);

  std::mt19937_64 rng(options.seed);
  for (int bits : options.precision_bits) {
    Integer cap = 1;
    cap <<= static_cast<unsigned long>(bits);
    RationalMatrix u(m, r), v(r, n);
    for (std::size_t i = 0; i < m; ++i) {
      u(i, 0) = 1;
      for (std::size_t k = 1; k < r; ++k) u(i, k) = rational_round(u_f(i, k), cap);
    }
    for (std::size_t j = 0; j < n; ++j) {
      v(r - 1, j) = 1;
      for (std::size_t k = zeros[j].size(); k + 1 < r; ++k) v(k, j) = rational_round(v_f(k, j), cap);
    }
    bool solved = false;
    for (int attempt = 0; attempt <= options.retries && !solved; ++attempt) {
      solved = true;
      for (std::size_t j = 0; j < n && solved; ++j) {
        if (zeros[j].empty()) continue;
        std::vector<Rational> col(r);
        for (std::size_t k = 0; k < r; ++k) col[k] = v(k, j);
        try {
          const auto dep = solve_zero_column(u, zeros[j], col);
          for (std::size_t k = 0; k < dep.size(); ++k) v(k, j) = dep[k];
        } catch (const SingularSystem&) {
          // move the free entries of the rows involved off the degenerate set
          for (std::size_t i : zeros[j])
            for (std::size_t k = 1; k < r; ++k) u(i, k) += random_perturbation(rng, bits);
          solved = false;
        }
      }
    }
    if (!solved) continue;
    const RationalMatrix b = u * v;
    if (sign_pattern_of(b) == target) return b;
  }
  throw PrecisionExhausted("rationalize: rounding at every precision changed some sign");
}

RationalMatrix signed_copy(const RationalMatrix& b, const std::vector<Sign>& rs, const std::vector<Sign>& cs) {
  RationalMatrix out = b;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (rs[i] * cs[j] == Sign::Negative) out(i, j) = -out(i, j);
  return out;
}

// Undoes the condensation: re-inserts deleted lines as copies, negated copies
// or zero lines, in reverse order of deletion.
RationalMatrix expand(const CondensationReport& rep, const RationalMatrix& mc, std::size_t m, std::size_t n) {
  std::vector<std::vector<Rational>> rows(m);  // entries over the live columns
  std::vector<bool> row_live(m, false), col_live(n, false);
  std::vector<std::size_t> col_slot(n);
  // live columns are addressed through col_slot into each row vector
  std::size_t slots = 0;
  for (std::size_t c = 0; c < rep.kept_cols.size(); ++c) {
    col_live[rep.kept_cols[c]] = true;
    col_slot[rep.kept_cols[c]] = slots++;
  }
  for (std::size_t a = 0; a < rep.kept_rows.size(); ++a) {
    const std::size_t i = rep.kept_rows[a];
    row_live[i] = true;
    rows[i].resize(slots);
    for (std::size_t c = 0; c < rep.kept_cols.size(); ++c) rows[i][c] = mc(a, c);
  }
  for (auto it = rep.log.rbegin(); it != rep.log.rend(); ++it) {
    const DeletionEvent& ev = *it;
    if (ev.axis == Axis::Row) {
      auto& row = rows[ev.removed];
      row.assign(slots, Rational(0));
      if (ev.kind != DeletionKind::Zero) {
        row = rows[ev.survivor];
        if (ev.kind == DeletionKind::Opposite)
          for (auto& x : row) x = -x;
      }
      row_live[ev.removed] = true;
    } else {
      col_slot[ev.removed] = slots++;
      col_live[ev.removed] = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (!row_live[i]) continue;
        Rational x = 0;
        if (ev.kind != DeletionKind::Zero) {
          x = rows[i][col_slot[ev.survivor]];
          if (ev.kind == DeletionKind::Opposite) x = -x;
        }
        rows[i].push_back(x);
      }
    }
  }
  RationalMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rows[i][col_slot[j]];
  return out;
}

void check_shapes(const SignPattern& ac, const Realization& real) {
  const std::size_t r = real.rank;
  if (r < 1 || static_cast<std::size_t>(real.U.cols()) != r || static_cast<std::size_t>(real.V.rows()) != r ||
      static_cast<std::size_t>(real.U.rows()) != ac.rows() || static_cast<std::size_t>(real.V.cols()) != ac.cols() ||
      real.row_signs.size() != ac.rows() || real.col_signs.size() != ac.cols())
    throw DomainError("rationalize: realization shape does not match the condensed pattern (" +
                      std::to_string(ac.rows()) + " x " + std::to_string(ac.cols()) + ")");
}

RationalCertificate finish(const SignPattern& a, const CondensationReport& rep, const RationalMatrix& mc,
                           std::size_t r) {
  RationalCertificate cert;
  cert.matrix = expand(rep, mc, a.rows(), a.cols());
  cert.rank = rational_rank(cert.matrix);
  cert.target = a;
  if (!verify_certificate(cert) || cert.rank > r)
    throw std::logic_error("rationalize: produced certificate fails verification");
  return cert;
}

}  // namespace

std::vector<Rational> solve_zero_column(const RationalMatrix& u, const std::vector<std::size_t>& zero_rows,
                                        const std::vector<Rational>& v_column) {
  const std::size_t r = u.cols(), s = zero_rows.size();
  check_zero_rows(s, r);
  if (v_column.size() != r) throw DomainError("solve_zero_column: column length must equal r");
  RationalMatrix coeff(s, s);
  std::vector<Rational> rhs(s);
  for (std::size_t t = 0; t < s; ++t) {
    const std::size_t i = zero_rows[t];
    for (std::size_t k = 0; k < s; ++k) coeff(t, k) = u(i, k);
    for (std::size_t k = s; k < r; ++k) rhs[t] -= u(i, k) * v_column[k];
  }
  return solve_exact(std::move(coeff), std::move(rhs));
}

std::vector<double> solve_zero_column(const Eigen::MatrixXd& u, const std::vector<std::size_t>& zero_rows,
                                      const std::vector<double>& v_column) {
  const std::size_t r = static_cast<std::size_t>(u.cols()), s = zero_rows.size();
  check_zero_rows(s, r);
  if (v_column.size() != r) throw DomainError("solve_zero_column: column length must equal r");
  Eigen::MatrixXd coeff(s, s);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s);
  for (std::size_t t = 0; t < s; ++t) {
    const std::size_t i = zero_rows[t];
    for (std::size_t k = 0; k < s; ++k) coeff(t, k) = u(i, k);
    for (std::size_t k = s; k < r; ++k) rhs[t] -= u(i, k) * v_column[k];
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(coeff);
  if (lu.rank() < static_cast<Eigen::Index>(s)) throw SingularSystem("zero-entry system is numerically singular");
  const Eigen::VectorXd x = lu.solve(rhs);
  return {x.data(), x.data() + s};
}

std::size_t rational_rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<Integer> a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  // Bareiss: every division below is exact.
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && sgn(a(p, c)) == 0) ++p;
    if (p == rows) continue;
    a.swap_rows(p, rank);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        Integer x = a(rank, c) * a(i, k) - a(i, c) * a(rank, k);
        mpz_divexact(a(i, k).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(rank, c);
    ++rank;
  }
  return rank;
}

bool verify_certificate(const RationalCertificate& cert) {
  return sign_pattern_of(cert.matrix) == cert.target && rational_rank(cert.matrix) == cert.rank;
}

RationalCertificate rationalize(const SignPattern& a, const Realization& real, const RationalizeOptions& options) {
  const CondensationReport rep = condense(a);
  const SignPattern& ac = rep.condensed;
  const std::size_t r = real.rank;
  if (r >= 1)
    for (std::size_t j = 0; j < ac.cols(); ++j) {
      std::size_t z = 0;
      for (std::size_t i = 0; i < ac.rows(); ++i) z += ac(i, j) == Sign::Zero;
      if (z > r - 1) throw Overdetermined(rep.kept_cols[j], z, r - 1);
    }
  check_shapes(ac, real);
  const SignPattern target = ac.signed_by(real.row_signs, real.col_signs);
  const RationalMatrix b =
      rationalize_condensed(target, real.U, real.V, options, false, rep.kept_cols);
  return finish(a, rep, signed_copy(b, real.row_signs, real.col_signs), r);
}

RationalCertificate rationalize_by_rows(const SignPattern& a, const Realization& real,
                                        const RationalizeOptions& options) {
  const CondensationReport rep = condense(a);
  const SignPattern& ac = rep.condensed;
  const std::size_t r = real.rank;
  if (r >= 1)
    for (std::size_t i = 0; i < ac.rows(); ++i) {
      std::size_t z = 0;
      for (std::size_t j = 0; j < ac.cols(); ++j) z += ac(i, j) == Sign::Zero;
      if (z > r - 1) throw Overdetermined(rep.kept_rows[i], z, r - 1, true);
    }
  check_shapes(ac, real);
  // (UV)^T = (V^T J)(J U^T) with J the reversal, which is again normal form.
  const Eigen::MatrixXd ut = real.V.transpose().rowwise().reverse();
  const Eigen::MatrixXd vt = real.U.transpose().colwise().reverse();
  const SignPattern target = ac.signed_by(real.row_signs, real.col_signs).transposed();
  const RationalMatrix bt = rationalize_condensed(target, ut, vt, options, true, rep.kept_rows);
  return finish(a, rep, signed_copy(bt.transposed(), real.row_signs, real.col_signs), r);
}

namespace {

// Direct rank-2 representation: sgn(u_i - w_j) = A(i, j) (so v_j = -w_j).
// Zero entries merge a row node with a column node; the strict constraints
// must then form an acyclic digraph, whose longest-path levels give values.
std::optional<std::pair<std::vector<long>, std::vector<long>>> rank2_levels(const SignPattern& a) {
  const std::size_t m = a.rows(), n = a.cols(), total = m + n;
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) == Sign::Zero) parent[find(i)] = find(m + j);
  // edge x -> y means value(x) < value(y)
  std::vector<std::vector<std::size_t>> out(total);
  std::vector<std::size_t> indeg(total, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) == Sign::Zero) continue;
      std::size_t lo = find(m + j), hi = find(i);
      if (a(i, j) == Sign::Negative) std::swap(lo, hi);
      if (lo == hi) return std::nullopt;
      out[lo].push_back(hi);
      ++indeg[hi];
    }
  std::vector<long> level(total, 0);
  std::vector<std::size_t> queue;
  for (std::size_t x = 0; x < total; ++x)
    if (find(x) == x && indeg[x] == 0) queue.push_back(x);
  std::size_t done = 0, classes = 0;
  for (std::size_t x = 0; x < total; ++x) classes += find(x) == x;
  while (done < queue.size()) {
    const std::size_t x = queue[done++];
    for (std::size_t y : out[x]) {
      level[y] = std::max(level[y], level[x] + 1);
      if (--indeg[y] == 0) queue.push_back(y);
    }
  }
  if (queue.size() != classes) return std::nullopt;
  std::vector<long> u(m), w(n);
  for (std::size_t i = 0; i < m; ++i) u[i] = level[find(i)];
  for (std::size_t j = 0; j < n; ++j) w[j] = level[find(m + j)];
  return std::pair{u, w};
}

}  // namespace

DirectRepresentation has_direct_representation(const SignPattern& a, std::size_t r, const SearchParams& params) {
  if (r < 2) throw DomainError("has_direct_representation: rank must be at least 2");
  DirectRepresentation out;
  if (r == 2) {
    const auto levels = rank2_levels(a);
    // The staircase characterization with identity signatures must agree on
    // patterns where it applies.
    if (is_condensed(a) && a.rows() >= 2 && a.cols() >= 2) {
      Mr2Options opt;
      opt.identity_signatures = true;
      const Mr2Result staircase = is_mr2(a, opt);
      if (staircase.value != levels.has_value())
        throw std::logic_error("has_direct_representation: staircase and level tests disagree");
    }
    if (!levels) {
      out.status = DirectStatus::No;
      return out;
    }
    RationalMatrix u(a.rows(), 2), v(2, a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      u(i, 0) = 1;
      u(i, 1) = levels->first[i];
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      v(0, j) = -levels->second[j];
      v(1, j) = 1;
    }
    if (sign_pattern_of(u * v) != a) throw std::logic_error("has_direct_representation: witness check failed");
    out.status = DirectStatus::Yes;
    out.exact = std::pair{std::move(u), std::move(v)};
    return out;
  }
  SearchParams direct = params;
  direct.direct = true;
  if (!is_condensed(a)) throw DomainError("has_direct_representation: pattern must be condensed");
  if (auto real = search_realization(a, r, direct)) {
    out.status = DirectStatus::Yes;
    out.witness = std::move(real);
  }
  return out;
}

}  // namespace signrank
