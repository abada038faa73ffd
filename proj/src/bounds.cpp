#include "signrank/bounds.hpp"

#include <algorithm>

namespace signrank {

namespace {

std::string index_list(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k] + 1);
  return s;
}

}  // namespace

MrBounds mr_bounds(const SignPattern& a, const MrBoundsOptions& options) {
  MrBounds b;
  if (a.is_zero() || a.empty()) {
    b.lower_evidence.push_back("zero pattern");
    b.upper_evidence.push_back("zero pattern");
    return b;
  }
  const CondensationReport rep = condense(a);
  const std::size_t tr = term_rank(a);
  const std::size_t csize = std::min(rep.condensed.rows(), rep.condensed.cols());

  b.lower = 1;
  b.lower_evidence.push_back("nonzero entry");
  b.upper = tr;
  b.upper_evidence.push_back("term rank " + std::to_string(tr));
  if (csize < b.upper) {
    b.upper = csize;
    b.upper_evidence.insert(b.upper_evidence.begin(), "condensed size " + std::to_string(rep.condensed.rows()) + "x" +
                                                          std::to_string(rep.condensed.cols()));
  }

  const std::size_t cap = std::min(options.sns_cap, kMaxSnsSearchCap);
  if (cap >= 1) {
    SnsSubmatrix s = max_sns_submatrix(a, cap);
    if (s.size >= 2) {
      const std::string k = std::to_string(s.size);
      b.lower_evidence.insert(b.lower_evidence.begin(),
                              "SNS " + k + "x" + k + " at rows " + index_list(s.rows) + " / cols " + index_list(s.cols));
      b.lower = std::max(b.lower, s.size);
    }
    b.sns = std::move(s);
  }

  if (is_mr1(a)) {
    b.lower = b.upper = 1;
    b.lower_evidence.insert(b.lower_evidence.begin(), "condensed pattern is 1x1");
    b.upper_evidence.insert(b.upper_evidence.begin(), "condensed pattern is 1x1");
    return b;
  }
  try {
    const Mr2Result r2 = is_mr2(a, options.mr2);
    if (r2.value) {
      b.lower = std::max<std::size_t>(b.lower, 2);
      b.upper = 2;
      b.upper_evidence.insert(b.upper_evidence.begin(), "staircase arrangement (mr = 2)");
      if (b.lower_evidence.front().rfind("SNS", 0) != 0)
        b.lower_evidence.insert(b.lower_evidence.begin(), "condensed pattern larger than 1x1");
      return b;
    }
    if (b.lower < 3) b.lower_evidence.insert(b.lower_evidence.begin(), "neither mr = 1 nor mr = 2");
    else b.lower_evidence.push_back("neither mr = 1 nor mr = 2");
    b.lower = std::max<std::size_t>(b.lower, 3);
  } catch (const ResourceExhausted&) {
    b.lower_evidence.push_back("mr = 2 test skipped: condensed pattern too large");
  }

  std::vector<std::size_t> ranks = options.try_ranks;
  if (ranks.empty() && options.auto_search && b.lower < b.upper) ranks.push_back(b.lower);
  std::sort(ranks.begin(), ranks.end());
  for (std::size_t r : ranks) {
    if (r < 2 || r >= b.upper) continue;
    if (auto real = search_realization(a, r, options.search)) {
      b.upper = r;
      b.upper_evidence.insert(b.upper_evidence.begin(),
                              "realization found at rank " + std::to_string(r) + " (numerical)");
      b.realization = std::move(real);
      break;
    }
    b.upper_evidence.push_back("no realization found at rank " + std::to_string(r) + " (inconclusive)");
  }
  return b;
}

}  // namespace signrank
