#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signrank/pattern.hpp"
#include "signrank/realize.hpp"

namespace signrank {

struct MrBoundsOptions {
  /// Largest SNS block searched for the lower bound.
  std::size_t sns_cap = 4;
  /// Ranks at which a realization search is attempted for the upper bound.
  /// When empty, the current lower bound is tried if it is below the upper.
  std::vector<std::size_t> try_ranks;
  bool auto_search = true;
  SearchParams search;
  Mr2Options mr2;
};

struct MrBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  /// Human-readable source of each bound, strongest first.
  std::vector<std::string> lower_evidence;
  std::vector<std::string> upper_evidence;
  std::optional<SnsSubmatrix> sns;
  std::optional<Realization> realization;
  bool exact() const { return lower == upper; }
};

/// Bounds on mr(a) from SNS blocks, the exact rank-1 and rank-2 tests, the
/// term rank, the condensed size and realization searches.
MrBounds mr_bounds(const SignPattern& a, const MrBoundsOptions& options = {});

}  // namespace signrank
