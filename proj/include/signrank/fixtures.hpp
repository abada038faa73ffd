#pragma once

// Sign patterns and configurations used as reference data, plus the exact
// re-verification of the nine-point configuration over Q(sqrt 5).

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "signrank/geometry.hpp"
#include "signrank/pattern.hpp"

namespace signrank {

enum class Provenance { Transcribed, Derived };

struct Fixture {
  std::string name;
  Provenance provenance;
  std::string note;
  std::variant<SignPattern, Configuration> payload;
};

/// Names accepted by fixture(): A0, A1, A2, fig21_pattern, fig21_config,
/// perles_config.
const std::vector<std::string>& fixture_names();
/// Throws NotFound for unknown names.
Fixture fixture(std::string_view name);
SignPattern fixture_pattern(std::string_view name);
Configuration fixture_config(std::string_view name);

struct PerlesReport {
  std::size_t points = 0;
  std::size_t lines = 0;
  std::size_t zero_count = 0;
  std::vector<std::size_t> points_per_line;
  bool zero_set_matches = false;
  bool equals_a0 = false;
  EquivalenceWitness witness;  // encode(perles_config) -> A0
};

/// Encodes perles_config exactly and checks its incidences, zero set and
/// equivalence against A0. Throws FixtureCorrupt on any failure.
PerlesReport derive_perles_check();

}  // namespace signrank
