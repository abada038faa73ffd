#pragma once

// Text formats: .pat sign patterns, configuration / realization / certificate
// files in JSON syntax, and SVG drawings of planar configurations.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "signrank/geometry.hpp"
#include "signrank/pattern.hpp"
#include "signrank/realize.hpp"

namespace signrank {

/// '#' comment lines, then one row per line over "+-0" (whitespace between
/// symbols ignored). Blank lines are skipped. Throws ParseError.
SignPattern parse_pattern(std::string_view text);
std::string format_pattern(const SignPattern& a, std::string_view comment = {});

/// {"dim": d, "sqrt": q, "points": [...], "hyperplanes": [...]}; scalars are
/// integers, "p/q" strings or {"r": ..., "s": ...}. Throws ParseError.
Configuration parse_configuration(std::string_view text);
std::string format_configuration(const Configuration& c);

/// {"r": r, "U": [[...]], "V": [[...]], "row_signs": "+-", "col_signs": "++"}.
/// Missing signatures default to all +.
Realization parse_realization(std::string_view text);
std::string format_realization(const Realization& real);

/// {"rank": k, "target": ["+0-", ...], "matrix": [["p/q", ...], ...]}.
RationalCertificate parse_certificate(std::string_view text);
std::string format_certificate(const RationalCertificate& cert);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// x0, y0, x1, y1 in configuration coordinates.
using BoundingBox = std::array<double, 4>;

/// SVG 1.1 drawing of a planar configuration: points as labelled dots,
/// hyperplanes clipped to the box with an arrowhead along (c2, -c1), so the
/// positive side is on the left of the arrow. Without a box, one is fitted
/// around the points.
std::string render_svg(const Configuration& c, std::optional<BoundingBox> bbox = std::nullopt);

}  // namespace signrank
