#include "signrank/fixtures.hpp"

#include <array>

namespace signrank {

namespace {

struct Scalar {
  const char* r;
  const char* s = "0";
};

QuadElem q(const Scalar& x, std::int64_t d) { return QuadElem(parse_rational(x.r), parse_rational(x.s), d); }

Configuration planar(std::int64_t d, std::initializer_list<std::array<Scalar, 2>> points,
                     std::initializer_list<std::array<Scalar, 3>> lines) {
  Configuration c;
  c.dim = 2;
  c.field_d = d;
  for (const auto& p : points) c.points.push_back({{q(p[0], d), q(p[1], d)}});
  for (const auto& l : lines) c.hyperplanes.push_back({{q(l[0], d), q(l[1], d), q(l[2], d)}});
  return c;
}

SignPattern a0() {
  return SignPattern::from_rows({
      "000----++",
      "0--00++--",
      "++++000++",
      "++0++++00",
      "0----0-+0",
      "0----+00-",
      "++00-0-++",
      "+0-+0++0-",
      "+0-0-+0+0",
  });
}

// Points p1..p9 and lines l1..l9: p1, p2 span l1 with p5, p6; p7, p8, p9 are
// chosen by hand and the remaining incidences force sqrt 5.
Configuration perles() {
  return planar(5,
                {
                    {{{"-1"}, {"0"}}},
                    {{{"1"}, {"0"}}},
                    {{{"-3/62", "-15/62"}, {"143/62", "33/62"}}},
                    {{{"3/62", "15/62"}, {"143/62", "33/62"}}},
                    {{{"2", "-1"}, {"0"}}},
                    {{{"-2", "1"}, {"0"}}},
                    {{{"-3/8"}, {"11/8"}}},
                    {{{"3/8"}, {"11/8"}}},
                    {{{"0"}, {"1"}}},
                },
                {
                    {{{"0"}, {"0"}, {"1"}}},
                    {{{"-1"}, {"-1"}, {"1"}}},
                    {{{"-11/5"}, {"-11/5"}, {"1"}}},
                    {{{"-1"}, {"1"}, {"1"}}},
                    {{{"-11/5"}, {"11/5"}, {"1"}}},
                    {{{"22/41", "33/41"}, {"209/41", "88/41"}, {"1"}}},
                    {{{"-1"}, {"2", "1"}, {"1"}}},
                    {{{"22/41", "33/41"}, {"-209/41", "-88/41"}, {"1"}}},
                    {{{"-1"}, {"-2", "-1"}, {"1"}}},
                });
}

// Lines y = (2/5)x + 25, y = x + 20, y = -x + 40.
Configuration fig21() {
  return planar(1, {{{{"-5"}, {"50"}}}, {{{"10"}, {"30"}}}, {{{"-10"}, {"10"}}}},
                {{{{"-25"}, {"-2/5"}, {"1"}}}, {{{"-20"}, {"-1"}, {"1"}}}, {{{"-40"}, {"1"}, {"1"}}}});
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"A0", "A1", "A2", "fig21_pattern", "fig21_config", "perles_config"};
  return names;
}

Fixture fixture(std::string_view name) {
  using P = Provenance;
  if (name == "A0") return {"A0", P::Transcribed, "9 x 9 pattern with mr = 3 and rational mr = 4", a0()};
  if (name == "A1")
    return {"A1", P::Transcribed, "mr = 2 with a direct representation", SignPattern::from_rows({"+++", "-++", "-0+"})};
  if (name == "A2")
    return {"A2", P::Transcribed, "mr = 2 without a direct representation",
            SignPattern::from_rows({"+++", "-++", "+0-"})};
  if (name == "fig21_pattern")
    return {"fig21_pattern", P::Transcribed, "3 points, 3 lines", SignPattern::from_rows({"+++", "+00", "-0-"})};
  if (name == "fig21_config")
    return {"fig21_config", P::Derived, "coordinates chosen to realize fig21_pattern exactly", fig21()};
  if (name == "perles_config")
    return {"perles_config", P::Derived, "9 points, 9 lines over Q(sqrt 5) with the zero set of A0; "
                                         "derived by tools/derive_perles.py",
            perles()};
  throw NotFound("unknown fixture '" + std::string(name) + "'");
}

SignPattern fixture_pattern(std::string_view name) {
  Fixture f = fixture(name);
  if (auto* p = std::get_if<SignPattern>(&f.payload)) return std::move(*p);
  throw NotFound("fixture '" + std::string(name) + "' is a configuration, not a pattern");
}

Configuration fixture_config(std::string_view name) {
  Fixture f = fixture(name);
  if (auto* c = std::get_if<Configuration>(&f.payload)) return std::move(*c);
  throw NotFound("fixture '" + std::string(name) + "' is a pattern, not a configuration");
}

PerlesReport derive_perles_check() {
  const SignPattern target = a0();
  const Configuration c = perles();
  PerlesReport rep;
  SignPattern encoded;
  try {
    c.validate();
    encoded = encode_configuration(c);
  } catch (const Error& e) {
    throw FixtureCorrupt(std::string("perles_config does not encode: ") + e.what());
  }
  const IncidenceStructure got = incidence_structure(encoded);
  const IncidenceStructure want = incidence_structure(target);
  rep.points = c.points.size();
  rep.lines = c.hyperplanes.size();
  rep.zero_count = encoded.zero_count();
  for (const auto& l : got.points_on_line) rep.points_per_line.push_back(l.size());
  if (rep.points != 9 || rep.lines != 9) throw FixtureCorrupt("perles_config must have 9 points and 9 lines");
  rep.zero_set_matches = got.points_on_line == want.points_on_line;
  if (!rep.zero_set_matches) throw FixtureCorrupt("perles_config incidences differ from the zero set of A0");
  rep.equals_a0 = encoded == target;
  auto w = is_equivalent(encoded, target);
  if (!w || apply_equivalence(encoded, *w) != target)
    throw FixtureCorrupt("perles_config does not encode a pattern equivalent to A0");
  rep.witness = std::move(*w);
  return rep;
}

}  // namespace signrank
